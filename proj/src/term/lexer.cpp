#include "nsd/lexer.hpp"

#include <array>
#include <cctype>

#include "nsd/error.hpp"

namespace nsd {

namespace {

constexpr std::array<std::string_view, 23> kSymbols = {
    "<->", "->", "<>", "\\", ":", ".", ",", ";", "(", ")", "[", "]",
    "<",   ">",  "*",  "=",  "&", "|", "!", "+", "{", "}", "-",
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

}  // namespace

Lexer::Lexer(std::string_view src) {
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    std::size_t start = i;
    if (ident_start(c)) {
      while (i < src.size() && ident_char(src[i])) ++i;
      toks_.push_back({Tok::Ident, std::string(src.substr(start, i - start)), start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      toks_.push_back({Tok::Number, std::string(src.substr(start, i - start)), start});
      continue;
    }
    bool matched = false;
    for (auto sym : kSymbols) {
      if (src.substr(i, sym.size()) == sym) {
        toks_.push_back({Tok::Sym, std::string(sym), start});
        i += sym.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", start);
  }
  toks_.push_back({Tok::End, "", src.size()});
}

const Lexer::Token& Lexer::peek(std::size_t ahead) const {
  std::size_t i = pos_ + ahead;
  return i < toks_.size() ? toks_[i] : toks_.back();
}

Lexer::Token Lexer::next() {
  Token t = peek();
  if (pos_ + 1 < toks_.size()) ++pos_;
  return t;
}

bool Lexer::is(std::string_view text, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind != Tok::End && t.kind != Tok::Number && t.text == text;
}

bool Lexer::accept(std::string_view text) {
  if (!is(text)) return false;
  next();
  return true;
}

void Lexer::expect(std::string_view text) {
  if (!accept(text)) fail("expected '" + std::string(text) + "'");
}

std::string Lexer::expect_ident() {
  if (peek().kind != Tok::Ident) fail("expected identifier");
  return next().text;
}

void Lexer::fail(const std::string& msg) const {
  const Token& t = peek();
  std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
  throw ParseError(msg + ", found " + found, t.offset);
}

}  // namespace nsd
