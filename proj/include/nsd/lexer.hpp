#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace nsd {

// Tokenizer shared by the term, formula and second-order parsers.
// `#` starts a comment running to end of line.
class Lexer {
 public:
  enum class Tok { Ident, Number, Sym, End };
  struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
  };

  explicit Lexer(std::string_view src);

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool is(std::string_view text, std::size_t ahead = 0) const;
  bool accept(std::string_view text);
  void expect(std::string_view text);
  std::string expect_ident();
  bool at_end() const { return peek().kind == Tok::End; }

  std::size_t mark() const { return pos_; }
  void reset(std::size_t m) { pos_ = m; }

  [[noreturn]] void fail(const std::string& msg) const;

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace nsd
