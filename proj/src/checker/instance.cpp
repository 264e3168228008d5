#include <sstream>

#include "nsd/checker.hpp"
#include "nsd/error.hpp"
#include "nsd/lexer.hpp"
#include "nsd/parse.hpp"
#include "nsd/table.hpp"

namespace nsd {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::uint64_t number(const std::string& word, const std::string& what, std::size_t line) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(word, &used);
    if (used == word.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(what + " expects a number, got '" + word + "' (line " + std::to_string(line) + ")", 0);
}

}  // namespace

Instance parse_instance(std::string_view text, const FileLoader& load) {
  Instance inst;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::istringstream words(line);
    std::string head;
    words >> head;
    const std::string where = " (line " + std::to_string(lineno) + ")";
    if (head == "fuel" || head == "cap") {
      std::string v, extra;
      words >> v;
      if (words >> extra) throw ParseError(head + " takes one value" + where, 0);
      (head == "fuel" ? inst.fuel : inst.cap) = number(v, head, lineno);
    } else if (head == "gen") {
      std::string rest = line.substr(3);
      Lexer lex(rest);
      TermParser p(lex, {});
      std::string name = lex.expect_ident();
      lex.expect(":");
      Type t = p.type();
      lex.expect("=");
      std::vector<Term> terms;
      if (!lex.at_end()) {
        do {
          Term g = p.term();
          Type gt = infer_type({}, g);
          if (!(gt == t))
            throw InstanceError("generator " + g.str() + " for " + name + " has type " + gt.str() + ", expected " +
                                t.str() + where);
          terms.push_back(g);
        } while (lex.accept(","));
      }
      if (!lex.at_end()) lex.fail("expected ',' or end of line");
      auto& slot = inst.generators[name];
      slot.insert(slot.end(), terms.begin(), terms.end());
    } else if (head == "table") {
      std::string name, first;
      words >> name >> first;
      if (name.empty() || first.empty()) throw ParseError("table needs a name and entries" + where, 0);
      std::string body;
      if (first[0] == '@') {
        if (!load) throw InstanceError("table file " + first.substr(1) + " given but no loader" + where);
        body = load(first.substr(1));
      } else {
        std::ostringstream rest;
        rest << first << words.rdbuf();
        body = rest.str();
      }
      inst.sig.add(FiniteRelationTable::parse(body).predicate(name));
    } else {
      throw ParseError("unknown directive '" + head + "'" + where, 0);
    }
  }
  return inst;
}

}  // namespace nsd
