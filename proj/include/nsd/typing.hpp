#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nsd/term.hpp"
#include "nsd/type.hpp"

namespace nsd {

// Ordered variable declarations. Declaring an existing name replaces its type,
// so the context never holds duplicates and lookup is deterministic.
class TypingContext {
 public:
  TypingContext() = default;
  TypingContext(std::initializer_list<std::pair<std::string, Type>> decls);

  void declare(const std::string& name, const Type& type);
  TypingContext with(const std::string& name, const Type& type) const;
  std::optional<Type> lookup(std::string_view name) const;
  bool contains(std::string_view name) const { return lookup(name).has_value(); }

  const std::vector<std::pair<std::string, Type>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, Type>> entries_;
};

// The unique type of t in ctx; throws TypeError naming the offending subterm.
Type infer_type(const TypingContext& ctx, const Term& t);

// Type of the sequence Y[args] when Y has type `yt` (args > 0).
Type star_result_type(const Type& yt, std::size_t nargs);

}  // namespace nsd
