#pragma once

#include <memory>
#include <ostream>
#include <string>

namespace nsd {

enum class TypeKind { Nat, Arrow, Seq };

// Finite type: Nat (type 0), Arrow(domain, codomain), Seq(element).
// Immutable, shared, compared structurally.
class Type {
 public:
  Type();  // Nat

  static Type nat();
  static Type arrow(Type domain, Type codomain);
  static Type seq(Type element);

  TypeKind kind() const;
  bool is_nat() const { return kind() == TypeKind::Nat; }
  bool is_arrow() const { return kind() == TypeKind::Arrow; }
  bool is_seq() const { return kind() == TypeKind::Seq; }

  // Arrow only.
  const Type& domain() const;
  const Type& codomain() const;
  // Seq only.
  const Type& element() const;

  // order(N) = 0, order(s*) = order(s), order(s -> t) = max(order(s) + 1, order(t)).
  int order() const;

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }

  std::string str() const;
  // Printed form safe to place after `<>:` or in argument position.
  std::string atomic_str() const;

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Curried arrow: args[0] -> args[1] -> ... -> result.
template <class Range>
Type arrows(const Range& args, Type result) {
  for (auto it = std::rbegin(args); it != std::rend(args); ++it) result = Type::arrow(*it, result);
  return result;
}

std::ostream& operator<<(std::ostream& os, const Type& t);

}  // namespace nsd
