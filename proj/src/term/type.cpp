#include "nsd/type.hpp"

#include <algorithm>
#include <cassert>

namespace nsd {

struct Type::Node {
  TypeKind kind;
  Type a;
  Type b;
};

Type::Type() : node_(nullptr) {}

Type Type::nat() { return Type(); }

Type Type::arrow(Type domain, Type codomain) {
  return Type(std::make_shared<const Node>(Node{TypeKind::Arrow, std::move(domain), std::move(codomain)}));
}

Type Type::seq(Type element) {
  return Type(std::make_shared<const Node>(Node{TypeKind::Seq, std::move(element), Type()}));
}

TypeKind Type::kind() const { return node_ ? node_->kind : TypeKind::Nat; }

const Type& Type::domain() const {
  assert(is_arrow());
  return node_->a;
}

const Type& Type::codomain() const {
  assert(is_arrow());
  return node_->b;
}

const Type& Type::element() const {
  assert(is_seq());
  return node_->a;
}

int Type::order() const {
  switch (kind()) {
    case TypeKind::Nat: return 0;
    case TypeKind::Seq: return element().order();
    case TypeKind::Arrow: return std::max(domain().order() + 1, codomain().order());
  }
  return 0;
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TypeKind::Nat: return true;
    case TypeKind::Seq: return a.element() == b.element();
    case TypeKind::Arrow: return a.domain() == b.domain() && a.codomain() == b.codomain();
  }
  return false;
}

std::string Type::atomic_str() const {
  if (is_arrow()) return "(" + str() + ")";
  return str();
}

std::string Type::str() const {
  switch (kind()) {
    case TypeKind::Nat: return "N";
    case TypeKind::Seq: return element().atomic_str() + "*";
    case TypeKind::Arrow: return domain().atomic_str() + " -> " + codomain().str();
  }
  return "?";
}

std::ostream& operator<<(std::ostream& os, const Type& t) { return os << t.str(); }

}  // namespace nsd
