#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nsd/formula.hpp"

namespace nsd {

// Explicit 0/1 table R(n, x) for n < rows, x < cols. Text form: `rows cols`
// followed by the entries row by row, whitespace separated.
class FiniteRelationTable {
 public:
  FiniteRelationTable() = default;
  FiniteRelationTable(std::size_t rows, std::size_t cols, std::vector<bool> entries);

  static FiniteRelationTable parse(std::string_view text);
  std::string str() const;

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  // False outside the rectangle.
  bool operator()(std::uint64_t n, std::uint64_t x) const;
  void set(std::size_t n, std::size_t x, bool v);

  std::optional<std::uint64_t> least_witness(std::uint64_t n) const;

  // Predicate `name(N, N)` interpreted by this table.
  PredicateDecl predicate(const std::string& name) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<bool> cells_;
};

}  // namespace nsd
