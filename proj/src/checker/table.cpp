#include "nsd/table.hpp"

#include <memory>
#include <sstream>

#include "nsd/error.hpp"

namespace nsd {

FiniteRelationTable::FiniteRelationTable(std::size_t rows, std::size_t cols, std::vector<bool> entries)
    : rows_(rows), cols_(cols), cells_(std::move(entries)) {
  if (cells_.size() != rows_ * cols_)
    throw InstanceError("table needs " + std::to_string(rows_ * cols_) + " entries, got " +
                        std::to_string(cells_.size()));
}

FiniteRelationTable FiniteRelationTable::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::size_t rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw InstanceError("table header must be `rows cols`");
  std::vector<bool> cells;
  std::string tok;
  while (in >> tok) {
    if (tok != "0" && tok != "1") throw InstanceError("table entries must be 0 or 1, got '" + tok + "'");
    cells.push_back(tok == "1");
  }
  return FiniteRelationTable(rows, cols, std::move(cells));
}

std::string FiniteRelationTable::str() const {
  std::ostringstream os;
  os << rows_ << " " << cols_ << "\n";
  for (std::size_t n = 0; n < rows_; ++n) {
    for (std::size_t x = 0; x < cols_; ++x) os << (x ? " " : "") << (cells_[n * cols_ + x] ? 1 : 0);
    os << "\n";
  }
  return os.str();
}

bool FiniteRelationTable::operator()(std::uint64_t n, std::uint64_t x) const {
  return n < rows_ && x < cols_ && cells_[n * cols_ + x];
}

void FiniteRelationTable::set(std::size_t n, std::size_t x, bool v) { cells_.at(n * cols_ + x) = v; }

std::optional<std::uint64_t> FiniteRelationTable::least_witness(std::uint64_t n) const {
  for (std::uint64_t x = 0; x < cols_; ++x)
    if ((*this)(n, x)) return x;
  return std::nullopt;
}

PredicateDecl FiniteRelationTable::predicate(const std::string& name) const {
  auto self = std::make_shared<const FiniteRelationTable>(*this);
  return {name, {Type::nat(), Type::nat()},
          [self](std::span<const std::uint64_t> a) { return (*self)(a[0], a[1]); }};
}

}  // namespace nsd
