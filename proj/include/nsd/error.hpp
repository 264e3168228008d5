#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nsd {

// Base of every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TypeErrorKind { UnboundVariable, ArgumentMismatch, NonFunctionApplication };

class TypeError : public Error {
 public:
  TypeError(TypeErrorKind kind, std::string subterm, const std::string& what)
      : Error(what), kind_(kind), subterm_(std::move(subterm)) {}

  TypeErrorKind kind() const { return kind_; }
  const std::string& subterm() const { return subterm_; }

 private:
  TypeErrorKind kind_;
  std::string subterm_;
};

class FuelExhausted : public Error {
 public:
  explicit FuelExhausted(std::uint64_t fuel)
      : Error("fuel exhausted after " + std::to_string(fuel) + " steps"), fuel_(fuel) {}
  std::uint64_t fuel() const { return fuel_; }

 private:
  std::uint64_t fuel_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : Error("parse error at offset " + std::to_string(offset) + ": " + msg), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class SchemaParamError : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class UnsupportedType : public Error {
 public:
  using Error::Error;
};

class ScopeError : public Error {
 public:
  using Error::Error;
};

class InstanceError : public Error {
 public:
  using Error::Error;
};

class WitnessNotFound : public Error {
 public:
  explicit WitnessNotFound(std::uint64_t n)
      : Error("no witness found for component " + std::to_string(n)), n_(n) {}
  // Non-numeral component, identified by its position.
  WitnessNotFound(const std::string& component, std::uint64_t index)
      : Error("no witness found for component " + component + " at position " + std::to_string(index)), n_(index) {}
  std::uint64_t component() const { return n_; }

 private:
  std::uint64_t n_;
};

class NoWitnessInRow : public Error {
 public:
  explicit NoWitnessInRow(std::uint64_t row)
      : Error("relation row " + std::to_string(row) + " has no true entry"), row_(row) {}
  std::uint64_t row() const { return row_; }

 private:
  std::uint64_t row_;
};

}  // namespace nsd
