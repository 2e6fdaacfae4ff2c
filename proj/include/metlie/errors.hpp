#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace metlie {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition on caller-supplied data (dimensions, singular
/// matrices, forms that are not invariant, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Unknown catalog or metric name.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// A metric was required to be nondegenerate but is not. The message names
/// the radical.
class DegenerateMetricError : public Error {
 public:
  using Error::Error;
};

/// Non-finite state or singular metric in a floating-point computation.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Malformed algebra file.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Structure constants that violate the Jacobi identity.
class JacobiError : public Error {
 public:
  JacobiError(std::size_t i, std::size_t j, std::size_t k)
      : Error("Jacobi identity fails on (e" + std::to_string(i) + ", e" +
              std::to_string(j) + ", e" + std::to_string(k) + ")"),
        i_(i), j_(j), k_(k) {}
  std::size_t i() const noexcept { return i_; }
  std::size_t j() const noexcept { return j_; }
  std::size_t k() const noexcept { return k_; }

 private:
  std::size_t i_, j_, k_;
};

}  // namespace metlie
