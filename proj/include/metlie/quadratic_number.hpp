#pragma once

#include <string>

#include "metlie/rational.hpp"

namespace metlie {

/// Element a + b·√d of the field ℚ(√d) for a fixed non-square rational d.
///
/// A value with b = 0 is an ordinary rational and combines with any radicand.
/// Mixing two genuinely irrational values with different radicands throws
/// InputError: one computation lives in one quadratic extension.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(int value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  QuadraticNumber(const Rational& value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  QuadraticNumber(Rational a, Rational b, Rational radicand);

  /// √r. Returns an exact rational when r is the square of a rational.
  static QuadraticNumber sqrt(const Rational& r);

  const Rational& rational_part() const { return a_; }
  const Rational& irrational_part() const { return b_; }
  const Rational& radicand() const { return d_; }
  bool is_rational() const { return sgn(b_) == 0; }

  QuadraticNumber& operator+=(const QuadraticNumber& o);
  QuadraticNumber& operator-=(const QuadraticNumber& o);
  QuadraticNumber& operator*=(const QuadraticNumber& o);
  QuadraticNumber& operator/=(const QuadraticNumber& o);

  friend QuadraticNumber operator+(QuadraticNumber l, const QuadraticNumber& r) { return l += r; }
  friend QuadraticNumber operator-(QuadraticNumber l, const QuadraticNumber& r) { return l -= r; }
  friend QuadraticNumber operator*(QuadraticNumber l, const QuadraticNumber& r) { return l *= r; }
  friend QuadraticNumber operator/(QuadraticNumber l, const QuadraticNumber& r) { return l /= r; }
  QuadraticNumber operator-() const;

  friend bool operator==(const QuadraticNumber& l, const QuadraticNumber& r);

  /// Exact sign of the real number a + b√d.
  int sign() const;
  double to_double() const;
  std::string str() const;

 private:
  Rational common_radicand(const QuadraticNumber& o) const;

  Rational a_{0};
  Rational b_{0};
  Rational d_{0};
};

inline int sign(const QuadraticNumber& q) { return q.sign(); }
inline bool is_zero(const QuadraticNumber& q) { return q.sign() == 0; }
inline std::string to_string(const QuadraticNumber& q) { return q.str(); }

}  // namespace metlie
