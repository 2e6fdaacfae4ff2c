#include "metlie/quadratic_number.hpp"

#include <cmath>

#include "metlie/errors.hpp"

namespace metlie {

namespace {

bool is_rational_square(const Rational& r, Rational* root) {
  if (sgn(r) < 0) return false;
  if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t())) {
    return false;
  }
  mpz_class num, den;
  mpz_sqrt(num.get_mpz_t(), r.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), r.get_den_mpz_t());
  *root = Rational(num, den);
  return true;
}

}  // namespace

QuadraticNumber::QuadraticNumber(Rational a, Rational b, Rational radicand)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(radicand)) {
  Rational root;
  if (sgn(b_) != 0 && is_rational_square(d_, &root)) {
    a_ += b_ * root;
    b_ = 0;
    d_ = 0;
  }
  if (sgn(b_) != 0 && sgn(d_) < 0) throw InputError("negative radicand");
  if (sgn(b_) == 0) d_ = 0;
}

QuadraticNumber QuadraticNumber::sqrt(const Rational& r) {
  if (sgn(r) < 0) throw InputError("square root of a negative rational");
  Rational root;
  if (is_rational_square(r, &root)) return QuadraticNumber(root);
  return QuadraticNumber(Rational(0), Rational(1), r);
}

Rational QuadraticNumber::common_radicand(const QuadraticNumber& o) const {
  if (sgn(b_) == 0) return o.d_;
  if (sgn(o.b_) == 0) return d_;
  if (d_ != o.d_) throw InputError("values from different quadratic extensions");
  return d_;
}

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& o) {
  d_ = common_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  if (sgn(b_) == 0) d_ = 0;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& o) {
  d_ = common_radicand(o);
  a_ -= o.a_;
  b_ -= o.b_;
  if (sgn(b_) == 0) d_ = 0;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& o) {
  const Rational d = common_radicand(o);
  Rational a = a_ * o.a_ + b_ * o.b_ * d;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  d_ = sgn(b_) == 0 ? Rational(0) : d;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& o) {
  // 1/(a + b√d) = (a − b√d)/(a² − b²d); the norm vanishes only at zero.
  const Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * o.d_;
  if (sgn(norm) == 0) throw InputError("division by zero in quadratic field");
  QuadraticNumber conj(o.a_ / norm, -o.b_ / norm, o.d_);
  return *this *= conj;
}

QuadraticNumber QuadraticNumber::operator-() const {
  QuadraticNumber r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

bool operator==(const QuadraticNumber& l, const QuadraticNumber& r) {
  if (l.a_ != r.a_ || l.b_ != r.b_) return false;
  return sgn(l.b_) == 0 || l.d_ == r.d_;
}

int QuadraticNumber::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a² with b²d.
  const int cmp_result = cmp(Rational(a_ * a_), Rational(b_ * b_ * d_));
  return cmp_result > 0 ? sa : sb;
}

double QuadraticNumber::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(d_.get_d());
}

std::string QuadraticNumber::str() const {
  if (sgn(b_) == 0) return a_.get_str();
  std::string s;
  if (sgn(a_) != 0) s = a_.get_str() + (sgn(b_) > 0 ? "+" : "");
  return s + b_.get_str() + "*sqrt(" + d_.get_str() + ")";
}

}  // namespace metlie
