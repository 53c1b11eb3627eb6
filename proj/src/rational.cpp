#include "nds/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace nds {
namespace {

BigInt from_int64(std::int64_t n) {
  // mpz_class has no portable int64 constructor on every platform.
  BigInt r;
  mpz_set_si(r.get_mpz_t(), static_cast<long>(n));
  return r;
}

}  // namespace

BigRational::BigRational(std::int64_t n) : q_(from_int64(n)) {}

BigRational::BigRational(const BigInt& n) : q_(n) {}

BigRational::BigRational(const BigInt& numerator, const BigInt& denominator)
    : q_(numerator, denominator) {
  if (denominator == 0) throw std::domain_error("BigRational: zero denominator");
  q_.canonicalize();
}

BigRational::BigRational(std::int64_t numerator, std::int64_t denominator)
    : BigRational(from_int64(numerator), from_int64(denominator)) {}

BigInt BigRational::floor() const {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

long double BigRational::to_long_double() const {
  // Split into integer part and fraction so large numerators keep precision.
  BigInt whole = floor();
  mpq_class frac = q_ - mpq_class(whole);
  return static_cast<long double>(whole.get_d()) + static_cast<long double>(frac.get_d());
}

BigRational& BigRational::operator+=(const BigRational& o) {
  q_ += o.q_;
  return *this;
}

BigRational& BigRational::operator-=(const BigRational& o) {
  q_ -= o.q_;
  return *this;
}

BigRational& BigRational::operator*=(const BigRational& o) {
  q_ *= o.q_;
  return *this;
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw std::domain_error("BigRational: division by zero");
  q_ /= o.q_;
  return *this;
}

BigRational BigRational::operator-() const {
  BigRational r;
  r.q_ = -q_;
  return r;
}

std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
  int c = cmp(a.q_, b.q_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(const BigInt& n) { return n.get_str(); }

}  // namespace nds
