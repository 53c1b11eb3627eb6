#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace nds {

using BigInt = mpz_class;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator. Zero is 0/1.
class BigRational {
 public:
  BigRational() = default;
  BigRational(std::int64_t n);  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& n);  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& numerator, const BigInt& denominator);
  BigRational(std::int64_t numerator, std::int64_t denominator);

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  BigInt floor() const;
  double to_double() const { return q_.get_d(); }
  long double to_long_double() const;
  std::string to_string() const { return q_.get_str(); }

  BigRational& operator+=(const BigRational& o);
  BigRational& operator-=(const BigRational& o);
  BigRational& operator*=(const BigRational& o);
  BigRational& operator/=(const BigRational& o);
  BigRational operator-() const;

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b);

  const mpq_class& raw() const { return q_; }

 private:
  mpq_class q_;
};

std::string to_string(const BigInt& n);

}  // namespace nds
