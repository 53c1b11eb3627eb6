#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nds/rational.hpp"

namespace nds {

/// The M-th cyclotomic polynomial, monic with integer coefficients stored
/// from the constant term upwards.
class CyclotomicPolynomial {
 public:
  CyclotomicPolynomial(int order, std::vector<BigInt> coefficients);

  int order() const { return order_; }
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  const std::vector<BigInt>& coefficients() const { return coefficients_; }
  /// Same coefficients as machine integers (every Phi_M used here fits).
  const std::vector<std::int64_t>& small_coefficients() const { return small_; }

 private:
  int order_;
  std::vector<BigInt> coefficients_;
  std::vector<std::int64_t> small_;
};

/// Phi_M, computed by exact division of x^M - 1 by the Phi_d for proper
/// divisors d of M. Results are memoized; safe to call from many threads.
std::shared_ptr<const CyclotomicPolynomial> cyclotomic_polynomial(int order);

/// Element of Q(zeta_M) in the canonical basis 1, zeta, ..., zeta^(phi(M)-1),
/// i.e. a rational polynomial reduced modulo Phi_M. Operands of different
/// orders are lifted to the lcm of their orders before combining.
class CyclotomicNumber {
 public:
  CyclotomicNumber();
  CyclotomicNumber(const BigRational& r);  // NOLINT(google-explicit-constructor)
  CyclotomicNumber(std::int64_t n);        // NOLINT(google-explicit-constructor)

  /// sum_k powers[k] * zeta_M^k for any number of powers.
  static CyclotomicNumber from_powers(int order, std::span<const BigRational> powers);
  /// (sum_k powers[k] * zeta_M^k) / denominator.
  static CyclotomicNumber from_integer_powers(int order, std::span<const BigInt> powers,
                                              const BigInt& denominator = 1);

  int order() const { return order_; }
  const std::vector<BigRational>& coefficients() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Constant coefficient; only meaningful when is_rational().
  const BigRational& rational_part() const { return coeffs_.front(); }

  CyclotomicNumber lifted(int new_order) const;
  /// Complex conjugate (zeta -> zeta^-1).
  CyclotomicNumber conj() const;
  /// Multiplicative inverse via the extended Euclidean algorithm with Phi_M.
  CyclotomicNumber inverse() const;

  CyclotomicNumber operator-() const;
  CyclotomicNumber& operator+=(const CyclotomicNumber& o);
  CyclotomicNumber& operator-=(const CyclotomicNumber& o);
  CyclotomicNumber& operator*=(const CyclotomicNumber& o);
  CyclotomicNumber& operator/=(const CyclotomicNumber& o);

  friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
  friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
  friend CyclotomicNumber operator*(CyclotomicNumber a, const CyclotomicNumber& b) { return a *= b; }
  friend CyclotomicNumber operator/(CyclotomicNumber a, const CyclotomicNumber& b) { return a /= b; }
  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);

  /// Polynomial in z = zeta_M, e.g. "1/3 - 2*z + z^3"; "0" for zero.
  std::string to_string() const;

 private:
  CyclotomicNumber(int order, std::vector<BigRational> coeffs);

  int order_;
  std::vector<BigRational> coeffs_;  // length phi(order_)
};

/// zeta_M^k; depends only on k mod M.
CyclotomicNumber root_of_unity(int order, std::int64_t k);

/// Value under zeta_M -> exp(2*pi*i/M). Accurate to about 10^-digits for
/// digits <= 15 (evaluation is carried out in long double).
std::complex<double> embed_complex(const CyclotomicNumber& x, int digits = 15);

/// Formal sum sum_k c_k zeta_M^k kept in the power basis (mod x^M - 1).
/// Products are cyclic convolutions over the nonzero terms, which keeps
/// sparse sums such as Gauss sums cheap before a single final reduction.
class PowerSum {
 public:
  explicit PowerSum(int order);

  int order() const { return order_; }
  void add(std::int64_t exponent, const BigRational& coefficient);
  PowerSum lifted(int new_order) const;
  PowerSum conj() const;
  PowerSum& operator*=(const PowerSum& o);
  PowerSum& operator*=(const BigRational& s);
  friend PowerSum operator*(PowerSum a, const PowerSum& b) { return a *= b; }

  CyclotomicNumber reduce() const;

 private:
  int order_;
  std::vector<BigRational> powers_;
};

/// Exact zero test for sum_k powers[k] * zeta_M^k with machine-integer
/// coefficients. Falls back to big integers if the reduction would overflow.
bool power_sum_is_zero(int order, std::span<const __int128> powers);

}  // namespace nds
