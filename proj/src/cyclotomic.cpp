#include "nds/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nds/number_theory.hpp"

namespace nds {
namespace {

using Poly = std::vector<BigRational>;

BigInt big_from_int128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  BigInt hi, lo;
  mpz_set_ui(hi.get_mpz_t(), static_cast<unsigned long>(u >> 64));
  mpz_set_ui(lo.get_mpz_t(), static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
  BigInt r = (hi << 64) + lo;
  return neg ? BigInt(-r) : r;
}

// Exact quotient of integer polynomials, divisor monic.
std::vector<BigInt> exact_divide(std::vector<BigInt> num, const std::vector<BigInt>& den) {
  const std::size_t dd = den.size() - 1;
  std::vector<BigInt> quot(num.size() - dd);
  for (std::size_t i = num.size(); i-- > dd;) {
    BigInt c = num[i];
    quot[i - dd] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  for (std::size_t i = 0; i < dd; ++i) {
    if (num[i] != 0) throw std::logic_error("cyclotomic_polynomial: inexact division");
  }
  return quot;
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<int, std::shared_ptr<const CyclotomicPolynomial>>& cache() {
  static std::map<int, std::shared_ptr<const CyclotomicPolynomial>> c;
  return c;
}

// Fold exponents mod M, then take the remainder by Phi_M.
// Reduces sum_k v[k] x^k (k < order) modulo Phi_order in place; the result
// occupies the first deg entries. Returns false if an intermediate overflowed.
bool reduce_int128(int order, std::vector<__int128>& v) {
  auto phi = cyclotomic_polynomial(order);
  const int deg = phi->degree();
  const auto& pc = phi->small_coefficients();
  for (int i = static_cast<int>(v.size()) - 1; i >= deg; --i) {
    if (v[i] == 0) continue;
    const __int128 c = v[i];
    for (int j = 0; j < deg; ++j) {
      if (pc[j] == 0) continue;
      __int128 prod;
      if (__builtin_mul_overflow(c, static_cast<__int128>(pc[j]), &prod) ||
          __builtin_sub_overflow(v[i - deg + j], prod, &v[i - deg + j])) {
        return false;
      }
    }
    v[i] = 0;
  }
  return true;
}

void reduce_big(int order, std::vector<BigInt>& v) {
  auto phi = cyclotomic_polynomial(order);
  const int deg = phi->degree();
  const auto& pc = phi->coefficients();
  for (int i = static_cast<int>(v.size()) - 1; i >= deg; --i) {
    if (v[i] == 0) continue;
    const BigInt c = v[i];
    for (int j = 0; j < deg; ++j) {
      if (pc[j] != 0) v[i - deg + j] -= c * pc[j];
    }
    v[i] = 0;
  }
}

// Folds integer powers mod x^order - 1 and reduces mod Phi_order, returning
// the deg canonical coefficients.
std::vector<BigInt> reduce_integer(int order, std::vector<BigInt> v) {
  if (v.size() > static_cast<std::size_t>(order)) {
    for (std::size_t i = order; i < v.size(); ++i) v[i % order] += v[i];
  }
  v.resize(order, BigInt(0));
  const int deg = cyclotomic_polynomial(order)->degree();
  std::vector<__int128> small(order, 0);
  bool fits = true;
  for (int i = 0; i < order && fits; ++i) {
    fits = v[i].fits_slong_p();
    if (fits) small[i] = v[i].get_si();
  }
  if (fits && reduce_int128(order, small)) {
    std::vector<BigInt> out(deg);
    for (int i = 0; i < deg; ++i) out[i] = big_from_int128(small[i]);
    return out;
  }
  reduce_big(order, v);
  v.resize(deg);
  return v;
}

Poly reduce_powers(int order, Poly v) {
  BigInt den = 1;
  for (const BigRational& c : v) {
    if (!c.is_zero()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.raw().get_den_mpz_t());
  }
  std::vector<BigInt> nums(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) nums[i] = v[i].numerator() * (den / v[i].denominator());
  }
  std::vector<BigInt> reduced = reduce_integer(order, std::move(nums));
  Poly out;
  out.reserve(reduced.size());
  for (const BigInt& n : reduced) out.emplace_back(n, den);
  return out;
}

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Polynomial division over Q; b must be nonzero and trimmed.
void poly_divmod(Poly a, const Poly& b, Poly& quot, Poly& rem) {
  trim(a);
  quot.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, BigRational());
  const BigRational& lead = b.back();
  const long shift_max = static_cast<long>(a.size()) - static_cast<long>(b.size());
  for (long s = shift_max; s >= 0; --s) {
    const BigRational& top = a[s + b.size() - 1];
    if (top.is_zero()) continue;
    BigRational c = top / lead;
    quot[s] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[s + j] -= c * b[j];
  }
  trim(a);
  rem = std::move(a);
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

Poly poly_sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

}  // namespace

CyclotomicPolynomial::CyclotomicPolynomial(int order, std::vector<BigInt> coefficients)
    : order_(order), coefficients_(std::move(coefficients)) {
  small_.reserve(coefficients_.size());
  for (const BigInt& c : coefficients_) {
    if (!c.fits_slong_p()) throw std::overflow_error("cyclotomic polynomial coefficient too large");
    small_.push_back(c.get_si());
  }
}

std::shared_ptr<const CyclotomicPolynomial> cyclotomic_polynomial(int order) {
  if (order < 1) throw std::invalid_argument("cyclotomic_polynomial: order must be >= 1");
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto it = cache().find(order);
    if (it != cache().end()) return it->second;
  }
  std::vector<BigInt> poly(order + 1, BigInt(0));
  poly[0] = -1;
  poly[order] = 1;
  for (std::int64_t d : divisors(order)) {
    if (d == order) continue;
    poly = exact_divide(std::move(poly), cyclotomic_polynomial(static_cast<int>(d))->coefficients());
  }
  auto result = std::make_shared<const CyclotomicPolynomial>(order, std::move(poly));
  std::lock_guard<std::mutex> lock(cache_mutex());
  return cache().emplace(order, std::move(result)).first->second;
}

CyclotomicNumber::CyclotomicNumber() : order_(1), coeffs_(1) {}

CyclotomicNumber::CyclotomicNumber(const BigRational& r) : order_(1), coeffs_{r} {}

CyclotomicNumber::CyclotomicNumber(std::int64_t n) : CyclotomicNumber(BigRational(n)) {}

CyclotomicNumber::CyclotomicNumber(int order, std::vector<BigRational> coeffs)
    : order_(order), coeffs_(std::move(coeffs)) {}

CyclotomicNumber CyclotomicNumber::from_powers(int order, std::span<const BigRational> powers) {
  if (order < 1) throw std::invalid_argument("CyclotomicNumber: order must be >= 1");
  return CyclotomicNumber(order, reduce_powers(order, Poly(powers.begin(), powers.end())));
}

CyclotomicNumber CyclotomicNumber::from_integer_powers(int order, std::span<const BigInt> powers,
                                                       const BigInt& denominator) {
  if (order < 1) throw std::invalid_argument("CyclotomicNumber: order must be >= 1");
  if (denominator == 0) throw std::domain_error("CyclotomicNumber: zero denominator");
  std::vector<BigInt> reduced = reduce_integer(order, std::vector<BigInt>(powers.begin(), powers.end()));
  std::vector<BigRational> coeffs;
  coeffs.reserve(reduced.size());
  for (const BigInt& c : reduced) coeffs.emplace_back(c, denominator);
  return CyclotomicNumber(order, std::move(coeffs));
}

bool CyclotomicNumber::is_zero() const {
  for (const BigRational& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

bool CyclotomicNumber::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (!coeffs_[i].is_zero()) return false;
  }
  return true;
}

CyclotomicNumber CyclotomicNumber::lifted(int new_order) const {
  if (new_order == order_) return *this;
  if (new_order % order_ != 0) {
    throw std::invalid_argument("CyclotomicNumber::lifted: target order must be a multiple");
  }
  const int step = new_order / order_;
  Poly powers(static_cast<std::size_t>(step) * coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) powers[k * step] = coeffs_[k];
  return CyclotomicNumber(new_order, reduce_powers(new_order, std::move(powers)));
}

CyclotomicNumber CyclotomicNumber::conj() const {
  Poly powers(order_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (!coeffs_[k].is_zero()) powers[(order_ - static_cast<int>(k)) % order_] += coeffs_[k];
  }
  return CyclotomicNumber(order_, reduce_powers(order_, std::move(powers)));
}

CyclotomicNumber CyclotomicNumber::inverse() const {
  if (is_zero()) throw std::domain_error("CyclotomicNumber: inverse of zero");
  auto phi = cyclotomic_polynomial(order_);
  Poly r0(phi->coefficients().begin(), phi->coefficients().end());
  Poly r1 = coeffs_;
  trim(r1);
  Poly s0, s1{BigRational(1)};
  while (!r1.empty()) {
    Poly q, r;
    poly_divmod(r0, r1, q, r);
    Poly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant because Phi_M is irreducible.
  if (r0.size() != 1) throw std::logic_error("CyclotomicNumber::inverse: non-constant gcd");
  for (BigRational& c : s0) c /= r0[0];
  return CyclotomicNumber(order_, reduce_powers(order_, std::move(s0)));
}

CyclotomicNumber CyclotomicNumber::operator-() const {
  CyclotomicNumber r = *this;
  for (BigRational& c : r.coeffs_) c = -c;
  return r;
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o) {
  if (o.order_ != order_) {
    const int l = static_cast<int>(lcm(order_, o.order_));
    *this = lifted(l);
    return *this += o.lifted(l);
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& o) { return *this += -o; }

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& o) {
  if (o.order_ != order_) {
    const int l = static_cast<int>(lcm(order_, o.order_));
    *this = lifted(l);
    return *this *= o.lifted(l);
  }
  if (o.is_rational()) {
    for (BigRational& c : coeffs_) c *= o.coeffs_[0];
    return *this;
  }
  coeffs_ = reduce_powers(order_, poly_mul(coeffs_, o.coeffs_));
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator/=(const CyclotomicNumber& o) {
  if (o.is_rational()) {
    if (o.coeffs_[0].is_zero()) throw std::domain_error("CyclotomicNumber: division by zero");
    for (BigRational& c : coeffs_) c /= o.coeffs_[0];
    return *this;
  }
  return *this *= o.inverse();
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
  if (a.is_rational() && b.is_rational()) return a.coeffs_[0] == b.coeffs_[0];
  const int l = static_cast<int>(lcm(a.order_, b.order_));
  return a.lifted(l).coeffs_ == b.lifted(l).coeffs_;
}

std::string CyclotomicNumber::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const BigRational& c = coeffs_[k];
    if (c.is_zero()) continue;
    BigRational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) out << "-";
    } else {
      out << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      out << mag.to_string();
      continue;
    }
    if (mag != BigRational(1)) out << mag.to_string() << "*";
    out << "z";
    if (k > 1) out << "^" << k;
  }
  return first ? "0" : out.str();
}

CyclotomicNumber root_of_unity(int order, std::int64_t k) {
  if (order < 1) throw std::invalid_argument("root_of_unity: order must be >= 1");
  Poly powers(order);
  powers[mod(k, order)] = BigRational(1);
  return CyclotomicNumber::from_powers(order, powers);
}

std::complex<double> embed_complex(const CyclotomicNumber& x, int digits) {
  if (digits < 1 || digits > 15) {
    throw std::invalid_argument("embed_complex: digits must be in [1, 15]");
  }
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  long double re = 0, im = 0;
  const auto& c = x.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k].is_zero()) continue;
    long double v = c[k].to_long_double();
    long double theta = two_pi * static_cast<long double>(k) / x.order();
    re += v * std::cos(theta);
    im += v * std::sin(theta);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

PowerSum::PowerSum(int order) : order_(order), powers_(order) {
  if (order < 1) throw std::invalid_argument("PowerSum: order must be >= 1");
}

void PowerSum::add(std::int64_t exponent, const BigRational& coefficient) {
  powers_[mod(exponent, order_)] += coefficient;
}

PowerSum PowerSum::lifted(int new_order) const {
  if (new_order % order_ != 0) throw std::invalid_argument("PowerSum::lifted: not a multiple");
  PowerSum r(new_order);
  const int step = new_order / order_;
  for (int k = 0; k < order_; ++k) {
    if (!powers_[k].is_zero()) r.powers_[k * step] = powers_[k];
  }
  return r;
}

PowerSum PowerSum::conj() const {
  PowerSum r(order_);
  for (int k = 0; k < order_; ++k) {
    if (!powers_[k].is_zero()) r.powers_[(order_ - k) % order_] = powers_[k];
  }
  return r;
}

PowerSum& PowerSum::operator*=(const PowerSum& o) {
  if (o.order_ != order_) {
    const int l = static_cast<int>(lcm(order_, o.order_));
    *this = lifted(l);
    return *this *= o.lifted(l);
  }
  std::vector<BigRational> out(order_);
  for (int i = 0; i < order_; ++i) {
    if (powers_[i].is_zero()) continue;
    for (int j = 0; j < order_; ++j) {
      if (!o.powers_[j].is_zero()) out[(i + j) % order_] += powers_[i] * o.powers_[j];
    }
  }
  powers_ = std::move(out);
  return *this;
}

PowerSum& PowerSum::operator*=(const BigRational& s) {
  for (BigRational& c : powers_) c *= s;
  return *this;
}

CyclotomicNumber PowerSum::reduce() const { return CyclotomicNumber::from_powers(order_, powers_); }

bool power_sum_is_zero(int order, std::span<const __int128> powers) {
  std::vector<__int128> v(order, 0);
  bool overflow = false;
  for (std::size_t i = 0; i < powers.size() && !overflow; ++i) {
    overflow = __builtin_add_overflow(v[i % order], powers[i], &v[i % order]);
  }
  const int deg = cyclotomic_polynomial(order)->degree();
  if (!overflow && reduce_int128(order, v)) {
    for (int i = 0; i < deg; ++i) {
      if (v[i] != 0) return false;
    }
    return true;
  }
  std::vector<BigInt> big(order, BigInt(0));
  for (std::size_t i = 0; i < powers.size(); ++i) big[i % order] += big_from_int128(powers[i]);
  reduce_big(order, big);
  for (int i = 0; i < deg; ++i) {
    if (big[i] != 0) return false;
  }
  return true;
}

}  // namespace nds
