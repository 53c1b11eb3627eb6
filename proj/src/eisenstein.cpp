#include "nds/eisenstein.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nds/number_theory.hpp"

namespace nds {
namespace {

using cld = std::complex<long double>;

constexpr long double kTwoPi = 2.0L * std::numbers::pi_v<long double>;
constexpr double kTailTolerance = 1e-14;

cld e_of(long double x) { return std::polar(1.0L, kTwoPi * x); }

std::vector<std::complex<double>> character_values(const DirichletCharacter& chi) {
  std::vector<std::complex<double>> v(chi.modulus());
  for (std::int64_t n = 0; n < chi.modulus(); ++n) v[n] = chi.value_complex(n);
  return v;
}

double tail_bound(std::int64_t T, double y) { return static_cast<double>(T) * std::exp(-2.0 * std::numbers::pi * T * y); }

}  // namespace

UpperHalfPoint::UpperHalfPoint(double x_, double y_) : x(x_), y(y_) {
  if (!(y_ > 0.0)) throw std::invalid_argument("point must lie in the upper half-plane (y > 0)");
}

std::complex<double> gauss_sum_complex(const DirichletCharacter& chi) {
  const std::int64_t q = chi.modulus();
  cld tau = 0;
  for (std::int64_t a = 0; a < q; ++a) {
    if (!chi.is_unit(a)) continue;
    tau += cld(chi.value_complex(a)) * e_of(static_cast<long double>(a) / q);
  }
  return std::complex<double>(tau);
}

std::complex<double> lambda_coefficient(const CharacterPair& pair, std::int64_t n) {
  if (n == 0) throw std::invalid_argument("lambda_coefficient: n must be nonzero");
  const std::int64_t m = n < 0 ? -n : n;
  cld sum = 0;
  for (std::int64_t a : divisors(m)) {
    const std::int64_t b = m / a;
    sum += cld(pair.chi1().value_complex(a) * std::conj(pair.chi2().value_complex(b))) *
           std::sqrt(static_cast<long double>(b) / a);
  }
  if (n < 0) sum *= cld(pair.chi2().value_complex(-1));
  return std::complex<double>(sum);
}

std::complex<double> l_one(const DirichletCharacter& chi) {
  const std::int64_t q = chi.modulus();
  if (q < 2 || !chi.is_primitive()) throw std::invalid_argument("l_one: needs a nontrivial primitive character");
  const DirichletCharacter bar = chi.conj();
  cld sum = 0;
  for (std::int64_t a = 1; a < q; ++a) {
    if (!bar.is_unit(a)) continue;
    sum += cld(bar.value_complex(a)) * std::log(1.0L - e_of(static_cast<long double>(a) / q));
  }
  return std::complex<double>(-sum / cld(gauss_sum_complex(bar)));
}

FourierSeries::FourierSeries(const CharacterPair& pair, std::int64_t truncation)
    : pair_(pair), truncation_(truncation) {
  if (truncation < 1) throw std::invalid_argument("truncation must be >= 1");
  if (pair.q1() == 1) {
    c1_ = std::complex<double>(0.0, std::numbers::pi) * embed_complex(l_minus_one(pair.chi2().conj()));
  }
  if (pair.q2() == 1) c0_ = 0.5 * l_one(pair.chi1());

  const auto chi1 = character_values(pair.chi1());
  const auto chi2 = character_values(pair.chi2());
  std::vector<cld> acc(truncation + 1, 0);
  for (std::int64_t a = 1; a <= truncation; ++a) {
    const std::complex<double> x = chi1[a % pair.q1()];
    if (x == 0.0) continue;
    const cld w = cld(x) / static_cast<long double>(a);
    for (std::int64_t b = 1, m = a; m <= truncation; ++b, m += a) {
      const std::complex<double> y = chi2[b % pair.q2()];
      if (y != 0.0) acc[m] += w * cld(std::conj(y));
    }
  }
  coefficients_.resize(truncation + 1);
  for (std::int64_t n = 0; n <= truncation; ++n) coefficients_[n] = std::complex<double>(acc[n]);
}

bool FourierSeries::sufficient_for(double y) const { return tail_bound(truncation_, y) <= kTailTolerance; }

std::complex<double> FourierSeries::evaluate(const UpperHalfPoint& z) const {
  if (!sufficient_for(z.y)) {
    throw TruncationInsufficient("truncation T = " + std::to_string(truncation_) +
                                 " is too short at Im z = " + std::to_string(z.y));
  }
  const cld q = std::polar(std::exp(-kTwoPi * z.y), kTwoPi * z.x);
  cld power = 1;
  cld sum = 0;
  for (std::int64_t n = 1; n <= truncation_; ++n) {
    power *= q;
    sum += cld(coefficients_[n]) * power;
  }
  sum += cld(c1_) * cld(z.x, z.y) + cld(c0_);
  return std::complex<double>(sum);
}

std::complex<double> evaluate_F(const CharacterPair& pair, const UpperHalfPoint& z, std::int64_t truncation) {
  return FourierSeries(pair, truncation).evaluate(z);
}

UpperHalfPoint mobius(const Matrix2& m, const UpperHalfPoint& z) {
  const long double det = static_cast<long double>(m.a) * m.d - static_cast<long double>(m.b) * m.c;
  if (det <= 0) throw std::invalid_argument("mobius: determinant must be positive");
  const cld w(z.x, z.y);
  const cld image = (static_cast<long double>(m.a) * w + static_cast<long double>(m.b)) /
                    (static_cast<long double>(m.c) * w + static_cast<long double>(m.d));
  return {static_cast<double>(image.real()), static_cast<double>(image.imag())};
}

UpperHalfPoint balanced_point(const Matrix2& m) {
  if (m.c == 0) return {0.0, 1.0};
  // c z + d = +-i  gives Im z = Im(gamma z) = 1/|c|.
  const long double c = static_cast<long double>(m.c);
  const long double ac = c < 0 ? -c : c;
  return {static_cast<double>(-static_cast<long double>(m.d) / c), static_cast<double>(1.0L / ac)};
}

UpperHalfPoint balanced_point(const ALOperator& W) {
  const Matrix2 m = W.matrix();
  if (m.c == 0) return {0.0, 1.0};
  const long double c = static_cast<long double>(m.c);
  const long double s = std::sqrt(static_cast<long double>(W.Q));
  const long double ac = c < 0 ? -c : c;
  return {static_cast<double>(-static_cast<long double>(m.d) / c), static_cast<double>(s / ac)};
}

std::complex<double> phi_gamma(const CharacterPair& pair, const CongruenceMatrix& gamma, const UpperHalfPoint& z,
                               std::int64_t truncation) {
  FourierSeries F(pair, truncation);
  const std::complex<double> psi = pair.chi1().value_complex(gamma.d()) * std::conj(pair.chi2().value_complex(gamma.d()));
  return F.evaluate(mobius(gamma.matrix(), z)) - psi * F.evaluate(z);
}

std::complex<double> phi_WQ(const CharacterPair& pair, const ALOperator& W, const UpperHalfPoint& z,
                            std::int64_t truncation) {
  const CharacterPair swapped = swap_characters(pair, W.Q, W.R);
  const std::complex<double> beta = embed_complex(beta_constant(pair, W));
  return FourierSeries(pair, truncation).evaluate(mobius(W.matrix(), z)) -
         beta * FourierSeries(swapped, truncation).evaluate(z);
}

std::complex<double> dedekind_sum_WQ(const CharacterPair& pair, const ALOperator& W, std::int64_t truncation) {
  const std::complex<double> scale = gauss_sum_complex(pair.chi1().conj()) / std::complex<double>(0.0, std::numbers::pi);
  return scale * phi_WQ(pair, W, balanced_point(W), truncation);
}

EisensteinCocycle::EisensteinCocycle(CharacterPair pair, std::int64_t initial_T, std::int64_t max_T)
    : pair_(std::move(pair)), initial_T_(initial_T), max_T_(max_T) {
  if (initial_T < 1 || max_T < initial_T) throw std::invalid_argument("invalid truncation range");
}

const FourierSeries& EisensteinCocycle::series(std::int64_t T) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto& slot = series_[T];
  if (!slot) slot = std::make_unique<FourierSeries>(pair_, T);
  if (T > last_T_) last_T_ = T;
  return *slot;
}

std::int64_t EisensteinCocycle::last_truncation() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return last_T_;
}

std::complex<double> EisensteinCocycle::F(const UpperHalfPoint& z) const {
  for (std::int64_t T = initial_T_; T <= max_T_; T *= 2) {
    const FourierSeries& s = series(T);
    if (s.sufficient_for(z.y)) return s.evaluate(z);
  }
  throw TruncationInsufficient("no truncation up to T = " + std::to_string(max_T_) + " suffices at Im z = " +
                               std::to_string(z.y));
}

std::complex<double> EisensteinCocycle::phi(const CongruenceMatrix& gamma, const UpperHalfPoint& z) const {
  const std::complex<double> psi =
      pair_.chi1().value_complex(gamma.d()) * std::conj(pair_.chi2().value_complex(gamma.d()));
  return F(mobius(gamma.matrix(), z)) - psi * F(z);
}

std::complex<double> EisensteinCocycle::phi(const CongruenceMatrix& gamma) const {
  // -gamma acts the same way; only its c sign matters for the balanced point.
  return phi(gamma, balanced_point(gamma.matrix()));
}

std::complex<double> EisensteinCocycle::dedekind_sum(const CongruenceMatrix& gamma) const {
  const std::complex<double> scale = gauss_sum_complex(pair_.chi1().conj()) / std::complex<double>(0.0, std::numbers::pi);
  return scale * phi(gamma);
}

const EisensteinCocycle& EisensteinCocycle::swapped(const ALOperator& W) const {
  const CharacterPair sw = swap_characters(pair_, W.Q, W.R);
  std::lock_guard<std::mutex> lock(mutex_);
  auto& slot = swapped_[sw.label()];
  if (!slot) slot = std::make_unique<EisensteinCocycle>(sw, initial_T_, max_T_);
  return *slot;
}

std::complex<double> EisensteinCocycle::phi_WQ(const ALOperator& W, const UpperHalfPoint& z) const {
  const std::complex<double> beta = embed_complex(beta_constant(pair_, W));
  return F(mobius(W.matrix(), z)) - beta * swapped(W).F(z);
}

std::complex<double> EisensteinCocycle::phi_WQ(const ALOperator& W) const { return phi_WQ(W, balanced_point(W)); }

std::complex<double> EisensteinCocycle::dedekind_sum_WQ(const ALOperator& W) const {
  const std::complex<double> scale = gauss_sum_complex(pair_.chi1().conj()) / std::complex<double>(0.0, std::numbers::pi);
  return scale * phi_WQ(W);
}

}  // namespace nds
