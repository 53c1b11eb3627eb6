#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "nds/atkin_lehner.hpp"
#include "nds/character.hpp"
#include "nds/errors.hpp"
#include "nds/matrix.hpp"

namespace nds {

struct UpperHalfPoint {
  double x = 0.0;
  double y = 1.0;

  UpperHalfPoint() = default;
  UpperHalfPoint(double x_, double y_);
  std::complex<double> z() const { return {x, y}; }
};

/// lambda(n, 1) = chi2(sgn n) sum_{ab=|n|} chi1(a) conj(chi2)(b) sqrt(b/a).
std::complex<double> lambda_coefficient(const CharacterPair& pair, std::int64_t n);

/// L(1, chi) for a nontrivial primitive chi, from
/// L(1, chi) = -(1/tau(conj chi)) sum_{a=1}^{q-1} conj(chi)(a) log(1 - e(a/q)).
std::complex<double> l_one(const DirichletCharacter& chi);

/// F(z) = c1 z + c0 + sum_{n=1}^{T} (lambda(n,1)/sqrt n) e(nz).
class FourierSeries {
 public:
  FourierSeries(const CharacterPair& pair, std::int64_t truncation);

  const CharacterPair& pair() const { return pair_; }
  std::int64_t truncation() const { return truncation_; }
  std::complex<double> c1() const { return c1_; }
  std::complex<double> c0() const { return c0_; }
  /// Index n holds lambda(n,1)/sqrt(n); index 0 is unused.
  const std::vector<std::complex<double>>& coefficients() const { return coefficients_; }

  /// Throws TruncationInsufficient when T e^{-2 pi T y} exceeds 1e-14.
  std::complex<double> evaluate(const UpperHalfPoint& z) const;
  bool sufficient_for(double y) const;

 private:
  CharacterPair pair_;
  std::int64_t truncation_;
  std::complex<double> c1_, c0_;
  std::vector<std::complex<double>> coefficients_;
};

std::complex<double> evaluate_F(const CharacterPair& pair, const UpperHalfPoint& z, std::int64_t truncation);

/// Mobius action of a real matrix with positive determinant.
UpperHalfPoint mobius(const Matrix2& m, const UpperHalfPoint& z);

/// z with Im z = Im(gamma z) = 1/|c| (z = i when c = 0).
UpperHalfPoint balanced_point(const Matrix2& m);
/// z with Im z = Im(W z) = sqrt(Q)/(N u) (z = i when u = 0).
UpperHalfPoint balanced_point(const ALOperator& W);

std::complex<double> phi_gamma(const CharacterPair& pair, const CongruenceMatrix& gamma, const UpperHalfPoint& z,
                               std::int64_t truncation);
std::complex<double> phi_WQ(const CharacterPair& pair, const ALOperator& W, const UpperHalfPoint& z,
                            std::int64_t truncation);
std::complex<double> dedekind_sum_WQ(const CharacterPair& pair, const ALOperator& W, std::int64_t truncation);

/// F for one pair with truncation doubling from initial_T up to max_T.
/// Series are built once per truncation and shared; safe for concurrent use.
class EisensteinCocycle {
 public:
  static constexpr std::int64_t kInitialTruncation = 2000;
  static constexpr std::int64_t kMaxTruncation = 64000;

  explicit EisensteinCocycle(CharacterPair pair, std::int64_t initial_T = kInitialTruncation,
                             std::int64_t max_T = kMaxTruncation);

  const CharacterPair& pair() const { return pair_; }
  std::complex<double> F(const UpperHalfPoint& z) const;
  /// Truncation used by the most demanding evaluation so far.
  std::int64_t last_truncation() const;

  std::complex<double> phi(const CongruenceMatrix& gamma) const;
  std::complex<double> phi(const CongruenceMatrix& gamma, const UpperHalfPoint& z) const;
  /// tau(conj chi1)/(pi i) phi(gamma).
  std::complex<double> dedekind_sum(const CongruenceMatrix& gamma) const;

  /// F(Wz) - beta F'(z) with F' the swapped pair's series.
  std::complex<double> phi_WQ(const ALOperator& W, const UpperHalfPoint& z) const;
  std::complex<double> phi_WQ(const ALOperator& W) const;
  std::complex<double> dedekind_sum_WQ(const ALOperator& W) const;

 private:
  const FourierSeries& series(std::int64_t T) const;
  const EisensteinCocycle& swapped(const ALOperator& W) const;

  CharacterPair pair_;
  std::int64_t initial_T_, max_T_;
  mutable std::mutex mutex_;
  mutable std::map<std::int64_t, std::unique_ptr<FourierSeries>> series_;
  mutable std::map<std::string, std::unique_ptr<EisensteinCocycle>> swapped_;
  mutable std::int64_t last_T_ = 0;
};

/// tau(conj chi) as a complex number (1 for the trivial character).
std::complex<double> gauss_sum_complex(const DirichletCharacter& chi);

}  // namespace nds
