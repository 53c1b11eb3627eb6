#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "nds/atkin_lehner.hpp"
#include "nds/dedekind_sum.hpp"
#include "nds/eisenstein.hpp"
#include "nds/number_theory.hpp"
#include "support/oracle.hpp"

using namespace nds;

namespace {

oracle::Character as_oracle(const DirichletCharacter& chi) { return {chi.modulus(), chi.exponents()}; }

CharacterPair pair_3_5() { return admissible_pairs(3, 5).front(); }

CharacterPair pair_1_5() { return CharacterPair(DirichletCharacter::parse("1:"), DirichletCharacter::parse("5:2")); }

void expect_near(std::complex<double> x, std::complex<double> y, double tol) {
  EXPECT_NEAR(x.real(), y.real(), tol) << x << " vs " << y;
  EXPECT_NEAR(x.imag(), y.imag(), tol) << x << " vs " << y;
}

}  // namespace

TEST(Fourier, LambdaMatchesDivisorSum) {
  for (const CharacterPair& p : {pair_3_5(), admissible_pairs(4, 3).front(), pair_1_5()}) {
    const oracle::Character x1 = as_oracle(p.chi1()), x2 = as_oracle(p.chi2());
    for (std::int64_t n = -40; n <= 40; ++n) {
      if (n == 0) continue;
      const std::int64_t m = std::abs(n);
      oracle::cplx want = 0;
      for (std::int64_t a = 1; a <= m; ++a) {
        if (m % a == 0) want += x1(a) * std::conj(x2(m / a)) * std::sqrt(static_cast<double>(m / a) / a);
      }
      if (n < 0) want *= x2(-1);
      expect_near(lambda_coefficient(p, n), want, 1e-12);
    }
  }
  EXPECT_THROW(lambda_coefficient(pair_3_5(), 0), std::invalid_argument);
}

TEST(Fourier, CoefficientsAreNormalisedLambda) {
  const FourierSeries F(pair_3_5(), 200);
  ASSERT_EQ(F.coefficients().size(), 201u);
  for (std::int64_t n = 1; n <= 200; ++n) {
    expect_near(F.coefficients()[n], lambda_coefficient(pair_3_5(), n) / std::sqrt(static_cast<double>(n)), 1e-12);
  }
  EXPECT_EQ(F.c1(), std::complex<double>(0.0));
  EXPECT_EQ(F.c0(), std::complex<double>(0.0));
}

TEST(Fourier, LinearTermForTrivialChi1) {
  const FourierSeries F(pair_1_5(), 100);
  // L(-1, chi_5) = -B_{2,chi_5}/2 = -2/5.
  expect_near(F.c1(), std::complex<double>(0.0, -0.4 * std::numbers::pi), 1e-13);
  EXPECT_EQ(F.c0(), std::complex<double>(0.0));
}

TEST(Fourier, ConstantTermForTrivialChi2) {
  const CharacterPair p(DirichletCharacter::parse("5:2"), DirichletCharacter::parse("1:"));
  const FourierSeries F(p, 100);
  // L(1, chi_5) = 2 log(golden ratio)/sqrt 5.
  const double l1 = 2.0 * std::log((1.0 + std::sqrt(5.0)) / 2.0) / std::sqrt(5.0);
  expect_near(F.c0(), 0.5 * l1, 1e-13);
  expect_near(l_one(DirichletCharacter::parse("5:2")), l1, 1e-13);
}

TEST(Fourier, LOneMatchesPartialSums) {
  // Odd character mod 3: L(1) = pi / (3 sqrt 3).
  expect_near(l_one(DirichletCharacter::parse("3:1")), std::numbers::pi / (3.0 * std::sqrt(3.0)), 1e-13);
  // Odd character mod 4: L(1) = pi / 4.
  expect_near(l_one(DirichletCharacter::parse("4:1")), std::numbers::pi / 4.0, 1e-13);
  EXPECT_THROW(l_one(DirichletCharacter::parse("1:")), std::invalid_argument);
  EXPECT_THROW(l_one(DirichletCharacter::parse("9:3")), std::invalid_argument);
}

TEST(Fourier, PeriodicWhenChi1Nontrivial) {
  const FourierSeries F(pair_3_5(), 2000);
  for (double x : {-0.7, 0.0, 0.31, 2.5}) {
    expect_near(F.evaluate({x + 1.0, 0.05}), F.evaluate({x, 0.05}), 1e-11);
  }
}

TEST(Fourier, TruncationDoublingIsStable) {
  const CharacterPair p = pair_3_5();
  expect_near(evaluate_F(p, {0.0, 1.0}, 2000), evaluate_F(p, {0.0, 1.0}, 4000), 1e-12);
  expect_near(evaluate_F(p, {0.2, 0.01}, 2000), evaluate_F(p, {0.2, 0.01}, 4000), 1e-12);
}

TEST(Fourier, RejectsShortTruncation) {
  const FourierSeries F(pair_3_5(), 50);
  EXPECT_TRUE(F.sufficient_for(1.0));
  EXPECT_FALSE(F.sufficient_for(0.01));
  EXPECT_THROW(F.evaluate({0.0, 0.01}), TruncationInsufficient);
  EXPECT_THROW(FourierSeries(pair_3_5(), 0), std::invalid_argument);
}

TEST(Fourier, UpperHalfPlaneValidation) {
  EXPECT_THROW(UpperHalfPoint(0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(UpperHalfPoint(0.0, -1.0), std::invalid_argument);
  EXPECT_NO_THROW(UpperHalfPoint(3.0, 1e-9));
}

TEST(Fourier, BalancedPoints) {
  const Matrix2 g{4, 1, 15, 4};
  const UpperHalfPoint z = balanced_point(g);
  EXPECT_NEAR(z.y, 1.0 / 15, 1e-15);
  EXPECT_NEAR(mobius(g, z).y, 1.0 / 15, 1e-12);
  const UpperHalfPoint zn = balanced_point(Matrix2{-4, -1, -15, -4});
  EXPECT_NEAR(zn.y, 1.0 / 15, 1e-15);
  const ALOperator W = build_al_operator(15, 5, 1, 1);
  const UpperHalfPoint w = balanced_point(W);
  EXPECT_NEAR(w.y, std::sqrt(5.0) / 15, 1e-15);
  EXPECT_NEAR(mobius(W.matrix(), w).y, w.y, 1e-12);
}

TEST(Cocycle, VanishesOnIdentityAndTranslation) {
  const EisensteinCocycle phi(pair_3_5());
  expect_near(phi.phi(CongruenceMatrix::identity(15)), 0.0, 1e-12);
  expect_near(phi.phi(CongruenceMatrix(1, 1, 0, 1, 15)), 0.0, 1e-12);
  expect_near(phi.phi(CongruenceMatrix(1, -7, 0, 1, 15)), 0.0, 1e-12);
}

TEST(Cocycle, IndependentOfBasePoint) {
  const EisensteinCocycle phi(pair_3_5());
  const CongruenceMatrix g(4, 1, 15, 4, 15);
  const std::complex<double> base = phi.phi(g);
  for (const UpperHalfPoint& z : {UpperHalfPoint(0.0, 0.5), UpperHalfPoint(0.3, 0.2), UpperHalfPoint(-0.27, 0.1),
                                  UpperHalfPoint(1.4, 0.07), UpperHalfPoint(-0.25, 0.3)}) {
    expect_near(phi.phi(g, z), base, 1e-9);
  }
}

TEST(Cocycle, MatchesExactSum) {
  std::mt19937_64 rng(11);
  for (const CharacterPair& p : admissible_pairs(3, 5)) {
    const EisensteinCocycle phi(p);
    for (int i = 0; i < 8; ++i) {
      const oracle::Mat m = oracle::random_gamma0(rng, 15, 4, 40);
      const CongruenceMatrix g(m.a, m.b, m.c, m.d, 15);
      if (g.c() == 0) continue;
      expect_near(phi.dedekind_sum(g), embed_complex(dedekind_sum(p, g)), 1e-8);
    }
  }
}

TEST(Cocycle, MatchesExactSumWithTrivialChi2) {
  const CharacterPair p(DirichletCharacter::parse("5:2"), DirichletCharacter::parse("1:"));
  const EisensteinCocycle phi(p);
  for (const CongruenceMatrix& g : {CongruenceMatrix(2, 1, 5, 3, 5), CongruenceMatrix(3, -1, 10, -3, 5),
                                    CongruenceMatrix(-4, 1, -25, 6, 5)}) {
    expect_near(phi.dedekind_sum(g), embed_complex(dedekind_sum(p, g)), 1e-8);
  }
}

TEST(Cocycle, CrossedHomomorphism) {
  std::mt19937_64 rng(5);
  for (const CharacterPair& p : {pair_3_5(), pair_1_5()}) {
    const EisensteinCocycle phi(p);
    for (int i = 0; i < 6; ++i) {
      const oracle::Mat x = oracle::random_gamma0(rng, 15, 2, 20), y = oracle::random_gamma0(rng, 15, 2, 20);
      const CongruenceMatrix g(x.a, x.b, x.c, x.d, 15), h(y.a, y.b, y.c, y.d, 15);
      const std::complex<double> psi = p.psi().value_complex(g.d());
      expect_near(phi.phi(g * h), phi.phi(g) + psi * phi.phi(h), 1e-8);
    }
  }
}

TEST(Cocycle, TrivialChi1TranslationTerm) {
  const CharacterPair p = pair_1_5();
  const EisensteinCocycle phi(p);
  // S(gamma) for c = 0 is eps b L(-1, conj chi2); the numeric path agrees.
  for (const CongruenceMatrix& g :
       {CongruenceMatrix(1, 3, 0, 1, 5), CongruenceMatrix(-1, 2, 0, -1, 5), CongruenceMatrix(-1, -2, 0, -1, 5)}) {
    expect_near(phi.dedekind_sum(g), embed_complex(dedekind_sum(p, g)), 1e-9);
  }
  EXPECT_THROW(dedekind_sum(p, CongruenceMatrix(1, 0, 5, 1, 5)), NotExactlyComputable);
  EXPECT_NO_THROW(phi.dedekind_sum(CongruenceMatrix(1, 0, 5, 1, 5)));
}

TEST(Cocycle, RecordsTruncation) {
  const EisensteinCocycle phi(pair_3_5(), 100, 6400);
  phi.F({0.0, 1.0});
  EXPECT_EQ(phi.last_truncation(), 100);
  phi.F({0.0, 0.005});
  EXPECT_GT(phi.last_truncation(), 100);
  EXPECT_LE(phi.last_truncation(), 6400);
  EXPECT_THROW(phi.F({0.0, 1e-5}), TruncationInsufficient);
  EXPECT_THROW(EisensteinCocycle(pair_3_5(), 100, 50), std::invalid_argument);
}

TEST(AtkinLehnerCocycle, IndependentOfBasePoint) {
  const EisensteinCocycle phi(pair_3_5());
  const ALOperator W = build_al_operator(15, 5, 1, 1);
  const std::complex<double> base = phi.phi_WQ(W);
  for (const UpperHalfPoint& z : {UpperHalfPoint(0.0, 0.5), UpperHalfPoint(0.3, 0.2), UpperHalfPoint(-0.6, 0.1),
                                  UpperHalfPoint(1.1, 0.08), UpperHalfPoint(-0.25, 0.3)}) {
    expect_near(phi.phi_WQ(W, z), base, 1e-9);
  }
}

TEST(AtkinLehnerCocycle, FreeFunctionsAgreeWithCocycle) {
  const CharacterPair p = pair_3_5();
  const ALOperator W = build_al_operator(15, 5, 1, 1);
  const EisensteinCocycle phi(p);
  expect_near(dedekind_sum_WQ(p, W, 4000), phi.dedekind_sum_WQ(W), 1e-10);
  const CongruenceMatrix g(4, 1, 15, 4, 15);
  expect_near(phi_gamma(p, g, {0.1, 0.3}, 4000), phi.phi(g), 1e-9);
}

TEST(AtkinLehnerCocycle, NumericReciprocity) {
  std::mt19937_64 rng(21);
  const ALOperator W = build_al_operator(15, 5, 1, 1);
  const ALOperator Wp = W.shifted(1);
  for (const CharacterPair& p : admissible_pairs(3, 5)) {
    for (int i = 0; i < 4; ++i) {
      const oracle::Mat m = oracle::random_gamma0(rng, 15, 3, 30);
      const ReciprocityReport r =
          verify_reciprocity(p, W, Wp, CongruenceMatrix(m.a, m.b, m.c, m.d, 15), ReciprocityMode::Numeric);
      EXPECT_EQ(r.branch, "numeric");
      EXPECT_LT(r.residual, 1e-8) << p.label();
      EXPECT_TRUE(r.passed);
    }
  }
}

TEST(Fourier, LambdaExamples) {
  const CharacterPair p = pair_3_5();
  expect_near(lambda_coefficient(p, 1), 1.0, 1e-15);
  expect_near(lambda_coefficient(p, -1), -1.0, 1e-15);  // chi2 odd
  const std::complex<double> x1 = p.chi1().value_complex(7), x2 = p.chi2().value_complex(7);
  expect_near(lambda_coefficient(p, 7), std::conj(x2) * std::sqrt(7.0) + x1 / std::sqrt(7.0), 1e-13);
}

TEST(Fourier, TruncationConvergenceUpToLevel35) {
  for (std::int64_t N = 2; N <= 35; ++N) {
    for (std::int64_t q1 : divisors(N)) {
      for (const CharacterPair& p : admissible_pairs(q1, N / q1)) {
        const FourierSeries a(p, 1000), b(p, 2000);
        for (const UpperHalfPoint& z : {UpperHalfPoint(0.0, 0.5), UpperHalfPoint(0.37, 0.8)}) {
          EXPECT_LT(std::abs(a.evaluate(z) - b.evaluate(z)), 1e-10) << p.label();
        }
      }
    }
  }
}

TEST(AtkinLehnerCocycle, DependsOnCompletion) {
  const CharacterPair p = admissible_pairs(3, 5).front();
  const EisensteinCocycle phi(p);
  const ALOperator W = build_al_operator(15, 5, 1, 1);
  const ALOperator V = build_al_operator(15, 5, 7, 11);
  ASSERT_TRUE(W.same_class(V));
  const std::complex<double> sw = phi.dedekind_sum_WQ(W), sv = phi.dedekind_sum_WQ(V);
  expect_near(sw, {0.0, 1.0 / 3}, 1e-9);
  expect_near(sv, {-2.0, 7.0 / 3}, 1e-9);
  // Right translation leaves S(W) unchanged.
  expect_near(phi.dedekind_sum_WQ(W.shifted(2)), sw, 1e-9);
  const ReciprocityReport r =
      verify_reciprocity(p, W, V, CongruenceMatrix(4, 1, 15, 4, 15), ReciprocityMode::Numeric);
  EXPECT_LT(r.residual, 1e-8);
}
