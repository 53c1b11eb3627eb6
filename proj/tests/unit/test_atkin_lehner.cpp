#include <gtest/gtest.h>

#include <random>

#include "nds/atkin_lehner.hpp"
#include "nds/dedekind_sum.hpp"
#include "nds/number_theory.hpp"
#include "support/oracle.hpp"

using namespace nds;

namespace {

CongruenceMatrix to_matrix(const oracle::Mat& m, std::int64_t N) { return {m.a, m.b, m.c, m.d, N}; }

// W gamma adj(W') / Q by plain matrix products.
oracle::Mat conjugate_by_product(const ALOperator& W, const ALOperator& Wp, const CongruenceMatrix& g) {
  const Matrix2 w = W.matrix(), wp = Wp.matrix();
  const oracle::Mat adj{wp.d, -wp.b, -wp.c, wp.a};
  const oracle::Mat m = oracle::mul(oracle::mul({w.a, w.b, w.c, w.d}, {g.a(), g.b(), g.c(), g.d()}), adj);
  EXPECT_EQ(m.a % W.Q, 0);
  EXPECT_EQ(m.b % W.Q, 0);
  EXPECT_EQ(m.c % W.Q, 0);
  EXPECT_EQ(m.d % W.Q, 0);
  return {m.a / W.Q, m.b / W.Q, m.c / W.Q, m.d / W.Q};
}

std::vector<ALOperator> operators(std::int64_t N, int per_class_shift = 1) {
  std::vector<ALOperator> out;
  for (std::int64_t Q : divisors(N)) {
    const std::int64_t R = N / Q;
    if (gcd(Q, R) != 1) continue;
    for (std::int64_t r0 : {1, 2}) {
      for (std::int64_t u0 : {1, 2}) {
        if (gcd(r0, R) != 1 || gcd(u0, Q) != 1) continue;
        const ALOperator W = build_al_operator(N, Q, r0, u0);
        out.push_back(W);
        if (per_class_shift) out.push_back(W.shifted(per_class_shift));
      }
    }
  }
  return out;
}

}  // namespace

TEST(AtkinLehner, BuildExamples) {
  const ALOperator W = build_al_operator(15, 5, 1, 1);
  EXPECT_EQ(W.matrix(), (Matrix2{5, 3, 15, 10}));
  EXPECT_EQ(W.det(), 5);
  EXPECT_EQ(5 * 1 * 2 - 3 * 1 * 3, 1);
  const ALOperator W77 = build_al_operator(77, 11, 1, 2);
  EXPECT_EQ(W77.det(), 11);
  EXPECT_EQ(mod(W77.u, 11), 2);
  EXPECT_EQ(mod(W77.r, 7), 1);
  EXPECT_EQ(W77.Q * W77.r * W77.v - W77.R * W77.u * W77.t, 1);
}

TEST(AtkinLehner, BuildValidation) {
  EXPECT_THROW(build_al_operator(15, 4, 1, 1), std::invalid_argument);
  EXPECT_THROW(build_al_operator(12, 2, 1, 1), std::invalid_argument);
  EXPECT_THROW(build_al_operator(15, 5, 3, 1), std::invalid_argument);
  EXPECT_THROW(build_al_operator(15, 5, 1, 5), std::invalid_argument);
}

TEST(AtkinLehner, BuildRetriesR) {
  // r0 = 2 shares a factor with u0 = 2, so r must step to 2 + R.
  const ALOperator W = build_al_operator(35, 5, 2, 2);
  EXPECT_EQ(W.r, 9);
  EXPECT_EQ(W.det(), 5);
}

TEST(AtkinLehner, Fricke) {
  EXPECT_EQ(fricke(15).matrix(), (Matrix2{0, -1, 15, 0}));
  EXPECT_EQ(fricke(1).matrix(), (Matrix2{0, -1, 1, 0}));
  EXPECT_EQ(fricke(77).det(), 77);
  EXPECT_EQ(build_al_operator(15, 15, 0, 1).matrix(), fricke(15).matrix());
}

TEST(AtkinLehner, ConjugateMatchesMatrixProduct) {
  std::mt19937_64 rng(17);
  for (std::int64_t N : {15, 77, 35}) {
    const auto ops = operators(N);
    for (int trial = 0; trial < 100; ++trial) {
      const ALOperator& W = ops[rng() % ops.size()];
      std::vector<ALOperator> partners;
      for (const auto& o : ops) {
        if (o.same_class(W)) partners.push_back(o);
      }
      const ALOperator& Wp = partners[rng() % partners.size()];
      const CongruenceMatrix g = to_matrix(oracle::random_gamma0(rng, N), N);
      const CongruenceMatrix gp = conjugate(W, Wp, g);
      const oracle::Mat ref = conjugate_by_product(W, Wp, g);
      EXPECT_EQ(gp.matrix(), (Matrix2{ref.a, ref.b, ref.c, ref.d}));
    }
  }
}

TEST(AtkinLehner, ConjugateExamples) {
  const ALOperator W = build_al_operator(15, 5, 1, 1);
  const ALOperator Wp = W.shifted(2);
  EXPECT_TRUE(conjugate(W, Wp, CongruenceMatrix::identity(15)).in_gamma1());
  for (std::int64_t k : {1, 2, 5}) {
    const CongruenceMatrix g(1, -k, 0, 1, 15);
    const CongruenceMatrix gp = conjugate(W, W, g);
    EXPECT_EQ(gp.a(), 1 + 15 * k * W.u * W.r);
    EXPECT_EQ(gp.c(), 15 * 3 * k * W.u * W.u);
  }
  const CongruenceMatrix g(16, -5, 45, -14, 15);
  const CongruenceMatrix gp = conjugate(fricke(15), fricke(15), g);
  EXPECT_EQ(gp.matrix(), (Matrix2{-14, -3, 75, 16}));
  EXPECT_THROW(conjugate(W, build_al_operator(15, 3, 1, 1), g), std::invalid_argument);
}

TEST(AtkinLehner, DiagonalCongruences) {
  std::mt19937_64 rng(23);
  for (std::int64_t N : {15, 77}) {
    const auto ops = operators(N, 3);
    for (int trial = 0; trial < 100; ++trial) {
      const ALOperator& W = ops[rng() % ops.size()];
      const ALOperator Wp = W.shifted(static_cast<std::int64_t>(rng() % 5) - 2);
      const CongruenceMatrix g = to_matrix(oracle::random_gamma0(rng, N), N);
      const CongruenceMatrix gp = conjugate(W, Wp, g);
      EXPECT_EQ(mod(gp.d() - g.d(), W.R), 0);
      EXPECT_EQ(mod(gp.d() * g.d() - 1, W.Q), 0);
    }
  }
}

TEST(AtkinLehner, ConjugateCompatibleWithProducts) {
  std::mt19937_64 rng(29);
  const ALOperator W = build_al_operator(15, 3, 1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const CongruenceMatrix g1 = to_matrix(oracle::random_gamma0(rng, 15, 3, 20), 15);
    const CongruenceMatrix g2 = to_matrix(oracle::random_gamma0(rng, 15, 3, 20), 15);
    EXPECT_EQ(conjugate(W, W, g1 * g2), conjugate(W, W, g1) * conjugate(W, W, g2));
  }
}

TEST(AtkinLehner, PsiPrime) {
  for (auto [q1, q2] : std::vector<std::pair<int, int>>{{3, 5}, {5, 13}, {7, 11}, {4, 5}}) {
    const std::int64_t N = q1 * q2;
    for (const CharacterPair& p : admissible_pairs(q1, q2)) {
      EXPECT_EQ(psi_prime(p, N, 1), p.psi().conj());
      EXPECT_EQ(psi_prime(p, 1, N), p.psi());
      for (std::int64_t Q : divisors(N)) {
        const std::int64_t R = N / Q;
        if (gcd(Q, R) != 1) continue;
        const CharacterPair s = swap_characters(p, Q, R);
        const DirichletCharacter pp = psi_prime(p, Q, R);
        for (std::int64_t n = 1; n < N; ++n) {
          if (gcd(n, N) == 1) EXPECT_EQ(pp.value(n), s.chi1().value(n) * s.chi2().conj().value(n));
        }
      }
    }
  }
}

TEST(AtkinLehner, ConstantsBasicCases) {
  for (const CharacterPair& p : admissible_pairs(3, 5)) {
    const ALOperator id = build_al_operator(15, 1, 1, 1);
    EXPECT_EQ(pseudo_eigenvalue_C(p, id), CyclotomicNumber(1));
    EXPECT_EQ(beta_constant(p, id), CyclotomicNumber(1));
    // With Q = 1 the operator lies in Gamma0(N), so C = psi(v) = conj(psi)(r0).
    const ALOperator id2 = build_al_operator(15, 1, 2, 1);
    EXPECT_EQ(pseudo_eigenvalue_C(p, id2), p.psi().conj().value(2));
    // Fricke (R = 1): q1^(R) = 1, so C = chi1(-1) psi(u0) = chi1(-1).
    const ALOperator F = fricke(15);
    EXPECT_EQ(pseudo_eigenvalue_C(p, F), p.chi1().value(-1));
  }
}

TEST(AtkinLehner, FrickeXiIsParitySign) {
  for (auto [q1, q2] : std::vector<std::pair<int, int>>{{3, 5}, {5, 13}, {7, 11}, {4, 5}, {3, 7}}) {
    for (const CharacterPair& p : admissible_pairs(q1, q2)) {
      EXPECT_EQ(xi_constant(p, fricke(q1 * q2)), CyclotomicNumber(p.chi1().parity())) << p.label();
    }
  }
}

TEST(AtkinLehner, ConstantModuli) {
  for (std::int64_t N : {15, 35, 77}) {
    std::vector<std::pair<int, int>> splits;
    for (std::int64_t q1 : divisors(N)) {
      if (gcd(q1, N / q1) == 1 && q1 > 1) splits.emplace_back(q1, N / q1);
    }
    for (auto [q1, q2] : splits) {
      for (const CharacterPair& p : admissible_pairs(q1, q2)) {
        for (const ALOperator& W : operators(N, 0)) {
          const CharacterPair s = swap_characters(p, W.Q, W.R);
          EXPECT_NEAR(std::abs(embed_complex(pseudo_eigenvalue_C(p, W))), 1.0, 1e-12);
          EXPECT_NEAR(std::abs(embed_complex(xi_constant(p, W))), 1.0, 1e-10);
          const double expected = q2 * std::sqrt(static_cast<double>(s.q2())) / (s.q2() * std::sqrt(double(q2)));
          EXPECT_NEAR(std::abs(embed_complex(beta_constant(p, W))), expected, 1e-10);
        }
      }
    }
  }
}

TEST(AtkinLehner, BetaIndependentOfCompletion) {
  for (const CharacterPair& p : admissible_pairs(3, 5)) {
    for (const ALOperator& W : operators(15, 0)) {
      for (int m : {-2, 1, 3}) EXPECT_EQ(beta_constant(p, W), beta_constant(p, W.shifted(m)));
    }
  }
}

TEST(AtkinLehner, SimplifiedReciprocityExact) {
  std::mt19937_64 rng(31);
  for (auto [q1, q2] : std::vector<std::pair<int, int>>{{3, 5}, {5, 3}, {5, 13}}) {
    const std::int64_t N = q1 * q2;
    for (const CharacterPair& p : admissible_pairs(q1, q2)) {
      for (const ALOperator& W : operators(N, 0)) {
        const CharacterPair s = swap_characters(p, W.Q, W.R);
        if (s.q1() == 1) continue;
        for (int trial = 0; trial < 6; ++trial) {
          const CongruenceMatrix g = to_matrix(oracle::random_gamma1(rng, N, 4, 40), N);
          const ReciprocityReport rep = verify_reciprocity(p, W, W, g);
          EXPECT_EQ(rep.branch, "exact");
          EXPECT_TRUE(rep.passed) << p.label() << " " << W.to_string() << " " << g.to_string();
        }
      }
    }
  }
}

TEST(AtkinLehner, ExactModeRejectsGamma0) {
  const CharacterPair p = admissible_pairs(3, 5).front();
  const ALOperator W = fricke(15);
  EXPECT_THROW(verify_reciprocity(p, W, W, CongruenceMatrix::from_left_column(2, 15, 15), ReciprocityMode::Exact),
               std::invalid_argument);
  EXPECT_TRUE(verify_reciprocity(p, W, W, CongruenceMatrix::identity(15)).passed);
}
