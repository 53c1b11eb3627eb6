#include "nds/atkin_lehner.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nds/dedekind_sum.hpp"
#include "nds/eisenstein.hpp"
#include "nds/number_theory.hpp"

namespace nds {
namespace {

constexpr double kNumericTolerance = 1e-8;

std::int64_t narrow(__int128 x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("conjugate: entry exceeds 64 bits");
  }
  return static_cast<std::int64_t>(x);
}

std::complex<double> sum_value(const CharacterPair& pair, const CongruenceMatrix& gamma, const EisensteinCocycle& F) {
  try {
    return embed_complex(dedekind_sum(pair, gamma));
  } catch (const NotExactlyComputable&) {
    return F.dedekind_sum(gamma);
  }
}

}  // namespace

ALOperator ALOperator::shifted(std::int64_t m) const {
  ALOperator w = *this;
  w.t = checked_add(t, checked_mul(m, checked_mul(Q, r)));
  w.v = checked_add(v, checked_mul(m, checked_mul(R, u)));
  return w;
}

bool ALOperator::same_class(const ALOperator& o) const {
  return N == o.N && Q == o.Q && R == o.R && mod(r - o.r, R) == 0 && mod(u - o.u, Q) == 0;
}

std::string ALOperator::to_string() const {
  std::ostringstream out;
  out << matrix().to_string() << " [Q=" << Q << ", R=" << R << ", r=" << r << ", t=" << t << ", u=" << u
      << ", v=" << v << ", r0=" << r0 << ", u0=" << u0 << "]";
  return out.str();
}

ALOperator build_al_operator(std::int64_t N, std::int64_t Q, std::int64_t r0, std::int64_t u0) {
  if (N < 1 || Q < 1 || N % Q != 0) throw std::invalid_argument("Q must divide N");
  const std::int64_t R = N / Q;
  if (gcd(Q, R) != 1) throw std::invalid_argument("Q and N/Q must be coprime");
  if (gcd(r0, R) != 1) throw std::invalid_argument("gcd(r0, N/Q) must be 1");
  if (gcd(u0, Q) != 1) throw std::invalid_argument("gcd(u0, Q) must be 1");
  constexpr int kMaxSteps = 1 << 20;
  std::int64_t r = r0;
  for (int step = 0; step < kMaxSteps; ++step, r = checked_add(r, R)) {
    const std::int64_t qr = checked_mul(Q, r);
    const std::int64_t ru = checked_mul(R, u0);
    Bezout e = extended_gcd(qr, ru);
    if (e.g != 1) continue;
    // qr x + ru y = 1, so v = x and t = -y; shift v into [0, |ru|).
    const std::int64_t period = ru < 0 ? -ru : ru;
    const std::int64_t v = period == 0 ? e.x : mod(e.x, period);
    const std::int64_t t = ru == 0 ? -e.y : (checked_mul(qr, v) - 1) / ru;
    ALOperator w{N, Q, R, r, t, u0, v, r0, u0};
    if (w.det() != Q) throw std::logic_error("build_al_operator: Bezout completion failed");
    return w;
  }
  throw std::runtime_error("build_al_operator: no admissible r found");
}

ALOperator fricke(std::int64_t N) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  return ALOperator{N, N, 1, 0, -1, 1, 0, 0, 1};
}

CongruenceMatrix conjugate(const ALOperator& W, const ALOperator& Wp, const CongruenceMatrix& gamma) {
  if (!W.same_class(Wp)) throw std::invalid_argument("conjugate: operators must share (Q, R, r0, u0)");
  if (gamma.c() % W.N != 0) throw std::invalid_argument("conjugate: gamma must lie in Gamma0(N)");
  using i128 = __int128;
  const i128 N = W.N, Q = W.Q, R = W.R;
  const i128 r = W.r, t = W.t, u = W.u, v = W.v;
  const i128 rp = Wp.r, tp = Wp.t, up = Wp.u, vp = Wp.v;
  const i128 a = gamma.a(), b = gamma.b(), c = gamma.c() / W.N, d = gamma.d();
  const i128 na = Q * r * vp * a + N * t * vp * c - N * r * up * b - R * t * up * d;
  const i128 nb = -r * tp * a - R * t * tp * c + Q * r * rp * b + t * rp * d;
  const i128 nc = N * (u * vp * a + Q * v * vp * c - R * u * up * b - v * up * d);
  const i128 nd = -R * u * tp * a - N * v * tp * c + N * u * rp * b + Q * v * rp * d;
  return CongruenceMatrix(narrow(na), narrow(nb), narrow(nc), narrow(nd), gamma.level());
}

DirichletCharacter psi_prime(const CharacterPair& pair, std::int64_t Q, std::int64_t R) {
  if (Q * R != pair.level()) throw std::invalid_argument("psi_prime: Q*R must equal q1*q2");
  CharacterSplit s = factor_character(pair.psi(), Q, R);
  return s.q_part.conj() * s.r_part;
}

CyclotomicNumber pseudo_eigenvalue_C(const CharacterPair& pair, const ALOperator& W) {
  if (W.N != pair.level()) throw std::invalid_argument("operator level must equal q1*q2");
  const CharacterSplit chi1 = factor_character(pair.chi1(), W.Q, W.R);
  const CharacterSplit psi = factor_character(pair.psi(), W.Q, W.R);
  return chi1.q_part.value(-1) * psi.q_part.value(gcd(pair.q1(), W.R) * W.u0) *
         psi.r_part.conj().value(gcd(pair.q2(), W.Q) * W.r0);
}

namespace {

/// q2 tau(chi2') / (q2' tau(chi2)), optionally times tau(conj chi1)/tau(conj chi1').
CyclotomicNumber gauss_ratio(const CharacterPair& pair, const CharacterPair& swapped, bool with_chi1) {
  PowerSum p = gauss_sum_powers(swapped.chi2());
  p *= gauss_sum_inverse_powers(pair.chi2());
  if (with_chi1) {
    p *= gauss_sum_powers(pair.chi1().conj());
    p *= gauss_sum_inverse_powers(swapped.chi1().conj());
  }
  p *= BigRational(pair.q2(), swapped.q2());
  return p.reduce();
}

}  // namespace

CyclotomicNumber beta_constant(const CharacterPair& pair, const ALOperator& W) {
  const CharacterPair sw = swap_characters(pair, W.Q, W.R);
  return gauss_ratio(pair, sw, false) * pseudo_eigenvalue_C(pair, W);
}

CyclotomicNumber xi_constant(const CharacterPair& pair, const ALOperator& W) {
  const CharacterPair sw = swap_characters(pair, W.Q, W.R);
  return gauss_ratio(pair, sw, true) * pseudo_eigenvalue_C(pair, W);
}

std::complex<double> xi_literal(const CharacterPair& pair, const ALOperator& W) {
  return gauss_sum_complex(pair.chi1().conj()) * embed_complex(beta_constant(pair, W)) /
         std::complex<double>(0.0, std::numbers::pi);
}

ReciprocityConstants reciprocity_constants(const CharacterPair& pair, const ALOperator& W) {
  const CharacterPair sw = swap_characters(pair, W.Q, W.R);
  CyclotomicNumber C = pseudo_eigenvalue_C(pair, W);
  CyclotomicNumber beta = gauss_ratio(pair, sw, false) * C;
  CyclotomicNumber xi = gauss_ratio(pair, sw, true) * C;
  const std::complex<double> literal =
      gauss_sum_complex(pair.chi1().conj()) * embed_complex(beta) / std::complex<double>(0.0, std::numbers::pi);
  return {sw, psi_prime(pair, W.Q, W.R), std::move(C), std::move(beta), std::move(xi), literal};
}

ReciprocityReport verify_reciprocity(const CharacterPair& pair, const ALOperator& W, const ALOperator& Wp,
                                     const CongruenceMatrix& gamma, ReciprocityMode mode) {
  if (W.N != pair.level()) throw std::invalid_argument("operator level must equal q1*q2");
  ReciprocityReport rep{"", conjugate(W, Wp, gamma), reciprocity_constants(pair, W), {}, {}, {}, {}, 0.0, false};
  const CharacterPair& sw = rep.constants.swapped;
  const bool exact_possible =
      gamma.in_gamma1() && W.matrix() == Wp.matrix() && pair.q1() > 1 && sw.q1() > 1;
  if (mode == ReciprocityMode::Exact && !exact_possible) {
    throw std::invalid_argument(
        "exact reciprocity needs gamma in Gamma1(N), W = W', and q1, q1' > 1; use numeric mode");
  }
  if (mode != ReciprocityMode::Numeric && exact_possible) {
    rep.branch = "exact";
    rep.exact_lhs = dedekind_sum(pair, rep.gamma_prime);
    rep.exact_rhs = rep.constants.xi * dedekind_sum(sw, gamma);
    rep.lhs = embed_complex(*rep.exact_lhs);
    rep.rhs = embed_complex(*rep.exact_rhs);
    rep.residual = std::abs(rep.lhs - rep.rhs);
    rep.passed = *rep.exact_lhs == *rep.exact_rhs;
    return rep;
  }
  rep.branch = "numeric";
  EisensteinCocycle F(pair);
  EisensteinCocycle Fs(sw);
  const std::complex<double> xi = embed_complex(rep.constants.xi);
  const std::complex<double> psi_p = rep.constants.psi_prime.value_complex(gamma.d());
  rep.lhs = F.dedekind_sum_WQ(W) + xi * sum_value(sw, gamma, Fs);
  rep.rhs = psi_p * F.dedekind_sum_WQ(Wp) + sum_value(pair, rep.gamma_prime, F);
  rep.residual = std::abs(rep.lhs - rep.rhs);
  rep.passed = rep.residual < kNumericTolerance;
  return rep;
}

}  // namespace nds
