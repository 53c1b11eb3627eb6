#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "nds/character.hpp"
#include "nds/cyclotomic.hpp"
#include "nds/matrix.hpp"

namespace nds {

/// W_Q = (Qr t; Nu Qv) with Qrv - Rut = 1, r = r0 (mod R), u = u0 (mod Q).
struct ALOperator {
  std::int64_t N, Q, R;
  std::int64_t r, t, u, v;
  std::int64_t r0, u0;

  Matrix2 matrix() const { return {Q * r, t, N * u, Q * v}; }
  std::int64_t det() const { return matrix().det(); }
  /// Same (r, u), Bezout completion moved to (t + m Qr, v + m Ru).
  ALOperator shifted(std::int64_t m) const;
  /// True when both operators carry the same (Q, R, r0 mod R, u0 mod Q).
  bool same_class(const ALOperator& o) const;
  std::string to_string() const;
};

/// Starts at (r, u) = (r0, u0), stepping r by R until gcd(Qr, Ru) = 1, then
/// completes with the least non-negative v.
ALOperator build_al_operator(std::int64_t N, std::int64_t Q, std::int64_t r0, std::int64_t u0);
/// (0 -1; N 0).
ALOperator fricke(std::int64_t N);

/// gamma' = W gamma W'^-1 from the explicit entry formulas.
CongruenceMatrix conjugate(const ALOperator& W, const ALOperator& W_prime, const CongruenceMatrix& gamma);

/// psi' = conj(psi^(Q)) psi^(R), a character modulo N.
DirichletCharacter psi_prime(const CharacterPair& pair, std::int64_t Q, std::int64_t R);

/// C = chi1^(Q)(-1) psi^(Q)(q1^(R) u0) conj(psi^(R))(q2^(Q) r0).
CyclotomicNumber pseudo_eigenvalue_C(const CharacterPair& pair, const ALOperator& W);
/// beta = q2 tau(chi2') / (q2' tau(chi2)) C.
CyclotomicNumber beta_constant(const CharacterPair& pair, const ALOperator& W);
/// xi = tau(conj chi1) beta / tau(conj chi1').
CyclotomicNumber xi_constant(const CharacterPair& pair, const ALOperator& W);
/// tau(conj chi1) beta / (pi i), as a complex number.
std::complex<double> xi_literal(const CharacterPair& pair, const ALOperator& W);

struct ReciprocityConstants {
  CharacterPair swapped;
  DirichletCharacter psi_prime;
  CyclotomicNumber C, beta, xi;
  std::complex<double> xi_literal;
};

ReciprocityConstants reciprocity_constants(const CharacterPair& pair, const ALOperator& W);

enum class ReciprocityMode { Auto, Exact, Numeric };

struct ReciprocityReport {
  std::string branch;  // "exact" or "numeric"
  CongruenceMatrix gamma_prime;
  ReciprocityConstants constants;
  // Exact branch: S(gamma') and xi S'(gamma).
  std::optional<CyclotomicNumber> exact_lhs, exact_rhs;
  // Numeric branch (always filled): S(W) + xi S'(gamma) and psi'(gamma) S(W') + S(gamma').
  std::complex<double> lhs, rhs;
  double residual = 0.0;
  bool passed = false;
};

/// Exact when gamma is in Gamma1(N), W = W', and both sums have a finite formula;
/// numeric otherwise (or when requested).
ReciprocityReport verify_reciprocity(const CharacterPair& pair, const ALOperator& W, const ALOperator& W_prime,
                                     const CongruenceMatrix& gamma, ReciprocityMode mode = ReciprocityMode::Auto);

}  // namespace nds
