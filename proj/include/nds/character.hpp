#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "nds/cyclotomic.hpp"

namespace nds {

/// One canonical generator of (Z/q)^x. Odd prime powers use their smallest
/// primitive root; 2^k uses -1 (k >= 2) and 5 (k >= 3), in that order.
struct UnitGenerator {
  std::int64_t prime;
  std::int64_t prime_power;
  std::int64_t residue;  // generator modulo prime_power
  std::int64_t order;
  std::int64_t lifted;   // CRT lift: residue mod prime_power, 1 mod q / prime_power
};

/// Structure of (Z/q)^x with discrete-log tables for the canonical generators.
class UnitGroup {
 public:
  explicit UnitGroup(std::int64_t modulus);

  std::int64_t modulus() const { return modulus_; }
  const std::vector<UnitGenerator>& generators() const { return generators_; }
  /// Exponent of generator i in the unit n (n coprime to the modulus).
  std::int64_t log(std::size_t generator, std::int64_t n) const;

 private:
  std::int64_t modulus_;
  std::vector<UnitGenerator> generators_;
  std::vector<std::vector<std::int32_t>> logs_;  // per generator, indexed by n mod prime_power
};

std::shared_ptr<const UnitGroup> unit_group(std::int64_t modulus);

/// A Dirichlet character mod q, identified by its exponents on the canonical
/// generators: chi(g_i) = exp(2 pi i e_i / ord(g_i)). Values are stored as
/// exponents of zeta_order, with order the exact order of the character.
class DirichletCharacter {
 public:
  /// Trivial character modulo 1.
  DirichletCharacter();
  DirichletCharacter(std::int64_t modulus, std::vector<std::int64_t> exponents);

  static DirichletCharacter principal(std::int64_t modulus);
  /// Parses "q:e1,e2,..." (e.g. "5:1", "1:", "24:1,0,1").
  static DirichletCharacter parse(std::string_view label);

  std::int64_t modulus() const { return group_->modulus(); }
  const std::vector<std::int64_t>& exponents() const { return exponents_; }
  std::int64_t order() const { return order_; }
  int parity() const { return parity_; }
  bool is_even() const { return parity_ == 1; }
  std::int64_t conductor() const;
  bool is_primitive() const { return conductor() == modulus(); }
  std::string label() const;

  bool is_unit(std::int64_t n) const;
  /// chi(n) = zeta_order^value_exponent(n); -1 when gcd(n, q) > 1.
  std::int64_t value_exponent(std::int64_t n) const;
  CyclotomicNumber value(std::int64_t n) const;
  std::complex<double> value_complex(std::int64_t n) const;

  DirichletCharacter conj() const;
  /// The same character viewed modulo a multiple of its modulus.
  DirichletCharacter induced(std::int64_t new_modulus) const;

  friend DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b);
  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.modulus() == b.modulus() && a.exponents_ == b.exponents_;
  }

 private:
  std::shared_ptr<const UnitGroup> group_;
  std::vector<std::int64_t> exponents_;
  std::int64_t order_ = 1;
  int parity_ = 1;
  std::vector<std::int32_t> table_;  // value exponent per residue, -1 off units
};

std::vector<DirichletCharacter> enumerate_characters(std::int64_t q);
std::vector<DirichletCharacter> enumerate_primitive_characters(std::int64_t q);

/// Restrictions of chi to the Q- and R-parts of its modulus; chi = q_part * r_part.
struct CharacterSplit {
  DirichletCharacter q_part;
  DirichletCharacter r_part;
};

CharacterSplit factor_character(const DirichletCharacter& chi, std::int64_t Q, std::int64_t R);

/// Primitive chi1 mod q1 and chi2 mod q2 with chi1 chi2(-1) = 1 and q1 q2 > 1.
class CharacterPair {
 public:
  CharacterPair(DirichletCharacter chi1, DirichletCharacter chi2);

  const DirichletCharacter& chi1() const { return chi1_; }
  const DirichletCharacter& chi2() const { return chi2_; }
  std::int64_t q1() const { return chi1_.modulus(); }
  std::int64_t q2() const { return chi2_.modulus(); }
  std::int64_t level() const { return q1() * q2(); }
  /// psi = chi1 * conj(chi2), as a character modulo the level.
  DirichletCharacter psi() const;
  /// "chi1label;chi2label"
  std::string label() const;
  static CharacterPair parse(std::string_view label);

  friend bool operator==(const CharacterPair&, const CharacterPair&) = default;

 private:
  DirichletCharacter chi1_;
  DirichletCharacter chi2_;
};

/// All admissible pairs for (q1, q2), in enumeration order.
std::vector<CharacterPair> admissible_pairs(std::int64_t q1, std::int64_t q2);

/// Exchanges the Q-portions: chi1' = chi2^(Q) chi1^(R), chi2' = chi1^(Q) chi2^(R).
CharacterPair swap_characters(const CharacterPair& pair, std::int64_t Q, std::int64_t R);

/// tau(chi) = sum_a chi(a) zeta_q^a, in the power basis of order lcm(q, ord chi).
PowerSum gauss_sum_powers(const DirichletCharacter& chi);
CyclotomicNumber gauss_sum(const DirichletCharacter& chi);
/// tau(chi)^-1 = chi(-1) tau(conj chi) / q for primitive chi.
PowerSum gauss_sum_inverse_powers(const DirichletCharacter& chi);

/// B_{2,chi} = q sum_{a=1}^{q} chi(a) B_2(a/q), B_2(x) = x^2 - x + 1/6.
CyclotomicNumber generalized_bernoulli_b2(const DirichletCharacter& chi);
/// L(-1, chi) = -B_{2,chi} / 2.
CyclotomicNumber l_minus_one(const DirichletCharacter& chi);

}  // namespace nds
