#pragma once

#include <cstdint>
#include <map>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include "nds/character.hpp"
#include "nds/cyclotomic.hpp"
#include "nds/errors.hpp"
#include "nds/matrix.hpp"
#include "nds/rational.hpp"

namespace nds {

using DedekindSumValue = CyclotomicNumber;

/// B1(x) = x - floor(x) - 1/2 off the integers, 0 on them.
BigRational bernoulli_b1(const BigRational& x);

/// Integer form of the double sum for one left column (a, c), c >= 1:
/// entry [j0 * q1 + n] = sum over j = j0 (mod q2) of (2c B1(j/c)) (2 q1 c B1(n/q1 + aj/c)).
/// The sum itself is sum conj(chi2)(j0) conj(chi1)(n) entry / (4 c^2 q1).
/// Independent of the characters, so one table serves every pair at (q1, q2).
struct SumTable {
  std::int64_t q1 = 1, q2 = 1, a = 0, c = 1;
  std::vector<__int128> entries;
};

SumTable build_sum_table(std::int64_t q1, std::int64_t q2, std::int64_t a, std::int64_t c);

/// Character data for evaluating SumTables of one pair.
class PairWeights {
 public:
  explicit PairWeights(const CharacterPair& pair);

  const CharacterPair& pair() const { return pair_; }
  int order() const { return order_; }
  DedekindSumValue evaluate(const SumTable& table) const;
  bool is_zero(const SumTable& table) const;

 private:
  std::vector<__int128> bucket(const SumTable& table) const;

  CharacterPair pair_;
  int order_;
  std::vector<std::int32_t> exponent_;  // exponent of conj(chi2)(j0) conj(chi1)(n), -1 if zero
};

/// The double sum at (a mod c, c), c >= 1; q1 > 1 required (q2 = 1 allowed).
DedekindSumValue dedekind_sum_finite(const CharacterPair& pair, std::int64_t a, std::int64_t c);

/// S_{chi1,chi2}(gamma) for gamma in Gamma0(q1 q2). Matrices with c < 0 use
/// S(gamma) = S(-gamma); c = 0 gives 0 when q1 > 1. q1 = 1 is routed to
/// dedekind_sum_q1_trivial.
DedekindSumValue dedekind_sum(const CharacterPair& pair, const CongruenceMatrix& gamma);

/// q1 = 1: for gamma = (e b; 0 e), e = +-1, returns e b L(-1, conj chi2).
/// Throws NotExactlyComputable when c != 0.
DedekindSumValue dedekind_sum_q1_trivial(const DirichletCharacter& chi2, const CongruenceMatrix& gamma);

bool is_kernel_element(const CharacterPair& pair, const CongruenceMatrix& gamma);

/// psi(gamma) = chi1 conj(chi2)(d).
CyclotomicNumber psi_value(const CharacterPair& pair, const CongruenceMatrix& gamma);

/// Memo of finite-sum values keyed by (pair, a mod c, c). Safe for concurrent use.
class DedekindSumCache {
 public:
  DedekindSumValue get(const CharacterPair& pair, std::int64_t a, std::int64_t c);
  std::size_t size() const;

 private:
  using Key = std::tuple<std::string, std::int64_t, std::int64_t>;
  mutable std::shared_mutex mutex_;
  std::map<Key, DedekindSumValue> values_;
};

}  // namespace nds
