#include "nds/dedekind_sum.hpp"

#include <mutex>
#include <stdexcept>

#include "nds/number_theory.hpp"

namespace nds {

BigRational bernoulli_b1(const BigRational& x) {
  if (x.is_integer()) return BigRational(0);
  return x - BigRational(x.floor()) - BigRational(1, 2);
}

SumTable build_sum_table(std::int64_t q1, std::int64_t q2, std::int64_t a, std::int64_t c) {
  if (q1 < 1 || q2 < 1) throw std::invalid_argument("build_sum_table: moduli must be positive");
  if (c < 1) throw std::invalid_argument("build_sum_table: c must be >= 1");
  if (static_cast<long double>(c) * c * q1 > 4.0e18L) {
    throw std::invalid_argument("build_sum_table: c = " + std::to_string(c) + " is too large for 64-bit terms");
  }
  SumTable t{q1, q2, mod(a, c), c, std::vector<__int128>(q1 * q2, 0)};
  const std::int64_t period = checked_mul(q1, c);
  const std::int64_t step = mod(checked_mul(t.a, q1), period);
  std::int64_t base = 0;  // a j q1 mod q1 c
  for (std::int64_t j = 1; j < c; ++j) {
    base += step;
    if (base >= period) base -= period;
    const std::int64_t j0 = j % q2;
    if (gcd(j0, q2) != 1) continue;
    const std::int64_t left = 2 * j - c;
    __int128* row = &t.entries[j0 * q1];
    std::int64_t x = base;
    for (std::int64_t n = 0; n < q1; ++n) {
      if (x != 0 && gcd(n, q1) == 1) row[n] += left * (2 * x - period);
      x += c;
      if (x >= period) x -= period;
    }
  }
  return t;
}

PairWeights::PairWeights(const CharacterPair& pair)
    : pair_(pair), order_(static_cast<int>(lcm(pair.chi1().order(), pair.chi2().order()))) {
  const DirichletCharacter& chi1 = pair.chi1();
  const DirichletCharacter& chi2 = pair.chi2();
  const std::int64_t m1 = order_ / chi1.order();
  const std::int64_t m2 = order_ / chi2.order();
  exponent_.assign(pair.q1() * pair.q2(), -1);
  for (std::int64_t j0 = 0; j0 < pair.q2(); ++j0) {
    const std::int64_t e2 = chi2.value_exponent(j0);
    if (e2 < 0) continue;
    for (std::int64_t n = 0; n < pair.q1(); ++n) {
      const std::int64_t e1 = chi1.value_exponent(n);
      if (e1 < 0) continue;
      exponent_[j0 * pair.q1() + n] = static_cast<std::int32_t>(mod(-(e1 * m1 + e2 * m2), order_));
    }
  }
}

std::vector<__int128> PairWeights::bucket(const SumTable& table) const {
  if (table.q1 != pair_.q1() || table.q2 != pair_.q2()) {
    throw std::invalid_argument("SumTable moduli do not match the character pair");
  }
  std::vector<__int128> powers(order_, 0);
  for (std::size_t i = 0; i < exponent_.size(); ++i) {
    if (exponent_[i] >= 0) powers[exponent_[i]] += table.entries[i];
  }
  return powers;
}

DedekindSumValue PairWeights::evaluate(const SumTable& table) const {
  std::vector<__int128> powers = bucket(table);
  std::vector<BigInt> big(powers.size());
  for (std::size_t i = 0; i < powers.size(); ++i) {
    // Split the 128-bit value into two 64-bit halves for GMP.
    const bool negative = powers[i] < 0;
    unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(powers[i]) : powers[i];
    BigInt hi(static_cast<unsigned long>(mag >> 64));
    BigInt lo(static_cast<unsigned long>(mag & 0xFFFFFFFFFFFFFFFFULL));
    big[i] = (hi << 64) + lo;
    if (negative) big[i] = -big[i];
  }
  BigInt den = BigInt(4) * BigInt(static_cast<long>(table.c)) * BigInt(static_cast<long>(table.c)) *
               BigInt(static_cast<long>(table.q1));
  return CyclotomicNumber::from_integer_powers(order_, big, den);
}

bool PairWeights::is_zero(const SumTable& table) const {
  std::vector<__int128> powers = bucket(table);
  return power_sum_is_zero(order_, powers);
}

DedekindSumValue dedekind_sum_finite(const CharacterPair& pair, std::int64_t a, std::int64_t c) {
  if (pair.q1() == 1) throw std::invalid_argument("the finite double sum requires q1 > 1");
  if (c < 1) throw std::invalid_argument("the finite double sum requires c >= 1");
  if (c % pair.level() != 0) throw std::invalid_argument("c must be divisible by q1 q2");
  if (gcd(a, c) != 1) throw std::invalid_argument("gcd(a, c) must be 1");
  return PairWeights(pair).evaluate(build_sum_table(pair.q1(), pair.q2(), a, c));
}

DedekindSumValue dedekind_sum(const CharacterPair& pair, const CongruenceMatrix& gamma) {
  if (gamma.level() % pair.level() != 0) {
    throw std::invalid_argument("matrix level must be a multiple of q1 q2");
  }
  if (pair.q1() == 1) return dedekind_sum_q1_trivial(pair.chi2(), gamma);
  if (gamma.c() == 0) return CyclotomicNumber();
  if (gamma.c() < 0) return dedekind_sum(pair, -gamma);
  return dedekind_sum_finite(pair, gamma.a(), gamma.c());
}

DedekindSumValue dedekind_sum_q1_trivial(const DirichletCharacter& chi2, const CongruenceMatrix& gamma) {
  if (chi2.modulus() < 2) throw std::invalid_argument("q1 = 1 requires q2 > 1");
  if (!chi2.is_primitive()) throw std::invalid_argument("chi2 must be primitive");
  if (!chi2.is_even()) throw std::invalid_argument("q1 = 1 requires chi2 even");
  if (gamma.c() != 0) {
    throw NotExactlyComputable("S_{1,chi2}" + gamma.to_string() +
                               ": no exact formula for c != 0; use the numeric evaluation");
  }
  return CyclotomicNumber(gamma.a() * gamma.b()) * l_minus_one(chi2.conj());
}

bool is_kernel_element(const CharacterPair& pair, const CongruenceMatrix& gamma) {
  if (pair.q1() > 1 && gamma.c() != 0) {
    const std::int64_t c = gamma.c() < 0 ? -gamma.c() : gamma.c();
    const std::int64_t a = gamma.c() < 0 ? -gamma.a() : gamma.a();
    if (gamma.level() % pair.level() != 0) throw std::invalid_argument("matrix level must be a multiple of q1 q2");
    return PairWeights(pair).is_zero(build_sum_table(pair.q1(), pair.q2(), a, c));
  }
  return dedekind_sum(pair, gamma).is_zero();
}

CyclotomicNumber psi_value(const CharacterPair& pair, const CongruenceMatrix& gamma) {
  return pair.chi1().value(gamma.d()) * pair.chi2().conj().value(gamma.d());
}

DedekindSumValue DedekindSumCache::get(const CharacterPair& pair, std::int64_t a, std::int64_t c) {
  Key key{pair.label(), mod(a, c), c};
  {
    std::shared_lock lock(mutex_);
    auto it = values_.find(key);
    if (it != values_.end()) return it->second;
  }
  DedekindSumValue v = dedekind_sum_finite(pair, a, c);
  std::unique_lock lock(mutex_);
  return values_.emplace(std::move(key), std::move(v)).first->second;
}

std::size_t DedekindSumCache::size() const {
  std::shared_lock lock(mutex_);
  return values_.size();
}

}  // namespace nds
