#include "nds/character.hpp"

#include <charconv>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nds/number_theory.hpp"

namespace nds {
namespace {

std::int64_t parse_int(std::string_view s, std::string_view what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("invalid " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

UnitGroup::UnitGroup(std::int64_t modulus) : modulus_(modulus) {
  if (modulus < 1) throw std::invalid_argument("UnitGroup: modulus must be positive");
  auto lift = [modulus](std::int64_t residue, std::int64_t pk) {
    std::vector<Congruence> parts{{residue, pk}, {1, modulus / pk}};
    return crt_solve(parts).value;
  };
  for (const PrimePower& pp : factorize(modulus)) {
    const std::int64_t pk = pp.value;
    if (pp.prime == 2) {
      if (pp.exponent >= 2) generators_.push_back({2, pk, pk - 1, 2, lift(pk - 1, pk)});
      if (pp.exponent >= 3) generators_.push_back({2, pk, 5, pk / 4, lift(5, pk)});
      continue;
    }
    std::int64_t g = smallest_primitive_root(pp.prime, pp.exponent);
    generators_.push_back({pp.prime, pk, g, euler_phi(pk), lift(g, pk)});
  }

  logs_.resize(generators_.size());
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const UnitGenerator& gen = generators_[i];
    std::vector<std::int32_t>& table = logs_[i];
    table.assign(gen.prime_power, -1);
    if (gen.prime == 2 && gen.residue == gen.prime_power - 1) {
      for (std::int64_t n = 1; n < gen.prime_power; n += 2) table[n] = (n % 4 == 1) ? 0 : 1;
      continue;
    }
    if (gen.prime == 2) {
      // 5 generates the units that are 1 mod 4; other units are -1 times those.
      std::int64_t x = 1;
      for (std::int64_t t = 0; t < gen.order; ++t) {
        table[x] = static_cast<std::int32_t>(t);
        table[gen.prime_power - x] = static_cast<std::int32_t>(t);
        x = x * 5 % gen.prime_power;
      }
      continue;
    }
    std::int64_t x = 1;
    for (std::int64_t t = 0; t < gen.order; ++t) {
      table[x] = static_cast<std::int32_t>(t);
      x = x * gen.residue % gen.prime_power;
    }
  }
}

std::int64_t UnitGroup::log(std::size_t generator, std::int64_t n) const {
  const UnitGenerator& gen = generators_.at(generator);
  std::int32_t e = logs_[generator][mod(n, gen.prime_power)];
  if (e < 0) throw std::domain_error("UnitGroup::log: argument is not a unit");
  return e;
}

std::shared_ptr<const UnitGroup> unit_group(std::int64_t modulus) {
  static std::mutex m;
  static std::map<std::int64_t, std::shared_ptr<const UnitGroup>> cache;
  {
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(modulus);
    if (it != cache.end()) return it->second;
  }
  auto g = std::make_shared<const UnitGroup>(modulus);
  std::lock_guard<std::mutex> lock(m);
  return cache.emplace(modulus, std::move(g)).first->second;
}

DirichletCharacter::DirichletCharacter() : DirichletCharacter(1, {}) {}

DirichletCharacter::DirichletCharacter(std::int64_t modulus, std::vector<std::int64_t> exponents)
    : group_(unit_group(modulus)), exponents_(std::move(exponents)) {
  const auto& gens = group_->generators();
  if (exponents_.size() != gens.size()) {
    throw std::invalid_argument("character mod " + std::to_string(modulus) + " needs " +
                                std::to_string(gens.size()) + " generator exponents");
  }
  order_ = 1;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (exponents_[i] < 0 || exponents_[i] >= gens[i].order) {
      throw std::invalid_argument("character exponent out of range [0, " +
                                  std::to_string(gens[i].order) + ")");
    }
    order_ = lcm(order_, gens[i].order / gcd(exponents_[i], gens[i].order));
  }
  // Per-generator multiplier so that sum_i mult_i * log_i is the exponent of zeta_order.
  std::vector<std::int64_t> mult(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) mult[i] = exponents_[i] * order_ / gens[i].order;

  table_.assign(modulus, -1);
  for (std::int64_t n = 0; n < modulus; ++n) {
    if (gcd(n, modulus) != 1) continue;
    std::int64_t e = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) e += mult[i] * group_->log(i, n);
    table_[n] = static_cast<std::int32_t>(mod(e, order_));
  }
  parity_ = table_[modulus - 1 == 0 ? 0 : modulus - 1] == 0 ? 1 : -1;
}

DirichletCharacter DirichletCharacter::principal(std::int64_t modulus) {
  return DirichletCharacter(modulus, std::vector<std::int64_t>(unit_group(modulus)->generators().size(), 0));
}

DirichletCharacter DirichletCharacter::parse(std::string_view label) {
  auto colon = label.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("character label '" + std::string(label) + "' must look like q:e1,e2,...");
  }
  std::int64_t q = parse_int(label.substr(0, colon), "character modulus");
  if (q < 1) throw std::invalid_argument("character modulus must be positive");
  std::vector<std::int64_t> exps;
  std::string_view rest = label.substr(colon + 1);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    exps.push_back(parse_int(rest.substr(0, comma), "character exponent"));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return DirichletCharacter(q, std::move(exps));
}

std::int64_t DirichletCharacter::conductor() const {
  std::int64_t f = 1;
  const auto& gens = group_->generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const UnitGenerator& g = gens[i];
    const std::int64_t e = exponents_[i];
    if (g.prime == 2) {
      if (g.residue == g.prime_power - 1) {
        // The -1 component alone needs modulus 4; the 5 component (if any) decides the rest.
        bool has_five = i + 1 < gens.size() && gens[i + 1].prime == 2;
        std::int64_t e5 = has_five ? exponents_[i + 1] : 0;
        if (e5 != 0) {
          std::int64_t o = gens[i + 1].order / gcd(e5, gens[i + 1].order);
          f *= 4 * o;
        } else if (e != 0) {
          f *= 4;
        }
      }
      continue;
    }
    if (e == 0) continue;
    std::int64_t o = g.order / gcd(e, g.order);
    std::int64_t pf = g.prime;
    while (o % g.prime == 0) {
      o /= g.prime;
      pf *= g.prime;
    }
    f *= pf;
  }
  return f;
}

std::string DirichletCharacter::label() const {
  std::ostringstream out;
  out << modulus() << ":";
  for (std::size_t i = 0; i < exponents_.size(); ++i) out << (i ? "," : "") << exponents_[i];
  return out.str();
}

bool DirichletCharacter::is_unit(std::int64_t n) const { return table_[mod(n, modulus())] >= 0; }

std::int64_t DirichletCharacter::value_exponent(std::int64_t n) const { return table_[mod(n, modulus())]; }

CyclotomicNumber DirichletCharacter::value(std::int64_t n) const {
  std::int64_t e = value_exponent(n);
  if (e < 0) return CyclotomicNumber();
  return root_of_unity(static_cast<int>(order_), e);
}

std::complex<double> DirichletCharacter::value_complex(std::int64_t n) const {
  std::int64_t e = value_exponent(n);
  if (e < 0) return {0.0, 0.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(order_));
}

DirichletCharacter DirichletCharacter::conj() const {
  std::vector<std::int64_t> exps(exponents_.size());
  const auto& gens = group_->generators();
  for (std::size_t i = 0; i < exps.size(); ++i) exps[i] = mod(-exponents_[i], gens[i].order);
  return DirichletCharacter(modulus(), std::move(exps));
}

DirichletCharacter DirichletCharacter::induced(std::int64_t new_modulus) const {
  if (new_modulus % modulus() != 0) {
    throw std::invalid_argument("induced: new modulus must be a multiple of the modulus");
  }
  return *this * principal(new_modulus);
}

DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b) {
  const std::int64_t m = lcm(a.modulus(), b.modulus());
  auto group = unit_group(m);
  const std::int64_t l = lcm(a.order_, b.order_);
  std::vector<std::int64_t> exps;
  for (const UnitGenerator& g : group->generators()) {
    std::int64_t t = mod(a.value_exponent(g.lifted) * (l / a.order_) + b.value_exponent(g.lifted) * (l / b.order_), l);
    if (t * g.order % l != 0) throw std::logic_error("character product: inconsistent generator value");
    exps.push_back(t * g.order / l);
  }
  return DirichletCharacter(m, std::move(exps));
}

std::vector<DirichletCharacter> enumerate_characters(std::int64_t q) {
  const auto& gens = unit_group(q)->generators();
  std::vector<DirichletCharacter> out;
  std::vector<std::int64_t> exps(gens.size(), 0);
  while (true) {
    out.emplace_back(q, exps);
    std::size_t i = gens.size();
    while (i > 0) {
      --i;
      if (++exps[i] < gens[i].order) break;
      exps[i] = 0;
      if (i == 0) return out;
    }
    if (gens.empty()) return out;
  }
}

std::vector<DirichletCharacter> enumerate_primitive_characters(std::int64_t q) {
  std::vector<DirichletCharacter> out;
  for (DirichletCharacter& chi : enumerate_characters(q)) {
    if (chi.is_primitive()) out.push_back(std::move(chi));
  }
  return out;
}

CharacterSplit factor_character(const DirichletCharacter& chi, std::int64_t Q, std::int64_t R) {
  if (Q < 1 || R < 1 || gcd(Q, R) != 1) throw std::invalid_argument("factor_character: Q and R must be coprime");
  const std::int64_t q = chi.modulus();
  if ((Q * R) % q != 0) throw std::invalid_argument("factor_character: modulus must divide Q*R");
  const auto& gens = unit_group(q)->generators();
  std::vector<std::int64_t> eq, er;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    (Q % gens[i].prime == 0 ? eq : er).push_back(chi.exponents()[i]);
  }
  return {DirichletCharacter(gcd(q, Q), std::move(eq)), DirichletCharacter(gcd(q, R), std::move(er))};
}

CharacterPair::CharacterPair(DirichletCharacter chi1, DirichletCharacter chi2)
    : chi1_(std::move(chi1)), chi2_(std::move(chi2)) {
  if (!chi1_.is_primitive()) throw std::invalid_argument("chi1 " + chi1_.label() + " is not primitive");
  if (!chi2_.is_primitive()) throw std::invalid_argument("chi2 " + chi2_.label() + " is not primitive");
  if (chi1_.parity() * chi2_.parity() != 1) throw std::invalid_argument("chi1 chi2(-1) must equal 1");
  if (q1() * q2() <= 1) throw std::invalid_argument("q1 q2 must exceed 1");
}

DirichletCharacter CharacterPair::psi() const { return (chi1_ * chi2_.conj()).induced(level()); }

std::string CharacterPair::label() const { return chi1_.label() + ";" + chi2_.label(); }

CharacterPair CharacterPair::parse(std::string_view label) {
  auto semi = label.find(';');
  if (semi == std::string_view::npos) {
    throw std::invalid_argument("pair label '" + std::string(label) + "' must look like chi1;chi2");
  }
  return CharacterPair(DirichletCharacter::parse(label.substr(0, semi)),
                       DirichletCharacter::parse(label.substr(semi + 1)));
}

std::vector<CharacterPair> admissible_pairs(std::int64_t q1, std::int64_t q2) {
  if (q1 * q2 <= 1) throw std::invalid_argument("admissible_pairs: q1 q2 must exceed 1");
  std::vector<CharacterPair> out;
  for (const auto& a : enumerate_primitive_characters(q1)) {
    for (const auto& b : enumerate_primitive_characters(q2)) {
      if (a.parity() * b.parity() == 1) out.emplace_back(a, b);
    }
  }
  return out;
}

CharacterPair swap_characters(const CharacterPair& pair, std::int64_t Q, std::int64_t R) {
  if (Q * R != pair.level()) throw std::invalid_argument("swap_characters: Q*R must equal q1*q2");
  CharacterSplit s1 = factor_character(pair.chi1(), Q, R);
  CharacterSplit s2 = factor_character(pair.chi2(), Q, R);
  return CharacterPair(s2.q_part * s1.r_part, s1.q_part * s2.r_part);
}

PowerSum gauss_sum_powers(const DirichletCharacter& chi) {
  if (!chi.is_primitive()) throw std::invalid_argument("gauss_sum: character " + chi.label() + " is not primitive");
  const std::int64_t q = chi.modulus();
  const int order = static_cast<int>(lcm(q, chi.order()));
  PowerSum tau(order);
  for (std::int64_t a = 0; a < q; ++a) {
    std::int64_t e = chi.value_exponent(a);
    if (e < 0) continue;
    tau.add(e * (order / chi.order()) + a * (order / q), BigRational(1));
  }
  return tau;
}

CyclotomicNumber gauss_sum(const DirichletCharacter& chi) { return gauss_sum_powers(chi).reduce(); }

PowerSum gauss_sum_inverse_powers(const DirichletCharacter& chi) {
  PowerSum inv = gauss_sum_powers(chi.conj());
  inv *= BigRational(chi.parity(), chi.modulus());
  return inv;
}

CyclotomicNumber generalized_bernoulli_b2(const DirichletCharacter& chi) {
  const std::int64_t q = chi.modulus();
  PowerSum acc(static_cast<int>(chi.order()));
  for (std::int64_t a = 1; a <= q; ++a) {
    std::int64_t e = chi.value_exponent(a);
    if (e < 0) continue;
    BigRational x(a, q);
    acc.add(e, BigRational(q) * (x * x - x + BigRational(1, 6)));
  }
  return acc.reduce();
}

CyclotomicNumber l_minus_one(const DirichletCharacter& chi) {
  return generalized_bernoulli_b2(chi) * CyclotomicNumber(BigRational(-1, 2));
}

}  // namespace nds
