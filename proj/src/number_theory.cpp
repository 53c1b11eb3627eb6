#include "nds/number_theory.hpp"

#include <stdexcept>
#include <string>

namespace nds {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  if (m <= 0) throw std::invalid_argument("mod: modulus must be positive");
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t lcm(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  std::int64_t g = gcd(a, b);
  std::int64_t r = checked_mul(a / g, b);
  return r < 0 ? -r : r;
}

Bezout extended_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b;
  std::int64_t old_x = 1, x = 0;
  std::int64_t old_y = 0, y = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_x - q * x;
    old_x = x;
    x = t;
    t = old_y - q * y;
    old_y = y;
    y = t;
  }
  if (old_r < 0) return {-old_r, -old_x, -old_y};
  return {old_r, old_x, old_y};
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  Bezout e = extended_gcd(mod(a, m), m);
  if (e.g != 1) {
    throw std::domain_error("mod_inverse: " + std::to_string(a) + " is not a unit modulo " +
                            std::to_string(m));
  }
  return mod(e.x, m);
}

Congruence crt_solve(std::span<const Congruence> residues) {
  Congruence acc{0, 1};
  for (const Congruence& next : residues) {
    if (next.modulus <= 0) throw std::invalid_argument("crt_solve: moduli must be positive");
    if (gcd(acc.modulus, next.modulus) != 1) {
      throw std::invalid_argument("crt_solve: moduli are not pairwise coprime");
    }
    // acc.value + acc.modulus * s == next.value (mod next.modulus)
    std::int64_t inv = mod_inverse(acc.modulus % next.modulus, next.modulus);
    std::int64_t diff = mod(next.value - acc.value, next.modulus);
    __int128 s = static_cast<__int128>(diff) * inv % next.modulus;
    std::int64_t new_mod = checked_mul(acc.modulus, next.modulus);
    __int128 v = static_cast<__int128>(acc.value) + static_cast<__int128>(acc.modulus) * s;
    acc = {static_cast<std::int64_t>(v % new_mod), new_mod};
  }
  return acc;
}

std::vector<PrimePower> factorize(std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("factorize: n must be positive");
  std::vector<PrimePower> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.exponent;
      pp.value *= p;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (const PrimePower& pp : factorize(n)) result = result / pp.prime * (pp.prime - 1);
  return result;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
  if (exp < 0) throw std::invalid_argument("pow_mod: negative exponent");
  __int128 result = 1 % m;
  __int128 b = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = result * b % m;
    b = b * b % m;
    exp >>= 1;
  }
  return static_cast<std::int64_t>(result);
}

std::int64_t multiplicative_order(std::int64_t a, std::int64_t m) {
  if (gcd(a, m) != 1) throw std::domain_error("multiplicative_order: not a unit");
  std::int64_t phi = euler_phi(m);
  std::int64_t order = phi;
  for (const PrimePower& pp : factorize(phi)) {
    for (int i = 0; i < pp.exponent; ++i) {
      if (pow_mod(a, order / pp.prime, m) == 1) {
        order /= pp.prime;
      } else {
        break;
      }
    }
  }
  return order;
}

std::int64_t smallest_primitive_root(std::int64_t prime, int exponent) {
  if (prime == 2) throw std::invalid_argument("smallest_primitive_root: 2-power groups are not cyclic");
  std::int64_t m = 1;
  for (int i = 0; i < exponent; ++i) m *= prime;
  std::int64_t phi = euler_phi(m);
  for (std::int64_t g = 2; g < m; ++g) {
    if (gcd(g, m) != 1) continue;
    if (multiplicative_order(g, m) == phi) return g;
  }
  return 1;  // m == 2 is excluded above; m == 3 returns 2
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in subtraction");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
  return r;
}

}  // namespace nds
