#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace nds {

/// Non-negative residue of a modulo m (m > 0).
std::int64_t mod(std::int64_t a, std::int64_t m);

std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);

/// Bezout data: a*x + b*y == g with g = gcd(a, b) >= 0.
struct Bezout {
  std::int64_t g;
  std::int64_t x;
  std::int64_t y;
};

Bezout extended_gcd(std::int64_t a, std::int64_t b);

/// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

struct Congruence {
  std::int64_t value;
  std::int64_t modulus;
};

/// Chinese remaindering. Returns the unique solution in [0, prod) together
/// with the product of the moduli. Throws std::invalid_argument when the
/// moduli are not pairwise coprime.
Congruence crt_solve(std::span<const Congruence> residues);

struct PrimePower {
  std::int64_t prime;
  int exponent;
  std::int64_t value;  // prime^exponent
};

/// Trial-division factorization, primes in increasing order. factorize(1) is empty.
std::vector<PrimePower> factorize(std::int64_t n);

std::int64_t euler_phi(std::int64_t n);

/// Positive divisors in increasing order.
std::vector<std::int64_t> divisors(std::int64_t n);

/// Smallest generator of (Z/p^k)^x for an odd prime power.
std::int64_t smallest_primitive_root(std::int64_t prime, int exponent);

/// Multiplicative order of a modulo m (gcd(a, m) == 1).
std::int64_t multiplicative_order(std::int64_t a, std::int64_t m);

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m);

// Overflow-checked helpers; throw std::overflow_error.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace nds
