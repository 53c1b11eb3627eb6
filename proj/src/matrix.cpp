#include "nds/matrix.hpp"

#include <sstream>
#include <stdexcept>

#include "nds/number_theory.hpp"

namespace nds {

std::int64_t Matrix2::det() const { return checked_sub(checked_mul(a, d), checked_mul(b, c)); }

Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
  auto dot = [](std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s) {
    return checked_add(checked_mul(p, q), checked_mul(r, s));
  };
  return {dot(x.a, y.a, x.b, y.c), dot(x.a, y.b, x.b, y.d), dot(x.c, y.a, x.d, y.c), dot(x.c, y.b, x.d, y.d)};
}

std::string Matrix2::to_string() const {
  std::ostringstream out;
  out << "(" << a << " " << b << "; " << c << " " << d << ")";
  return out.str();
}

CongruenceMatrix::CongruenceMatrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                                   std::int64_t level)
    : CongruenceMatrix(Matrix2{a, b, c, d}, level) {}

CongruenceMatrix::CongruenceMatrix(const Matrix2& m, std::int64_t level) : m_(m), level_(level) {
  if (level < 1) throw std::invalid_argument("level must be positive");
  if (m.det() != 1) throw std::invalid_argument("matrix " + m.to_string() + " does not have determinant 1");
  if (m.c % level != 0) {
    throw std::invalid_argument("lower-left entry of " + m.to_string() + " is not divisible by " +
                                std::to_string(level));
  }
}

CongruenceMatrix CongruenceMatrix::from_left_column(std::int64_t a, std::int64_t c, std::int64_t level) {
  Bezout e = extended_gcd(a, c);
  if (e.g != 1) throw std::invalid_argument("left column (a, c) must satisfy gcd(a, c) = 1");
  // a x + c y = 1  =>  d = x, b = -y.
  return {a, -e.y, c, e.x, level};
}

bool CongruenceMatrix::in_gamma1() const { return mod(m_.a, level_) == 1 % level_ && mod(m_.d, level_) == 1 % level_; }

CongruenceMatrix CongruenceMatrix::inverse() const { return {m_.d, -m_.b, -m_.c, m_.a, level_}; }

CongruenceMatrix operator*(const CongruenceMatrix& x, const CongruenceMatrix& y) {
  if (x.level_ != y.level_) throw std::invalid_argument("matrix levels differ");
  return {x.m_ * y.m_, x.level_};
}

}  // namespace nds
