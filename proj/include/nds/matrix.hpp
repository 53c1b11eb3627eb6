#pragma once

#include <cstdint>
#include <string>

namespace nds {

/// Plain 2x2 integer matrix (a b; c d). Arithmetic is overflow-checked.
struct Matrix2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  std::int64_t det() const;
  Matrix2 operator-() const { return {-a, -b, -c, -d}; }
  friend Matrix2 operator*(const Matrix2& x, const Matrix2& y);
  friend bool operator==(const Matrix2&, const Matrix2&) = default;
  std::string to_string() const;
};

/// Element (a b; c d) of Gamma0(N): ad - bc = 1 and N | c.
class CongruenceMatrix {
 public:
  CongruenceMatrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t level);
  CongruenceMatrix(const Matrix2& m, std::int64_t level);

  static CongruenceMatrix identity(std::int64_t level) { return {1, 0, 0, 1, level}; }
  /// Completes (a; c) with gcd(a, c) = 1 to a matrix of Gamma0(N) via extended gcd.
  static CongruenceMatrix from_left_column(std::int64_t a, std::int64_t c, std::int64_t level);

  std::int64_t a() const { return m_.a; }
  std::int64_t b() const { return m_.b; }
  std::int64_t c() const { return m_.c; }
  std::int64_t d() const { return m_.d; }
  std::int64_t level() const { return level_; }
  const Matrix2& matrix() const { return m_; }

  bool in_gamma1() const;
  CongruenceMatrix inverse() const;
  CongruenceMatrix operator-() const { return {-m_, level_}; }
  friend CongruenceMatrix operator*(const CongruenceMatrix& x, const CongruenceMatrix& y);
  friend bool operator==(const CongruenceMatrix&, const CongruenceMatrix&) = default;
  std::string to_string() const { return m_.to_string(); }

 private:
  Matrix2 m_;
  std::int64_t level_;
};

}  // namespace nds
