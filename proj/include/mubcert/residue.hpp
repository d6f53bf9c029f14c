#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mubcert/errors.hpp"

namespace mubcert {

// Primality by sieve lookup; moduli are restricted to 16-bit primes.
bool is_prime_u16(std::uint32_t n);

// Element of Z_p for a prime p < 2^16. The modulus travels with the value
// and every binary operation cross-checks it.
class Residue {
 public:
  Residue(std::int64_t value, std::uint32_t modulus);

  std::uint32_t value() const noexcept { return value_; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  bool is_zero() const noexcept { return value_ == 0; }

  Residue operator+(const Residue& rhs) const;
  Residue operator-(const Residue& rhs) const;
  Residue operator*(const Residue& rhs) const;
  Residue operator-() const;
  bool operator==(const Residue& rhs) const = default;

  Residue pow(std::uint64_t exponent) const;

 private:
  std::uint32_t value_;
  std::uint32_t modulus_;
};

// Multiplicative inverse; rejects zero.
Residue mod_inv(const Residue& a);

// Least D >= 2 that is not a square mod p. p = 2 has no such element.
Residue smallest_nonresidue(std::uint32_t p);

// Both square roots {q, p-q} of a, smaller representative first, or nullopt
// when a is a non-residue.
std::optional<std::pair<Residue, Residue>> sqrt_mod(const Residue& a);

// Vector in Z_p^4; all four coordinates share one modulus.
class Vec4 {
 public:
  Vec4(Residue c0, Residue c1, Residue c2, Residue c3);
  static Vec4 from_values(const std::array<std::int64_t, 4>& values,
                          std::uint32_t modulus);

  const Residue& operator[](std::size_t i) const { return coords_[i]; }
  std::uint32_t modulus() const noexcept { return coords_[0].modulus(); }
  bool is_zero() const;
  bool operator==(const Vec4& rhs) const = default;

  Vec4 operator+(const Vec4& rhs) const;
  Vec4 scaled(const Residue& k) const;

 private:
  std::array<Residue, 4> coords_;
};

// c(u,v) = u1*v2 - u2*v1 + u3*v4 - u4*v3.
Residue symplectic_form(const Vec4& u, const Vec4& v);

// Plain 2x2 matrix over Z_p, row-major [[a,b],[c,d]].
class Mat2 {
 public:
  Mat2(Residue a, Residue b, Residue c, Residue d);
  static Mat2 identity(std::uint32_t p);
  static Mat2 from_values(const std::array<std::array<std::int64_t, 2>, 2>& m,
                          std::uint32_t modulus);

  const Residue& at(int row, int col) const;
  std::uint32_t modulus() const noexcept { return entries_[0].modulus(); }
  Residue det() const;
  Residue trace() const;

  Mat2 operator*(const Mat2& rhs) const;
  Mat2 operator+(const Mat2& rhs) const;
  Mat2 operator-(const Mat2& rhs) const;
  Mat2 scaled(const Residue& k) const;
  bool operator==(const Mat2& rhs) const = default;

 private:
  std::array<Residue, 4> entries_;  // a, b, c, d
};

// Invertible 2x2 matrix; non-zero determinant enforced at construction.
class Gl2 {
 public:
  explicit Gl2(Mat2 m);
  static Gl2 identity(std::uint32_t p);
  static Gl2 from_values(const std::array<std::array<std::int64_t, 2>, 2>& m,
                         std::uint32_t modulus);

  const Mat2& mat() const noexcept { return mat_; }
  Residue det() const { return mat_.det(); }
  std::uint32_t modulus() const noexcept { return mat_.modulus(); }

  Gl2 inverse() const;
  Gl2 operator*(const Gl2& rhs) const;
  bool operator==(const Gl2& rhs) const = default;

 private:
  Mat2 mat_;
};

// 2-dimensional subspace of Z_p^4 held as its unique reduced row-echelon
// basis, so subspace equality is plain row equality.
class Subspace {
 public:
  static Subspace from_basis(const Vec4& v1, const Vec4& v2);

  const Vec4& row(std::size_t i) const { return i == 0 ? rows_[0] : rows_[1]; }
  std::uint32_t modulus() const noexcept { return rows_[0].modulus(); }
  bool operator==(const Subspace& rhs) const = default;

  // All p^2 points k*row0 + l*row1, (k,l) in lexicographic order.
  std::vector<Vec4> points() const;

 private:
  Subspace(Vec4 r0, Vec4 r1);
  std::array<Vec4, 2> rows_;
};

// True when S and T span all of Z_p^4, i.e. S ∩ T = {0}.
bool intersect_trivially(const Subspace& s, const Subspace& t);

}  // namespace mubcert
