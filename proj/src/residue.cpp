#include "mubcert/residue.hpp"

#include <algorithm>
#include <cstring>

namespace mubcert {

namespace {

constexpr std::uint32_t kModulusLimit = 1u << 16;

const std::array<bool, kModulusLimit>& prime_sieve() {
  static const std::array<bool, kModulusLimit> sieve = [] {
    std::array<bool, kModulusLimit> s{};
    s.fill(true);
    s[0] = s[1] = false;
    for (std::uint32_t i = 2; i * i < kModulusLimit; ++i) {
      if (!s[i]) continue;
      for (std::uint32_t j = i * i; j < kModulusLimit; j += i) s[j] = false;
    }
    return s;
  }();
  return sieve;
}

void check_same_modulus(std::uint32_t a, std::uint32_t b) {
  if (a != b) {
    throw Error(Errc::modulus_mismatch,
                "operands carry moduli " + std::to_string(a) + " and " +
                    std::to_string(b));
  }
}

}  // namespace

bool is_prime_u16(std::uint32_t n) {
  return n < kModulusLimit && prime_sieve()[n];
}

Residue::Residue(std::int64_t value, std::uint32_t modulus)
    : modulus_(modulus) {
  if (!is_prime_u16(modulus)) {
    throw Error(Errc::invalid_modulus,
                std::to_string(modulus) + " is not a prime below 2^16");
  }
  std::int64_t m = static_cast<std::int64_t>(modulus);
  std::int64_t r = value % m;
  if (r < 0) r += m;
  value_ = static_cast<std::uint32_t>(r);
}

Residue Residue::operator+(const Residue& rhs) const {
  check_same_modulus(modulus_, rhs.modulus_);
  std::uint32_t s = value_ + rhs.value_;
  if (s >= modulus_) s -= modulus_;
  Residue out = *this;
  out.value_ = s;
  return out;
}

Residue Residue::operator-(const Residue& rhs) const {
  check_same_modulus(modulus_, rhs.modulus_);
  std::uint32_t s = value_ + modulus_ - rhs.value_;
  if (s >= modulus_) s -= modulus_;
  Residue out = *this;
  out.value_ = s;
  return out;
}

Residue Residue::operator*(const Residue& rhs) const {
  check_same_modulus(modulus_, rhs.modulus_);
  std::uint64_t prod =
      static_cast<std::uint64_t>(value_) * static_cast<std::uint64_t>(rhs.value_);
  Residue out = *this;
  out.value_ = static_cast<std::uint32_t>(prod % modulus_);
  return out;
}

Residue Residue::operator-() const {
  Residue out = *this;
  out.value_ = value_ == 0 ? 0 : modulus_ - value_;
  return out;
}

Residue Residue::pow(std::uint64_t exponent) const {
  std::uint64_t base = value_;
  std::uint64_t acc = 1;
  std::uint64_t m = modulus_;
  while (exponent > 0) {
    if (exponent & 1) acc = acc * base % m;
    base = base * base % m;
    exponent >>= 1;
  }
  Residue out = *this;
  out.value_ = static_cast<std::uint32_t>(acc);
  return out;
}

Residue mod_inv(const Residue& a) {
  if (a.is_zero()) {
    throw Error(Errc::zero_inverse,
                "0 has no inverse mod " + std::to_string(a.modulus()));
  }
  return a.pow(a.modulus() - 2);
}

Residue smallest_nonresidue(std::uint32_t p) {
  if (p == 2) {
    throw Error(Errc::no_nonresidue, "every element of Z_2 is a square");
  }
  Residue probe(0, p);  // validates p
  std::vector<bool> is_square(p, false);
  for (std::uint32_t x = 0; x < p; ++x) {
    is_square[static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(x) * x % p)] = true;
  }
  for (std::uint32_t d = 2; d < p; ++d) {
    if (!is_square[d]) return Residue(d, p);
  }
  throw Error(Errc::no_nonresidue,
              "no non-residue found mod " + std::to_string(p));
}

std::optional<std::pair<Residue, Residue>> sqrt_mod(const Residue& a) {
  const std::uint32_t p = a.modulus();
  for (std::uint32_t x = 0; x < p; ++x) {
    if (static_cast<std::uint64_t>(x) * x % p == a.value()) {
      std::uint32_t q = std::min(x, (p - x) % p);
      return std::make_pair(Residue(q, p), Residue((p - q) % p, p));
    }
  }
  return std::nullopt;
}

Vec4::Vec4(Residue c0, Residue c1, Residue c2, Residue c3)
    : coords_{c0, c1, c2, c3} {
  check_same_modulus(coords_[0].modulus(), coords_[1].modulus());
  check_same_modulus(coords_[0].modulus(), coords_[2].modulus());
  check_same_modulus(coords_[0].modulus(), coords_[3].modulus());
}

Vec4 Vec4::from_values(const std::array<std::int64_t, 4>& values,
                       std::uint32_t modulus) {
  return Vec4(Residue(values[0], modulus), Residue(values[1], modulus),
              Residue(values[2], modulus), Residue(values[3], modulus));
}

bool Vec4::is_zero() const {
  return coords_[0].is_zero() && coords_[1].is_zero() &&
         coords_[2].is_zero() && coords_[3].is_zero();
}

Vec4 Vec4::operator+(const Vec4& rhs) const {
  return Vec4(coords_[0] + rhs.coords_[0], coords_[1] + rhs.coords_[1],
              coords_[2] + rhs.coords_[2], coords_[3] + rhs.coords_[3]);
}

Vec4 Vec4::scaled(const Residue& k) const {
  return Vec4(coords_[0] * k, coords_[1] * k, coords_[2] * k, coords_[3] * k);
}

Residue symplectic_form(const Vec4& u, const Vec4& v) {
  check_same_modulus(u.modulus(), v.modulus());
  return u[0] * v[1] - u[1] * v[0] + u[2] * v[3] - u[3] * v[2];
}

Mat2::Mat2(Residue a, Residue b, Residue c, Residue d)
    : entries_{a, b, c, d} {
  check_same_modulus(entries_[0].modulus(), entries_[1].modulus());
  check_same_modulus(entries_[0].modulus(), entries_[2].modulus());
  check_same_modulus(entries_[0].modulus(), entries_[3].modulus());
}

Mat2 Mat2::identity(std::uint32_t p) {
  return Mat2(Residue(1, p), Residue(0, p), Residue(0, p), Residue(1, p));
}

Mat2 Mat2::from_values(const std::array<std::array<std::int64_t, 2>, 2>& m,
                       std::uint32_t modulus) {
  return Mat2(Residue(m[0][0], modulus), Residue(m[0][1], modulus),
              Residue(m[1][0], modulus), Residue(m[1][1], modulus));
}

const Residue& Mat2::at(int row, int col) const {
  return entries_[static_cast<std::size_t>(row * 2 + col)];
}

Residue Mat2::det() const {
  return entries_[0] * entries_[3] - entries_[1] * entries_[2];
}

Residue Mat2::trace() const { return entries_[0] + entries_[3]; }

Mat2 Mat2::operator*(const Mat2& rhs) const {
  return Mat2(entries_[0] * rhs.entries_[0] + entries_[1] * rhs.entries_[2],
              entries_[0] * rhs.entries_[1] + entries_[1] * rhs.entries_[3],
              entries_[2] * rhs.entries_[0] + entries_[3] * rhs.entries_[2],
              entries_[2] * rhs.entries_[1] + entries_[3] * rhs.entries_[3]);
}

Mat2 Mat2::operator+(const Mat2& rhs) const {
  return Mat2(entries_[0] + rhs.entries_[0], entries_[1] + rhs.entries_[1],
              entries_[2] + rhs.entries_[2], entries_[3] + rhs.entries_[3]);
}

Mat2 Mat2::operator-(const Mat2& rhs) const {
  return Mat2(entries_[0] - rhs.entries_[0], entries_[1] - rhs.entries_[1],
              entries_[2] - rhs.entries_[2], entries_[3] - rhs.entries_[3]);
}

Mat2 Mat2::scaled(const Residue& k) const {
  return Mat2(entries_[0] * k, entries_[1] * k, entries_[2] * k,
              entries_[3] * k);
}

Gl2::Gl2(Mat2 m) : mat_(m) {
  if (mat_.det().is_zero()) {
    throw Error(Errc::singular_matrix,
                "determinant vanishes mod " + std::to_string(m.modulus()));
  }
}

Gl2 Gl2::identity(std::uint32_t p) { return Gl2(Mat2::identity(p)); }

Gl2 Gl2::from_values(const std::array<std::array<std::int64_t, 2>, 2>& m,
                     std::uint32_t modulus) {
  return Gl2(Mat2::from_values(m, modulus));
}

Gl2 Gl2::inverse() const {
  Residue inv_det = mod_inv(det());
  return Gl2(Mat2(mat_.at(1, 1) * inv_det, -(mat_.at(0, 1) * inv_det),
                  -(mat_.at(1, 0) * inv_det), mat_.at(0, 0) * inv_det));
}

Gl2 Gl2::operator*(const Gl2& rhs) const { return Gl2(mat_ * rhs.mat_); }

namespace {

// Row-reduces `rows` in place over Z_p, returning the rank. Rows end up in
// reduced echelon form with pivots normalized to 1.
std::size_t row_reduce(std::vector<std::array<std::uint32_t, 4>>& rows,
                       std::uint32_t p) {
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < 4 && pivot_row < rows.size(); ++col) {
    std::size_t found = rows.size();
    for (std::size_t r = pivot_row; r < rows.size(); ++r) {
      if (rows[r][col] != 0) {
        found = r;
        break;
      }
    }
    if (found == rows.size()) continue;
    std::swap(rows[pivot_row], rows[found]);

    const std::uint64_t inv =
        Residue(rows[pivot_row][col], p).pow(p - 2).value();
    for (auto& e : rows[pivot_row]) {
      e = static_cast<std::uint32_t>(e * inv % p);
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == pivot_row || rows[r][col] == 0) continue;
      const std::uint64_t f = rows[r][col];
      for (std::size_t c = 0; c < 4; ++c) {
        std::uint64_t v = rows[r][c] + (p - rows[pivot_row][c]) * f % p;
        rows[r][c] = static_cast<std::uint32_t>(v % p);
      }
    }
    ++pivot_row;
  }
  return pivot_row;
}

std::array<std::uint32_t, 4> to_raw(const Vec4& v) {
  return {v[0].value(), v[1].value(), v[2].value(), v[3].value()};
}

}  // namespace

Subspace::Subspace(Vec4 r0, Vec4 r1) : rows_{r0, r1} {}

Subspace Subspace::from_basis(const Vec4& v1, const Vec4& v2) {
  check_same_modulus(v1.modulus(), v2.modulus());
  const std::uint32_t p = v1.modulus();
  std::vector<std::array<std::uint32_t, 4>> rows{to_raw(v1), to_raw(v2)};
  if (row_reduce(rows, p) != 2) {
    throw Error(Errc::dependent_vectors,
                "basis vectors are linearly dependent");
  }
  auto mk = [p](const std::array<std::uint32_t, 4>& r) {
    return Vec4(Residue(r[0], p), Residue(r[1], p), Residue(r[2], p),
                Residue(r[3], p));
  };
  return Subspace(mk(rows[0]), mk(rows[1]));
}

std::vector<Vec4> Subspace::points() const {
  const std::uint32_t p = modulus();
  std::vector<Vec4> out;
  out.reserve(static_cast<std::size_t>(p) * p);
  for (std::uint32_t k = 0; k < p; ++k) {
    for (std::uint32_t l = 0; l < p; ++l) {
      out.push_back(rows_[0].scaled(Residue(k, p)) +
                    rows_[1].scaled(Residue(l, p)));
    }
  }
  return out;
}

bool intersect_trivially(const Subspace& s, const Subspace& t) {
  check_same_modulus(s.modulus(), t.modulus());
  std::vector<std::array<std::uint32_t, 4>> rows{
      to_raw(s.row(0)), to_raw(s.row(1)), to_raw(t.row(0)), to_raw(t.row(1))};
  return row_reduce(rows, s.modulus()) == 4;
}

}  // namespace mubcert
