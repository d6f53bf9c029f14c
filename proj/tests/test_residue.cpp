#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "mubcert/residue.hpp"
#include "mubcert/rng.hpp"

using namespace mubcert;

namespace {

const std::vector<std::uint32_t> kSmallPrimes = {2, 3, 5, 7, 11, 13};

// Brute-force inverse oracle: scan all candidates.
std::uint32_t inverse_by_scan(std::uint32_t a, std::uint32_t p) {
  for (std::uint32_t k = 0; k < p; ++k) {
    if ((static_cast<std::uint64_t>(a) * k) % p == 1) return k;
  }
  return 0;
}

// Squares oracle: the full set {x^2 mod p}.
std::set<std::uint32_t> squares_mod(std::uint32_t p) {
  std::set<std::uint32_t> s;
  for (std::uint32_t x = 0; x < p; ++x) {
    s.insert((x * x) % p);
  }
  return s;
}

Vec4 v4(std::initializer_list<std::int64_t> vals, std::uint32_t p) {
  std::array<std::int64_t, 4> a{};
  std::copy(vals.begin(), vals.end(), a.begin());
  return Vec4::from_values(a, p);
}

}  // namespace

TEST_CASE("primality guard") {
  CHECK(is_prime_u16(2));
  CHECK(is_prime_u16(13));
  CHECK(is_prime_u16(65521));
  CHECK_FALSE(is_prime_u16(1));
  CHECK_FALSE(is_prime_u16(0));
  CHECK_FALSE(is_prime_u16(9));
  CHECK_FALSE(is_prime_u16(65536));
  CHECK_THROWS_AS(Residue(1, 4), Error);
  CHECK_THROWS_AS(Residue(1, 1), Error);
}

TEST_CASE("residue arithmetic reduces into range") {
  Residue a(-1, 5);
  CHECK(a.value() == 4);
  Residue b(7, 5);
  CHECK(b.value() == 2);
  CHECK((a + b).value() == 1);
  CHECK((a - b).value() == 2);
  CHECK((a * b).value() == 3);
  CHECK((-b).value() == 3);
  CHECK(Residue(2, 5).pow(0).value() == 1);
  CHECK(Residue(2, 5).pow(4).value() == 1);
  CHECK(Residue(3, 7).pow(6).value() == 1);
}

TEST_CASE("mixing moduli is rejected") {
  CHECK_THROWS_AS(Residue(1, 3) + Residue(1, 5), Error);
  CHECK_THROWS_AS(symplectic_form(Vec4::from_values({1, 0, 0, 0}, 3),
                                  Vec4::from_values({1, 0, 0, 0}, 5)),
                  Error);
}

TEST_CASE("mod_inv frozen examples") {
  CHECK(mod_inv(Residue(1, 7)).value() == 1);
  CHECK(mod_inv(Residue(2, 5)).value() == 3);
  CHECK(mod_inv(Residue(3, 7)).value() == 5);
  CHECK_THROWS_AS(mod_inv(Residue(0, 5)), Error);
}

TEST_CASE("mod_inv agrees with scan oracle at every prime") {
  for (std::uint32_t p : kSmallPrimes) {
    for (std::uint32_t a = 1; a < p; ++a) {
      CHECK(mod_inv(Residue(a, p)).value() == inverse_by_scan(a, p));
    }
  }
}

TEST_CASE("smallest_nonresidue frozen examples and oracle") {
  CHECK(smallest_nonresidue(3).value() == 2);
  CHECK(smallest_nonresidue(5).value() == 2);
  CHECK(smallest_nonresidue(7).value() == 3);
  CHECK_THROWS_AS(smallest_nonresidue(2), Error);
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u, 61u}) {
    const auto sq = squares_mod(p);
    const std::uint32_t d = smallest_nonresidue(p).value();
    CHECK(sq.count(d) == 0);
    for (std::uint32_t k = 2; k < d; ++k) {
      CHECK(sq.count(k) == 1);
    }
  }
}

TEST_CASE("sqrt_mod returns ordered root pairs") {
  auto r1 = sqrt_mod(Residue(1, 7));
  REQUIRE(r1.has_value());
  CHECK(r1->first.value() == 1);
  CHECK(r1->second.value() == 6);

  // p=3, D=2: -D^{-1} = -2 = 1, roots {1, 2}.
  auto r2 = sqrt_mod(-mod_inv(Residue(2, 3)));
  REQUIRE(r2.has_value());
  CHECK(r2->first.value() == 1);
  CHECK(r2->second.value() == 2);

  // p=7, D=3: -D^{-1} = -5 = 2, roots {3, 4}.
  auto r3 = sqrt_mod(-mod_inv(Residue(3, 7)));
  REQUIRE(r3.has_value());
  CHECK(r3->first.value() == 3);
  CHECK(r3->second.value() == 4);

  CHECK_FALSE(sqrt_mod(Residue(3, 5)).has_value());
  CHECK(sqrt_mod(Residue(0, 5))->first.value() == 0);

  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    for (std::uint32_t a = 0; a < p; ++a) {
      auto r = sqrt_mod(Residue(a, p));
      CHECK(r.has_value() == (squares_mod(p).count(a) == 1));
      if (r) {
        CHECK((r->first * r->first).value() == a);
        CHECK((r->second * r->second).value() == a);
        CHECK(r->first.value() <= r->second.value());
      }
    }
  }
}

TEST_CASE("symplectic_form frozen examples") {
  CHECK(symplectic_form(v4({1, 0, 0, 0}, 5), v4({0, 1, 0, 0}, 5)).value() == 1);
  CHECK(symplectic_form(v4({0, 1, 1, 0}, 3), v4({1, 0, 0, 1}, 3)).value() == 0);
  CHECK(symplectic_form(v4({0, 0, 1, 0}, 5), v4({0, 0, 0, 1}, 5)).value() == 1);
}

TEST_CASE("symplectic_form antisymmetry, bilinearity, isotropy") {
  for (std::uint32_t p : {2u, 3u}) {
    std::vector<Vec4> all;
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b)
        for (std::uint32_t c = 0; c < p; ++c)
          for (std::uint32_t d = 0; d < p; ++d)
            all.push_back(v4({a, b, c, d}, p));
    for (const Vec4& u : all) {
      CHECK(symplectic_form(u, u).is_zero());
      for (const Vec4& v : all) {
        CHECK(symplectic_form(u, v) == -symplectic_form(v, u));
      }
    }
  }
  // Sampled bilinearity at p=11.
  std::mt19937_64 rng(mix_seed(7, 1));
  std::uniform_int_distribution<std::int64_t> coord(0, 10);
  for (int trial = 0; trial < 200; ++trial) {
    auto rand_vec = [&] {
      return v4({coord(rng), coord(rng), coord(rng), coord(rng)}, 11);
    };
    const Vec4 u = rand_vec(), v = rand_vec(), w = rand_vec();
    const Residue k(coord(rng), 11);
    CHECK(symplectic_form(u + v, w) ==
          symplectic_form(u, w) + symplectic_form(v, w));
    CHECK(symplectic_form(u.scaled(k), w) == symplectic_form(u, w) * k);
  }
}

TEST_CASE("subspace canonical form") {
  const Subspace f0 = Subspace::from_basis(v4({1, 0, 0, 0}, 5), v4({0, 1, 0, 0}, 5));
  CHECK(f0.row(0) == v4({1, 0, 0, 0}, 5));
  CHECK(f0.row(1) == v4({0, 1, 0, 0}, 5));

  const Subspace scaled =
      Subspace::from_basis(v4({2, 0, 0, 0}, 5), v4({0, 1, 0, 0}, 5));
  CHECK(scaled == f0);

  const Subspace mixed =
      Subspace::from_basis(v4({1, 1, 0, 0}, 3), v4({1, 0, 0, 0}, 3));
  CHECK(mixed == Subspace::from_basis(v4({1, 0, 0, 0}, 3), v4({0, 1, 0, 0}, 3)));

  CHECK_THROWS_AS(Subspace::from_basis(v4({1, 2, 0, 1}, 5), v4({2, 4, 0, 2}, 5)),
                  Error);
  CHECK_THROWS_AS(Subspace::from_basis(v4({0, 0, 0, 0}, 5), v4({1, 0, 0, 0}, 5)),
                  Error);
}

TEST_CASE("canonicalization is invariant under basis recombination") {
  std::mt19937_64 rng(mix_seed(7, 2));
  for (std::uint32_t p : {2u, 3u, 5u, 11u}) {
    std::uniform_int_distribution<std::int64_t> coord(0, p - 1);
    int built = 0;
    while (built < 25) {
      Vec4 a = v4({coord(rng), coord(rng), coord(rng), coord(rng)}, p);
      Vec4 b = v4({coord(rng), coord(rng), coord(rng), coord(rng)}, p);
      std::optional<Subspace> maybe;
      try {
        maybe = Subspace::from_basis(a, b);
      } catch (const Error&) {
        continue;  // dependent draw, roll again
      }
      const Subspace s = *maybe;
      ++built;
      // Random invertible recombination [x y; z w] of the basis.
      for (int k = 0; k < 8; ++k) {
        const std::int64_t x = coord(rng), y = coord(rng), z = coord(rng),
                           w = coord(rng);
        if (((x * w - y * z) % p + p) % p == 0) continue;
        const Vec4 a2 = a.scaled(Residue(x, p)) + b.scaled(Residue(y, p));
        const Vec4 b2 = a.scaled(Residue(z, p)) + b.scaled(Residue(w, p));
        CHECK(Subspace::from_basis(a2, b2) == s);
      }
    }
  }
}

TEST_CASE("subspace point enumeration") {
  const Subspace f0 = Subspace::from_basis(v4({1, 0, 0, 0}, 3), v4({0, 1, 0, 0}, 3));
  const auto pts = f0.points();
  CHECK(pts.size() == 9);
  std::set<std::array<std::uint32_t, 4>> uniq;
  for (const Vec4& q : pts) {
    uniq.insert({q[0].value(), q[1].value(), q[2].value(), q[3].value()});
    CHECK(q[2].is_zero());
    CHECK(q[3].is_zero());
  }
  CHECK(uniq.size() == 9);
}

TEST_CASE("intersect_trivially") {
  const Subspace f0 = Subspace::from_basis(v4({1, 0, 0, 0}, 5), v4({0, 1, 0, 0}, 5));
  const Subspace f1 = Subspace::from_basis(v4({0, 0, 1, 0}, 5), v4({0, 0, 0, 1}, 5));
  const Subspace shared =
      Subspace::from_basis(v4({1, 0, 0, 0}, 5), v4({0, 0, 1, 0}, 5));
  CHECK(intersect_trivially(f0, f1));
  CHECK(intersect_trivially(f1, f0));
  CHECK_FALSE(intersect_trivially(f0, f0));
  CHECK_FALSE(intersect_trivially(f0, shared));
  CHECK_FALSE(intersect_trivially(shared, f0));
}

TEST_CASE("mat2 frozen examples") {
  CHECK(Mat2::identity(3).det().value() == 1);
  const Mat2 m = Mat2::from_values({{{0, 2}, {1, 0}}}, 3);
  CHECK(m.det().value() == 1);  // -2 = 1 mod 3
  const Mat2 a = Mat2::from_values({{{1, 1}, {0, 1}}}, 2);
  const Mat2 b = Mat2::from_values({{{1, 0}, {1, 1}}}, 2);
  CHECK(a * b == Mat2::from_values({{{0, 1}, {1, 1}}}, 2));
}

TEST_CASE("cayley-hamilton and determinant identities") {
  auto check_all = [](std::uint32_t p, bool exhaustive) {
    std::mt19937_64 rng(mix_seed(7, 3));
    std::uniform_int_distribution<std::int64_t> coord(0, p - 1);
    const std::uint32_t n = exhaustive ? p : 1;
    const int samples = exhaustive ? 1 : 300;
    for (std::uint32_t a = 0; a < (exhaustive ? n : 1); ++a)
      for (std::uint32_t b = 0; b < (exhaustive ? n : 1); ++b)
        for (std::uint32_t c = 0; c < (exhaustive ? n : 1); ++c)
          for (std::uint32_t d = 0; d < (exhaustive ? n : 1); ++d)
            for (int s = 0; s < samples; ++s) {
              const Mat2 m = exhaustive
                                 ? Mat2::from_values({{{a, b}, {c, d}}}, p)
                                 : Mat2::from_values({{{coord(rng), coord(rng)},
                                                       {coord(rng), coord(rng)}}},
                                                     p);
              const Mat2 zero = Mat2::from_values({{{0, 0}, {0, 0}}}, p);
              CHECK(m * m - m.scaled(m.trace()) +
                        Mat2::identity(p).scaled(m.det()) ==
                    zero);
            }
  };
  check_all(2, true);
  check_all(3, true);
  check_all(11, false);
}

TEST_CASE("gl2 inverse and determinant") {
  CHECK_THROWS_AS(Gl2(Mat2::from_values({{{1, 2}, {2, 4}}}, 5)), Error);
  std::mt19937_64 rng(mix_seed(7, 4));
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    std::uniform_int_distribution<std::int64_t> coord(0, p - 1);
    int built = 0;
    while (built < 40) {
      const Mat2 m = Mat2::from_values(
          {{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}}}, p);
      if (m.det().is_zero()) continue;
      ++built;
      const Gl2 g(m);
      CHECK((g * g.inverse()).mat() == Mat2::identity(p));
      CHECK(g.inverse().det() == mod_inv(g.det()));
      const Gl2 h = Gl2::identity(p);
      CHECK((g * h) == g);
    }
  }
}
