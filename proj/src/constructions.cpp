#include "mubcert/constructions.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "mubcert/rng.hpp"

namespace mubcert {

const char* family_name(Family family) {
  switch (family) {
    case Family::Galois: return "galois";
    case Family::AB: return "ab";
    case Family::Custom: return "custom";
  }
  return "unknown";
}

Gl2 ab_matrix_a(const Residue& i, const Residue& j, const Residue& d) {
  if (j.is_zero()) {
    throw Error(Errc::zero_j, "A_{i,j} needs an invertible j");
  }
  const std::uint32_t p = i.modulus();
  Residue one(1, p);
  Residue lower_left = mod_inv(j) * (one - d * i * i);
  return Gl2(Mat2(i, -j, lower_left, d * i));
}

Gl2 ab_matrix_b(const Residue& i, const Residue& d) {
  if (i.is_zero()) {
    throw Error(Errc::zero_i, "B_i needs an invertible i");
  }
  const std::uint32_t p = i.modulus();
  return Gl2(Mat2(i, Residue(0, p), Residue(0, p), -(i * d)));
}

namespace {

void check_pairwise_complementary(const std::vector<SubalgebraDesc>& subs,
                                  Errc errc, const char* context) {
  for (std::size_t a = 0; a < subs.size(); ++a) {
    for (std::size_t b = a + 1; b < subs.size(); ++b) {
      if (!intersect_trivially(subs[a].subspace, subs[b].subspace)) {
        throw Error(errc, std::string(context) + ": subalgebras " +
                              std::to_string(a) + " and " + std::to_string(b) +
                              " share a nonzero label");
      }
    }
  }
}

Residue validated_nonresidue(std::uint32_t p, std::optional<Residue> d) {
  Residue value = d.value_or(smallest_nonresidue(p));
  if (value.modulus() != p) {
    throw Error(Errc::modulus_mismatch, "D carries a foreign modulus");
  }
  if (sqrt_mod(value).has_value()) {
    throw Error(Errc::not_nonresidue,
                std::to_string(value.value()) + " is a square mod " +
                    std::to_string(p));
  }
  return value;
}

}  // namespace

Decomposition build_ab_decomposition(std::uint32_t p,
                                     std::optional<Residue> d) {
  if (p == 2 || !is_prime_u16(p)) {
    throw Error(Errc::not_odd_prime,
                std::to_string(p) + " is not an odd prime below 2^16");
  }
  Residue nonres = validated_nonresidue(p, d);

  std::vector<SubalgebraDesc> subs;
  subs.reserve(static_cast<std::size_t>(p) * p + 1);
  subs.push_back(SubalgebraDesc::product_factor_0(p));
  subs.push_back(SubalgebraDesc::product_factor_1(p));
  for (std::uint32_t i = 0; i < p; ++i) {
    for (std::uint32_t j = 1; j < p; ++j) {
      subs.push_back(SubalgebraDesc::from_gl2(
          ab_matrix_a(Residue(i, p), Residue(j, p), nonres)));
    }
  }
  for (std::uint32_t i = 1; i < p; ++i) {
    subs.push_back(
        SubalgebraDesc::from_gl2(ab_matrix_b(Residue(i, p), nonres)));
  }
  check_pairwise_complementary(subs, Errc::invalid_config,
                               "AB decomposition");
  return Decomposition{p, Family::AB, nonres, std::move(subs), std::nullopt};
}

namespace {

// Hot-path representation for subgroup closure: a 2x2 matrix packed into a
// single integer, entries in row-major base-p digits.
using Packed = std::uint32_t;

struct PackedOps {
  std::uint32_t p;

  Packed pack(std::uint32_t a, std::uint32_t b, std::uint32_t c,
              std::uint32_t d) const {
    return ((a * p + b) * p + c) * p + d;
  }
  Packed pack_gl2(const Gl2& m) const {
    return pack(m.mat().at(0, 0).value(), m.mat().at(0, 1).value(),
                m.mat().at(1, 0).value(), m.mat().at(1, 1).value());
  }
  Gl2 unpack(Packed x) const {
    std::uint32_t d = x % p;
    x /= p;
    std::uint32_t c = x % p;
    x /= p;
    std::uint32_t b = x % p;
    std::uint32_t a = x / p;
    return Gl2(Mat2(Residue(a, p), Residue(b, p), Residue(c, p),
                    Residue(d, p)));
  }
  Packed mul(Packed x, Packed y) const {
    std::uint32_t xd = x % p, xc = (x / p) % p, xb = (x / p / p) % p,
                  xa = x / p / p / p;
    std::uint32_t yd = y % p, yc = (y / p) % p, yb = (y / p / p) % p,
                  ya = y / p / p / p;
    return pack((xa * ya + xb * yc) % p, (xa * yb + xb * yd) % p,
                (xc * ya + xd * yc) % p, (xc * yb + xd * yd) % p);
  }
  std::uint32_t trace(Packed x) const { return (x / p / p / p + x % p) % p; }
  Packed identity() const { return pack(1, 0, 0, 1); }
};

// Closure under right multiplication by the generators, capped: returns the
// element count, or cap + 1 as soon as the cap is exceeded. `seen` must be a
// zeroed p^4 bitmap; it is wiped again before returning.
std::size_t closure_capped(const PackedOps& ops,
                           const std::vector<Packed>& generators,
                           std::size_t cap, std::vector<std::uint8_t>& seen,
                           std::vector<Packed>& elements) {
  elements.clear();
  auto push = [&](Packed x) {
    if (!seen[x]) {
      seen[x] = 1;
      elements.push_back(x);
    }
  };
  push(ops.identity());
  std::size_t head = 0;
  bool overflow = false;
  while (head < elements.size()) {
    Packed e = elements[head++];
    for (Packed g : generators) {
      push(ops.mul(e, g));
      if (elements.size() > cap) {
        overflow = true;
        break;
      }
    }
    if (overflow) break;
  }
  std::size_t count = overflow ? cap + 1 : elements.size();
  for (Packed x : elements) seen[x] = 0;
  return count;
}

bool subgroup_is_galois(const PackedOps& ops,
                        const std::vector<Packed>& elements,
                        std::uint32_t target_order) {
  if (elements.size() != target_order) return false;
  const Packed id = ops.identity();
  const std::uint32_t trace_two = 2 % ops.p;
  for (Packed e : elements) {
    // Determinant-1 elements of trace 2 other than I have order p.
    if (e != id && ops.trace(e) == trace_two) return false;
  }
  return true;
}

std::vector<Gl2> builtin_hints(std::uint32_t p) {
  // Printed generator pairs exist for p = 2 and p = 3 only; the p = 2 pair
  // is known-bad (both elements have order 2) and is kept so the validator
  // demonstrably rejects it before the random phase takes over.
  if (p == 2) {
    return {Gl2::from_values({{{1, 1}, {0, 1}}}, p),
            Gl2::from_values({{{1, 0}, {1, 1}}}, p)};
  }
  if (p == 3) {
    return {Gl2::from_values({{{0, 1}, {2, 0}}}, p),
            Gl2::from_values({{{2, 2}, {2, 1}}}, p)};
  }
  return {};
}

std::string describe_pair(const Gl2& a, const Gl2& b) {
  auto one = [](const Gl2& m) {
    const Mat2& mm = m.mat();
    return "[[" + std::to_string(mm.at(0, 0).value()) + "," +
           std::to_string(mm.at(0, 1).value()) + "],[" +
           std::to_string(mm.at(1, 0).value()) + "," +
           std::to_string(mm.at(1, 1).value()) + "]]";
  };
  return one(a) + ", " + one(b);
}

}  // namespace

std::vector<Gl2> subgroup_closure(const std::vector<Gl2>& generators) {
  if (generators.empty()) {
    throw Error(Errc::invalid_config, "closure needs at least one generator");
  }
  const std::uint32_t p = generators[0].modulus();
  if (p > 61) {
    throw Error(Errc::invalid_config, "subgroup closure supports p <= 61 only");
  }
  PackedOps ops{p};
  std::vector<Packed> packed;
  for (const Gl2& g : generators) {
    if (g.modulus() != p) {
      throw Error(Errc::modulus_mismatch, "generators mix moduli");
    }
    packed.push_back(ops.pack_gl2(g));
  }
  const std::size_t group_order =
      static_cast<std::size_t>(p) * (p * p - 1) * p;  // |GL_2(p)| upper bound
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(p) * p * p * p, 0);
  std::vector<Packed> elements;
  closure_capped(ops, packed, group_order, seen, elements);
  std::sort(elements.begin(), elements.end());
  std::vector<Gl2> out;
  out.reserve(elements.size());
  for (Packed e : elements) out.push_back(ops.unpack(e));
  return out;
}

SubgroupSearchResult find_galois_subgroup(
    std::uint32_t p, std::uint64_t seed,
    const std::vector<std::vector<Gl2>>& hint_generators,
    std::uint64_t attempt_budget) {
  if (!is_prime_u16(p)) {
    throw Error(Errc::invalid_modulus,
                std::to_string(p) + " is not a prime below 2^16");
  }
  if (p > 61) {
    throw Error(Errc::invalid_config,
                "subgroup search supports p <= 61 only");
  }
  const std::uint32_t target = p * p - 1;
  PackedOps ops{p};
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(p) * p * p * p, 0);
  std::vector<Packed> elements;
  SubgroupSearchResult result;

  auto finish = [&](std::vector<Gl2> gens) {
    std::sort(elements.begin(), elements.end());
    result.generators = std::move(gens);
    for (Packed e : elements) result.elements.push_back(ops.unpack(e));
    result.order = result.elements.size();
    return result;
  };

  // Hint phase: caller-supplied sets first, then the built-in pairs.
  std::vector<std::vector<Gl2>> hints = hint_generators;
  std::vector<Gl2> builtin = builtin_hints(p);
  if (!builtin.empty()) hints.push_back(builtin);
  for (const std::vector<Gl2>& hint : hints) {
    std::vector<Packed> packed;
    bool usable = true;
    for (const Gl2& g : hint) {
      if (g.modulus() != p || g.det().value() != 1) {
        usable = false;
        break;
      }
      packed.push_back(ops.pack_gl2(g));
    }
    std::string label =
        hint.size() == 2 ? describe_pair(hint[0], hint[1]) : "generator set";
    if (usable && !packed.empty()) {
      closure_capped(ops, packed, target, seen, elements);
      if (subgroup_is_galois(ops, elements, target)) {
        result.notes.push_back("hint generators accepted: " + label);
        return finish(hint);
      }
    }
    result.notes.push_back("hint generators rejected: " + label);
  }

  // Random phase: seeded pairs of determinant-1, trace != 2 elements.
  std::vector<Packed> candidates;
  for (std::uint32_t a = 0; a < p; ++a) {
    for (std::uint32_t b = 0; b < p; ++b) {
      for (std::uint32_t c = 0; c < p; ++c) {
        for (std::uint32_t d = 0; d < p; ++d) {
          std::uint64_t det =
              (static_cast<std::uint64_t>(a) * d + static_cast<std::uint64_t>(p) * p -
               static_cast<std::uint64_t>(b) * c) % p;
          if (det != 1) continue;
          if ((a + d) % p == 2 % p) continue;
          candidates.push_back(ops.pack(a, b, c, d));
        }
      }
    }
  }
  std::mt19937_64 rng(mix_seed(seed, 0x9a7a));
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  std::vector<Packed> pair(2, ops.identity());
  for (std::uint64_t attempt = 1; attempt <= attempt_budget; ++attempt) {
    pair[0] = candidates[pick(rng)];
    pair[1] = candidates[pick(rng)];
    result.attempts = attempt;
    closure_capped(ops, pair, target, seen, elements);
    if (subgroup_is_galois(ops, elements, target)) {
      result.notes.push_back("random pair accepted after " +
                             std::to_string(attempt) + " attempts");
      return finish({ops.unpack(pair[0]), ops.unpack(pair[1])});
    }
  }
  throw Error(Errc::search_exhausted,
              "no order-" + std::to_string(target) +
                  " subgroup found in " + std::to_string(attempt_budget) +
                  " candidate pairs at p = " + std::to_string(p));
}

Decomposition build_galois_decomposition(
    std::uint32_t p, const SubgroupSearchResult& subgroup) {
  if (subgroup.order != subgroup.elements.size() ||
      subgroup.order != static_cast<std::size_t>(p) * p - 1) {
    throw Error(Errc::invalid_subgroup,
                "expected order " + std::to_string(p * p - 1) + ", got " +
                    std::to_string(subgroup.elements.size()));
  }
  for (const Gl2& m : subgroup.elements) {
    if (m.modulus() != p || m.det().value() != 1) {
      throw Error(Errc::invalid_subgroup, "element outside SL_2");
    }
    if (has_order_p(m)) {
      throw Error(Errc::invalid_subgroup, "subgroup contains an order-p element");
    }
  }
  for (std::size_t a = 0; a < subgroup.elements.size(); ++a) {
    for (std::size_t b = a + 1; b < subgroup.elements.size(); ++b) {
      if (!sl2_pair_complementary(subgroup.elements[a],
                                  subgroup.elements[b])) {
        throw Error(Errc::invalid_subgroup,
                    "elements " + std::to_string(a) + " and " +
                        std::to_string(b) + " give overlapping MASAs");
      }
    }
  }

  std::vector<SubalgebraDesc> subs;
  subs.reserve(subgroup.order + 2);
  subs.push_back(SubalgebraDesc::product_factor_0(p));
  subs.push_back(SubalgebraDesc::product_factor_1(p));
  for (const Gl2& m : subgroup.elements) {
    subs.push_back(SubalgebraDesc::from_gl2(m));
  }
  check_pairwise_complementary(subs, Errc::invalid_subgroup,
                               "Galois decomposition");
  return Decomposition{p, Family::Galois, std::nullopt, std::move(subs),
                       subgroup.generators};
}

std::vector<Subspace> recombine_extension(std::uint32_t p, const Residue& d) {
  if (!is_prime_u16(p) || p % 4 != 1) {
    throw Error(Errc::wrong_residue_class,
                std::to_string(p) + " is not a prime = 1 (mod 4)");
  }
  Residue nonres = validated_nonresidue(p, d);

  std::vector<Subspace> replacements;
  replacements.push_back(
      Subspace::from_basis(Vec4::from_values({0, 1, 0, 0}, p),
                           Vec4::from_values({0, 0, 1, 0}, p)));
  replacements.push_back(
      Subspace::from_basis(Vec4::from_values({1, 0, 0, 0}, p),
                           Vec4::from_values({0, 0, 0, 1}, p)));
  for (std::uint32_t i = 1; i < p; ++i) {
    Residue ri(i, p);
    Residue slope = -(mod_inv(ri) * nonres);
    Vec4 u(Residue(1, p), ri, Residue(0, p), Residue(0, p));
    Vec4 v(Residue(0, p), Residue(0, p), Residue(1, p), slope);
    replacements.push_back(Subspace::from_basis(u, v));
  }

  // Point-set union equality against F0 u F1 u phi(B_i).
  auto pack_point = [p](const Vec4& v) {
    std::uint64_t key = v[0].value();
    key = key * p + v[1].value();
    key = key * p + v[2].value();
    key = key * p + v[3].value();
    return key;
  };
  std::set<std::uint64_t> replaced_union;
  for (const Subspace& s : replacements) {
    for (const Vec4& pt : s.points()) replaced_union.insert(pack_point(pt));
  }
  std::set<std::uint64_t> original_union;
  for (const Vec4& pt : product_subspace_0(p).points()) {
    original_union.insert(pack_point(pt));
  }
  for (const Vec4& pt : product_subspace_1(p).points()) {
    original_union.insert(pack_point(pt));
  }
  for (std::uint32_t i = 1; i < p; ++i) {
    for (const Vec4& pt : phi(ab_matrix_b(Residue(i, p), nonres)).points()) {
      original_union.insert(pack_point(pt));
    }
  }
  if (replaced_union != original_union) {
    throw Error(Errc::invalid_config,
                "recombination union mismatch at p = " + std::to_string(p));
  }
  return replacements;
}

}  // namespace mubcert
