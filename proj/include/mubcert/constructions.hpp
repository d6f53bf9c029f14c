#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mubcert/subalgebra.hpp"

namespace mubcert {

enum class Family { Galois, AB, Custom };

const char* family_name(Family family);

// A full complementary decomposition of M_p (x) M_p: the two product factors
// plus p^2 - 1 further subalgebras, pairwise complementary.
struct Decomposition {
  std::uint32_t p;
  Family family;
  std::optional<Residue> nonresidue;
  std::vector<SubalgebraDesc> subalgebras;
  std::optional<std::vector<Gl2>> generators;  // Galois family only
};

// A_{i,j} = [[i, -j], [j^-1 (1 - D i^2), D i]]; determinant 1 for every
// i and nonzero j.
Gl2 ab_matrix_a(const Residue& i, const Residue& j, const Residue& d);

// B_i = [[i, 0], [0, -i D]] for nonzero i; determinant -D i^2.
Gl2 ab_matrix_b(const Residue& i, const Residue& d);

// F0, F1, the p(p-1) MASAs phi(A_{i,j}) and the p-1 subalgebras phi(B_i).
// D defaults to the least non-residue and must be a non-residue.
Decomposition build_ab_decomposition(std::uint32_t p,
                                     std::optional<Residue> d = std::nullopt);

struct SubgroupSearchResult {
  std::vector<Gl2> generators;
  std::vector<Gl2> elements;
  std::size_t order = 0;
  std::uint64_t attempts = 0;
  std::vector<std::string> notes;
};

// Breadth-first closure of the generated group, identity included,
// deduplicated, in a canonical order.
std::vector<Gl2> subgroup_closure(const std::vector<Gl2>& generators);

// Seeded search for a subgroup of SL_2(p) of order p^2 - 1 without order-p
// elements. Hint generator pairs are validated by closure before the random
// phase; hints that fail are recorded in the notes and never trusted.
SubgroupSearchResult find_galois_subgroup(
    std::uint32_t p, std::uint64_t seed,
    const std::vector<std::vector<Gl2>>& hint_generators = {},
    std::uint64_t attempt_budget = 1'000'000);

// F0, F1 plus phi of every subgroup element; validates pairwise
// complementarity of the whole family.
Decomposition build_galois_decomposition(std::uint32_t p,
                                         const SubgroupSearchResult& subgroup);

// For p = 1 (mod 4): the p+1 pairwise complementary MASA subspaces
// Sp{(0,1,0,0),(0,0,1,0)}, Sp{(1,0,0,0),(0,0,0,1)} and
// Sp{(1,i,0,0),(0,0,1,-i^-1 D)} for nonzero i, whose union of points equals
// the union over F0, F1 and the phi(B_i). The equality is re-checked here.
std::vector<Subspace> recombine_extension(std::uint32_t p, const Residue& d);

}  // namespace mubcert
