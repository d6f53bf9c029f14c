#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mubcert/residue.hpp"

namespace mubcert {

enum class SubalgebraKind { Masa, Factor, ProductFactor0, ProductFactor1 };

const char* kind_name(SubalgebraKind kind);

// F0 = Sp{(1,0,0,0),(0,1,0,0)} and F1 = Sp{(0,0,1,0),(0,0,0,1)}, the
// subspaces of the two tensor legs.
Subspace product_subspace_0(std::uint32_t p);
Subspace product_subspace_1(std::uint32_t p);

// phi([[x1,y1],[x2,y2]]) = Sp{(0,1,x1,x2),(1,0,y1,y2)}; a bijection between
// invertible matrices and subspaces meeting both F0 and F1 trivially.
Subspace phi(const Gl2& m);
Gl2 phi_inverse(const Subspace& s);

SubalgebraKind classify(const Subspace& s);

// pi(M)' = pi((det M)^-1 * M); the scalar multiplies the whole matrix, so
// the commutant's determinant is (det M)^-1.
Gl2 commutant(const Gl2& m);

// {v : c(u,v) = 0 for all u in S}; agrees with phi(commutant(...)) on the
// range of phi and swaps F0 <-> F1.
Subspace symplectic_complement(const Subspace& s);

// det(A - B) != 0, i.e. phi(A) and phi(B) meet trivially. Both inputs must
// have determinant 1.
bool sl2_pair_complementary(const Gl2& a, const Gl2& b);

// M != I with det(M - I) = 0; for determinant-1 matrices this is exactly
// multiplicative order p.
bool has_order_p(const Gl2& m);

// A subalgebra of M_p (x) M_p named by the subspace of Weyl labels spanning
// it. gl2_rep is present exactly when the subspace is in the range of phi.
struct SubalgebraDesc {
  SubalgebraKind kind;
  Subspace subspace;
  std::optional<Gl2> gl2_rep;

  static SubalgebraDesc from_gl2(const Gl2& m);
  static SubalgebraDesc from_subspace(const Subspace& s);
  static SubalgebraDesc product_factor_0(std::uint32_t p);
  static SubalgebraDesc product_factor_1(std::uint32_t p);

  std::uint32_t modulus() const { return subspace.modulus(); }
  bool operator==(const SubalgebraDesc& rhs) const;
};

// Commutant at the subalgebra level: F0 <-> F1, MASAs to themselves,
// factors through the symplectic complement.
SubalgebraDesc commutant(const SubalgebraDesc& s);

}  // namespace mubcert
