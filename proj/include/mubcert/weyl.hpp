#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "mubcert/subalgebra.hpp"

namespace mubcert {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Clock and shift pair on C^p. The diagonal of Z starts at omega^1, so p = 2
// gives Z = -sigma_3 and X = sigma_1; X shifts e_k to e_{k+1 mod p}.
struct ClockShift {
  CMat z;
  CMat x;
};

ClockShift clock_shift(std::uint32_t p);

// X^a Z^b on C^p, phases taken directly from the unit circle.
CMat weyl_single(std::uint32_t p, std::uint32_t a, std::uint32_t b);

// W(u) = X^{u1} Z^{u2} (x) X^{u3} Z^{u4} on C^{p^2}; W(0) = identity.
CMat weyl_tensor(const Vec4& label);

CMat kron(const CMat& a, const CMat& b);

// Raw Tr(A* B) and the normalized trace form tau(A* B) = Tr(A* B)/dim.
std::complex<double> hs_inner(const CMat& a, const CMat& b);
std::complex<double> hs_inner_normalized(const CMat& a, const CMat& b);

// The p^2 Weyl operators of all points of the label subspace, in point
// order, identity first; an orthonormal basis of the subalgebra under tau.
std::vector<CMat> materialize(const SubalgebraDesc& s);

struct ComplementarityResult {
  bool complementary = false;
  double max_residual = 0.0;
};

// max |tau(A* B) - tau(A*) tau(B)| over the two materialized bases.
ComplementarityResult numeric_complementary(const SubalgebraDesc& s,
                                            const SubalgebraDesc& t,
                                            double tol);

// Tr_1: M_{d n} -> M_n, contracting the first tensor leg.
CMat partial_trace_1(const CMat& m, int d, int n);

// E onto CI (x) M_n: (1/d) I (x) Tr_1(M). Idempotent and trace preserving.
CMat conditional_expectation_second_factor(const CMat& m, int d, int n);

// tau-orthogonal projection onto the subalgebra spanned by materialize(s).
CMat conditional_expectation_subalgebra(const CMat& m,
                                        const SubalgebraDesc& s);

// |v_A> = sum_ij A_ij e_i (x) f_j for a d x n coefficient matrix.
CVec vector_from_matrix(const CMat& a);

}  // namespace mubcert
