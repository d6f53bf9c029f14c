#pragma once

#include <map>
#include <string>
#include <vector>

#include "mubcert/constructions.hpp"
#include "mubcert/weyl.hpp"

namespace mubcert {

// Orthonormal bases of C^{p^2}, one per source MASA, kept column-wise.
struct MubFamily {
  std::uint32_t p = 0;
  std::vector<CMat> bases;
  std::vector<SubalgebraDesc> source_masas;
};

// Joint eigenbasis of the commuting Weyl operators of a MASA. Columns are
// sorted by the quantized phases of their eigenvalue pair under the two
// generating Weyl operators, and the first nonzero amplitude of each column
// is rotated to the positive real axis.
CMat masa_eigenbasis(const SubalgebraDesc& s, std::uint64_t seed);

struct UnbiasednessResult {
  bool unbiased = false;
  double max_deviation = 0.0;
};

// max over pairs of | |<f_i|g_j>|^2 - 1/d |.
UnbiasednessResult unbiasedness_check(const CMat& b1, const CMat& b2,
                                      double tol);

// <h| E_S(|h><h|) |h> for a factor-kind subalgebra; lies in
// [1/p^2, 1/p + eps], hitting 1/p exactly on separable states and 1/p^2
// exactly on maximally entangled ones.
double pure_overlap(const CVec& h, const SubalgebraDesc& s);

// Minimal number of pairwise complementary factors M_n inside M_d (one of
// them containing a given pure state) : k >= d + (d-1)/(n-1), rounded up.
int factor_span_bound(int d, int n);

// Minimal number of MASAs of M_n whose span can contain a factor: n + 1.
int masa_span_bound(int n);

// Tr(E_factor E_masa) = sum of pure_overlap over the MASA eigenbasis;
// bounded by n for factors isomorphic to M_n.
double trace_overlap(const SubalgebraDesc& factor, const CMat& masa_basis);

enum class Verdict { StronglyUnextendible, BoundNotMet, Invalid };

const char* verdict_name(Verdict verdict);

struct CertificateReport {
  std::uint32_t p = 0;
  Family family = Family::Custom;
  int factor_count = 0;
  int bound_required = 0;
  Verdict verdict = Verdict::Invalid;
  std::map<std::string, double> residuals;
  std::map<std::string, std::string> provenance;
  std::vector<std::string> failures;
};

// Exact symbolic certificate: recounts, reclassifies and rechecks pairwise
// complementarity, then compares the factor count against the span bound.
// StronglyUnextendible iff the decomposition is valid and factor_count is
// strictly below p + 1.
CertificateReport certify_strong_unextendibility(const Decomposition& d);

// Eigenbases of every MASA in the decomposition (deterministic per seed).
MubFamily extract_mub_family(const Decomposition& d, std::uint64_t seed);

struct SearchResult {
  CVec best_vector;
  double best_residual = 0.0;
  int restarts = 0;
  std::uint64_t seed = 0;
};

// Seeded projected gradient descent on
// R(v) = sum_bases sum_i (|<b_i|v>|^2 - 1/d)^2 over the unit sphere;
// 500 iterations per restart on a fixed step schedule. Deterministic:
// identical (family, restarts, seed) reproduce the result bit for bit.
SearchResult unbiased_vector_search(const MubFamily& family, int restarts,
                                    std::uint64_t seed);

}  // namespace mubcert
