#include "mubcert/weyl.hpp"

#include <cmath>
#include <numbers>

namespace mubcert {

namespace {

std::complex<double> root_of_unity(std::uint32_t p, std::uint64_t exponent) {
  const double angle =
      2.0 * std::numbers::pi * static_cast<double>(exponent % p) /
      static_cast<double>(p);
  return {std::cos(angle), std::sin(angle)};
}

void check_square(const CMat& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw Error(Errc::dimension_mismatch, std::string(who) + ": not square");
  }
}

}  // namespace

ClockShift clock_shift(std::uint32_t p) {
  [[maybe_unused]] Residue probe(0, p);  // validates p
  CMat z = CMat::Zero(p, p);
  CMat x = CMat::Zero(p, p);
  for (std::uint32_t k = 0; k < p; ++k) {
    z(k, k) = root_of_unity(p, k + 1);
    x((k + 1) % p, k) = 1.0;
  }
  return ClockShift{std::move(z), std::move(x)};
}

CMat weyl_single(std::uint32_t p, std::uint32_t a, std::uint32_t b) {
  [[maybe_unused]] Residue probe(0, p);
  CMat w = CMat::Zero(p, p);
  for (std::uint32_t k = 0; k < p; ++k) {
    // Z^b scales e_k by omega^{b(k+1)}, then X^a shifts to e_{k+a}.
    w((k + a) % p, k) =
        root_of_unity(p, static_cast<std::uint64_t>(b) * (k + 1));
  }
  return w;
}

CMat weyl_tensor(const Vec4& label) {
  const std::uint32_t p = label.modulus();
  return kron(weyl_single(p, label[0].value(), label[1].value()),
              weyl_single(p, label[2].value(), label[3].value()));
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

std::complex<double> hs_inner(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::dimension_mismatch, "hs_inner: shape mismatch");
  }
  // Tr(A* B) as an entrywise sum; avoids forming the product.
  return a.conjugate().cwiseProduct(b).sum();
}

std::complex<double> hs_inner_normalized(const CMat& a, const CMat& b) {
  check_square(a, "hs_inner_normalized");
  return hs_inner(a, b) / static_cast<double>(a.rows());
}

std::vector<CMat> materialize(const SubalgebraDesc& s) {
  std::vector<CMat> basis;
  for (const Vec4& point : s.subspace.points()) {
    basis.push_back(weyl_tensor(point));
  }
  return basis;
}

ComplementarityResult numeric_complementary(const SubalgebraDesc& s,
                                            const SubalgebraDesc& t,
                                            double tol) {
  const std::vector<CMat> bs = materialize(s);
  const std::vector<CMat> bt = materialize(t);
  double worst = 0.0;
  for (const CMat& a : bs) {
    const std::complex<double> tau_a_adj = std::conj(a.trace()) /
                                           static_cast<double>(a.rows());
    for (const CMat& b : bt) {
      const std::complex<double> joint = hs_inner_normalized(a, b);
      const std::complex<double> split =
          tau_a_adj * b.trace() / static_cast<double>(b.rows());
      worst = std::max(worst, std::abs(joint - split));
    }
  }
  return ComplementarityResult{worst <= tol, worst};
}

CMat partial_trace_1(const CMat& m, int d, int n) {
  check_square(m, "partial_trace_1");
  if (m.rows() != static_cast<Eigen::Index>(d) * n) {
    throw Error(Errc::dimension_mismatch,
                "partial_trace_1: dimension is not d*n");
  }
  CMat out = CMat::Zero(n, n);
  for (int i = 0; i < d; ++i) {
    out += m.block(static_cast<Eigen::Index>(i) * n,
                   static_cast<Eigen::Index>(i) * n, n, n);
  }
  return out;
}

CMat conditional_expectation_second_factor(const CMat& m, int d, int n) {
  return kron(CMat::Identity(d, d), partial_trace_1(m, d, n)) /
         static_cast<double>(d);
}

CMat conditional_expectation_subalgebra(const CMat& m,
                                        const SubalgebraDesc& s) {
  const std::uint32_t p = s.modulus();
  const Eigen::Index dim = static_cast<Eigen::Index>(p) * p;
  if (m.rows() != dim || m.cols() != dim) {
    throw Error(Errc::dimension_mismatch,
                "conditional_expectation_subalgebra: operand is not p^2 x p^2");
  }
  CMat out = CMat::Zero(dim, dim);
  for (const CMat& b : materialize(s)) {
    out += hs_inner_normalized(b, m) * b;
  }
  return out;
}

CVec vector_from_matrix(const CMat& a) {
  CVec v(a.rows() * a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      v(i * a.cols() + j) = a(i, j);
    }
  }
  return v;
}

}  // namespace mubcert
