#include "mubcert/mub.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include "mubcert/rng.hpp"

namespace mubcert {

namespace {

constexpr double kEigenResidualTol = 1e-8;
constexpr int kSplitRetries = 32;

double column_residual(const CMat& w, const CVec& v,
                       std::complex<double>& eigenvalue) {
  eigenvalue = v.dot(w * v);  // Eigen's dot conjugates the left argument
  return (w * v - eigenvalue * v).norm();
}

// Eigenvalues of tensor Weyl operators sit on half-steps of 2*pi/p (exact
// p-th roots for odd p, quarter turns possible at p = 2); quantizing to
// that grid gives a stable sort key with the wrap to 2*pi folded away.
std::int64_t quantized_phase(std::complex<double> z, std::uint32_t p) {
  double angle = std::arg(z);
  if (angle < 0) angle += 2.0 * std::numbers::pi;
  const std::int64_t buckets = 2 * static_cast<std::int64_t>(p);
  return std::llround(angle / (2.0 * std::numbers::pi) *
                      static_cast<double>(buckets)) %
         buckets;
}

}  // namespace

CMat masa_eigenbasis(const SubalgebraDesc& s, std::uint64_t seed) {
  if (classify(s.subspace) != SubalgebraKind::Masa) {
    throw Error(Errc::not_a_masa, "eigenbasis requires a MASA label space");
  }
  const std::uint32_t p = s.modulus();
  const Eigen::Index dim = static_cast<Eigen::Index>(p) * p;
  const CMat w1 = weyl_tensor(s.subspace.row(0));
  const CMat w2 = weyl_tensor(s.subspace.row(1));
  // Hermitian generators spanning the same commutative algebra.
  const CMat h1 = (w1 + w1.adjoint()) / 2.0;
  const CMat h2 = (w1 - w1.adjoint()) / std::complex<double>(0.0, 2.0);
  const CMat h3 = (w2 + w2.adjoint()) / 2.0;
  const CMat h4 = (w2 - w2.adjoint()) / std::complex<double>(0.0, 2.0);

  std::mt19937_64 rng(mix_seed(seed, 0x31b5));
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (int attempt = 0; attempt < kSplitRetries; ++attempt) {
    CMat h = coeff(rng) * h1 + coeff(rng) * h2 + coeff(rng) * h3 +
             coeff(rng) * h4;
    h = (h + h.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMat> solver(h);
    if (solver.info() != Eigen::Success) continue;

    CMat basis = solver.eigenvectors();
    std::vector<std::pair<std::int64_t, std::int64_t>> keys(dim);
    bool split = true;
    for (Eigen::Index c = 0; c < dim && split; ++c) {
      CVec v = basis.col(c);
      std::complex<double> l1, l2;
      if (column_residual(w1, v, l1) > kEigenResidualTol) split = false;
      if (column_residual(w2, v, l2) > kEigenResidualTol) split = false;
      keys[c] = {quantized_phase(l1, p), quantized_phase(l2, p)};
    }
    if (!split) continue;

    std::vector<Eigen::Index> order(dim);
    for (Eigen::Index c = 0; c < dim; ++c) order[c] = c;
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return keys[a] < keys[b];
    });

    CMat sorted(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
      CVec v = basis.col(order[c]);
      for (Eigen::Index r = 0; r < dim; ++r) {
        if (std::abs(v(r)) > 1e-8) {
          v *= std::conj(v(r)) / std::abs(v(r));
          break;
        }
      }
      sorted.col(c) = v;
    }
    return sorted;
  }
  throw Error(Errc::degenerate_split,
              "random combinations failed to split the joint spectrum");
}

UnbiasednessResult unbiasedness_check(const CMat& b1, const CMat& b2,
                                      double tol) {
  if (b1.rows() != b2.rows() || b1.cols() != b2.cols() ||
      b1.rows() != b1.cols()) {
    throw Error(Errc::dimension_mismatch, "unbiasedness_check: shape mismatch");
  }
  const double flat = 1.0 / static_cast<double>(b1.rows());
  const CMat gram = b1.adjoint() * b2;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < gram.rows(); ++i) {
    for (Eigen::Index j = 0; j < gram.cols(); ++j) {
      worst = std::max(worst, std::abs(std::norm(gram(i, j)) - flat));
    }
  }
  return UnbiasednessResult{worst <= tol, worst};
}

double pure_overlap(const CVec& h, const SubalgebraDesc& s) {
  if (classify(s.subspace) == SubalgebraKind::Masa) {
    throw Error(Errc::not_a_factor, "pure_overlap requires a factor");
  }
  const std::uint32_t p = s.modulus();
  const Eigen::Index dim = static_cast<Eigen::Index>(p) * p;
  if (h.size() != dim) {
    throw Error(Errc::dimension_mismatch, "pure_overlap: state is not in C^{p^2}");
  }
  const CMat rho = h * h.adjoint();
  const CMat cond = conditional_expectation_subalgebra(rho, s);
  return std::real(h.dot(cond * h));
}

int factor_span_bound(int d, int n) {
  if (d < 2 || n < 2) {
    throw Error(Errc::invalid_config, "span bounds need d, n >= 2");
  }
  return d + (d - 1 + n - 2) / (n - 1);
}

int masa_span_bound(int n) {
  if (n < 2) {
    throw Error(Errc::invalid_config, "span bounds need n >= 2");
  }
  return n + 1;
}

double trace_overlap(const SubalgebraDesc& factor, const CMat& masa_basis) {
  double total = 0.0;
  for (Eigen::Index c = 0; c < masa_basis.cols(); ++c) {
    total += pure_overlap(masa_basis.col(c), factor);
  }
  return total;
}

const char* verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::StronglyUnextendible: return "strongly_unextendible";
    case Verdict::BoundNotMet: return "bound_not_met";
    case Verdict::Invalid: return "invalid";
  }
  return "unknown";
}

CertificateReport certify_strong_unextendibility(const Decomposition& d) {
  CertificateReport report;
  report.p = d.p;
  report.family = d.family;
  report.provenance["p"] = std::to_string(d.p);
  report.provenance["family"] = family_name(d.family);
  if (d.nonresidue) {
    report.provenance["nonresidue"] = std::to_string(d.nonresidue->value());
  }

  const std::size_t expected =
      static_cast<std::size_t>(d.p) * d.p + 1;
  if (d.subalgebras.size() != expected) {
    report.failures.push_back(
        "subalgebra count " + std::to_string(d.subalgebras.size()) +
        " differs from p^2 + 1 = " + std::to_string(expected));
  }
  report.residuals["count_check"] =
      d.subalgebras.size() == expected ? 0.0 : 1.0;

  // Stored kinds are advisory; everything is reclassified from the labels.
  int factor_count = 0;
  int product0 = 0;
  int product1 = 0;
  bool kinds_ok = true;
  for (std::size_t i = 0; i < d.subalgebras.size(); ++i) {
    const SubalgebraDesc& sub = d.subalgebras[i];
    if (sub.modulus() != d.p) {
      report.failures.push_back("subalgebra " + std::to_string(i) +
                                " carries modulus " +
                                std::to_string(sub.modulus()));
      kinds_ok = false;
      continue;
    }
    SubalgebraKind recomputed = classify(sub.subspace);
    if (recomputed != sub.kind) {
      report.failures.push_back(
          "subalgebra " + std::to_string(i) + " tagged " +
          kind_name(sub.kind) + " but classifies as " +
          kind_name(recomputed));
      kinds_ok = false;
    }
    if (recomputed != SubalgebraKind::Masa) ++factor_count;
    if (recomputed == SubalgebraKind::ProductFactor0) ++product0;
    if (recomputed == SubalgebraKind::ProductFactor1) ++product1;
  }
  if (product0 != 1 || product1 != 1) {
    report.failures.push_back("expected exactly one of each product factor");
  }
  report.residuals["kind_check"] = kinds_ok ? 0.0 : 1.0;

  bool pairwise_ok = true;
  for (std::size_t a = 0; a < d.subalgebras.size(); ++a) {
    for (std::size_t b = a + 1; b < d.subalgebras.size(); ++b) {
      if (d.subalgebras[a].modulus() != d.p ||
          d.subalgebras[b].modulus() != d.p) {
        continue;
      }
      if (!intersect_trivially(d.subalgebras[a].subspace,
                               d.subalgebras[b].subspace)) {
        pairwise_ok = false;
        report.failures.push_back("subalgebras " + std::to_string(a) +
                                  " and " + std::to_string(b) +
                                  " intersect nontrivially");
      }
    }
  }
  report.residuals["pairwise_complementarity"] = pairwise_ok ? 0.0 : 1.0;

  report.factor_count = factor_count;
  report.bound_required = factor_span_bound(d.p, d.p);
  if (!report.failures.empty()) {
    report.verdict = Verdict::Invalid;
  } else if (factor_count < report.bound_required) {
    report.verdict = Verdict::StronglyUnextendible;
  } else {
    report.verdict = Verdict::BoundNotMet;
  }
  return report;
}

MubFamily extract_mub_family(const Decomposition& d, std::uint64_t seed) {
  MubFamily family;
  family.p = d.p;
  for (std::size_t i = 0; i < d.subalgebras.size(); ++i) {
    const SubalgebraDesc& sub = d.subalgebras[i];
    if (classify(sub.subspace) != SubalgebraKind::Masa) continue;
    family.bases.push_back(masa_eigenbasis(sub, mix_seed(seed, i)));
    family.source_masas.push_back(sub);
  }
  return family;
}

SearchResult unbiased_vector_search(const MubFamily& family, int restarts,
                                    std::uint64_t seed) {
  if (family.bases.empty() || restarts < 1) {
    throw Error(Errc::invalid_config,
                "search needs at least one basis and one restart");
  }
  const Eigen::Index dim = family.bases[0].rows();
  for (const CMat& b : family.bases) {
    if (b.rows() != dim || b.cols() != dim) {
      throw Error(Errc::dimension_mismatch, "search bases disagree on dimension");
    }
  }
  // All basis vectors stacked as rows: coordinates c = G v in one sweep.
  CMat g(static_cast<Eigen::Index>(family.bases.size()) * dim, dim);
  for (std::size_t b = 0; b < family.bases.size(); ++b) {
    g.middleRows(static_cast<Eigen::Index>(b) * dim, dim) =
        family.bases[b].adjoint();
  }
  const double flat = 1.0 / static_cast<double>(dim);

  SearchResult result;
  result.restarts = restarts;
  result.seed = seed;
  result.best_residual = std::numeric_limits<double>::infinity();

  constexpr int kIterations = 500;
  constexpr double kStep = 0.2;
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(mix_seed(seed, 0xace1000 + static_cast<std::uint64_t>(r)));
    std::normal_distribution<double> normal(0.0, 1.0);
    CVec v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      v(i) = std::complex<double>(normal(rng), normal(rng));
    }
    v.normalize();

    for (int it = 0; it <= kIterations; ++it) {
      const CVec c = g * v;
      const Eigen::ArrayXd err = c.array().abs2() - flat;
      const double residual = (err * err).sum();
      if (residual < result.best_residual) {
        result.best_residual = residual;
        result.best_vector = v;
      }
      if (residual < 1e-14 || it == kIterations) break;
      // Wirtinger gradient of R; fixed step, projection back to the sphere.
      const CVec grad =
          2.0 * (g.adjoint() *
                 (err.cast<std::complex<double>>() * c.array()).matrix());
      v = (v - kStep * grad).normalized();
    }
  }
  return result;
}

}  // namespace mubcert
