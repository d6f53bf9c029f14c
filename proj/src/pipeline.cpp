#include "mubcert/pipeline.hpp"

#include <algorithm>

namespace mubcert {

std::map<std::string, double> default_tolerances() {
  return {
      {"numeric_complementarity", 1e-10},
      {"unbiasedness", 1e-9},
      {"eigenvector_residual", 1e-8},
  };
}

namespace {

void numeric_pass(const Decomposition& d, double tol,
                  CertificateReport& report) {
  double worst = 0.0;
  bool agree = true;
  for (std::size_t a = 0; a < d.subalgebras.size(); ++a) {
    for (std::size_t b = a + 1; b < d.subalgebras.size(); ++b) {
      ComplementarityResult r =
          numeric_complementary(d.subalgebras[a], d.subalgebras[b], tol);
      worst = std::max(worst, r.max_residual);
      const bool symbolic = intersect_trivially(d.subalgebras[a].subspace,
                                                d.subalgebras[b].subspace);
      if (r.complementary != symbolic) {
        agree = false;
        report.failures.push_back(
            "numeric and symbolic complementarity disagree on pair " +
            std::to_string(a) + "," + std::to_string(b));
      }
    }
  }
  report.residuals["numeric_complementarity"] = worst;
  report.residuals["numeric_symbolic_agreement"] = agree ? 0.0 : 1.0;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
  PipelineConfig cfg = config;
  if (cfg.tolerances.empty()) cfg.tolerances = default_tolerances();
  for (const auto& [name, value] : cfg.tolerances) {
    if (!(value > 0.0)) {
      throw Error(Errc::invalid_config, "tolerance " + name + " must be positive");
    }
  }

  Decomposition decomposition = [&] {
    switch (cfg.family) {
      case Family::AB: {
        std::optional<Residue> d;
        if (cfg.nonresidue) d = Residue(*cfg.nonresidue, cfg.p);
        return build_ab_decomposition(cfg.p, d);
      }
      case Family::Galois: {
        SubgroupSearchResult subgroup =
            find_galois_subgroup(cfg.p, cfg.seed, {}, cfg.attempt_budget);
        Decomposition out = build_galois_decomposition(cfg.p, subgroup);
        return out;
      }
      case Family::Custom:
        throw Error(Errc::invalid_config,
                    "custom decompositions come from files, not the pipeline");
    }
    throw Error(Errc::invalid_config, "unreachable family");
  }();

  PipelineResult result{std::move(decomposition), std::nullopt,
                        CertificateReport{}};
  result.report = certify_strong_unextendibility(result.decomposition);
  result.report.provenance["seed"] = std::to_string(cfg.seed);
  result.report.provenance["attempt_budget"] =
      std::to_string(cfg.attempt_budget);

  const bool numeric_allowed = cfg.p <= 7 || cfg.force_numeric;
  const bool numeric_on = cfg.numeric_enabled && numeric_allowed;
  result.report.provenance["numeric_layer"] = numeric_on ? "on" : "off";

  if (numeric_on) {
    numeric_pass(result.decomposition,
                 cfg.tolerances.at("numeric_complementarity"), result.report);

    MubFamily mubs = extract_mub_family(result.decomposition, cfg.seed);
    double worst_dev = 0.0;
    bool all_unbiased = true;
    for (std::size_t a = 0; a < mubs.bases.size(); ++a) {
      for (std::size_t b = a + 1; b < mubs.bases.size(); ++b) {
        UnbiasednessResult u = unbiasedness_check(
            mubs.bases[a], mubs.bases[b], cfg.tolerances.at("unbiasedness"));
        worst_dev = std::max(worst_dev, u.max_deviation);
        all_unbiased = all_unbiased && u.unbiased;
      }
    }
    if (!mubs.bases.empty()) {
      result.report.residuals["mub_max_deviation"] = worst_dev;
      if (!all_unbiased) {
        result.report.failures.push_back(
            "extracted bases miss the unbiasedness tolerance");
      }
    }
    result.mubs = std::move(mubs);
  }
  return result;
}

CertificateReport verify_external(const Decomposition& d, bool numeric,
                                  double tol) {
  CertificateReport report = certify_strong_unextendibility(d);
  report.provenance["source"] = "external";
  if (numeric) {
    numeric_pass(d, tol, report);
    report.provenance["numeric_layer"] = "on";
  } else {
    report.provenance["numeric_layer"] = "off";
  }
  return report;
}

}  // namespace mubcert
