#pragma once

#include <optional>

#include "mubcert/mub.hpp"

namespace mubcert {

struct PipelineConfig {
  std::uint32_t p = 3;
  Family family = Family::Galois;
  std::optional<std::uint32_t> nonresidue;  // AB family only
  std::uint64_t seed = 0;
  bool numeric_enabled = true;
  bool force_numeric = false;  // lift the p <= 7 gate on the numeric layer
  std::uint64_t attempt_budget = 1'000'000;
  std::map<std::string, double> tolerances;  // filled with defaults when empty
};

std::map<std::string, double> default_tolerances();

struct PipelineResult {
  Decomposition decomposition;
  std::optional<MubFamily> mubs;
  CertificateReport report;
};

// construction -> symbolic certificate -> optional numeric cross-checks and
// MUB extraction. Verdicts come from the symbolic layer alone; numeric
// residuals are recorded next to them. Runs are deterministic per config.
PipelineResult run_pipeline(const PipelineConfig& config);

// Re-derives every symbolic check from the stored label subspaces, ignoring
// all stored tags; optional numeric pass on top.
CertificateReport verify_external(const Decomposition& d,
                                  bool numeric = false, double tol = 1e-10);

}  // namespace mubcert
