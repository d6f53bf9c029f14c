#pragma once

#include <stdexcept>
#include <string>

namespace mubcert {

// Failure categories surfaced to callers and mapped to CLI diagnostics.
enum class Errc {
  invalid_modulus,
  modulus_mismatch,
  zero_inverse,
  no_nonresidue,
  dependent_vectors,
  singular_matrix,
  not_in_s,
  not_sl2,
  zero_i,
  zero_j,
  not_odd_prime,
  not_nonresidue,
  wrong_residue_class,
  search_exhausted,
  invalid_subgroup,
  not_a_masa,
  not_a_factor,
  degenerate_split,
  dimension_mismatch,
  parse_error,
  version_mismatch,
  invalid_config,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace mubcert
