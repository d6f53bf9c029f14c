#include "mubcert/errors.hpp"

namespace mubcert {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::invalid_modulus: return "InvalidModulus";
    case Errc::modulus_mismatch: return "ModulusMismatch";
    case Errc::zero_inverse: return "ZeroInverse";
    case Errc::no_nonresidue: return "NoNonresidue";
    case Errc::dependent_vectors: return "DependentVectors";
    case Errc::singular_matrix: return "SingularMatrix";
    case Errc::not_in_s: return "NotInS";
    case Errc::not_sl2: return "NotSL2";
    case Errc::zero_i: return "ZeroI";
    case Errc::zero_j: return "ZeroJ";
    case Errc::not_odd_prime: return "NotOddPrime";
    case Errc::not_nonresidue: return "NotNonresidue";
    case Errc::wrong_residue_class: return "WrongResidueClass";
    case Errc::search_exhausted: return "SearchExhausted";
    case Errc::invalid_subgroup: return "InvalidSubgroup";
    case Errc::not_a_masa: return "NotAMasa";
    case Errc::not_a_factor: return "NotAFactor";
    case Errc::degenerate_split: return "DegenerateSplit";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::parse_error: return "ParseError";
    case Errc::version_mismatch: return "VersionMismatch";
    case Errc::invalid_config: return "InvalidConfig";
  }
  return "UnknownError";
}

}  // namespace mubcert
