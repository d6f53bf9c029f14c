#pragma once

#include <optional>
#include <string>

#include "mubcert/mub.hpp"
#include "mubcert/pipeline.hpp"

namespace mubcert {

inline constexpr const char* kFormatVersion = "1";
inline constexpr const char* kToolVersion = "0.1.0";

struct FileMetadata {
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  std::string timestamp;  // empty means "omit"
};

// On-disk snapshot of a decomposition: subspaces as canonical echelon rows.
std::string serialize_decomposition(const Decomposition& d,
                                    const FileMetadata& meta);
struct DecompositionFile {
  Decomposition decomposition;
  FileMetadata metadata;
};
DecompositionFile parse_decomposition(const std::string& text);

// Extracted bases with their source subspaces; vectors as re/im arrays.
std::string serialize_mub_vectors(const MubFamily& family,
                                  const FileMetadata& meta);
struct MubVectorsFile {
  MubFamily family;
  FileMetadata metadata;
};
MubVectorsFile parse_mub_vectors(const std::string& text);

std::string serialize_report(const CertificateReport& report);
CertificateReport parse_report(const std::string& text);

std::string serialize_search_result(const SearchResult& result,
                                    bool include_vector);

}  // namespace mubcert
