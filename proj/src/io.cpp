#include "mubcert/io.hpp"

#include <nlohmann/json.hpp>

namespace mubcert {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail_parse(const std::string& where,
                             const std::string& what) {
  throw Error(Errc::parse_error, what + " at " + where);
}

// Every object is checked against its full key list, so unknown fields are
// rejected with the offending path.
void check_keys(const ordered_json& obj, const std::string& where,
                std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional = {}) {
  if (!obj.is_object()) fail_parse(where, "expected an object");
  for (const char* key : required) {
    if (!obj.contains(key)) {
      fail_parse(where, std::string("missing field '") + key + "'");
    }
  }
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : required) known = known || key == k;
    for (const char* k : optional) known = known || key == k;
    if (!known) {
      fail_parse(where + "/" + key, "unknown field '" + key + "'");
    }
  }
}

void check_version(const ordered_json& obj, const std::string& where) {
  if (!obj.contains("format_version")) {
    fail_parse(where, "missing field 'format_version'");
  }
  const ordered_json& v = obj.at("format_version");
  if (!v.is_string() || v.get<std::string>() != kFormatVersion) {
    throw Error(Errc::version_mismatch,
                "expected format_version \"" + std::string(kFormatVersion) +
                    "\", got " + v.dump());
  }
}

ordered_json parse_text(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::parse_error, e.what());
  }
}

std::uint32_t parse_prime(const ordered_json& obj, const std::string& where) {
  if (!obj.is_number_unsigned()) fail_parse(where, "expected a prime");
  const std::uint64_t p = obj.get<std::uint64_t>();
  if (p >= (1u << 16) || !is_prime_u16(static_cast<std::uint32_t>(p))) {
    fail_parse(where, "modulus " + std::to_string(p) + " is not a prime below 2^16");
  }
  return static_cast<std::uint32_t>(p);
}

ordered_json subspace_to_json(const Subspace& s) {
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < 2; ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < 4; ++c) {
      row.push_back(s.row(r)[c].value());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Subspace subspace_from_json(const ordered_json& rows, std::uint32_t p,
                            const std::string& where) {
  if (!rows.is_array() || rows.size() != 2) {
    fail_parse(where, "expected two basis rows");
  }
  std::array<Vec4, 2> vecs = {Vec4::from_values({0, 0, 0, 1}, p),
                              Vec4::from_values({0, 0, 0, 1}, p)};
  for (std::size_t r = 0; r < 2; ++r) {
    const ordered_json& row = rows[r];
    if (!row.is_array() || row.size() != 4) {
      fail_parse(where, "expected four coordinates per row");
    }
    std::array<std::int64_t, 4> coords{};
    for (std::size_t c = 0; c < 4; ++c) {
      if (!row[c].is_number_integer() && !row[c].is_number_unsigned()) {
        fail_parse(where, "expected integer coordinates");
      }
      coords[c] = row[c].get<std::int64_t>();
    }
    vecs[r] = Vec4::from_values(coords, p);
  }
  try {
    return Subspace::from_basis(vecs[0], vecs[1]);
  } catch (const Error& e) {
    fail_parse(where, e.what());
  }
}

ordered_json gl2_to_json(const Gl2& m) {
  return ordered_json::array(
      {ordered_json::array({m.mat().at(0, 0).value(), m.mat().at(0, 1).value()}),
       ordered_json::array({m.mat().at(1, 0).value(), m.mat().at(1, 1).value()})});
}

Gl2 gl2_from_json(const ordered_json& j, std::uint32_t p,
                  const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() ||
      !j[1].is_array() || j[0].size() != 2 || j[1].size() != 2) {
    fail_parse(where, "expected a 2x2 integer matrix");
  }
  try {
    return Gl2::from_values({{{j[0][0].get<std::int64_t>(),
                               j[0][1].get<std::int64_t>()},
                              {j[1][0].get<std::int64_t>(),
                               j[1][1].get<std::int64_t>()}}},
                            p);
  } catch (const Error& e) {
    fail_parse(where, e.what());
  }
}

Family family_from_string(const std::string& name, const std::string& where) {
  if (name == "galois") return Family::Galois;
  if (name == "ab") return Family::AB;
  if (name == "custom") return Family::Custom;
  fail_parse(where, "unknown family '" + name + "'");
}

SubalgebraKind kind_from_string(const std::string& name,
                                const std::string& where) {
  if (name == "masa") return SubalgebraKind::Masa;
  if (name == "factor") return SubalgebraKind::Factor;
  if (name == "product_factor_0") return SubalgebraKind::ProductFactor0;
  if (name == "product_factor_1") return SubalgebraKind::ProductFactor1;
  fail_parse(where, "unknown kind '" + name + "'");
}

ordered_json metadata_to_json(const FileMetadata& meta) {
  ordered_json out;
  out["seed"] = meta.seed;
  out["tool_version"] = meta.tool_version;
  if (!meta.timestamp.empty()) out["timestamp"] = meta.timestamp;
  return out;
}

FileMetadata metadata_from_json(const ordered_json& j,
                                const std::string& where) {
  check_keys(j, where, {"seed", "tool_version"}, {"timestamp"});
  FileMetadata meta;
  if (!j.at("seed").is_number_unsigned()) fail_parse(where, "seed must be unsigned");
  meta.seed = j.at("seed").get<std::uint64_t>();
  meta.tool_version = j.at("tool_version").get<std::string>();
  if (j.contains("timestamp")) meta.timestamp = j.at("timestamp").get<std::string>();
  return meta;
}

}  // namespace

std::string serialize_decomposition(const Decomposition& d,
                                    const FileMetadata& meta) {
  ordered_json out;
  out["format_version"] = kFormatVersion;
  out["p"] = d.p;
  out["family"] = family_name(d.family);
  if (d.nonresidue) out["nonresidue"] = d.nonresidue->value();
  if (d.generators) {
    ordered_json gens = ordered_json::array();
    for (const Gl2& g : *d.generators) gens.push_back(gl2_to_json(g));
    out["generators"] = std::move(gens);
  }
  ordered_json subs = ordered_json::array();
  for (const SubalgebraDesc& sub : d.subalgebras) {
    ordered_json item;
    item["kind"] = kind_name(sub.kind);
    item["subspace"] = subspace_to_json(sub.subspace);
    subs.push_back(std::move(item));
  }
  out["subalgebras"] = std::move(subs);
  out["metadata"] = metadata_to_json(meta);
  return out.dump(2) + "\n";
}

DecompositionFile parse_decomposition(const std::string& text) {
  const ordered_json root = parse_text(text);
  try {
  check_version(root, "/");
  check_keys(root, "/",
             {"format_version", "p", "family", "subalgebras", "metadata"},
             {"nonresidue", "generators"});

  DecompositionFile file;
  const std::uint32_t p = parse_prime(root.at("p"), "/p");
  file.decomposition.p = p;
  file.decomposition.family =
      family_from_string(root.at("family").get<std::string>(), "/family");
  if (root.contains("nonresidue")) {
    file.decomposition.nonresidue =
        Residue(root.at("nonresidue").get<std::int64_t>(), p);
  }
  if (root.contains("generators")) {
    std::vector<Gl2> gens;
    const ordered_json& jgens = root.at("generators");
    if (!jgens.is_array()) fail_parse("/generators", "expected an array");
    for (std::size_t i = 0; i < jgens.size(); ++i) {
      gens.push_back(
          gl2_from_json(jgens[i], p, "/generators/" + std::to_string(i)));
    }
    file.decomposition.generators = std::move(gens);
  }
  const ordered_json& jsubs = root.at("subalgebras");
  if (!jsubs.is_array()) fail_parse("/subalgebras", "expected an array");
  for (std::size_t i = 0; i < jsubs.size(); ++i) {
    const std::string where = "/subalgebras/" + std::to_string(i);
    check_keys(jsubs[i], where, {"kind", "subspace"});
    SubalgebraKind kind =
        kind_from_string(jsubs[i].at("kind").get<std::string>(), where);
    Subspace subspace =
        subspace_from_json(jsubs[i].at("subspace"), p, where + "/subspace");
    std::optional<Gl2> rep;
    if (intersect_trivially(subspace, product_subspace_0(p)) &&
        intersect_trivially(subspace, product_subspace_1(p))) {
      rep = phi_inverse(subspace);
    }
    file.decomposition.subalgebras.push_back(
        SubalgebraDesc{kind, subspace, rep});
  }
  file.metadata = metadata_from_json(root.at("metadata"), "/metadata");
  return file;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, e.what());
  }
}

std::string serialize_mub_vectors(const MubFamily& family,
                                  const FileMetadata& meta) {
  ordered_json out;
  out["format_version"] = kFormatVersion;
  out["p"] = family.p;
  const Eigen::Index dim =
      static_cast<Eigen::Index>(family.p) * family.p;
  out["dimension"] = dim;
  ordered_json bases = ordered_json::array();
  for (std::size_t b = 0; b < family.bases.size(); ++b) {
    ordered_json basis;
    basis["source_subspace"] = subspace_to_json(family.source_masas[b].subspace);
    ordered_json vectors = ordered_json::array();
    for (Eigen::Index c = 0; c < family.bases[b].cols(); ++c) {
      ordered_json re = ordered_json::array();
      ordered_json im = ordered_json::array();
      for (Eigen::Index r = 0; r < family.bases[b].rows(); ++r) {
        re.push_back(family.bases[b](r, c).real());
        im.push_back(family.bases[b](r, c).imag());
      }
      ordered_json vec;
      vec["re"] = std::move(re);
      vec["im"] = std::move(im);
      vectors.push_back(std::move(vec));
    }
    basis["vectors"] = std::move(vectors);
    bases.push_back(std::move(basis));
  }
  out["bases"] = std::move(bases);
  out["metadata"] = metadata_to_json(meta);
  return out.dump(2) + "\n";
}

MubVectorsFile parse_mub_vectors(const std::string& text) {
  const ordered_json root = parse_text(text);
  try {
  check_version(root, "/");
  check_keys(root, "/",
             {"format_version", "p", "dimension", "bases", "metadata"});
  MubVectorsFile file;
  const std::uint32_t p = parse_prime(root.at("p"), "/p");
  file.family.p = p;
  const Eigen::Index dim = static_cast<Eigen::Index>(p) * p;
  if (!root.at("dimension").is_number_unsigned() ||
      root.at("dimension").get<Eigen::Index>() != dim) {
    fail_parse("/dimension", "dimension must equal p^2");
  }
  const ordered_json& jbases = root.at("bases");
  if (!jbases.is_array()) fail_parse("/bases", "expected an array");
  for (std::size_t b = 0; b < jbases.size(); ++b) {
    const std::string where = "/bases/" + std::to_string(b);
    check_keys(jbases[b], where, {"source_subspace", "vectors"});
    Subspace source = subspace_from_json(jbases[b].at("source_subspace"), p,
                                         where + "/source_subspace");
    const ordered_json& jvecs = jbases[b].at("vectors");
    if (!jvecs.is_array() || jvecs.size() != static_cast<std::size_t>(dim)) {
      fail_parse(where + "/vectors", "expected p^2 vectors");
    }
    CMat basis(dim, dim);
    for (std::size_t c = 0; c < jvecs.size(); ++c) {
      const std::string vwhere = where + "/vectors/" + std::to_string(c);
      check_keys(jvecs[c], vwhere, {"re", "im"});
      const ordered_json& re = jvecs[c].at("re");
      const ordered_json& im = jvecs[c].at("im");
      if (!re.is_array() || !im.is_array() ||
          re.size() != static_cast<std::size_t>(dim) ||
          im.size() != static_cast<std::size_t>(dim)) {
        fail_parse(vwhere, "re/im must hold p^2 numbers");
      }
      for (Eigen::Index r = 0; r < dim; ++r) {
        basis(r, static_cast<Eigen::Index>(c)) = std::complex<double>(
            re[static_cast<std::size_t>(r)].get<double>(),
            im[static_cast<std::size_t>(r)].get<double>());
      }
    }
    for (Eigen::Index c = 0; c < dim; ++c) {
      if (std::abs(basis.col(c).norm() - 1.0) > 1e-10) {
        fail_parse(where + "/vectors/" + std::to_string(c),
                   "vector is not normalized");
      }
    }
    file.family.bases.push_back(std::move(basis));
    file.family.source_masas.push_back(SubalgebraDesc::from_subspace(source));
  }
  file.metadata = metadata_from_json(root.at("metadata"), "/metadata");
  return file;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, e.what());
  }
}

std::string serialize_report(const CertificateReport& report) {
  ordered_json out;
  out["format_version"] = kFormatVersion;
  out["p"] = report.p;
  out["family"] = family_name(report.family);
  out["factor_count"] = report.factor_count;
  out["bound_required"] = report.bound_required;
  out["verdict"] = verdict_name(report.verdict);
  out["residuals"] = report.residuals;
  out["provenance"] = report.provenance;
  out["failures"] = report.failures;
  return out.dump(2) + "\n";
}

CertificateReport parse_report(const std::string& text) {
  const ordered_json root = parse_text(text);
  try {
  check_version(root, "/");
  check_keys(root, "/",
             {"format_version", "p", "family", "factor_count",
              "bound_required", "verdict", "residuals", "provenance",
              "failures"});
  CertificateReport report;
  report.p = parse_prime(root.at("p"), "/p");
  report.family =
      family_from_string(root.at("family").get<std::string>(), "/family");
  report.factor_count = root.at("factor_count").get<int>();
  report.bound_required = root.at("bound_required").get<int>();
  const std::string verdict = root.at("verdict").get<std::string>();
  if (verdict == "strongly_unextendible") {
    report.verdict = Verdict::StronglyUnextendible;
  } else if (verdict == "bound_not_met") {
    report.verdict = Verdict::BoundNotMet;
  } else if (verdict == "invalid") {
    report.verdict = Verdict::Invalid;
  } else {
    fail_parse("/verdict", "unknown verdict '" + verdict + "'");
  }
  report.residuals =
      root.at("residuals").get<std::map<std::string, double>>();
  report.provenance =
      root.at("provenance").get<std::map<std::string, std::string>>();
  report.failures = root.at("failures").get<std::vector<std::string>>();
  return report;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, e.what());
  }
}

std::string serialize_search_result(const SearchResult& result,
                                    bool include_vector) {
  ordered_json out;
  out["format_version"] = kFormatVersion;
  out["best_residual"] = result.best_residual;
  out["restarts"] = result.restarts;
  out["seed"] = result.seed;
  out["witness"] = result.best_residual < 1e-6;
  if (include_vector) {
    ordered_json re = ordered_json::array();
    ordered_json im = ordered_json::array();
    for (Eigen::Index i = 0; i < result.best_vector.size(); ++i) {
      re.push_back(result.best_vector(i).real());
      im.push_back(result.best_vector(i).imag());
    }
    out["best_vector"] = {{"re", std::move(re)}, {"im", std::move(im)}};
  }
  return out.dump(2) + "\n";
}

}  // namespace mubcert
