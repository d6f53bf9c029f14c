// Command line front end: construct decompositions, verify and certify
// them, extract bases and hunt for unbiased witnesses.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mubcert/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitBoundNotMet = 3;
constexpr int kExitNoWitness = 4;
constexpr int kExitUsage = 64;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw mubcert::Error(mubcert::Errc::parse_error,
                         "cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw mubcert::Error(mubcert::Errc::parse_error,
                         "cannot write '" + out_path + "'");
  }
  out << text;
}

std::string now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
  return buf;
}

mubcert::Family parse_family(const std::string& name) {
  if (name == "galois") return mubcert::Family::Galois;
  if (name == "ab") return mubcert::Family::AB;
  throw CLI::ValidationError("--family", "must be 'galois' or 'ab'");
}

void print_report_human(const mubcert::CertificateReport& report,
                        std::ostream& os) {
  os << "p:             " << report.p << "\n"
     << "family:        " << mubcert::family_name(report.family) << "\n"
     << "factors:       " << report.factor_count << "\n"
     << "bound:         " << report.bound_required << "\n"
     << "verdict:       " << mubcert::verdict_name(report.verdict) << "\n";
  for (const auto& [name, value] : report.residuals) {
    os << "residual " << name << ": " << value << "\n";
  }
  for (const std::string& f : report.failures) {
    os << "failure: " << f << "\n";
  }
}

int verdict_exit_code(mubcert::Verdict verdict) {
  switch (verdict) {
    case mubcert::Verdict::StronglyUnextendible: return kExitOk;
    case mubcert::Verdict::BoundNotMet: return kExitBoundNotMet;
    case mubcert::Verdict::Invalid: return kExitInvalid;
  }
  return kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"complementary decompositions of M_p (x) M_p and MUB certificates"};
  app.require_subcommand(1);
  bool json_output = false;
  app.add_flag("--json", json_output, "machine readable output");

  // decompose
  auto* cmd_decompose = app.add_subcommand("decompose", "construct a decomposition");
  std::uint32_t p = 3;
  std::string family_name_arg = "galois";
  std::int64_t nonresidue = -1;
  std::uint64_t seed = 0;
  std::string out_path;
  cmd_decompose->add_option("--p", p, "prime characteristic")->required();
  cmd_decompose->add_option("--family", family_name_arg, "galois | ab")->required();
  cmd_decompose->add_option("--non-residue", nonresidue, "quadratic non-residue D");
  cmd_decompose->add_option("--seed", seed, "search seed");
  cmd_decompose->add_option("--out", out_path, "output file (default stdout)");

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "re-check a stored decomposition");
  std::string verify_path;
  bool verify_numeric = false;
  double verify_tol = 1e-10;
  cmd_verify->add_option("file", verify_path, "decomposition file")->required();
  cmd_verify->add_flag("--numeric", verify_numeric, "run the dense numeric cross-check");
  cmd_verify->add_option("--tol", verify_tol, "numeric tolerance");

  // certify
  auto* cmd_certify = app.add_subcommand("certify", "strong unextendibility verdict");
  std::string certify_path;
  cmd_certify->add_option("file", certify_path, "decomposition file")->required();

  // mubs
  auto* cmd_mubs = app.add_subcommand("mubs", "extract MASA eigenbases");
  std::string mubs_path, mubs_out;
  std::uint64_t mubs_seed = 0;
  cmd_mubs->add_option("file", mubs_path, "decomposition file")->required();
  cmd_mubs->add_option("--out", mubs_out, "vector file")->required();
  cmd_mubs->add_option("--seed", mubs_seed, "eigenbasis seed");

  // extend
  auto* cmd_extend = app.add_subcommand("extend", "recombined MASAs for p = 1 (mod 4)");
  std::uint32_t extend_p = 5;
  std::int64_t extend_nonresidue = -1;
  cmd_extend->add_option("--p", extend_p, "prime = 1 (mod 4)")->required();
  cmd_extend->add_option("--non-residue", extend_nonresidue, "quadratic non-residue D");

  // search-unbiased
  auto* cmd_search = app.add_subcommand("search-unbiased",
                                        "hunt for a vector unbiased to all bases");
  std::string search_path;
  int restarts = 200;
  std::uint64_t search_seed = 0;
  cmd_search->add_option("file", search_path, "MUB vector file")->required();
  cmd_search->add_option("--restarts", restarts, "random restarts");
  cmd_search->add_option("--seed", search_seed, "search seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*cmd_decompose) {
      mubcert::Family family = parse_family(family_name_arg);
      mubcert::Decomposition decomposition;
      if (family == mubcert::Family::AB) {
        std::optional<mubcert::Residue> d;
        if (nonresidue >= 0) d = mubcert::Residue(nonresidue, p);
        decomposition = mubcert::build_ab_decomposition(p, d);
      } else {
        mubcert::SubgroupSearchResult subgroup =
            mubcert::find_galois_subgroup(p, seed);
        for (const std::string& note : subgroup.notes) {
          std::cerr << "note: " << note << "\n";
        }
        decomposition = mubcert::build_galois_decomposition(p, subgroup);
      }
      mubcert::FileMetadata meta;
      meta.seed = seed;
      meta.timestamp = now_iso8601();
      std::cerr << "seed: " << seed << "\n";
      write_output(mubcert::serialize_decomposition(decomposition, meta),
                   out_path);
      return kExitOk;
    }

    if (*cmd_verify) {
      mubcert::DecompositionFile file =
          mubcert::parse_decomposition(read_file(verify_path));
      mubcert::CertificateReport report = mubcert::verify_external(
          file.decomposition, verify_numeric, verify_tol);
      if (json_output) {
        std::cout << mubcert::serialize_report(report);
      } else {
        print_report_human(report, std::cout);
      }
      return report.verdict == mubcert::Verdict::Invalid ? kExitInvalid
                                                         : kExitOk;
    }

    if (*cmd_certify) {
      mubcert::DecompositionFile file =
          mubcert::parse_decomposition(read_file(certify_path));
      mubcert::CertificateReport report =
          mubcert::certify_strong_unextendibility(file.decomposition);
      if (json_output) {
        std::cout << mubcert::serialize_report(report);
      } else {
        print_report_human(report, std::cout);
      }
      return verdict_exit_code(report.verdict);
    }

    if (*cmd_mubs) {
      mubcert::DecompositionFile file =
          mubcert::parse_decomposition(read_file(mubs_path));
      mubcert::MubFamily family =
          mubcert::extract_mub_family(file.decomposition, mubs_seed);
      mubcert::FileMetadata meta;
      meta.seed = mubs_seed;
      meta.timestamp = now_iso8601();
      std::cerr << "seed: " << mubs_seed << "\n";
      write_output(mubcert::serialize_mub_vectors(family, meta), mubs_out);
      return kExitOk;
    }

    if (*cmd_extend) {
      mubcert::Residue d =
          extend_nonresidue >= 0
              ? mubcert::Residue(extend_nonresidue, extend_p)
              : mubcert::smallest_nonresidue(extend_p);
      std::vector<mubcert::Subspace> replacements =
          mubcert::recombine_extension(extend_p, d);
      if (json_output) {
        std::string sep = "[\n";
        std::ostringstream os;
        for (const mubcert::Subspace& s : replacements) {
          os << sep << "  [[" << s.row(0)[0].value() << "," << s.row(0)[1].value()
             << "," << s.row(0)[2].value() << "," << s.row(0)[3].value()
             << "],[" << s.row(1)[0].value() << "," << s.row(1)[1].value()
             << "," << s.row(1)[2].value() << "," << s.row(1)[3].value()
             << "]]";
          sep = ",\n";
        }
        os << "\n]\n";
        std::cout << os.str();
      } else {
        for (const mubcert::Subspace& s : replacements) {
          std::cout << "[" << s.row(0)[0].value() << " " << s.row(0)[1].value()
                    << " " << s.row(0)[2].value() << " " << s.row(0)[3].value()
                    << "; " << s.row(1)[0].value() << " " << s.row(1)[1].value()
                    << " " << s.row(1)[2].value() << " " << s.row(1)[3].value()
                    << "]\n";
        }
      }
      return kExitOk;
    }

    if (*cmd_search) {
      mubcert::MubVectorsFile file =
          mubcert::parse_mub_vectors(read_file(search_path));
      mubcert::SearchResult result =
          mubcert::unbiased_vector_search(file.family, restarts, search_seed);
      std::cerr << "seed: " << search_seed << "\n";
      if (json_output) {
        std::cout << mubcert::serialize_search_result(result, true);
      } else {
        std::cout << "best_residual: " << result.best_residual << "\n"
                  << "restarts:      " << result.restarts << "\n"
                  << "seed:          " << result.seed << "\n"
                  << "witness:       "
                  << (result.best_residual < 1e-6 ? "yes" : "no") << "\n";
      }
      return result.best_residual < 1e-6 ? kExitOk : kExitNoWitness;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const mubcert::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case mubcert::Errc::parse_error:
      case mubcert::Errc::version_mismatch:
        return kExitInvalid;
      case mubcert::Errc::invalid_modulus:
      case mubcert::Errc::invalid_config:
      case mubcert::Errc::not_odd_prime:
      case mubcert::Errc::not_nonresidue:
      case mubcert::Errc::wrong_residue_class:
        return kExitUsage;
      default:
        return kExitRuntime;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
