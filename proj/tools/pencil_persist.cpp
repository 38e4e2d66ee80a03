// pencil-persist: command-line front end for the pencilpersist shared
// library. Talks to the C API only; JSON parsing here is presentation.

#include <pencilpersist.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;

int exit_code(pp_status status) {
  switch (status) {
    case PP_OK: return 0;
    case PP_ERR_INCONSISTENT: return 2;
    case PP_ERR_INVALID_INPUT: return 3;
    case PP_ERR_NO_CONVERGENCE: return 4;
    case PP_ERR_SEARCH_EXHAUSTED: return 4;
    default: return 1;
  }
}

[[noreturn]] void die(pp_status status) {
  std::cerr << "error (" << pp_status_name(status) << "): " << pp_last_error()
            << "\n";
  std::exit(exit_code(status));
}

void check(pp_status status) {
  if (status != PP_OK) die(status);
}

struct MatrixHandle {
  pp_matrix* ptr = nullptr;
  ~MatrixHandle() { pp_matrix_free(ptr); }
};

struct StringHandle {
  char* ptr = nullptr;
  ~StringHandle() { pp_string_free(ptr); }
  std::string str() const { return ptr == nullptr ? "" : ptr; }
};

// Loads a matrix from a JSON file, or from stdin when the path is "-".
void load_matrix(const std::string& path, MatrixHandle& out) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    const std::string text = buffer.str();
    check(pp_matrix_parse_json(text.c_str(), &out.ptr));
  } else {
    check(pp_matrix_read_file(path.c_str(), &out.ptr));
  }
}

std::string format_complex(double re, double im) {
  std::ostringstream os;
  os << re;
  if (im != 0.0) os << (im < 0 ? " - " : " + ") << std::abs(im) << "i";
  return os.str();
}

void print_roots(const json& roots, const char* indent) {
  for (const auto& r : roots) {
    std::cout << indent << "t = "
              << format_complex(r["re"].get<double>(), r["im"].get<double>())
              << "  (multiplicity " << r["multiplicity"].get<int>() << ")\n";
  }
}

void print_report_human(const json& rep) {
  std::cout << "lambda0:            " << rep["lambda0"].get<double>() << "\n";
  std::cout << "in spectrum of H0:  "
            << (rep["lambda0_in_spectrum"].get<bool>() ? "yes" : "no") << "\n";
  const auto& exc = rep["exceptional"];
  const std::string kind = exc["kind"].get<std::string>();
  std::cout << "exceptional set:    " << kind;
  if (kind == "AllComplex")
    std::cout << "  (the eigenvalue persists for every coupling t)";
  std::cout << "\n";
  if (!exc["roots"].empty()) {
    std::cout << "roots:\n";
    print_roots(exc["roots"], "  ");
  }
  if (!exc["real_roots_unit_interval"].empty()) {
    std::cout << "real roots in [0,1]:\n";
    print_roots(exc["real_roots_unit_interval"], "  ");
  }
  std::cout << "cyclic range:       "
            << (rep["cyclic"].get<bool>() ? "yes" : "no") << "\n";
  const auto& vc = rep["v_class"];
  std::cout << "V classification:   ";
  if (vc["indefinite"].get<bool>())
    std::cout << "indefinite";
  else if (vc["psd"].get<bool>() && vc["nsd"].get<bool>())
    std::cout << "zero";
  else if (vc["psd"].get<bool>())
    std::cout << "positive semidefinite";
  else
    std::cout << "negative semidefinite";
  std::cout << "  (rank+ " << vc["rank_plus"].get<int>() << ", rank- "
            << vc["rank_minus"].get<int>() << ", kernel "
            << vc["kernel_dim"].get<int>() << ")\n";
  std::cout << "consistency checks:\n";
  for (const auto& check : rep["theorem_checks"]) {
    std::cout << "  [" << (check["consistent"].get<bool>() ? "ok" : "FAIL")
              << "] " << check["name"].get<std::string>();
    if (!check["applicable"].get<bool>()) std::cout << " (not applicable)";
    std::cout << "\n";
  }
  std::cout << "measure estimate:   " << rep["measure_estimate"].get<double>()
            << "\n";
  if (!rep["witnesses"].empty()) {
    std::cout << "witnesses:          " << rep["witnesses"].size()
              << " sampled kernel vector(s), residuals";
    for (const auto& w : rep["witnesses"])
      std::cout << " " << w["residual"].get<double>();
    std::cout << "\n";
  }
}

pp_tolerances g_tol;

void add_tolerance_flags(CLI::App& app) {
  app.add_option("--tol-rank", g_tol.rank, "rank / pivot threshold");
  app.add_option("--tol-eig", g_tol.eig, "eigenresidual threshold");
  app.add_option("--tol-herm", g_tol.herm, "Hermitian-symmetry gate");
  app.add_option("--tol-zero-poly", g_tol.zero_poly,
                 "identically-zero-polynomial threshold");
  app.add_option("--tol-real", g_tol.real, "imaginary-part threshold");
  app.add_option("--tol-cluster", g_tol.cluster, "root-clustering radius");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eigenvalue-persistence analysis for families H0 + t V"};
  app.require_subcommand(1);
  app.fallthrough(false);

  // Flags take precedence over PENCIL_PERSIST_TOL_* which take precedence
  // over the defaults.
  check(pp_tolerances_from_env(&g_tol));

  std::string h0_path, v_path, corpus_id;
  double lambda0 = 0.0, e0 = 0.0;
  std::uint64_t seed = 0;
  std::size_t dim = 3, trials = 10;
  bool as_json = false;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "classify the exceptional set of (H0, V) at lambda0");
  analyze->add_option("--h0", h0_path, "H0 matrix JSON file ('-' for stdin)")
      ->required();
  analyze->add_option("--v", v_path, "V matrix JSON file")->required();
  analyze->add_option("--lambda0", lambda0, "target eigenvalue")->required();
  analyze->add_option("--seed", seed, "seed for sampled sub-checks");
  analyze->add_flag("--json", as_json, "emit the full report as JSON");
  add_tolerance_flags(*analyze);

  CLI::App* bs = app.add_subcommand(
      "bs", "resolvent (Birman-Schwinger) reduction at e0 outside spec(H0)");
  bs->add_option("--h0", h0_path, "H0 matrix JSON file")->required();
  bs->add_option("--v", v_path, "V matrix JSON file")->required();
  bs->add_option("--e0", e0, "probe energy")->required();
  bs->add_flag("--json", as_json, "emit JSON");
  add_tolerance_flags(*bs);

  CLI::App* cyclicity = app.add_subcommand(
      "cyclicity", "Krylov test: is ran(V) cyclic for H0?");
  cyclicity->add_option("--h0", h0_path, "H0 matrix JSON file")->required();
  cyclicity->add_option("--v", v_path, "V matrix JSON file")->required();
  cyclicity->add_flag("--json", as_json, "emit JSON");
  add_tolerance_flags(*cyclicity);

  CLI::App* corpus =
      app.add_subcommand("corpus", "built-in fixture instances");
  CLI::App* corpus_list = corpus->add_subcommand("list", "list instances");
  (void)corpus_list;
  CLI::App* corpus_run =
      corpus->add_subcommand("run", "run one instance against its expectation");
  corpus_run->add_option("id", corpus_id, "instance id")->required();
  corpus_run->add_flag("--json", as_json, "emit JSON");
  add_tolerance_flags(*corpus_run);
  corpus->require_subcommand(1);

  CLI::App* hunt = app.add_subcommand(
      "hunt", "search for verified persistent-eigenvalue families");
  hunt->add_option("--dim", dim, "matrix dimension (>= 3)")->required();
  hunt->add_option("--trials", trials, "number of seeded trials")->required();
  hunt->add_option("--seed", seed, "base seed");
  hunt->add_flag("--json", as_json, "emit JSON");
  add_tolerance_flags(*hunt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  if (analyze->parsed()) {
    MatrixHandle h0, v;
    load_matrix(h0_path, h0);
    load_matrix(v_path, v);
    pp_report* report = nullptr;
    check(pp_analyze(h0.ptr, v.ptr, lambda0, seed, &g_tol, &report));
    StringHandle text;
    check(pp_report_to_json(report, &text.ptr));
    pp_report_free(report);
    if (as_json)
      std::cout << text.str() << "\n";
    else
      print_report_human(json::parse(text.str()));
    return 0;
  }

  if (bs->parsed()) {
    MatrixHandle h0, v;
    load_matrix(h0_path, h0);
    load_matrix(v_path, v);
    pp_bs* reduction = nullptr;
    check(pp_bs_reduce(h0.ptr, v.ptr, e0, &g_tol, &reduction));
    StringHandle text;
    check(pp_bs_to_json(reduction, &text.ptr));
    pp_bs_free(reduction);
    if (as_json) {
      std::cout << text.str() << "\n";
    } else {
      const json doc = json::parse(text.str());
      std::cout << "e0: " << doc["e0"].get<double>() << "\n";
      std::cout << "exceptional couplings (t = -1/mu):\n";
      for (const auto& t : doc["exceptional_t"])
        std::cout << "  "
                  << format_complex(t[0].get<double>(), t[1].get<double>())
                  << "\n";
      std::cout << "count in [0,1]: " << doc["count_unit_interval"].get<int>()
                << "\n";
      std::cout << "note: " << doc["note"].get<std::string>() << "\n";
    }
    return 0;
  }

  if (cyclicity->parsed()) {
    MatrixHandle h0, v;
    load_matrix(h0_path, h0);
    load_matrix(v_path, v);
    int cyclic = 0;
    std::size_t krylov_rank = 0, generators = 0;
    check(pp_cyclicity(h0.ptr, v.ptr, &g_tol, &cyclic, &krylov_rank,
                       &generators));
    if (as_json) {
      json doc;
      doc["cyclic"] = cyclic != 0;
      doc["krylov_rank"] = krylov_rank;
      doc["generator_count"] = generators;
      std::cout << doc.dump() << "\n";
    } else {
      std::cout << "cyclic:          " << (cyclic ? "yes" : "no") << "\n"
                << "krylov rank:     " << krylov_rank << "\n"
                << "generators used: " << generators << "\n";
    }
    return 0;
  }

  if (corpus->parsed()) {
    if (corpus_run->parsed()) {
      int pass = 0;
      StringHandle text;
      check(pp_corpus_run(corpus_id.c_str(), &g_tol, &pass, &text.ptr));
      if (as_json) {
        std::cout << text.str() << "\n";
      } else {
        const json doc = json::parse(text.str());
        std::cout << doc["id"].get<std::string>() << ": "
                  << (pass ? "PASS" : "FAIL") << "\n"
                  << doc["detail"].get<std::string>() << "\n";
      }
      return pass ? 0 : 2;
    }
    for (std::size_t i = 0; i < pp_corpus_count(); ++i)
      std::cout << pp_corpus_id(i) << "\n    " << pp_corpus_provenance(i)
                << "\n";
    return 0;
  }

  if (hunt->parsed()) {
    pp_hunt* result = nullptr;
    check(pp_hunt_run(dim, trials, seed, &g_tol, &result));
    StringHandle text;
    check(pp_hunt_to_json(result, &text.ptr));
    if (as_json) {
      std::cout << text.str() << "\n";
    } else {
      const json doc = json::parse(text.str());
      std::cout << "verified " << doc["successes"].get<int>() << " of "
                << doc["trials"].get<int>() << " trials (dim "
                << doc["dim"].get<int>() << ", seed " << doc["seed"].get<int>()
                << ")\n";
      for (const auto& fam : doc["families"]) {
        std::cout << "family (trial seed " << fam["trial_seed"].get<int>()
                  << "):\n"
                  << "  h0: " << fam["h0"].dump() << "\n"
                  << "  v:  " << fam["v"].dump() << "\n"
                  << "  witness residuals: " << fam["witness"]["residuals"].dump()
                  << "\n";
      }
    }
    pp_hunt_free(result);
    return 0;
  }

  return 3;
}
