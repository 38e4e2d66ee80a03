#include "matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace pencilpersist {

namespace {

nlohmann::ordered_json complex_to_json(const Complex& z) {
  return nlohmann::ordered_json::array({z.real(), z.imag()});
}

nlohmann::ordered_json vector_to_json(const ComplexVector& v) {
  auto arr = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(complex_to_json(v(i)));
  return arr;
}

nlohmann::ordered_json roots_to_json(const std::vector<RootMultiplicity>& rs) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rs) {
    nlohmann::ordered_json item;
    item["re"] = r.t.real();
    item["im"] = r.t.imag();
    item["multiplicity"] = r.multiplicity;
    arr.push_back(std::move(item));
  }
  return arr;
}

double number_field(const nlohmann::json& j, const char* context) {
  if (!j.is_number())
    fail(ErrorCode::InvalidInput,
         std::string("matrix JSON: ") + context + " must be a number");
  const double value = j.get<double>();
  if (!std::isfinite(value))
    fail(ErrorCode::InvalidInput,
         std::string("matrix JSON: ") + context + " must be finite");
  return value;
}

}  // namespace

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    fail(ErrorCode::InvalidInput,
         "matrix JSON: expected an object with keys 'n' and 'entries'");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
    fail(ErrorCode::InvalidInput, "matrix JSON: 'n' must be a positive integer");
  const Eigen::Index n = j["n"].get<Eigen::Index>();
  const auto& entries = j["entries"];
  if (!entries.is_array() ||
      entries.size() != static_cast<std::size_t>(n * n))
    fail(ErrorCode::InvalidInput,
         "matrix JSON: 'entries' must hold exactly n*n [re, im] pairs");

  ComplexMatrix m(n, n);
  for (Eigen::Index k = 0; k < n * n; ++k) {
    const auto& pair = entries[static_cast<std::size_t>(k)];
    if (!pair.is_array() || pair.size() != 2)
      fail(ErrorCode::InvalidInput,
           "matrix JSON: entry " + std::to_string(k) +
               " is not an [re, im] pair");
    const double re = number_field(pair[0], "entry real part");
    const double im = number_field(pair[1], "entry imaginary part");
    m(k / n, k % n) = Complex(re, im);
  }
  return m;
}

ComplexMatrix matrix_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& err) {
    fail(ErrorCode::InvalidInput,
         std::string("matrix JSON: parse error: ") + err.what());
  }
  return matrix_from_json(j);
}

ComplexMatrix matrix_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    fail(ErrorCode::InvalidInput, "cannot open matrix file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return matrix_from_json_text(buffer.str());
}

nlohmann::ordered_json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::ordered_json j;
  j["n"] = m.rows();
  auto entries = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      entries.push_back(complex_to_json(m(r, c)));
  j["entries"] = std::move(entries);
  return j;
}

std::string matrix_to_json_text(const ComplexMatrix& m) {
  return matrix_to_json(m).dump();
}

nlohmann::ordered_json excset_to_json(const ExceptionalSet& s) {
  nlohmann::ordered_json j;
  j["kind"] = exceptional_kind_name(s.kind);
  j["roots"] = roots_to_json(s.roots);
  j["real_roots_unit_interval"] = roots_to_json(s.real_roots_in_unit_interval);
  return j;
}

nlohmann::ordered_json report_to_json(const PersistenceReport& r) {
  nlohmann::ordered_json j;
  j["lambda0"] = r.lambda0;
  j["lambda0_in_spectrum"] = r.lambda0_in_spectrum;
  j["exceptional"] = excset_to_json(r.exceptional);
  j["cyclic"] = r.cyclicity.cyclic;
  {
    nlohmann::ordered_json vc;
    vc["psd"] = r.v_class.psd;
    vc["nsd"] = r.v_class.nsd;
    vc["indefinite"] = r.v_class.indefinite;
    vc["rank_plus"] = r.v_class.rank_plus;
    vc["rank_minus"] = r.v_class.rank_minus;
    vc["kernel_dim"] = r.v_class.kernel_dim;
    j["v_class"] = std::move(vc);
  }
  {
    auto checks = nlohmann::ordered_json::array();
    for (const auto& check : r.theorem_checks) {
      nlohmann::ordered_json c;
      c["name"] = check.name;
      c["applicable"] = check.applicable;
      c["predicted"] = check.predicted;
      c["observed"] = check.observed;
      c["consistent"] = check.consistent;
      checks.push_back(std::move(c));
    }
    j["theorem_checks"] = std::move(checks);
  }
  j["measure_estimate"] = r.measure_estimate;
  {
    auto witnesses = nlohmann::ordered_json::array();
    for (const auto& w : r.witnesses) {
      nlohmann::ordered_json item;
      item["t"] = complex_to_json(w.t);
      item["vector"] = vector_to_json(w.vec);
      item["residual"] = w.residual;
      witnesses.push_back(std::move(item));
    }
    j["witnesses"] = std::move(witnesses);
  }
  return j;
}

nlohmann::ordered_json bs_to_json(const BSReduction& r,
                                  const ToleranceConfig& cfg) {
  nlohmann::ordered_json j;
  j["e0"] = r.e0;
  j["mu"] = vector_to_json(r.mu);
  auto ts = nlohmann::ordered_json::array();
  for (const Complex& t : r.exceptional_t) ts.push_back(complex_to_json(t));
  j["exceptional_t"] = std::move(ts);
  j["count_unit_interval"] = count_in_unit_interval(r, cfg);
  j["note"] =
      "valid only for probe energies outside the spectrum of H0; used as a "
      "cross-check of the pencil route, not as a persistence test at an "
      "existing eigenvalue";
  return j;
}

nlohmann::ordered_json cyclicity_to_json(const CyclicityVerdict& c) {
  nlohmann::ordered_json j;
  j["cyclic"] = c.cyclic;
  j["krylov_rank"] = c.krylov_rank;
  j["generator_count"] = c.generator_count;
  return j;
}

nlohmann::ordered_json witness_to_json(const PersistentFamilyWitness& w) {
  nlohmann::ordered_json j;
  j["u0"] = vector_to_json(w.u0);
  j["u1"] = vector_to_json(w.u1);
  j["residuals"] =
      nlohmann::ordered_json::array({w.residuals[0], w.residuals[1],
                                     w.residuals[2]});
  return j;
}

nlohmann::ordered_json corpus_outcome_to_json(const CorpusOutcome& o) {
  nlohmann::ordered_json j;
  j["id"] = o.id;
  j["pass"] = o.pass;
  if (o.report) j["report"] = report_to_json(*o.report);
  if (o.pencil_result) j["exceptional"] = excset_to_json(*o.pencil_result);
  j["detail"] = o.detail;
  return j;
}

nlohmann::ordered_json hunt_to_json(const HuntResult& h) {
  nlohmann::ordered_json j;
  j["dim"] = h.dim;
  j["trials"] = h.trials;
  j["seed"] = h.seed;
  j["successes"] = h.successes();
  j["success_rate"] =
      h.trials > 0 ? static_cast<double>(h.successes()) / h.trials : 0.0;
  auto families = nlohmann::ordered_json::array();
  for (const auto& f : h.families) {
    nlohmann::ordered_json item;
    item["trial_seed"] = f.trial_seed;
    item["h0"] = matrix_to_json(f.family.h0);
    item["v"] = matrix_to_json(f.family.v);
    item["witness"] = witness_to_json(f.witness);
    item["report"] = report_to_json(f.report);
    families.push_back(std::move(item));
  }
  j["families"] = std::move(families);
  return j;
}

}  // namespace pencilpersist
