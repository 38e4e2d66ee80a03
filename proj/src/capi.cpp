#include "pencilpersist.h"

#include "birman_schwinger.hpp"
#include "corpus.hpp"
#include "linalg.hpp"
#include "matrix_io.hpp"
#include "pencil.hpp"
#include "persistence.hpp"
#include "tolerances.hpp"
#include "types.hpp"

#include <cstring>
#include <new>
#include <string>

using namespace pencilpersist;

struct pp_matrix {
  ComplexMatrix m;
};
struct pp_pencil {
  PencilProblem p;
};
struct pp_excset {
  ExceptionalSet s;
  ToleranceConfig cfg;
};
struct pp_bs {
  BSReduction r;
  ToleranceConfig cfg;
};
struct pp_report {
  PersistenceReport r;
};
struct pp_hunt {
  HuntResult h;
};

namespace {

thread_local std::string g_last_error;

pp_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::InternalInconsistency:
      return PP_ERR_INCONSISTENT;
    case ErrorCode::NoConvergence:
      return PP_ERR_NO_CONVERGENCE;
    case ErrorCode::SearchExhausted:
      return PP_ERR_SEARCH_EXHAUSTED;
    default:
      return PP_ERR_INVALID_INPUT;
  }
}

template <typename Fn>
pp_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return PP_OK;
  } catch (const Error& err) {
    g_last_error = err.what();
    return map_code(err.code());
  } catch (const std::exception& err) {
    g_last_error = err.what();
    return PP_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return PP_ERR_INTERNAL;
  }
}

ToleranceConfig to_config(const pp_tolerances* tol) {
  if (tol == nullptr) return ToleranceConfig{};
  ToleranceConfig cfg;
  cfg.rank = tol->rank;
  cfg.eig = tol->eig;
  cfg.herm = tol->herm;
  cfg.zero_poly = tol->zero_poly;
  cfg.real = tol->real;
  cfg.cluster = tol->cluster;
  cfg.validate();
  return cfg;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require_arg(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::InvalidInput, what);
}

pp_kind to_c_kind(ExceptionalKind kind) {
  switch (kind) {
    case ExceptionalKind::Empty:
      return PP_KIND_EMPTY;
    case ExceptionalKind::Finite:
      return PP_KIND_FINITE;
    case ExceptionalKind::AllComplex:
      return PP_KIND_ALL_COMPLEX;
  }
  return PP_KIND_EMPTY;
}

void write_complex_vector(const ComplexVector& v, double* interleaved) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    interleaved[2 * i] = v(i).real();
    interleaved[2 * i + 1] = v(i).imag();
  }
}

}  // namespace

extern "C" {

const char* pp_version(void) { return "1.0.0"; }

const char* pp_status_name(pp_status status) {
  switch (status) {
    case PP_OK: return "ok";
    case PP_ERR_INTERNAL: return "internal error";
    case PP_ERR_INCONSISTENT: return "consistency check failed";
    case PP_ERR_INVALID_INPUT: return "invalid input";
    case PP_ERR_NO_CONVERGENCE: return "no convergence";
    case PP_ERR_SEARCH_EXHAUSTED: return "search exhausted";
  }
  return "unknown";
}

const char* pp_last_error(void) { return g_last_error.c_str(); }

pp_tolerances pp_tolerances_default(void) {
  const ToleranceConfig cfg;
  return {cfg.rank, cfg.eig, cfg.herm, cfg.zero_poly, cfg.real, cfg.cluster};
}

pp_status pp_tolerances_from_env(pp_tolerances* out) {
  return guarded([&] {
    require_arg(out != nullptr, "pp_tolerances_from_env: out is NULL");
    const ToleranceConfig cfg = tolerances_from_env();
    *out = {cfg.rank, cfg.eig, cfg.herm, cfg.zero_poly, cfg.real, cfg.cluster};
  });
}

pp_status pp_matrix_create(size_t n, const double* interleaved,
                           pp_matrix** out) {
  return guarded([&] {
    require_arg(out != nullptr && interleaved != nullptr && n >= 1,
                "pp_matrix_create: bad arguments");
    ComplexMatrix m(n, n);
    for (size_t r = 0; r < n; ++r)
      for (size_t c = 0; c < n; ++c) {
        const size_t k = 2 * (r * n + c);
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            Complex(interleaved[k], interleaved[k + 1]);
      }
    require_square_finite(m, "pp_matrix_create");
    *out = new pp_matrix{std::move(m)};
  });
}

pp_status pp_matrix_parse_json(const char* text, pp_matrix** out) {
  return guarded([&] {
    require_arg(out != nullptr && text != nullptr,
                "pp_matrix_parse_json: bad arguments");
    *out = new pp_matrix{matrix_from_json_text(text)};
  });
}

pp_status pp_matrix_read_file(const char* path, pp_matrix** out) {
  return guarded([&] {
    require_arg(out != nullptr && path != nullptr,
                "pp_matrix_read_file: bad arguments");
    *out = new pp_matrix{matrix_from_file(path)};
  });
}

size_t pp_matrix_dim(const pp_matrix* m) {
  return m == nullptr ? 0 : static_cast<size_t>(m->m.rows());
}

pp_status pp_matrix_get(const pp_matrix* m, size_t row, size_t col, double* re,
                        double* im) {
  return guarded([&] {
    require_arg(m != nullptr && re != nullptr && im != nullptr,
                "pp_matrix_get: bad arguments");
    require_arg(row < static_cast<size_t>(m->m.rows()) &&
                    col < static_cast<size_t>(m->m.cols()),
                "pp_matrix_get: index out of range");
    const Complex z = m->m(static_cast<Eigen::Index>(row),
                           static_cast<Eigen::Index>(col));
    *re = z.real();
    *im = z.imag();
  });
}

pp_status pp_matrix_to_json(const pp_matrix* m, char** out) {
  return guarded([&] {
    require_arg(m != nullptr && out != nullptr,
                "pp_matrix_to_json: bad arguments");
    *out = dup_string(matrix_to_json_text(m->m));
  });
}

void pp_matrix_free(pp_matrix* m) { delete m; }

void pp_string_free(char* s) { delete[] s; }

pp_status pp_pencil_create(const pp_matrix* a, const pp_matrix* b,
                           pp_pencil** out) {
  return guarded([&] {
    require_arg(a != nullptr && b != nullptr && out != nullptr,
                "pp_pencil_create: bad arguments");
    *out = new pp_pencil{PencilProblem(a->m, b->m)};
  });
}

pp_status pp_pencil_from_eigenproblem(const pp_matrix* h0, const pp_matrix* v,
                                      double lambda0, const pp_tolerances* tol,
                                      pp_pencil** out) {
  return guarded([&] {
    require_arg(h0 != nullptr && v != nullptr && out != nullptr,
                "pp_pencil_from_eigenproblem: bad arguments");
    *out = new pp_pencil{
        pencil_from_eigenproblem(h0->m, v->m, lambda0, to_config(tol))};
  });
}

size_t pp_pencil_dim(const pp_pencil* p) {
  return p == nullptr ? 0 : static_cast<size_t>(p->p.dim());
}

pp_status pp_pencil_char_poly(const pp_pencil* p, const pp_tolerances* tol,
                              double* coeffs, int* identically_zero) {
  return guarded([&] {
    require_arg(p != nullptr && coeffs != nullptr,
                "pp_pencil_char_poly: bad arguments");
    const CharPoly cp = char_poly(p->p, to_config(tol));
    write_complex_vector(cp.coefficients, coeffs);
    if (identically_zero != nullptr)
      *identically_zero = cp.identically_zero ? 1 : 0;
  });
}

pp_status pp_pencil_exceptional_set(const pp_pencil* p,
                                    const pp_tolerances* tol,
                                    pp_excset** out) {
  return guarded([&] {
    require_arg(p != nullptr && out != nullptr,
                "pp_pencil_exceptional_set: bad arguments");
    const ToleranceConfig cfg = to_config(tol);
    *out = new pp_excset{exceptional_set(p->p, cfg), cfg};
  });
}

pp_status pp_pencil_generic_kernel_dim(const pp_pencil* p,
                                       const pp_tolerances* tol, uint64_t seed,
                                       size_t* out) {
  return guarded([&] {
    require_arg(p != nullptr && out != nullptr,
                "pp_pencil_generic_kernel_dim: bad arguments");
    *out = static_cast<size_t>(
        generic_kernel_dimension(p->p, to_config(tol), seed));
  });
}

pp_status pp_pencil_kernel_dim(const pp_pencil* p, double t_re, double t_im,
                               const pp_tolerances* tol, size_t* out) {
  return guarded([&] {
    require_arg(p != nullptr && out != nullptr,
                "pp_pencil_kernel_dim: bad arguments");
    *out = kernel_witness(p->p, Complex(t_re, t_im), to_config(tol)).size();
  });
}

pp_status pp_pencil_kernel_vector(const pp_pencil* p, double t_re, double t_im,
                                  const pp_tolerances* tol, size_t index,
                                  double* interleaved) {
  return guarded([&] {
    require_arg(p != nullptr && interleaved != nullptr,
                "pp_pencil_kernel_vector: bad arguments");
    const auto basis =
        kernel_witness(p->p, Complex(t_re, t_im), to_config(tol));
    require_arg(index < basis.size(),
                "pp_pencil_kernel_vector: index out of range");
    write_complex_vector(basis[index], interleaved);
  });
}

void pp_pencil_free(pp_pencil* p) { delete p; }

pp_kind pp_excset_kind(const pp_excset* s) {
  return s == nullptr ? PP_KIND_EMPTY : to_c_kind(s->s.kind);
}

size_t pp_excset_root_count(const pp_excset* s) {
  return s == nullptr ? 0 : s->s.roots.size();
}

pp_status pp_excset_root(const pp_excset* s, size_t index, double* re,
                         double* im, int* multiplicity) {
  return guarded([&] {
    require_arg(s != nullptr && re != nullptr && im != nullptr,
                "pp_excset_root: bad arguments");
    require_arg(index < s->s.roots.size(),
                "pp_excset_root: index out of range");
    *re = s->s.roots[index].t.real();
    *im = s->s.roots[index].t.imag();
    if (multiplicity != nullptr)
      *multiplicity = s->s.roots[index].multiplicity;
  });
}

size_t pp_excset_total_multiplicity(const pp_excset* s) {
  return s == nullptr ? 0 : static_cast<size_t>(s->s.total_multiplicity());
}

size_t pp_excset_unit_interval_count(const pp_excset* s) {
  if (s == nullptr) return 0;
  size_t count = 0;
  for (const auto& r : s->s.real_roots_in_unit_interval)
    count += static_cast<size_t>(r.multiplicity);
  return count;
}

void pp_excset_free(pp_excset* s) { delete s; }

pp_status pp_cyclicity(const pp_matrix* h0, const pp_matrix* v,
                       const pp_tolerances* tol, int* cyclic,
                       size_t* krylov_rank, size_t* generator_count) {
  return guarded([&] {
    require_arg(h0 != nullptr && v != nullptr, "pp_cyclicity: bad arguments");
    const ToleranceConfig cfg = to_config(tol);
    const CyclicityVerdict verdict =
        cyclicity_check(PerturbationFamily(h0->m, v->m, cfg), cfg);
    if (cyclic != nullptr) *cyclic = verdict.cyclic ? 1 : 0;
    if (krylov_rank != nullptr)
      *krylov_rank = static_cast<size_t>(verdict.krylov_rank);
    if (generator_count != nullptr)
      *generator_count = static_cast<size_t>(verdict.generator_count);
  });
}

pp_status pp_analyze(const pp_matrix* h0, const pp_matrix* v, double lambda0,
                     uint64_t seed, const pp_tolerances* tol,
                     pp_report** out) {
  return guarded([&] {
    require_arg(h0 != nullptr && v != nullptr && out != nullptr,
                "pp_analyze: bad arguments");
    const ToleranceConfig cfg = to_config(tol);
    *out = new pp_report{
        analyze(PerturbationFamily(h0->m, v->m, cfg), lambda0, cfg, seed)};
  });
}

pp_status pp_report_to_json(const pp_report* r, char** out) {
  return guarded([&] {
    require_arg(r != nullptr && out != nullptr,
                "pp_report_to_json: bad arguments");
    *out = dup_string(report_to_json(r->r).dump());
  });
}

pp_kind pp_report_kind(const pp_report* r) {
  return r == nullptr ? PP_KIND_EMPTY : to_c_kind(r->r.exceptional.kind);
}

int pp_report_cyclic(const pp_report* r) {
  return r != nullptr && r->r.cyclicity.cyclic ? 1 : 0;
}

int pp_report_lambda0_in_spectrum(const pp_report* r) {
  return r != nullptr && r->r.lambda0_in_spectrum ? 1 : 0;
}

void pp_report_v_class(const pp_report* r, int* psd, int* nsd, int* indefinite,
                       size_t* rank_plus, size_t* rank_minus,
                       size_t* kernel_dim) {
  if (r == nullptr) return;
  if (psd != nullptr) *psd = r->r.v_class.psd ? 1 : 0;
  if (nsd != nullptr) *nsd = r->r.v_class.nsd ? 1 : 0;
  if (indefinite != nullptr) *indefinite = r->r.v_class.indefinite ? 1 : 0;
  if (rank_plus != nullptr)
    *rank_plus = static_cast<size_t>(r->r.v_class.rank_plus);
  if (rank_minus != nullptr)
    *rank_minus = static_cast<size_t>(r->r.v_class.rank_minus);
  if (kernel_dim != nullptr)
    *kernel_dim = static_cast<size_t>(r->r.v_class.kernel_dim);
}

size_t pp_report_root_count(const pp_report* r) {
  return r == nullptr ? 0 : r->r.exceptional.roots.size();
}

pp_status pp_report_root(const pp_report* r, size_t index, double* re,
                         double* im, int* multiplicity) {
  return guarded([&] {
    require_arg(r != nullptr && re != nullptr && im != nullptr,
                "pp_report_root: bad arguments");
    require_arg(index < r->r.exceptional.roots.size(),
                "pp_report_root: index out of range");
    const RootMultiplicity& root = r->r.exceptional.roots[index];
    *re = root.t.real();
    *im = root.t.imag();
    if (multiplicity != nullptr) *multiplicity = root.multiplicity;
  });
}

double pp_report_measure_estimate(const pp_report* r) {
  return r == nullptr ? 0.0 : r->r.measure_estimate;
}

size_t pp_report_witness_count(const pp_report* r) {
  return r == nullptr ? 0 : r->r.witnesses.size();
}

void pp_report_free(pp_report* r) { delete r; }

pp_status pp_measure_estimate(const pp_matrix* h0, const pp_matrix* v,
                              double lambda0, double eps, size_t samples,
                              uint64_t seed, const pp_tolerances* tol,
                              double* out) {
  return guarded([&] {
    require_arg(h0 != nullptr && v != nullptr && out != nullptr,
                "pp_measure_estimate: bad arguments");
    require_arg(samples >= 1 && samples <= 1000000000,
                "pp_measure_estimate: sample count out of range");
    const ToleranceConfig cfg = to_config(tol);
    *out = measure_estimate(PerturbationFamily(h0->m, v->m, cfg), lambda0,
                            eps, static_cast<int>(samples), cfg, seed);
  });
}

pp_status pp_bs_reduce(const pp_matrix* h0, const pp_matrix* v, double e0,
                       const pp_tolerances* tol, pp_bs** out) {
  return guarded([&] {
    require_arg(h0 != nullptr && v != nullptr && out != nullptr,
                "pp_bs_reduce: bad arguments");
    const ToleranceConfig cfg = to_config(tol);
    *out = new pp_bs{bs_reduce(h0->m, v->m, e0, cfg), cfg};
  });
}

size_t pp_bs_count(const pp_bs* r) {
  return r == nullptr ? 0 : r->r.exceptional_t.size();
}

pp_status pp_bs_exceptional_t(const pp_bs* r, size_t index, double* re,
                              double* im) {
  return guarded([&] {
    require_arg(r != nullptr && re != nullptr && im != nullptr,
                "pp_bs_exceptional_t: bad arguments");
    require_arg(index < r->r.exceptional_t.size(),
                "pp_bs_exceptional_t: index out of range");
    *re = r->r.exceptional_t[index].real();
    *im = r->r.exceptional_t[index].imag();
  });
}

size_t pp_bs_count_in_unit_interval(const pp_bs* r) {
  return r == nullptr
             ? 0
             : static_cast<size_t>(count_in_unit_interval(r->r, r->cfg));
}

pp_status pp_bs_to_json(const pp_bs* r, char** out) {
  return guarded([&] {
    require_arg(r != nullptr && out != nullptr, "pp_bs_to_json: bad arguments");
    *out = dup_string(bs_to_json(r->r, r->cfg).dump());
  });
}

void pp_bs_free(pp_bs* r) { delete r; }

size_t pp_corpus_count(void) { return corpus_instances().size(); }

const char* pp_corpus_id(size_t index) {
  const auto& all = corpus_instances();
  return index < all.size() ? all[index].id.c_str() : nullptr;
}

const char* pp_corpus_provenance(size_t index) {
  const auto& all = corpus_instances();
  return index < all.size() ? all[index].provenance.c_str() : nullptr;
}

const char* pp_corpus_notes(size_t index) {
  const auto& all = corpus_instances();
  return index < all.size() ? all[index].notes.c_str() : nullptr;
}

pp_status pp_corpus_run(const char* id, const pp_tolerances* tol, int* pass,
                        char** json) {
  return guarded([&] {
    require_arg(id != nullptr, "pp_corpus_run: id is NULL");
    const CorpusOutcome outcome = corpus_run(id, to_config(tol));
    if (pass != nullptr) *pass = outcome.pass ? 1 : 0;
    if (json != nullptr)
      *json = dup_string(corpus_outcome_to_json(outcome).dump());
  });
}

pp_status pp_construct_persistent_family(size_t dim, uint64_t seed,
                                         const pp_tolerances* tol,
                                         pp_matrix** h0, pp_matrix** v,
                                         char** witness_json) {
  return guarded([&] {
    require_arg(h0 != nullptr && v != nullptr && dim >= 1 && dim <= 4096,
                "pp_construct_persistent_family: bad arguments");
    auto [family, witness] = construct_persistent_family(
        static_cast<int>(dim), seed, to_config(tol));
    *h0 = new pp_matrix{std::move(family.h0)};
    *v = new pp_matrix{std::move(family.v)};
    if (witness_json != nullptr)
      *witness_json = dup_string(witness_to_json(witness).dump());
  });
}

pp_status pp_hunt_run(size_t dim, size_t trials, uint64_t seed,
                  const pp_tolerances* tol, pp_hunt** out) {
  return guarded([&] {
    require_arg(out != nullptr && dim <= 4096 && trials <= 1000000,
                "pp_hunt: bad arguments");
    *out = new pp_hunt{hunt(static_cast<int>(dim), static_cast<int>(trials),
                            seed, to_config(tol))};
  });
}

size_t pp_hunt_trial_count(const pp_hunt* h) {
  return h == nullptr ? 0 : static_cast<size_t>(h->h.trials);
}

size_t pp_hunt_success_count(const pp_hunt* h) {
  return h == nullptr ? 0 : static_cast<size_t>(h->h.successes());
}

pp_status pp_hunt_family(const pp_hunt* h, size_t index, pp_matrix** h0,
                         pp_matrix** v) {
  return guarded([&] {
    require_arg(h != nullptr && h0 != nullptr && v != nullptr,
                "pp_hunt_family: bad arguments");
    require_arg(index < h->h.families.size(),
                "pp_hunt_family: index out of range");
    *h0 = new pp_matrix{h->h.families[index].family.h0};
    *v = new pp_matrix{h->h.families[index].family.v};
  });
}

pp_status pp_hunt_to_json(const pp_hunt* h, char** out) {
  return guarded([&] {
    require_arg(h != nullptr && out != nullptr,
                "pp_hunt_to_json: bad arguments");
    *out = dup_string(hunt_to_json(h->h).dump());
  });
}

void pp_hunt_free(pp_hunt* h) { delete h; }

}  // extern "C"
