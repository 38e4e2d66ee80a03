#include "corpus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pencilpersist {

namespace {

constexpr double kRootMatchTol = 1e-8;

ComplexMatrix shift_matrix(int n) {
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) s(k + 1, k) = 1.0;  // e_k -> e_{k+1}
  return s;
}

// Block pencil [[0, S],[S*, 0]] f = t [[0, I],[I, 0]] f for the one-sided
// shift truncated to N modes. The untruncated problem has every |t| < 1 as an
// eigenvalue; the truncation is nilpotent and collapses them all to 0.
CorpusInstance truncated_shift_instance(int n_modes) {
  CorpusInstance inst;
  inst.id = "example-2.7-truncated-" + std::to_string(n_modes);
  inst.provenance =
      "finite section of the shift-operator block pencil, " +
      std::to_string(n_modes) + " modes per block";
  inst.notes =
      "Finite truncation of the one-sided-shift block pencil. In the "
      "untruncated (infinite-dimensional) problem the equivalent operator is "
      "a direct sum of a shift and a backward shift, whose point spectrum "
      "fills the open unit disk, so every coupling |t| < 1 is an eigenvalue. "
      "The finite section is nilpotent instead: all 2N pencil eigenvalues "
      "collapse to 0, and the unit-disk statement is not reproducible at any "
      "finite truncation order.";
  const int n = 2 * n_modes;
  const ComplexMatrix s = shift_matrix(n_modes);
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  a.topRightCorner(n_modes, n_modes) = s;
  a.bottomLeftCorner(n_modes, n_modes) = s.adjoint();
  ComplexMatrix b = ComplexMatrix::Zero(n, n);
  b.topRightCorner(n_modes, n_modes) =
      ComplexMatrix::Identity(n_modes, n_modes);
  b.bottomLeftCorner(n_modes, n_modes) =
      ComplexMatrix::Identity(n_modes, n_modes);
  inst.a = std::move(a);
  inst.b = std::move(b);
  inst.expected.kind = ExceptionalKind::Finite;
  inst.expected.roots = {{Complex(0.0, 0.0), n}};
  inst.expected.max_eigenvalue_modulus = 1e-6;
  return inst;
}

// 4x4 fixture with invertible indefinite V: diagonal data conjugated by an
// exactly unitary matrix (quarter-integer entries), so the roots stay the
// hand-computed -h_k / v_k.
void invertible_fixture(ComplexMatrix& h0, ComplexMatrix& v) {
  const Complex i(0.0, 1.0);
  ComplexMatrix u(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      Complex power = 1.0;
      for (int k = 0; k < (r * c) % 4; ++k) power *= i;
      u(r, c) = 0.5 * power;
    }
  RealVector dh(4), dv(4);
  dh << 1.0, 2.0, -1.0, 0.5;
  dv << 1.0, -1.0, 2.0, 1.0;
  h0 = u * dh.asDiagonal().toDenseMatrix().cast<Complex>() * u.adjoint();
  v = u * dv.asDiagonal().toDenseMatrix().cast<Complex>() * u.adjoint();
}

std::vector<CorpusInstance> build_corpus() {
  std::vector<CorpusInstance> out;

  {
    CorpusInstance inst;
    inst.id = "example-2.9";
    inst.provenance =
        "3x3 family whose kernel persists for every complex coupling";
    inst.notes =
        "Indefinite V with a one-dimensional kernel; the kernel vector of "
        "H0 + tV moves affinely in t, so the eigenvalue 0 survives every "
        "coupling even though ran(V) is cyclic for H0.";
    inst.h0 = canonical_persistent_h0();
    inst.v = canonical_persistent_v();
    inst.lambda0 = 0.0;
    inst.expected.kind = ExceptionalKind::AllComplex;
    inst.expected.cyclic = true;
    inst.expected.v_indefinite = true;
    inst.expected.kernel_dim = 1;
    out.push_back(std::move(inst));
  }
  {
    CorpusInstance inst;
    inst.id = "example-2.6";
    inst.provenance =
        "classic 2x2 self-adjoint pencil with non-real eigenvalues";
    inst.notes =
        "Both coefficients are Hermitian, yet the pencil eigenvalues are "
        "+/- i: pencil spectra need not be real.";
    ComplexMatrix a(2, 2), b(2, 2);
    a << 1, 0, 0, -1;
    b << 0, 1, 1, 0;
    inst.a = a;
    inst.b = b;
    inst.expected.kind = ExceptionalKind::Finite;
    inst.expected.roots = {{Complex(0.0, -1.0), 1}, {Complex(0.0, 1.0), 1}};
    out.push_back(std::move(inst));
  }
  {
    CorpusInstance inst;
    inst.id = "intro-rank-one";
    inst.provenance = "rank-one overlap family with non-cyclic range";
    inst.notes =
        "H0 = V = projector onto the first basis vector. 0 stays an "
        "eigenvalue for every coupling, but only because ran(V) is too small "
        "to be cyclic — the analyzer must attribute persistence to failed "
        "cyclicity, not to the sign of V (which is PSD here).";
    ComplexMatrix p = ComplexMatrix::Zero(2, 2);
    p(0, 0) = 1.0;
    inst.h0 = p;
    inst.v = p;
    inst.lambda0 = 0.0;
    inst.expected.kind = ExceptionalKind::AllComplex;
    inst.expected.cyclic = false;
    inst.expected.v_psd = true;
    inst.expected.kernel_dim = 1;
    out.push_back(std::move(inst));
  }
  out.push_back(truncated_shift_instance(4));
  out.push_back(truncated_shift_instance(8));
  out.push_back(truncated_shift_instance(16));
  {
    CorpusInstance inst;
    inst.id = "remark-2.10-invertible";
    inst.provenance = "4x4 family with invertible V and exactly n roots";
    inst.notes =
        "When V is invertible the pencil reduces to a standard eigenvalue "
        "problem for V^{-1}(lambda0 I - H0), so the exceptional set carries "
        "total multiplicity exactly n. Data is diagonal in a fixed unitary "
        "frame; roots are -h_k / v_k = {-1, 2, 0.5, -0.5}.";
    ComplexMatrix h0, v;
    invertible_fixture(h0, v);
    inst.h0 = std::move(h0);
    inst.v = std::move(v);
    inst.lambda0 = 0.0;
    inst.expected.kind = ExceptionalKind::Finite;
    inst.expected.roots = {{Complex(-1.0, 0.0), 1},
                           {Complex(-0.5, 0.0), 1},
                           {Complex(0.5, 0.0), 1},
                           {Complex(2.0, 0.0), 1}};
    inst.expected.cyclic = true;
    inst.expected.v_indefinite = true;
    inst.expected.kernel_dim = 0;
    out.push_back(std::move(inst));
  }
  return out;
}

bool match_roots(const std::vector<RootMultiplicity>& got,
                 const std::vector<RootMultiplicity>& want,
                 std::string& mismatch) {
  auto expand = [](const std::vector<RootMultiplicity>& rs) {
    std::vector<Complex> flat;
    for (const auto& r : rs)
      for (int i = 0; i < r.multiplicity; ++i) flat.push_back(r.t);
    std::sort(flat.begin(), flat.end(), [](Complex x, Complex y) {
      if (x.real() != y.real()) return x.real() < y.real();
      return x.imag() < y.imag();
    });
    return flat;
  };
  const auto g = expand(got);
  const auto w = expand(want);
  if (g.size() != w.size()) {
    mismatch = "root count " + std::to_string(g.size()) + " != " +
               std::to_string(w.size());
    return false;
  }
  std::vector<bool> used(w.size(), false);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double best = -1.0;
    std::size_t pick = w.size();
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(g[i] - w[j]);
      if (pick == w.size() || d < best) {
        best = d;
        pick = j;
      }
    }
    if (pick == w.size() || best > kRootMatchTol) {
      std::ostringstream os;
      os << "root " << i << " off by " << best;
      mismatch = os.str();
      return false;
    }
    used[pick] = true;
  }
  return true;
}

}  // namespace

const std::vector<CorpusInstance>& corpus_instances() {
  static const std::vector<CorpusInstance> instances = build_corpus();
  return instances;
}

std::vector<std::string> corpus_list() {
  std::vector<std::string> ids;
  for (const auto& inst : corpus_instances()) ids.push_back(inst.id);
  return ids;
}

const CorpusInstance& corpus_find(const std::string& id) {
  for (const auto& inst : corpus_instances())
    if (inst.id == id) return inst;
  fail(ErrorCode::UnknownInstance, "no corpus instance named '" + id + "'");
}

CorpusOutcome corpus_run(const std::string& id, const ToleranceConfig& cfg) {
  const CorpusInstance& inst = corpus_find(id);
  CorpusOutcome out;
  out.id = id;
  out.pass = true;
  std::ostringstream detail;

  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) {
      out.pass = false;
      detail << "FAIL " << what << "; ";
    }
  };

  if (inst.is_family()) {
    PerturbationFamily fam(*inst.h0, *inst.v, cfg);
    out.report = analyze(fam, inst.lambda0, cfg, /*seed=*/0);
    const PersistenceReport& rep = *out.report;
    expect(rep.exceptional.kind == inst.expected.kind,
           std::string("kind ") + exceptional_kind_name(rep.exceptional.kind));
    if (!inst.expected.roots.empty()) {
      std::string mismatch;
      expect(match_roots(rep.exceptional.roots, inst.expected.roots, mismatch),
             "roots: " + mismatch);
    }
    if (inst.expected.cyclic)
      expect(rep.cyclicity.cyclic == *inst.expected.cyclic, "cyclicity");
    if (inst.expected.v_indefinite)
      expect(rep.v_class.indefinite == *inst.expected.v_indefinite,
             "V indefiniteness");
    if (inst.expected.v_psd)
      expect(rep.v_class.psd == *inst.expected.v_psd, "V positivity");
    if (inst.expected.kernel_dim)
      expect(rep.v_class.kernel_dim == *inst.expected.kernel_dim,
             "kernel dimension");
    detail << "kind=" << exceptional_kind_name(rep.exceptional.kind)
           << " cyclic=" << (rep.cyclicity.cyclic ? "yes" : "no")
           << " measure=" << rep.measure_estimate;
  } else {
    PencilProblem pencil(*inst.a, *inst.b);
    out.pencil_result = exceptional_set(pencil, cfg);
    expect(out.pencil_result->kind == inst.expected.kind,
           std::string("kind ") +
               exceptional_kind_name(out.pencil_result->kind));
    if (!inst.expected.roots.empty()) {
      std::string mismatch;
      expect(
          match_roots(out.pencil_result->roots, inst.expected.roots, mismatch),
          "roots: " + mismatch);
    }
    detail << "kind=" << exceptional_kind_name(out.pencil_result->kind)
           << " total_multiplicity="
           << out.pencil_result->total_multiplicity();
    if (inst.expected.max_eigenvalue_modulus) {
      // Equivalent standard problem: B has B^2 = I for these fixtures, so
      // B*A f = t f carries the same eigenvalues as the pencil.
      const EigenDecomposition eig =
          eigen_general(ComplexMatrix(*inst.b * *inst.a), cfg);
      double max_mod = 0.0;
      for (Eigen::Index k = 0; k < eig.values.size(); ++k)
        max_mod = std::max(max_mod, std::abs(eig.values(k)));
      expect(max_mod <= *inst.expected.max_eigenvalue_modulus,
             "max eigenvalue modulus " + std::to_string(max_mod));
      detail << " max_eigenvalue_modulus=" << max_mod;
    }
  }
  out.detail = detail.str();
  return out;
}

HuntResult hunt(int dim, int trials, std::uint64_t seed,
                const ToleranceConfig& cfg) {
  if (dim < 3)
    fail(ErrorCode::InvalidInput,
         "hunt: dimension must be at least 3 (no cyclic persistent family "
         "exists below that)");
  if (trials < 1)
    fail(ErrorCode::InvalidInput, "hunt: need at least one trial");

  HuntResult out;
  out.dim = dim;
  out.trials = trials;
  out.seed = seed;
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(trial);
    try {
      auto [family, witness] =
          construct_persistent_family(dim, trial_seed, cfg);
      PersistenceReport report = analyze(family, 0.0, cfg, trial_seed);
      if (report.exceptional.kind != ExceptionalKind::AllComplex ||
          !report.cyclicity.cyclic || !report.v_class.indefinite)
        continue;
      out.families.push_back({trial_seed, std::move(family),
                              std::move(witness), std::move(report)});
    } catch (const Error& err) {
      if (err.code() != ErrorCode::SearchExhausted) throw;
    }
  }
  if (out.families.empty())
    fail(ErrorCode::SearchExhausted,
         "hunt: no verified family in " + std::to_string(trials) + " trials");
  return out;
}

}  // namespace pencilpersist
