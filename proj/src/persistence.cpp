#include "persistence.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace pencilpersist {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string describe_kind(const ExceptionalSet& s) {
  std::ostringstream os;
  os << exceptional_kind_name(s.kind);
  if (s.kind == ExceptionalKind::Finite)
    os << " with total multiplicity " << s.total_multiplicity();
  return os.str();
}

ComplexVector random_unit_vector(int n, SplitRng& rng) {
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.complex_gauss();
  const double len = v.norm();
  if (len == 0.0) return ComplexVector::Unit(n, 0);
  return v / len;
}

ComplexMatrix random_hermitian(int n, SplitRng& rng) {
  ComplexMatrix g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = rng.complex_gauss();
  return symmetrize(g);
}

// Orthonormal basis of the orthogonal complement of the given (assumed
// independent) columns.
ComplexMatrix orthogonal_complement(const ComplexMatrix& columns) {
  const Eigen::Index n = columns.rows();
  const Eigen::Index k = columns.cols();
  Eigen::HouseholderQR<ComplexMatrix> qr(columns);
  ComplexMatrix q = qr.householderQ();
  return q.rightCols(n - k);
}

// Multiset comparison of exceptional couplings from the two routes, each
// root expanded by multiplicity and paired with the nearest unused partner;
// per-root tolerance scales with magnitude.
bool roots_agree(const std::vector<Complex>& bs_roots,
                 const std::vector<RootMultiplicity>& pencil_roots) {
  std::vector<Complex> expanded;
  for (const auto& r : pencil_roots)
    for (int i = 0; i < r.multiplicity; ++i) expanded.push_back(r.t);
  if (expanded.size() != bs_roots.size()) return false;
  std::vector<bool> used(bs_roots.size(), false);
  for (const Complex& t : expanded) {
    double best = -1.0;
    std::size_t pick = bs_roots.size();
    for (std::size_t j = 0; j < bs_roots.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(t - bs_roots[j]);
      if (pick == bs_roots.size() || d < best) {
        best = d;
        pick = j;
      }
    }
    if (pick == bs_roots.size() ||
        best > 1e-8 * std::max(1.0, std::abs(t)))
      return false;
    used[pick] = true;
  }
  return true;
}

}  // namespace

PerturbationFamily::PerturbationFamily(ComplexMatrix h0_in, ComplexMatrix v_in,
                                       const ToleranceConfig& cfg) {
  require_hermitian(h0_in, cfg.herm, "PerturbationFamily H0");
  require_hermitian(v_in, cfg.herm, "PerturbationFamily V");
  require_same_dim(h0_in, v_in, "PerturbationFamily");
  h0 = symmetrize(h0_in);
  v = symmetrize(v_in);
}

CyclicityVerdict cyclicity_check(const PerturbationFamily& fam,
                                 const ToleranceConfig& cfg) {
  const int n = fam.dim();
  CyclicityVerdict out;

  // Orbit columns H0^k V e_j, accumulated generator by generator.
  ComplexMatrix columns(n, 0);
  for (int j = 0; j < n && out.krylov_rank < n; ++j) {
    ComplexMatrix orbit(n, n);
    ComplexVector w = fam.v.col(j);
    for (int k = 0; k < n; ++k) {
      orbit.col(k) = w;
      w = fam.h0 * w;
    }
    ComplexMatrix grown(n, columns.cols() + n);
    if (columns.cols() > 0) grown.leftCols(columns.cols()) = columns;
    grown.rightCols(n) = orbit;
    columns = std::move(grown);

    const double norm = spectral_norm(columns);
    out.krylov_rank =
        norm == 0.0
            ? 0
            : detail::rank_with_threshold(columns, cfg.rank * norm);
    out.generator_count = j + 1;
  }
  out.cyclic = (out.krylov_rank == n);
  return out;
}

VClassification classify_v(const PerturbationFamily& fam,
                           const ToleranceConfig& cfg) {
  const RealVector eigs = detail::hermitian_eigenvalues(fam.v);
  const double gate = cfg.rank * spectral_norm(fam.v);
  VClassification out;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    if (eigs(i) > gate)
      ++out.rank_plus;
    else if (eigs(i) < -gate)
      ++out.rank_minus;
    else
      ++out.kernel_dim;
  }
  out.psd = (out.rank_minus == 0);
  out.nsd = (out.rank_plus == 0);
  out.indefinite = (out.rank_plus > 0 && out.rank_minus > 0);
  return out;
}

std::vector<std::pair<double, double>> projection_vanishing_check(
    const PerturbationFamily& fam, double lambda0, std::span<const double> ts,
    const ToleranceConfig& cfg) {
  const RealVector v_eigs = detail::hermitian_eigenvalues(fam.v);
  if (v_eigs.size() > 0 && v_eigs(0) < -cfg.eig * spectral_norm(fam.v))
    fail(ErrorCode::NotPSD, "projection_vanishing_check: V must be PSD");

  const ComplexMatrix root = hermitian_sqrt(fam.v, cfg);
  std::vector<std::pair<double, double>> out;
  out.reserve(ts.size());
  for (double t : ts) {
    const ComplexMatrix ht = symmetrize(fam.h0 + t * fam.v);
    const ComplexMatrix proj = eigenprojection(ht, lambda0, cfg);
    out.emplace_back(t, spectral_norm(symmetrize(root * proj * root)));
  }
  return out;
}

double measure_estimate(const PerturbationFamily& fam, double lambda0,
                        double eps, int samples, const ToleranceConfig& cfg,
                        std::uint64_t seed) {
  (void)cfg;
  if (!(eps > 0.0))
    fail(ErrorCode::InvalidInput, "measure_estimate: eps must be positive");
  if (samples < 1)
    fail(ErrorCode::InvalidInput, "measure_estimate: need at least 1 sample");

  SplitRng rng(seed);
  int hits = 0;
  for (int i = 0; i < samples; ++i) {
    const double t = (i + rng.uniform()) / samples;
    const RealVector eigs =
        detail::hermitian_eigenvalues(symmetrize(fam.h0 + t * fam.v));
    double dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < eigs.size(); ++k)
      dist = std::min(dist, std::abs(eigs(k) - lambda0));
    if (dist < eps) ++hits;
  }
  return static_cast<double>(hits) / samples;
}

PersistenceReport analyze(const PerturbationFamily& fam, double lambda0,
                          const ToleranceConfig& cfg, std::uint64_t seed) {
  SplitRng rng(seed);
  const std::uint64_t witness_seed = rng.split();
  const std::uint64_t measure_seed = rng.split();

  PersistenceReport report;
  report.lambda0 = lambda0;

  const RealVector h0_eigs = detail::hermitian_eigenvalues(fam.h0);
  double dist = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < h0_eigs.size(); ++i)
    dist = std::min(dist, std::abs(h0_eigs(i) - lambda0));
  report.lambda0_in_spectrum =
      dist <= cfg.cluster * std::max(1.0, spectral_norm(fam.h0));

  const PencilProblem pencil =
      pencil_from_eigenproblem(fam.h0, fam.v, lambda0, cfg);
  report.exceptional = exceptional_set(pencil, cfg);
  report.cyclicity = cyclicity_check(fam, cfg);
  report.v_class = classify_v(fam, cfg);

  const int n = fam.dim();
  {
    TheoremCheck check;
    check.name = "kernel_free_v_exact_root_count";
    check.applicable = (report.v_class.kernel_dim == 0);
    check.predicted = check.applicable
                          ? "Finite with total multiplicity " +
                                std::to_string(n)
                          : "n/a (V has a kernel)";
    check.observed = describe_kind(report.exceptional);
    check.consistent =
        !check.applicable ||
        (report.exceptional.kind == ExceptionalKind::Finite &&
         report.exceptional.total_multiplicity() == n);
    report.theorem_checks.push_back(std::move(check));
  }
  {
    TheoremCheck check;
    check.name = "psd_cyclic_excludes_persistence";
    check.applicable = report.v_class.psd && report.cyclicity.cyclic;
    check.predicted = check.applicable
                          ? "exceptional set not AllComplex"
                          : "n/a (V not PSD or range not cyclic)";
    check.observed = describe_kind(report.exceptional);
    check.consistent =
        !check.applicable ||
        report.exceptional.kind != ExceptionalKind::AllComplex;
    report.theorem_checks.push_back(std::move(check));
  }
  {
    TheoremCheck check;
    check.name = "resolvent_route_agreement";
    check.applicable = !report.lambda0_in_spectrum;
    if (check.applicable) {
      const BSReduction bs = bs_reduce(fam.h0, fam.v, lambda0, cfg);
      check.predicted = "resolvent route matches the pencil roots";
      std::ostringstream os;
      os << bs.exceptional_t.size() << " resolvent couplings vs pencil "
         << describe_kind(report.exceptional);
      check.observed = os.str();
      check.consistent =
          report.exceptional.kind == ExceptionalKind::AllComplex
              ? false
              : roots_agree(bs.exceptional_t, report.exceptional.roots);
    } else {
      check.predicted = "n/a (lambda0 is in the spectrum of H0)";
      check.observed = describe_kind(report.exceptional);
      check.consistent = true;
    }
    report.theorem_checks.push_back(std::move(check));
  }
  {
    TheoremCheck check;
    check.name = "persistent_kernel_witness";
    check.applicable =
        report.exceptional.kind == ExceptionalKind::AllComplex;
    if (check.applicable) {
      check.predicted = "kernel vector exists at every sampled coupling";
      SplitRng wrng(witness_seed);
      const double radius = generic_sample_radius(pencil, cfg);
      bool ok = true;
      std::ostringstream os;
      for (int s = 0; s < 2; ++s) {
        const Complex t = std::polar(radius, kTwoPi * wrng.uniform());
        const ComplexMatrix shifted = pencil.a - t * pencil.b;
        const auto basis = kernel_witness(pencil, t, cfg);
        if (basis.empty()) {
          ok = false;
          os << "no kernel at sampled t; ";
          continue;
        }
        WitnessSample sample;
        sample.t = t;
        sample.vec = basis.front();
        sample.residual = (shifted * sample.vec).norm();
        if (sample.residual > cfg.rank * spectral_norm(shifted)) ok = false;
        os << "residual " << sample.residual << "; ";
        report.witnesses.push_back(std::move(sample));
      }
      check.observed = os.str();
      check.consistent = ok;
    } else {
      check.predicted = "n/a (exceptional set is not AllComplex)";
      check.observed = describe_kind(report.exceptional);
      check.consistent = true;
    }
    report.theorem_checks.push_back(std::move(check));
  }

  report.measure_estimate =
      measure_estimate(fam, lambda0, 1e-6, 1000, cfg, measure_seed);

  for (const TheoremCheck& check : report.theorem_checks)
    if (check.applicable && !check.consistent)
      fail(ErrorCode::InternalInconsistency,
           "analyze: check '" + check.name + "' failed (predicted " +
               check.predicted + ", observed " + check.observed + ")");
  return report;
}

ComplexMatrix canonical_persistent_h0() {
  ComplexMatrix h0(3, 3);
  h0 << 1, 1, 1,
        1, 1, 1,
        1, 1, 0;
  return h0;
}

ComplexMatrix canonical_persistent_v() {
  ComplexMatrix v = ComplexMatrix::Zero(3, 3);
  v(0, 0) = 1.0;
  v(1, 1) = -1.0;
  return v;
}

std::pair<PerturbationFamily, PersistentFamilyWitness>
construct_persistent_family(int n, std::uint64_t seed,
                            const ToleranceConfig& cfg) {
  if (n < 1)
    fail(ErrorCode::InvalidInput,
         "construct_persistent_family: dimension must be positive");

  if (n == 3 && seed == 0) {
    PersistentFamilyWitness witness;
    witness.u0 = ComplexVector(3);
    witness.u0 << 1, -1, 0;
    witness.u1 = ComplexVector(3);
    witness.u1 << 0, 0, -1;
    return {PerturbationFamily(canonical_persistent_h0(),
                               canonical_persistent_v(), cfg),
            std::move(witness)};
  }

  SplitRng rng(seed);
  constexpr int kRetryBudget = 100;
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    const ComplexVector u0 = random_unit_vector(n, rng);
    const ComplexVector u1 = random_unit_vector(n, rng);
    if (std::abs(u0.dot(u1)) > 0.99) continue;

    // Orthonormalize the pair, then draw the coupling vector w in the
    // orthogonal complement of span{u0, u1}; that projection is exactly the
    // Hermitian-consistency constraint on the free parameter.
    const ComplexVector p0 = u0;
    ComplexVector p1 = u1 - p0 * p0.dot(u1);
    p1 /= p1.norm();
    ComplexVector w(n);
    for (int i = 0; i < n; ++i) w(i) = rng.complex_gauss();
    w -= p0 * p0.dot(w) + p1 * p1.dot(w);
    if (w.norm() < 1e-3) continue;
    w /= w.norm();

    ComplexMatrix span(n, 3);
    span.col(0) = p0;
    span.col(1) = p1;
    span.col(2) = w;
    const ComplexMatrix complement = orthogonal_complement(span);

    const ComplexVector u0_perp = u0 - u1 * u1.dot(u0);
    const ComplexVector u1_perp = u1 - u0 * u0.dot(u1);
    const double alpha = u0_perp.squaredNorm();
    const double beta = u1_perp.squaredNorm();
    if (alpha < 1e-6 || beta < 1e-6) continue;

    ComplexMatrix v =
        (w * u0_perp.adjoint() + u0_perp * w.adjoint()) / alpha;
    ComplexMatrix h0 =
        -(w * u1_perp.adjoint() + u1_perp * w.adjoint()) / beta;
    if (complement.cols() > 0) {
      const int m = static_cast<int>(complement.cols());
      v += complement * random_hermitian(m, rng) * complement.adjoint();
      h0 += complement * random_hermitian(m, rng) * complement.adjoint();
    }
    v = symmetrize(v);
    h0 = symmetrize(h0);

    PerturbationFamily family(h0, v, cfg);
    if (!cyclicity_check(family, cfg).cyclic) continue;

    PersistentFamilyWitness witness;
    witness.u0 = u0;
    witness.u1 = u1;
    witness.residuals[0] = (family.h0 * u0).norm();
    witness.residuals[1] = (family.h0 * u1 + family.v * u0).norm();
    witness.residuals[2] = (family.v * u1).norm();
    const double scale =
        std::max({1.0, spectral_norm(family.h0), spectral_norm(family.v)});
    if (*std::max_element(witness.residuals.begin(),
                          witness.residuals.end()) > 1e-10 * scale)
      continue;
    if (!char_poly(pencil_from_eigenproblem(family.h0, family.v, 0.0, cfg),
                   cfg)
             .identically_zero)
      continue;

    return {std::move(family), std::move(witness)};
  }
  fail(ErrorCode::SearchExhausted,
       "construct_persistent_family: no cyclic persistent family found in " +
           std::to_string(kRetryBudget) + " attempts");
}

}  // namespace pencilpersist
