#include "pencil.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pencilpersist {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ComplexVector sorted_lex(std::vector<Complex> values) {
  std::sort(values.begin(), values.end(), [](Complex x, Complex y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  ComplexVector out(static_cast<Eigen::Index>(values.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = values[i];
  return out;
}

// Greedy single-linkage clustering of an already lexicographically sorted
// root list; returns (centroid, size) pairs.
std::vector<RootMultiplicity> cluster_roots(const ComplexVector& sorted,
                                            double radius) {
  std::vector<RootMultiplicity> clusters;
  std::vector<Complex> sums;
  for (Eigen::Index i = 0; i < sorted.size(); ++i) {
    const Complex t = sorted(i);
    bool merged = false;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      if (std::abs(t - clusters[c].t) <= radius) {
        sums[c] += t;
        clusters[c].multiplicity += 1;
        clusters[c].t = sums[c] / static_cast<double>(clusters[c].multiplicity);
        merged = true;
        break;
      }
    }
    if (!merged) {
      clusters.push_back({t, 1});
      sums.push_back(t);
    }
  }
  return clusters;
}

// Newton polish against the pencil itself: with f(t) = det(A - tB),
// f'/f = -tr((A - tB)^{-1} B), so t <- t + 1/tr(...). The companion roots
// carry the interpolation's coefficient error; this step converges to the
// actual determinant root, to the precision of the solve. A Singular solve
// means t already sits on the root; wild steps are rejected.
Complex refine_root(const PencilProblem& p, Complex t,
                    const ToleranceConfig& cfg) {
  for (int iter = 0; iter < 3; ++iter) {
    const ComplexMatrix m = p.a - t * p.b;
    ComplexMatrix x;
    try {
      x = solve(m, p.b, cfg);
    } catch (const Error&) {
      return t;
    }
    const Complex trace = x.trace();
    if (!std::isfinite(trace.real()) || !std::isfinite(trace.imag()) ||
        std::abs(trace) < 1e-300)
      return t;
    const Complex step = 1.0 / trace;
    if (!(std::abs(step) <= 1e-2 * std::max(1.0, std::abs(t)))) return t;
    t += step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(t))) break;
  }
  return t;
}

}  // namespace

PencilProblem::PencilProblem(ComplexMatrix a_in, ComplexMatrix b_in)
    : a(std::move(a_in)), b(std::move(b_in)) {
  require_square_finite(a, "PencilProblem A");
  require_square_finite(b, "PencilProblem B");
  require_same_dim(a, b, "PencilProblem");
}

Complex CharPoly::eval(Complex t) const {
  Complex acc = 0.0;
  for (Eigen::Index k = coefficients.size() - 1; k >= 0; --k)
    acc = acc * t + coefficients(k);
  return acc;
}

int ExceptionalSet::total_multiplicity() const {
  int total = 0;
  for (const auto& r : roots) total += r.multiplicity;
  return total;
}

const char* exceptional_kind_name(ExceptionalKind kind) {
  switch (kind) {
    case ExceptionalKind::Empty: return "Empty";
    case ExceptionalKind::Finite: return "Finite";
    case ExceptionalKind::AllComplex: return "AllComplex";
  }
  return "Unknown";
}

PencilProblem pencil_from_eigenproblem(const ComplexMatrix& h0,
                                       const ComplexMatrix& v, double lambda0,
                                       const ToleranceConfig& cfg) {
  require_hermitian(h0, cfg.herm, "pencil_from_eigenproblem H0");
  require_hermitian(v, cfg.herm, "pencil_from_eigenproblem V");
  require_same_dim(h0, v, "pencil_from_eigenproblem");
  const Eigen::Index n = h0.rows();
  ComplexMatrix a =
      lambda0 * ComplexMatrix::Identity(n, n) - symmetrize(h0);
  return PencilProblem(std::move(a), symmetrize(v));
}

PencilProblem reduce_to_pencil(const ComplexMatrix& h0,
                               const ComplexMatrix& v1,
                               const ComplexMatrix& v2, double lambda0,
                               PencilSide side, const ToleranceConfig& cfg) {
  require_hermitian(h0, cfg.herm, "reduce_to_pencil H0");
  require_hermitian(v1, cfg.herm, "reduce_to_pencil V1");
  require_hermitian(v2, cfg.herm, "reduce_to_pencil V2");
  require_same_dim(h0, v1, "reduce_to_pencil");
  require_same_dim(h0, v2, "reduce_to_pencil");

  const ComplexMatrix& designated = (side == PencilSide::V1) ? v1 : v2;
  const ComplexMatrix& other = (side == PencilSide::V1) ? v2 : v1;

  const RealVector designated_eigs =
      detail::hermitian_eigenvalues(symmetrize(designated));
  if (designated_eigs(0) <= cfg.eig * spectral_norm(designated))
    fail(ErrorCode::NotPositiveDefinite,
         "reduce_to_pencil: the designated factor must be positive definite");
  const RealVector other_eigs = detail::hermitian_eigenvalues(symmetrize(other));
  if (other_eigs.size() > 0 && other_eigs(0) < -cfg.eig * spectral_norm(other))
    fail(ErrorCode::NotPSD,
         "reduce_to_pencil: the non-designated factor must be PSD");

  const Eigen::Index n = h0.rows();
  const ComplexMatrix root = hermitian_sqrt(designated, cfg);
  const ComplexMatrix root_inv =
      solve(root, ComplexMatrix::Identity(n, n), cfg);
  const ComplexMatrix designated_inv = symmetrize(root_inv * root_inv);

  ComplexMatrix a = symmetrize(root_inv * symmetrize(h0) * root_inv -
                               lambda0 * designated_inv);
  ComplexMatrix sandwich =
      ComplexMatrix::Identity(n, n) - root_inv * symmetrize(other) * root_inv;
  ComplexMatrix b =
      symmetrize((side == PencilSide::V1) ? ComplexMatrix(-sandwich)
                                          : std::move(sandwich));
  return PencilProblem(std::move(a), std::move(b));
}

CharPoly char_poly(const PencilProblem& p, const ToleranceConfig& cfg) {
  const int n = p.dim();
  const int node_count = n + 1;
  const double norm_a = spectral_norm(p.a);
  const double norm_b = spectral_norm(p.b);
  const double radius = std::max(1.0, norm_a / std::max(norm_b, 1.0));

  // p(t) = det(A - tB) sampled at n+1 equispaced points on |t| = radius; with
  // these nodes the Vandermonde solve collapses to a scaled inverse DFT.
  ComplexVector samples(node_count);
  double max_sample = 0.0;
  for (int k = 0; k < node_count; ++k) {
    const Complex node = std::polar(radius, kTwoPi * k / node_count);
    samples(k) = det(p.a - node * p.b);
    max_sample = std::max(max_sample, std::abs(samples(k)));
  }

  CharPoly out;
  out.degree_bound = n;
  out.node_radius = radius;
  out.max_node_magnitude = max_sample;
  const double scale = std::pow(std::max({1.0, norm_a, norm_b}), n);
  out.identically_zero = max_sample <= cfg.zero_poly * scale;

  // The determinant-magnitude gate alone misreads regular pencils whose
  // polynomial is legitimately tiny (singular A against low-rank B). Confirm
  // singularity by rank: a truly singular pencil is rank-deficient at every
  // node, while a regular one has at most n roots against n+1 nodes.
  if (out.identically_zero) {
    for (int k = 0; k < node_count && out.identically_zero; ++k) {
      const Complex node = std::polar(radius, kTwoPi * k / node_count);
      const ComplexMatrix shifted = p.a - node * p.b;
      if (detail::rank_with_threshold(
              shifted, cfg.rank * spectral_norm(shifted)) == n)
        out.identically_zero = false;
    }
  }

  out.coefficients = ComplexVector::Zero(node_count);
  for (int j = 0; j < node_count; ++j) {
    Complex acc = 0.0;
    for (int k = 0; k < node_count; ++k)
      acc += samples(k) * std::polar(1.0, -kTwoPi * j * k / node_count);
    out.coefficients(j) = acc / (static_cast<double>(node_count) *
                                 std::pow(radius, j));
  }
  return out;
}

ExceptionalSet exceptional_set(const PencilProblem& p,
                               const ToleranceConfig& cfg) {
  const CharPoly cp = char_poly(p, cfg);
  ExceptionalSet out;
  if (cp.identically_zero) {
    out.kind = ExceptionalKind::AllComplex;
    return out;
  }

  // Snap coefficients at the interpolation noise floor to zero. Without
  // this, noise of order eps in the low coefficients smears a
  // multiplicity-m root at 0 over a disk of radius eps^(1/m). The floor must
  // stay near machine precision: snapping legitimately small coefficients
  // fabricates roots instead.
  constexpr double kNoiseRel = 1e-12;
  ComplexVector coeffs = cp.coefficients;
  double power = 1.0;
  for (Eigen::Index j = 0; j < coeffs.size(); ++j) {
    if (std::abs(coeffs(j)) <= kNoiseRel * cp.max_node_magnitude / power)
      coeffs(j) = 0.0;
    power *= cp.node_radius;
  }

  Eigen::Index degree = -1;
  for (Eigen::Index j = coeffs.size() - 1; j >= 0; --j)
    if (coeffs(j) != 0.0) {
      degree = j;
      break;
    }
  if (degree <= 0) {
    // Nonzero constant (degree == 0): singular for no t. degree == -1 cannot
    // happen once the identically_zero gate has passed, but treat it the same.
    out.kind = ExceptionalKind::Empty;
    return out;
  }

  Eigen::Index zero_order = 0;
  while (coeffs(zero_order) == 0.0) ++zero_order;

  std::vector<Complex> raw_roots(static_cast<std::size_t>(zero_order), 0.0);
  const Eigen::Index reduced = degree - zero_order;
  if (reduced > 0) {
    ComplexMatrix companion = ComplexMatrix::Zero(reduced, reduced);
    for (Eigen::Index i = 1; i < reduced; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < reduced; ++i)
      companion(i, reduced - 1) = -coeffs(zero_order + i) / coeffs(degree);
    const EigenDecomposition eig = eigen_general(companion, cfg);
    for (Eigen::Index i = 0; i < reduced; ++i)
      raw_roots.push_back(refine_root(p, eig.values(i), cfg));
  }

  out.kind = ExceptionalKind::Finite;
  out.roots = cluster_roots(sorted_lex(std::move(raw_roots)), cfg.cluster);
  // interval membership padded by tol_real so boundary roots survive rounding
  for (const auto& r : out.roots)
    if (std::abs(r.t.imag()) <= cfg.real && r.t.real() >= -cfg.real &&
        r.t.real() <= 1.0 + cfg.real)
      out.real_roots_in_unit_interval.push_back(r);
  return out;
}

double generic_sample_radius(const PencilProblem& p,
                             const ToleranceConfig& cfg) {
  return 1.0 + spectral_norm(p.a) / std::max(spectral_norm(p.b), cfg.rank);
}

int generic_kernel_dimension(const PencilProblem& p,
                             const ToleranceConfig& cfg, std::uint64_t seed) {
  const int n = p.dim();
  const double radius = generic_sample_radius(p, cfg);
  SplitRng rng(seed);
  int best_rank = 0;
  for (int s = 0; s < 5 && best_rank < n; ++s) {
    const Complex t = std::polar(radius, kTwoPi * rng.uniform());
    const ComplexMatrix shifted = p.a - t * p.b;
    best_rank = std::max(
        best_rank,
        detail::rank_with_threshold(shifted,
                                    cfg.rank * spectral_norm(shifted)));
  }
  return n - best_rank;
}

std::vector<ComplexVector> kernel_witness(const PencilProblem& p, Complex t,
                                          const ToleranceConfig& cfg) {
  return nullspace_basis(p.a - t * p.b, cfg);
}

}  // namespace pencilpersist
