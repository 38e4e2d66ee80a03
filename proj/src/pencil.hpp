#pragma once

#include "linalg.hpp"
#include "tolerances.hpp"
#include "types.hpp"

#include <cstdint>
#include <vector>

namespace pencilpersist {

/// Linear pencil A - t B. The values of t making it singular are the
/// "exceptional" couplings at which the underlying eigenvalue persists.
struct PencilProblem {
  ComplexMatrix a;
  ComplexMatrix b;

  PencilProblem(ComplexMatrix a_in, ComplexMatrix b_in);

  int dim() const { return static_cast<int>(a.rows()); }
};

/// Coefficients of p(t) = det(A - tB), ascending powers, recovered by
/// evaluating det at n+1 nodes on a circle and interpolating. A pencil is
/// singular (kernel for every t) exactly when p vanishes identically; the
/// identically_zero flag encodes that dichotomy numerically.
struct CharPoly {
  int degree_bound = 0;
  ComplexVector coefficients;  // degree_bound + 1 entries
  bool identically_zero = false;
  double node_radius = 1.0;       ///< radius of the interpolation circle
  double max_node_magnitude = 0;  ///< max |det| over the nodes

  Complex eval(Complex t) const;
};

enum class ExceptionalKind { Empty, Finite, AllComplex };

struct RootMultiplicity {
  Complex t;
  int multiplicity = 1;
};

/// Classified answer to "for which t is the pencil singular?".
///   Empty      — for no t (p is a nonzero constant)
///   Finite     — exactly the listed roots, total multiplicity <= n
///   AllComplex — for every t in C (singular pencil)
struct ExceptionalSet {
  ExceptionalKind kind = ExceptionalKind::Empty;
  std::vector<RootMultiplicity> roots;
  std::vector<RootMultiplicity> real_roots_in_unit_interval;

  int total_multiplicity() const;
};

const char* exceptional_kind_name(ExceptionalKind kind);

/// Which of the two PSD summands of V = V1 - V2 is positive definite and
/// gets inverted in reduce_to_pencil.
enum class PencilSide { V1, V2 };

/// Rewrites the eigenvalue problem (H0 + tV) psi = lambda0 psi as the pencil
/// A f = t B f with A = lambda0 I - H0 and B = V. Kernels agree for every t.
PencilProblem pencil_from_eigenproblem(const ComplexMatrix& h0,
                                       const ComplexMatrix& v, double lambda0,
                                       const ToleranceConfig& cfg);

/// Congruence reduction for a split V = V1 - V2 with PSD parts and the
/// designated part positive definite:
///   side V1:  A = V1^{-1/2} H0 V1^{-1/2} - lambda0 V1^{-1},
///             B = -(I - V1^{-1/2} V2 V1^{-1/2})
///   side V2:  same with the roles of V1, V2 swapped and B's sign flipped.
/// The exceptional set matches pencil_from_eigenproblem(h0, V1 - V2, lambda0)
/// because congruence preserves singularity of A - tB.
PencilProblem reduce_to_pencil(const ComplexMatrix& h0,
                               const ComplexMatrix& v1,
                               const ComplexMatrix& v2, double lambda0,
                               PencilSide side, const ToleranceConfig& cfg);

CharPoly char_poly(const PencilProblem& p, const ToleranceConfig& cfg);

ExceptionalSet exceptional_set(const PencilProblem& p,
                               const ToleranceConfig& cfg);

/// dim ker(A - tB) at generic t: n minus the best rank over 5 seeded samples
/// drawn from the circle of radius 1 + ||A|| / max(||B||, tol_rank).
int generic_kernel_dimension(const PencilProblem& p,
                             const ToleranceConfig& cfg, std::uint64_t seed);

/// Orthonormal basis of ker(A - tB); empty when the pencil is regular at t.
std::vector<ComplexVector> kernel_witness(const PencilProblem& p, Complex t,
                                          const ToleranceConfig& cfg);

/// Sample radius used by generic_kernel_dimension and witness sampling.
double generic_sample_radius(const PencilProblem& p,
                             const ToleranceConfig& cfg);

}  // namespace pencilpersist
