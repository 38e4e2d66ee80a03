#pragma once

#include "linalg.hpp"
#include "tolerances.hpp"
#include "types.hpp"

#include <vector>

namespace pencilpersist {

/// Resolvent reduction of the persistence question at a probe energy e0
/// outside the spectrum of H0: e0 is an eigenvalue of H0 + tV exactly when
/// -1/t is an eigenvalue of K = V (H0 - e0 I)^{-1}. Only valid off the
/// spectrum, so it cannot address persistence of an existing eigenvalue; it
/// serves as an independent cross-check of the pencil route.
struct BSReduction {
  double e0 = 0.0;
  ComplexMatrix k;
  ComplexVector mu;                   ///< eigenvalues of k
  std::vector<Complex> exceptional_t; ///< -1/mu over the nonzero mu, sorted
};

/// Builds the reduction. Raises E0InSpectrum unless e0 keeps a distance of
/// more than tol_cluster * max(1, ||H0||) from every eigenvalue of H0.
BSReduction bs_reduce(const ComplexMatrix& h0, const ComplexMatrix& v,
                      double e0, const ToleranceConfig& cfg);

/// Number of exceptional couplings that are real (|Im t| <= tol_real) and lie
/// in [0, 1]. Always bounded by the dimension.
int count_in_unit_interval(const BSReduction& r, const ToleranceConfig& cfg);

}  // namespace pencilpersist
