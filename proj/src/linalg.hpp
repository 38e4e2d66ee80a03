#pragma once

#include "tolerances.hpp"
#include "types.hpp"

#include <utility>
#include <vector>

namespace pencilpersist {

/// Eigenvalue/eigenvector pair set. Column k of `vectors` pairs with
/// `values(k)`. For Hermitian input the values are real (stored with zero
/// imaginary part), sorted ascending, and `vectors` is unitary.
struct EigenDecomposition {
  ComplexVector values;
  ComplexMatrix vectors;
  bool hermitian = false;
};

/// Spectral decomposition of a Hermitian matrix. The input must pass the
/// tol_herm gate; it is symmetrized before factorization so downstream
/// arithmetic sees exactly Hermitian data.
EigenDecomposition eigen_hermitian(const ComplexMatrix& m,
                                   const ToleranceConfig& cfg);

/// Dense non-normal eigensolver: diagonal balancing, Hessenberg reduction and
/// shifted QR with an iteration cap of 100n. Exceeding the cap raises
/// NoConvergence instead of returning partial results. Eigenvectors are
/// normalized to unit length.
EigenDecomposition eigen_general(const ComplexMatrix& m,
                                 const ToleranceConfig& cfg);

/// Solves m x = rhs by pivoted elimination. Raises Singular when a pivot
/// magnitude falls below tol_rank * ||m||.
ComplexMatrix solve(const ComplexMatrix& m, const ComplexMatrix& rhs,
                    const ToleranceConfig& cfg);

/// Determinant via pivoted elimination. Never throws: interpreting a
/// near-zero result is the caller's business.
Complex det(const ComplexMatrix& m);

/// Number of column-pivoted orthogonalization steps whose pivot exceeds
/// tol_rank * ||m||. Zero matrix has rank 0. Accepts rectangular input (used
/// for Krylov block matrices).
int rank(const ComplexMatrix& m, const ToleranceConfig& cfg);

/// Orthonormal basis of {v : ||m v|| <= tol_rank * ||m||}, of size
/// n - rank(m). Computed from the orthogonal complement of ran(m*).
std::vector<ComplexVector> nullspace_basis(const ComplexMatrix& m,
                                           const ToleranceConfig& cfg);

/// Hermitian PSD square root. Eigenvalues inside [-tol_eig*||m||, 0) are
/// clamped to zero; anything more negative raises NotPSD.
ComplexMatrix hermitian_sqrt(const ComplexMatrix& m,
                             const ToleranceConfig& cfg);

/// Spectral positive/negative parts (plus, minus): both PSD, plus - minus
/// reproduces the input, and plus * minus vanishes.
std::pair<ComplexMatrix, ComplexMatrix> split_positive_negative(
    const ComplexMatrix& m, const ToleranceConfig& cfg);

/// Orthogonal projection onto the span of eigenvectors of Hermitian m whose
/// eigenvalue lies within tol_cluster * max(1, ||m||) of lambda0. Zero matrix
/// when no eigenvalue qualifies.
ComplexMatrix eigenprojection(const ComplexMatrix& m, double lambda0,
                              const ToleranceConfig& cfg);

namespace detail {

/// Rank with an absolute pivot threshold; shared by rank() and the Krylov
/// cyclicity test.
int rank_with_threshold(const ComplexMatrix& m, double pivot_threshold);

/// Real eigenvalues and unitary eigenvectors of an already-symmetrized
/// Hermitian matrix (no gate).
void hermitian_eig(const ComplexMatrix& m, RealVector& values,
                   ComplexMatrix& vectors);

RealVector hermitian_eigenvalues(const ComplexMatrix& m);

}  // namespace detail

}  // namespace pencilpersist
