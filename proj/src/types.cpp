#include "types.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace pencilpersist {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::E0InSpectrum: return "E0InSpectrum";
    case ErrorCode::UnknownInstance: return "UnknownInstance";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  // sqrt of the largest eigenvalue of m* m; matrices here are small enough
  // that this beats pulling in a full SVD.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m.adjoint() * m,
                                                  Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  return top > 0.0 ? std::sqrt(top) : 0.0;
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

void require_square_finite(const ComplexMatrix& m, const char* what) {
  if (m.rows() < 1 || m.rows() != m.cols())
    fail(ErrorCode::DimensionMismatch,
         std::string(what) + ": expected a nonempty square matrix, got " +
             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  if (!all_finite(m))
    fail(ErrorCode::InvalidInput,
         std::string(what) + ": matrix contains NaN or Inf entries");
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return spectral_norm(m - m.adjoint()) <= tol * spectral_norm(m);
}

void require_hermitian(const ComplexMatrix& m, double tol, const char* what) {
  require_square_finite(m, what);
  if (!is_hermitian(m, tol))
    fail(ErrorCode::NotHermitian,
         std::string(what) + ": matrix is not Hermitian within tolerance");
}

ComplexMatrix symmetrize(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                      const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorCode::DimensionMismatch,
         std::string(what) + ": dimension mismatch (" +
             std::to_string(a.rows()) + " vs " + std::to_string(b.rows()) +
             ")");
}

}  // namespace pencilpersist
