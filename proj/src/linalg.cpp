#include "linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>

namespace pencilpersist {

namespace detail {

void hermitian_eig(const ComplexMatrix& m, RealVector& values,
                   ComplexMatrix& vectors) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::NoConvergence, "Hermitian eigensolver did not converge");
  values = es.eigenvalues();
  vectors = es.eigenvectors();
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::NoConvergence, "Hermitian eigensolver did not converge");
  return es.eigenvalues();
}

int rank_with_threshold(const ComplexMatrix& m, double pivot_threshold) {
  if (m.size() == 0) return 0;
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(m);
  const Eigen::Index k = std::min(m.rows(), m.cols());
  int r = 0;
  for (Eigen::Index i = 0; i < k; ++i)
    if (std::abs(qr.matrixR()(i, i)) > pivot_threshold) ++r;
  return r;
}

namespace {

// Parlett–Reinsch balancing: diagonal similarity with powers of two. Returns
// the scaling d with the input replaced by D^{-1} M D.
RealVector balance_in_place(ComplexMatrix& m) {
  const Eigen::Index n = m.rows();
  RealVector d = RealVector::Ones(n);
  bool stable = false;
  int sweeps = 0;
  while (!stable && sweeps < 100) {
    stable = true;
    ++sweeps;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(m(j, i));
        r += std::abs(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      while (c < r / 2.0) {
        c *= 2.0;
        r /= 2.0;
        f *= 2.0;
      }
      while (c >= r * 2.0) {
        c /= 2.0;
        r *= 2.0;
        f /= 2.0;
      }
      if (c + r < 0.95 * s && f != 1.0) {
        stable = false;
        d(i) *= f;
        m.col(i) *= f;
        m.row(i) /= f;
      }
    }
  }
  return d;
}

}  // namespace

}  // namespace detail

EigenDecomposition eigen_hermitian(const ComplexMatrix& m,
                                   const ToleranceConfig& cfg) {
  require_hermitian(m, cfg.herm, "eigen_hermitian");
  RealVector values;
  ComplexMatrix vectors;
  detail::hermitian_eig(symmetrize(m), values, vectors);
  EigenDecomposition out;
  out.values = values.cast<Complex>();
  out.vectors = std::move(vectors);
  out.hermitian = true;
  return out;
}

EigenDecomposition eigen_general(const ComplexMatrix& m,
                                 const ToleranceConfig& cfg) {
  (void)cfg;
  require_square_finite(m, "eigen_general");
  const Eigen::Index n = m.rows();

  ComplexMatrix balanced = m;
  const RealVector d = detail::balance_in_place(balanced);

  Eigen::ComplexEigenSolver<ComplexMatrix> es;
  es.setMaxIterations(100 * static_cast<int>(n));
  es.compute(balanced, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::NoConvergence,
         "QR iteration exceeded its cap of 100n sweeps");

  EigenDecomposition out;
  out.values = es.eigenvalues();
  out.vectors = d.asDiagonal() * es.eigenvectors();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double len = out.vectors.col(k).norm();
    if (len > 0.0) out.vectors.col(k) /= len;
  }
  out.hermitian = false;
  return out;
}

ComplexMatrix solve(const ComplexMatrix& m, const ComplexMatrix& rhs,
                    const ToleranceConfig& cfg) {
  require_square_finite(m, "solve");
  if (rhs.rows() != m.rows())
    fail(ErrorCode::DimensionMismatch,
         "solve: rhs row count does not match matrix dimension");

  Eigen::PartialPivLU<ComplexMatrix> lu(m);
  const double threshold = cfg.rank * spectral_norm(m);
  const auto diag = lu.matrixLU().diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i)
    if (std::abs(diag(i)) <= threshold)
      fail(ErrorCode::Singular,
           "solve: pivot " + std::to_string(i) + " below rank tolerance");
  return lu.solve(rhs);
}

Complex det(const ComplexMatrix& m) {
  require_square_finite(m, "det");
  return Eigen::PartialPivLU<ComplexMatrix>(m).determinant();
}

int rank(const ComplexMatrix& m, const ToleranceConfig& cfg) {
  if (!all_finite(m))
    fail(ErrorCode::InvalidInput, "rank: matrix contains NaN or Inf entries");
  const double norm = spectral_norm(m);
  if (norm == 0.0) return 0;
  return detail::rank_with_threshold(m, cfg.rank * norm);
}

std::vector<ComplexVector> nullspace_basis(const ComplexMatrix& m,
                                           const ToleranceConfig& cfg) {
  require_square_finite(m, "nullspace_basis");
  const Eigen::Index n = m.rows();
  const double norm = spectral_norm(m);
  if (norm == 0.0) {
    std::vector<ComplexVector> basis;
    for (Eigen::Index k = 0; k < n; ++k)
      basis.push_back(ComplexVector::Unit(n, k));
    return basis;
  }

  // ker(m) is the orthogonal complement of ran(m*): take the trailing columns
  // of Q from a column-pivoted QR of m*.
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(m.adjoint());
  const double threshold = cfg.rank * norm;
  int r = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(qr.matrixR()(i, i)) > threshold) ++r;

  const ComplexMatrix q = qr.householderQ();
  std::vector<ComplexVector> basis;
  basis.reserve(n - r);
  for (Eigen::Index k = r; k < n; ++k) basis.push_back(q.col(k));
  return basis;
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& m,
                             const ToleranceConfig& cfg) {
  require_hermitian(m, cfg.herm, "hermitian_sqrt");
  RealVector values;
  ComplexMatrix vectors;
  detail::hermitian_eig(symmetrize(m), values, vectors);

  const double clamp = cfg.eig * spectral_norm(m);
  RealVector roots(values.size());
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (values(k) < -clamp)
      fail(ErrorCode::NotPSD,
           "hermitian_sqrt: eigenvalue " + std::to_string(values(k)) +
               " is negative beyond the clamping tolerance");
    roots(k) = values(k) > 0.0 ? std::sqrt(values(k)) : 0.0;
  }
  return symmetrize(vectors * roots.asDiagonal() * vectors.adjoint());
}

std::pair<ComplexMatrix, ComplexMatrix> split_positive_negative(
    const ComplexMatrix& m, const ToleranceConfig& cfg) {
  require_hermitian(m, cfg.herm, "split_positive_negative");
  RealVector values;
  ComplexMatrix vectors;
  detail::hermitian_eig(symmetrize(m), values, vectors);

  RealVector plus = values.cwiseMax(0.0);
  RealVector minus = (-values).cwiseMax(0.0);
  return {symmetrize(vectors * plus.asDiagonal() * vectors.adjoint()),
          symmetrize(vectors * minus.asDiagonal() * vectors.adjoint())};
}

ComplexMatrix eigenprojection(const ComplexMatrix& m, double lambda0,
                              const ToleranceConfig& cfg) {
  require_hermitian(m, cfg.herm, "eigenprojection");
  RealVector values;
  ComplexMatrix vectors;
  detail::hermitian_eig(symmetrize(m), values, vectors);

  const double window = cfg.cluster * std::max(1.0, spectral_norm(m));
  ComplexMatrix p = ComplexMatrix::Zero(m.rows(), m.cols());
  for (Eigen::Index k = 0; k < values.size(); ++k)
    if (std::abs(values(k) - lambda0) <= window)
      p += vectors.col(k) * vectors.col(k).adjoint();
  return symmetrize(p);
}

}  // namespace pencilpersist
