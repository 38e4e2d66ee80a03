#pragma once

// Shared seeded generators and comparison helpers for the test suites. Uses
// the library's SplitRng so draws are identical across standard libraries.

#include "linalg.hpp"
#include "pencil.hpp"
#include "types.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <vector>

namespace testsupport {

using namespace pencilpersist;

inline ComplexMatrix random_matrix(int n, SplitRng& rng) {
  ComplexMatrix g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = rng.complex_gauss();
  return g;
}

inline ComplexMatrix random_unitary(int n, SplitRng& rng) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(n, rng));
  return qr.householderQ();
}

/// Hermitian with the given eigenvalues in a random unitary frame.
inline ComplexMatrix random_hermitian_with_spectrum(
    const std::vector<double>& eigs, SplitRng& rng) {
  const int n = static_cast<int>(eigs.size());
  const ComplexMatrix u = random_unitary(n, rng);
  RealVector d(n);
  for (int i = 0; i < n; ++i) d(i) = eigs[i];
  return symmetrize(u * d.asDiagonal().toDenseMatrix().cast<Complex>() *
                    u.adjoint());
}

/// Random Hermitian, spectrum drawn from [-1, 1] with magnitudes >= floor
/// (keeps test pencils comfortably away from the zero-detection thresholds).
inline ComplexMatrix random_hermitian(int n, SplitRng& rng,
                                      double floor = 0.0) {
  std::vector<double> eigs(n);
  for (int i = 0; i < n; ++i) {
    double v = 2.0 * rng.uniform() - 1.0;
    if (floor > 0.0) {
      const double sign = v < 0.0 ? -1.0 : 1.0;
      v = sign * (floor + (1.0 - floor) * std::abs(v));
    }
    eigs[i] = v;
  }
  return random_hermitian_with_spectrum(eigs, rng);
}

/// Random PSD with the given rank; nonzero eigenvalues in [floor, 1].
inline ComplexMatrix random_psd(int n, int rank, SplitRng& rng,
                                double floor = 0.1) {
  std::vector<double> eigs(n, 0.0);
  for (int i = 0; i < rank; ++i)
    eigs[i] = floor + (1.0 - floor) * rng.uniform();
  return random_hermitian_with_spectrum(eigs, rng);
}

inline bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                         double tol) {
  return (a - b).norm() <= tol;
}

/// Collinearity up to a complex phase.
inline bool parallel(const ComplexVector& a, const ComplexVector& b,
                     double tol) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return false;
  return na * nb - std::abs(a.dot(b)) <= tol * na * nb;
}

inline std::vector<Complex> expand_roots(
    const std::vector<RootMultiplicity>& roots) {
  std::vector<Complex> flat;
  for (const auto& r : roots)
    for (int i = 0; i < r.multiplicity; ++i) flat.push_back(r.t);
  std::sort(flat.begin(), flat.end(), [](Complex x, Complex y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return flat;
}

/// Multiset match within tol: greedily pair each entry of a with its nearest
/// unused entry of b (lex order alone is unstable under tiny perturbations).
inline bool roots_match(const std::vector<Complex>& a, std::vector<Complex> b,
                        double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const Complex& x : a) {
    double best = -1.0;
    std::size_t pick = b.size();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b[j]);
      if (pick == b.size() || d < best) {
        best = d;
        pick = j;
      }
    }
    if (pick == b.size() || best > tol) return false;
    used[pick] = true;
  }
  return true;
}

}  // namespace testsupport
