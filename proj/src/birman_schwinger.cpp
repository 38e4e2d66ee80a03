#include "birman_schwinger.hpp"

#include <algorithm>
#include <cmath>

namespace pencilpersist {

BSReduction bs_reduce(const ComplexMatrix& h0, const ComplexMatrix& v,
                      double e0, const ToleranceConfig& cfg) {
  require_hermitian(h0, cfg.herm, "bs_reduce H0");
  require_hermitian(v, cfg.herm, "bs_reduce V");
  require_same_dim(h0, v, "bs_reduce");

  const ComplexMatrix h = symmetrize(h0);
  const RealVector spectrum = detail::hermitian_eigenvalues(h);
  const double gate = cfg.cluster * std::max(1.0, spectral_norm(h));
  for (Eigen::Index i = 0; i < spectrum.size(); ++i)
    if (std::abs(spectrum(i) - e0) <= gate)
      fail(ErrorCode::E0InSpectrum,
           "bs_reduce: e0 = " + std::to_string(e0) +
               " is within the resolvent gate of an eigenvalue of H0");

  const Eigen::Index n = h.rows();
  BSReduction out;
  out.e0 = e0;
  const ComplexMatrix resolvent =
      solve(h - e0 * ComplexMatrix::Identity(n, n),
            ComplexMatrix::Identity(n, n), cfg);
  out.k = symmetrize(v) * resolvent;
  out.mu = eigen_general(out.k, cfg).values;

  const double zero_gate = cfg.rank * spectral_norm(out.k);
  for (Eigen::Index i = 0; i < out.mu.size(); ++i)
    if (std::abs(out.mu(i)) > zero_gate)
      out.exceptional_t.push_back(-1.0 / out.mu(i));
  std::sort(out.exceptional_t.begin(), out.exceptional_t.end(),
            [](Complex x, Complex y) {
              if (x.real() != y.real()) return x.real() < y.real();
              return x.imag() < y.imag();
            });
  return out;
}

int count_in_unit_interval(const BSReduction& r, const ToleranceConfig& cfg) {
  int count = 0;
  for (const Complex& t : r.exceptional_t)
    if (std::abs(t.imag()) <= cfg.real && t.real() >= -cfg.real &&
        t.real() <= 1.0 + cfg.real)
      ++count;
  return count;
}

}  // namespace pencilpersist
