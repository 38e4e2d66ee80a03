#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace pencilpersist {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class ErrorCode {
  InvalidInput,
  DimensionMismatch,
  NotHermitian,
  NotPSD,
  NotPositiveDefinite,
  Singular,
  E0InSpectrum,
  UnknownInstance,
  NoConvergence,
  SearchExhausted,
  InternalInconsistency,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

const char* error_code_name(ErrorCode code);

/// Operator 2-norm (largest singular value). All tolerance contracts in this
/// library are expressed against this norm.
double spectral_norm(const ComplexMatrix& m);

/// True when every entry of m is finite.
bool all_finite(const ComplexMatrix& m);

/// Throws InvalidInput / DimensionMismatch unless m is square, nonempty and
/// entrywise finite.
void require_square_finite(const ComplexMatrix& m, const char* what);

/// Hermitian deviation gate: ||m - m*|| <= tol * ||m||.
bool is_hermitian(const ComplexMatrix& m, double tol);

void require_hermitian(const ComplexMatrix& m, double tol, const char* what);

/// (m + m*)/2 — applied after the Hermitian gate so downstream arithmetic
/// sees exactly Hermitian data.
ComplexMatrix symmetrize(const ComplexMatrix& m);

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                      const char* what);

/// Deterministic seeded generator used by every randomized operation in the
/// library. Distribution mappings are written out explicitly (no
/// std::*_distribution) so streams are identical across standard libraries.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform draw in [0, 1).
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box–Muller; consumes two draws.
  double gauss() {
    const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  Complex complex_gauss() {
    const double re = gauss();
    const double im = gauss();
    return Complex(re, im) / std::sqrt(2.0);
  }

  /// Seed for an independent substream.
  std::uint64_t split() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace pencilpersist
