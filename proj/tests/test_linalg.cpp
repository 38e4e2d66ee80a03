#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "linalg.hpp"
#include "persistence.hpp"
#include "support.hpp"

#include <cmath>

using namespace pencilpersist;
using namespace testsupport;

namespace {
const ToleranceConfig cfg;
const double kSqrt3 = std::sqrt(3.0);
}  // namespace

TEST_CASE("eigen_hermitian: diagonal input") {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(2, 2) = 1.0;
  const EigenDecomposition eig = eigen_hermitian(m, cfg);
  CHECK(eig.hermitian);
  CHECK(eig.values(0).real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(eig.values(1).real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(eig.values(2).real() == doctest::Approx(1.0).epsilon(1e-12));
  // unit eigenvector for the top eigenvalue must be e3 up to phase
  CHECK(parallel(eig.vectors.col(2), ComplexVector::Unit(3, 2), 1e-12));
}

TEST_CASE("eigen_hermitian: canonical 3x3 family H0") {
  // char poly is l^3 - 2l^2 - 2l, roots 0 and 1 +/- sqrt(3); kernel is
  // spanned by (1, -1, 0).
  const ComplexMatrix h0 = canonical_persistent_h0();
  const EigenDecomposition eig = eigen_hermitian(h0, cfg);
  CHECK(eig.values(0).real() == doctest::Approx(1.0 - kSqrt3).epsilon(1e-12));
  CHECK(std::abs(eig.values(1)) < 1e-12);
  CHECK(eig.values(2).real() == doctest::Approx(1.0 + kSqrt3).epsilon(1e-12));
  ComplexVector kernel(3);
  kernel << 1, -1, 0;
  CHECK(parallel(eig.vectors.col(1), kernel, 1e-10));
}

TEST_CASE("eigen_hermitian: 2x2 swap matrix") {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  const EigenDecomposition eig = eigen_hermitian(m, cfg);
  CHECK(eig.values(0).real() == doctest::Approx(-1.0));
  CHECK(eig.values(1).real() == doctest::Approx(1.0));
}

TEST_CASE("eigen_hermitian: rejects non-Hermitian input") {
  ComplexMatrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(eigen_hermitian(m, cfg), Error);
}

TEST_CASE("eigen_general: rotation generator has eigenvalues +/- i") {
  ComplexMatrix m(2, 2);
  m << 0, -1, 1, 0;
  const EigenDecomposition eig = eigen_general(m, cfg);
  std::vector<Complex> got{eig.values(0), eig.values(1)};
  CHECK(roots_match(got, {Complex(0, 1), Complex(0, -1)}, 1e-12));
  // residual contract
  for (int k = 0; k < 2; ++k)
    CHECK((m * eig.vectors.col(k) - eig.values(k) * eig.vectors.col(k)).norm() <=
          cfg.eig * spectral_norm(m));
}

TEST_CASE("eigen_general: triangular input returns the diagonal") {
  ComplexMatrix m(3, 3);
  m << Complex(1, 1), 5, 7,
       0, Complex(-2, 0), 11,
       0, 0, Complex(0, 3);
  const EigenDecomposition eig = eigen_general(m, cfg);
  std::vector<Complex> got{eig.values(0), eig.values(1), eig.values(2)};
  CHECK(roots_match(got, {Complex(1, 1), Complex(-2, 0), Complex(0, 3)},
                    1e-10));
}

TEST_CASE("eigen_general: nilpotent Jordan block") {
  const int n = 6;
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) m(k, k + 1) = 1.0;
  const EigenDecomposition eig = eigen_general(m, cfg);
  for (int k = 0; k < n; ++k)
    CHECK(std::abs(eig.values(k)) <= cfg.eig * spectral_norm(m));
}

TEST_CASE("solve: identity and diagonal") {
  const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  ComplexVector rhs(3);
  rhs << 1, Complex(2, -1), 3;
  CHECK((solve(id, rhs, cfg) - rhs).norm() < 1e-14);

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  ComplexVector ones(2);
  ones << 1, 1;
  const ComplexMatrix x = solve(d, ones, cfg);
  CHECK(x(0, 0).real() == doctest::Approx(0.5));
  CHECK(x(1, 0).real() == doctest::Approx(0.25));
}

TEST_CASE("solve: singular matrix is reported, not silently solved") {
  ComplexVector rhs(3);
  rhs << 1, 1, 1;
  CHECK_THROWS_AS(solve(canonical_persistent_h0(), rhs, cfg), Error);
  try {
    solve(canonical_persistent_h0(), rhs, cfg);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::Singular);
  }
}

TEST_CASE("det: frozen values") {
  CHECK(std::abs(det(ComplexMatrix::Identity(4, 4)) - 1.0) < 1e-14);

  ComplexMatrix pencil_at_zero(2, 2);  // A - tB of the 2x2 fixture at t = 0
  pencil_at_zero << 1, 0, 0, -1;
  CHECK(std::abs(det(pencil_at_zero) - Complex(-1.0)) < 1e-14);

  // det(H0 + 5V) = 0 for the canonical persistent family
  const ComplexMatrix m =
      canonical_persistent_h0() + 5.0 * canonical_persistent_v();
  CHECK(std::abs(det(m)) < 1e-12);
}

TEST_CASE("rank: frozen values") {
  CHECK(rank(ComplexMatrix::Zero(3, 3), cfg) == 0);
  CHECK(rank(canonical_persistent_v(), cfg) == 2);

  SplitRng rng(11);
  ComplexVector a(4), b(4);
  for (int i = 0; i < 4; ++i) {
    a(i) = rng.complex_gauss();
    b(i) = rng.complex_gauss();
  }
  const ComplexMatrix outer = a * b.adjoint();
  CHECK(rank(outer, cfg) == 1);
}

TEST_CASE("nullspace_basis: frozen values") {
  CHECK(nullspace_basis(ComplexMatrix::Identity(3, 3), cfg).empty());

  const auto h0_kernel = nullspace_basis(canonical_persistent_h0(), cfg);
  REQUIRE(h0_kernel.size() == 1);
  ComplexVector expected(3);
  expected << 1, -1, 0;
  CHECK(parallel(h0_kernel[0], expected, 1e-10));

  const auto v_kernel = nullspace_basis(canonical_persistent_v(), cfg);
  REQUIRE(v_kernel.size() == 1);
  CHECK(parallel(v_kernel[0], ComplexVector::Unit(3, 2), 1e-10));
}

TEST_CASE("hermitian_sqrt: diagonal and identity") {
  const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  CHECK(approx_equal(hermitian_sqrt(id, cfg), id, 1e-12));

  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected(0, 0) = 2.0;
  expected(1, 1) = 3.0;
  CHECK(approx_equal(hermitian_sqrt(d, cfg), expected, 1e-12));
}

TEST_CASE("hermitian_sqrt: genuinely negative eigenvalue is an error") {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(1, 1) = -0.5;
  CHECK_THROWS_AS(hermitian_sqrt(m, cfg), Error);
}

TEST_CASE("split_positive_negative: frozen values") {
  const auto [vp, vm] = split_positive_negative(canonical_persistent_v(), cfg);
  ComplexMatrix ep = ComplexMatrix::Zero(3, 3), em = ComplexMatrix::Zero(3, 3);
  ep(0, 0) = 1.0;
  em(1, 1) = 1.0;
  CHECK(approx_equal(vp, ep, 1e-12));
  CHECK(approx_equal(vm, em, 1e-12));

  SplitRng rng(5);
  const ComplexMatrix psd = random_psd(4, 4, rng);
  const auto [pp, pm] = split_positive_negative(psd, cfg);
  CHECK(approx_equal(pp, psd, 1e-10));
  CHECK(spectral_norm(pm) < 1e-10);

  // swap matrix: both parts rank one built from (1, +/-1)/sqrt(2)
  ComplexMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  const auto [sp, sm] = split_positive_negative(swap, cfg);
  ComplexMatrix esp(2, 2), esm(2, 2);
  esp << 0.5, 0.5, 0.5, 0.5;
  esm << 0.5, -0.5, -0.5, 0.5;
  CHECK(approx_equal(sp, esp, 1e-12));
  CHECK(approx_equal(sm, esm, 1e-12));
  CHECK(rank(sp, cfg) == 1);
  CHECK(rank(sm, cfg) == 1);
}

TEST_CASE("eigenprojection: frozen values") {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(2, 2) = 1.0;
  ComplexMatrix expected = ComplexMatrix::Identity(3, 3);
  expected(2, 2) = 0.0;
  CHECK(approx_equal(eigenprojection(d, 0.0, cfg), expected, 1e-12));

  const ComplexMatrix p = eigenprojection(canonical_persistent_h0(), 0.0, cfg);
  ComplexMatrix ep(3, 3);
  ep << 0.5, -0.5, 0, -0.5, 0.5, 0, 0, 0, 0;
  CHECK(approx_equal(p, ep, 1e-10));

  CHECK(spectral_norm(eigenprojection(d, 42.0, cfg)) == 0.0);
}

// ---- property suites ------------------------------------------------------

TEST_CASE("property: Hermitian reconstruction") {
  SplitRng rng(101);
  for (int round = 0; round < 40; ++round) {
    const int n = 2 + static_cast<int>(rng.uniform() * 9);  // up to 10
    const ComplexMatrix m = random_hermitian(n, rng);
    const EigenDecomposition eig = eigen_hermitian(m, cfg);
    ComplexMatrix rebuilt = ComplexMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k)
      rebuilt += eig.values(k) * eig.vectors.col(k) * eig.vectors.col(k).adjoint();
    CHECK(spectral_norm(rebuilt - m) <= 10 * cfg.eig * spectral_norm(m));
    // columnwise orthonormality
    CHECK(spectral_norm(eig.vectors.adjoint() * eig.vectors -
                        ComplexMatrix::Identity(n, n)) <= 10 * cfg.eig);
  }
}

TEST_CASE("property: rank plus nullity equals dimension") {
  SplitRng rng(202);
  for (int round = 0; round < 40; ++round) {
    const int n = 1 + static_cast<int>(rng.uniform() * 8);
    const int r = static_cast<int>(rng.uniform() * (n + 1));
    // rank-r Hermitian via spectrum with exactly r nonzero eigenvalues
    std::vector<double> eigs(n, 0.0);
    for (int i = 0; i < r; ++i)
      eigs[i] = (rng.uniform() < 0.5 ? -1.0 : 1.0) * (0.2 + rng.uniform());
    const ComplexMatrix m = random_hermitian_with_spectrum(eigs, rng);
    CHECK(rank(m, cfg) + static_cast<int>(nullspace_basis(m, cfg).size()) == n);
    CHECK(rank(m, cfg) == r);
    for (const auto& v : nullspace_basis(m, cfg))
      CHECK((m * v).norm() <= cfg.rank * std::max(1.0, spectral_norm(m)));
  }
}

TEST_CASE("property: sqrt squares back to the input") {
  SplitRng rng(303);
  for (int round = 0; round < 30; ++round) {
    const int n = 1 + static_cast<int>(rng.uniform() * 8);
    const int r = static_cast<int>(rng.uniform() * (n + 1));
    const ComplexMatrix m = random_psd(n, r, rng, 0.0);
    const ComplexMatrix root = hermitian_sqrt(m, cfg);
    CHECK(spectral_norm(root * root - m) <=
          cfg.eig * std::max(1.0, spectral_norm(m)));
  }
}

TEST_CASE("property: positive/negative split") {
  SplitRng rng(404);
  for (int round = 0; round < 30; ++round) {
    const int n = 2 + static_cast<int>(rng.uniform() * 7);
    const ComplexMatrix m = random_hermitian(n, rng, /*floor=*/0.05);
    const auto [plus, minus] = split_positive_negative(m, cfg);
    CHECK(spectral_norm(plus - plus.adjoint()) < 1e-13);
    CHECK(detail::hermitian_eigenvalues(plus).minCoeff() >= -1e-12);
    CHECK(detail::hermitian_eigenvalues(minus).minCoeff() >= -1e-12);
    CHECK(spectral_norm(plus - minus - m) <= cfg.eig * spectral_norm(m));
    CHECK(spectral_norm(plus * minus) <= 100 * cfg.eig * spectral_norm(m));
    CHECK(rank(plus, cfg) + rank(minus, cfg) == rank(m, cfg));
  }
}

TEST_CASE("property: eigenprojection is a commuting orthogonal projection") {
  SplitRng rng(505);
  for (int round = 0; round < 30; ++round) {
    const int n = 2 + static_cast<int>(rng.uniform() * 7);
    const ComplexMatrix m = random_hermitian(n, rng);
    const RealVector eigs = detail::hermitian_eigenvalues(m);
    const double lambda0 = eigs(static_cast<int>(rng.uniform() * n));
    const ComplexMatrix p = eigenprojection(m, lambda0, cfg);
    const double bound = 10 * cfg.eig * std::max(1.0, spectral_norm(m));
    CHECK(spectral_norm(p * p - p) <= bound);
    CHECK(spectral_norm(p - p.adjoint()) <= bound);
    CHECK(spectral_norm(m * p - p * m) <= bound);
    CHECK(rank(p, cfg) >= 1);
  }
}

TEST_CASE("property: determinant equals product of eigenvalues") {
  SplitRng rng(606);
  for (int round = 0; round < 30; ++round) {
    const int n = 2 + static_cast<int>(rng.uniform() * 7);  // up to 8
    // well-conditioned by construction: unitary * diag * unitary
    std::vector<double> mags(n);
    for (int i = 0; i < n; ++i) mags[i] = 0.5 + 1.5 * rng.uniform();
    const ComplexMatrix u = random_unitary(n, rng);
    const ComplexMatrix w = random_unitary(n, rng);
    RealVector d(n);
    for (int i = 0; i < n; ++i) d(i) = mags[i];
    const ComplexMatrix m =
        u * d.asDiagonal().toDenseMatrix().cast<Complex>() * w;
    const EigenDecomposition eig = eigen_general(m, cfg);
    Complex prod = 1.0;
    for (int k = 0; k < n; ++k) prod *= eig.values(k);
    const Complex dd = det(m);
    CHECK(std::abs(prod - dd) <= 1e-8 * std::abs(dd));
  }
}
