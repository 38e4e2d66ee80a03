#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "birman_schwinger.hpp"
#include "pencil.hpp"
#include "support.hpp"

#include <cmath>

using namespace pencilpersist;
using namespace testsupport;

namespace {

const ToleranceConfig cfg;

// Probe energy inside the widest interior spectral gap, or above the
// spectrum when the gaps are all too tight.
double pick_gap_energy(const ComplexMatrix& h0) {
  const RealVector eigs = detail::hermitian_eigenvalues(h0);
  double best = eigs(eigs.size() - 1) + 1.0;
  double best_width = 0.0;
  for (Eigen::Index i = 0; i + 1 < eigs.size(); ++i) {
    const double width = eigs(i + 1) - eigs(i);
    if (width > best_width) {
      best_width = width;
      best = 0.5 * (eigs(i) + eigs(i + 1));
    }
  }
  const double gate = cfg.cluster * std::max(1.0, spectral_norm(h0));
  if (best_width <= 4.0 * gate) best = eigs(eigs.size() - 1) + 1.0;
  return best;
}

}  // namespace

TEST_CASE("bs_reduce: 2x2 fixture K and couplings") {
  ComplexMatrix h0 = ComplexMatrix::Zero(2, 2);
  h0(0, 0) = 1.0;
  h0(1, 1) = -1.0;
  ComplexMatrix v(2, 2);
  v << 0, 1, 1, 0;
  const BSReduction r = bs_reduce(h0, v, 0.0, cfg);

  ComplexMatrix expected_k(2, 2);
  expected_k << 0, -1, 1, 0;
  CHECK(approx_equal(r.k, expected_k, 1e-12));
  CHECK(roots_match({r.mu(0), r.mu(1)}, {Complex(0, 1), Complex(0, -1)},
                    1e-10));
  CHECK(roots_match(r.exceptional_t, {Complex(0, 1), Complex(0, -1)}, 1e-10));
  CHECK(count_in_unit_interval(r, cfg) == 0);
}

TEST_CASE("bs_reduce: zero perturbation yields no couplings") {
  SplitRng rng(31);
  const ComplexMatrix h0 = random_hermitian(4, rng);
  const BSReduction r =
      bs_reduce(h0, ComplexMatrix::Zero(4, 4), pick_gap_energy(h0), cfg);
  CHECK(spectral_norm(r.k) < 1e-14);
  CHECK(r.exceptional_t.empty());
}

TEST_CASE("bs_reduce: probe energy inside the spectrum is rejected") {
  ComplexMatrix h0 = ComplexMatrix::Zero(2, 2);
  h0(0, 0) = 0.5;
  h0(1, 1) = 2.0;
  ComplexMatrix v(2, 2);
  v << 0, 1, 1, 0;
  CHECK_THROWS_AS(bs_reduce(h0, v, 0.5, cfg), Error);
  try {
    bs_reduce(h0, v, 0.5, cfg);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::E0InSpectrum);
  }
}

TEST_CASE("count_in_unit_interval: diagonal arithmetic fixture") {
  // H_t = diag(0.6 - t, 5 - t); 0.1 is hit at t = 0.5 and t = 4.9
  ComplexMatrix h0 = ComplexMatrix::Zero(2, 2);
  h0(0, 0) = 0.6;
  h0(1, 1) = 5.0;
  const ComplexMatrix v = -ComplexMatrix::Identity(2, 2);
  const BSReduction r = bs_reduce(h0, v, 0.1, cfg);
  CHECK(roots_match(r.exceptional_t, {Complex(0.5), Complex(4.9)}, 1e-10));
  CHECK(count_in_unit_interval(r, cfg) == 1);
}

TEST_CASE("property: resolvent route matches the pencil route") {
  // the module's core test: 100 seeded Hermitian pairs, n <= 12
  SplitRng rng(777);
  int checked = 0;
  for (int round = 0; round < 100; ++round) {
    const int n = 2 + static_cast<int>(rng.uniform() * 11);
    const ComplexMatrix h0 = random_hermitian(n, rng);
    // keep V away from singular so the couplings -1/mu stay O(10) and both
    // routes resolve them to the pinned absolute tolerance
    const ComplexMatrix v = random_hermitian(n, rng, /*floor=*/0.3);
    const double e0 = pick_gap_energy(h0);

    const BSReduction r = bs_reduce(h0, v, e0, cfg);
    CHECK(r.exceptional_t.size() <= static_cast<std::size_t>(n));

    const ExceptionalSet s =
        exceptional_set(pencil_from_eigenproblem(h0, v, e0, cfg), cfg);
    REQUIRE(s.kind != ExceptionalKind::AllComplex);
    CHECK(roots_match(r.exceptional_t, expand_roots(s.roots), 1e-8));

    // residual check at each reported coupling
    const PencilProblem p = pencil_from_eigenproblem(h0, v, e0, cfg);
    for (const Complex& t : r.exceptional_t) {
      const auto basis = kernel_witness(p, t, cfg);
      REQUIRE_FALSE(basis.empty());
      const ComplexMatrix op =
          h0 + t * v - e0 * ComplexMatrix::Identity(n, n);
      CHECK((op * basis.front()).norm() <=
            1e-6 * std::max(1.0, spectral_norm(op)));
    }
    ++checked;
  }
  CHECK(checked == 100);
}
