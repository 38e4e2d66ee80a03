#pragma once

#include "birman_schwinger.hpp"
#include "pencil.hpp"
#include "tolerances.hpp"
#include "types.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pencilpersist {

/// Validated Hermitian pair (H0, V) defining the one-parameter family
/// H(t) = H0 + t V. Both matrices are symmetrized after the tol_herm gate.
struct PerturbationFamily {
  ComplexMatrix h0;
  ComplexMatrix v;

  PerturbationFamily(ComplexMatrix h0_in, ComplexMatrix v_in,
                     const ToleranceConfig& cfg);

  int dim() const { return static_cast<int>(h0.rows()); }
};

/// Sign structure of V. Exactly one of psd/nsd/indefinite holds except for
/// V = 0, where psd and nsd are both set.
struct VClassification {
  bool psd = false;
  bool nsd = false;
  bool indefinite = false;
  int rank_plus = 0;
  int rank_minus = 0;
  int kernel_dim = 0;
};

/// Result of the Krylov range test: cyclic means the orbit of ran(V) under
/// powers of H0 spans the whole space.
struct CyclicityVerdict {
  bool cyclic = false;
  int krylov_rank = 0;
  int generator_count = 0;  ///< basis vectors consumed before rank saturated
};

struct TheoremCheck {
  std::string name;
  bool applicable = false;
  std::string predicted;
  std::string observed;
  bool consistent = true;
};

/// Kernel vector of the pencil at a sampled coupling, with its residual
/// ||(A - tB) w||.
struct WitnessSample {
  Complex t;
  ComplexVector vec;
  double residual = 0.0;
};

/// Vectors u0, u1 with H0 u0 = 0, H0 u1 + V u0 = 0 and V u1 = 0, so that
/// (H0 + tV)(u0 + t u1) = 0 for every complex t. residuals holds the norms of
/// the three constraint defects in that order.
struct PersistentFamilyWitness {
  ComplexVector u0;
  ComplexVector u1;
  std::array<double, 3> residuals{0.0, 0.0, 0.0};
};

struct PersistenceReport {
  double lambda0 = 0.0;
  bool lambda0_in_spectrum = false;
  ExceptionalSet exceptional;
  CyclicityVerdict cyclicity;
  VClassification v_class;
  std::vector<TheoremCheck> theorem_checks;
  std::vector<WitnessSample> witnesses;
  double measure_estimate = 0.0;
};

/// Rank of the block Krylov matrix [V | H0 V | ... | H0^{n-1} V], assembled
/// one generator column of V at a time; assembly stops early once the rank
/// saturates.
CyclicityVerdict cyclicity_check(const PerturbationFamily& fam,
                                 const ToleranceConfig& cfg);

VClassification classify_v(const PerturbationFamily& fam,
                           const ToleranceConfig& cfg);

/// Full analysis at the target eigenvalue lambda0: exceptional set via the
/// pencil route, cyclicity, V classification, the structural consistency
/// checks, witnesses for singular pencils, and the measure surrogate. A
/// failed applicable check raises InternalInconsistency — it would mean a
/// bug, not new mathematics.
PersistenceReport analyze(const PerturbationFamily& fam, double lambda0,
                          const ToleranceConfig& cfg, std::uint64_t seed);

/// For each real coupling t, the spectral norm of
/// V^{1/2} P_{lambda0}(H0 + tV) V^{1/2}, where P is the eigenprojection.
/// Requires V PSD; the norm vanishes at every t off the exceptional set.
std::vector<std::pair<double, double>> projection_vanishing_check(
    const PerturbationFamily& fam, double lambda0, std::span<const double> ts,
    const ToleranceConfig& cfg);

/// Fraction of couplings t in [0,1] with dist(lambda0, spec(H0 + tV)) < eps.
/// Stratified jittered sampling: t_i = (i + u_i)/samples, deterministic for a
/// given seed and uniform in the aggregate.
double measure_estimate(const PerturbationFamily& fam, double lambda0,
                        double eps, int samples, const ToleranceConfig& cfg,
                        std::uint64_t seed);

/// Seeded search for a family with an affine-in-t persistent kernel
/// f_t = u0 + t u1 and cyclic ran(V). Retries (budget 100) until the
/// constructed family is cyclic; raises SearchExhausted otherwise. For n = 3
/// the seed 0 selects the canonical built-in instance.
std::pair<PerturbationFamily, PersistentFamilyWitness>
construct_persistent_family(int n, std::uint64_t seed,
                            const ToleranceConfig& cfg);

/// The canonical 3x3 instance with a persistent kernel: H0 has a rank-2
/// range whose H0-orbit still spans C^3 while the indefinite V feeds the
/// kernel line back for every coupling.
ComplexMatrix canonical_persistent_h0();
ComplexMatrix canonical_persistent_v();

}  // namespace pencilpersist
