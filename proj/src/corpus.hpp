#pragma once

#include "pencil.hpp"
#include "persistence.hpp"
#include "tolerances.hpp"
#include "types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pencilpersist {

/// Expected classification for a corpus fixture. Roots, when present, must be
/// reproduced within 1e-8.
struct ExpectedOutcome {
  ExceptionalKind kind = ExceptionalKind::Empty;
  std::vector<RootMultiplicity> roots;
  std::optional<bool> cyclic;
  std::optional<bool> v_indefinite;
  std::optional<bool> v_psd;
  std::optional<int> kernel_dim;
  std::optional<double> max_eigenvalue_modulus;  ///< for nilpotent fixtures
};

/// Built-in instance: either a family (h0, v, lambda0) run through analyze,
/// or a raw pencil (a, b) run through exceptional_set.
struct CorpusInstance {
  std::string id;
  std::string provenance;
  std::string notes;
  std::optional<ComplexMatrix> h0, v;
  double lambda0 = 0.0;
  std::optional<ComplexMatrix> a, b;
  ExpectedOutcome expected;

  bool is_family() const { return h0.has_value(); }
};

struct CorpusOutcome {
  std::string id;
  bool pass = false;
  std::optional<PersistenceReport> report;
  std::optional<ExceptionalSet> pencil_result;
  std::string detail;
};

const std::vector<CorpusInstance>& corpus_instances();

std::vector<std::string> corpus_list();

const CorpusInstance& corpus_find(const std::string& id);

/// Runs the fixture and compares against its expected outcome. Fixture paths
/// contain no unseeded randomness, so reports are identical across runs.
CorpusOutcome corpus_run(const std::string& id, const ToleranceConfig& cfg);

/// One verified counterexample family from the hunt campaign.
struct HuntFamily {
  std::uint64_t trial_seed = 0;
  PerturbationFamily family;
  PersistentFamilyWitness witness;
  PersistenceReport report;
};

struct HuntResult {
  int dim = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<HuntFamily> families;

  int successes() const { return static_cast<int>(families.size()); }
};

/// Runs `trials` seeded construction attempts (trial seed = seed + index) and
/// keeps only families that an independent analyze pass confirms as
/// persistent (AllComplex), cyclic and indefinite. Raises SearchExhausted
/// when no trial succeeds.
HuntResult hunt(int dim, int trials, std::uint64_t seed,
                const ToleranceConfig& cfg);

}  // namespace pencilpersist
