#pragma once

namespace pencilpersist {

/// Numerical thresholds shared by every operation. Defaults target double
/// precision at dimensions up to ~100; any field can be overridden
/// programmatically or through PENCIL_PERSIST_TOL_* environment variables.
struct ToleranceConfig {
  double rank = 1e-10;       ///< relative rank / pivot threshold
  double eig = 1e-10;        ///< eigenresidual and PSD-clamping threshold
  double herm = 1e-12;       ///< Hermitian-symmetry gate
  double zero_poly = 1e-8;   ///< identically-zero-polynomial threshold
  double real = 1e-8;        ///< |Im t| below which t counts as real
  double cluster = 1e-8;     ///< root-clustering radius

  /// Throws InvalidInput unless every field lies strictly in (0, 1).
  void validate() const;
};

/// Defaults with PENCIL_PERSIST_TOL_{RANK,EIG,HERM,ZERO_POLY,REAL,CLUSTER}
/// applied on top. A set-but-unparsable variable is an InvalidInput error.
ToleranceConfig tolerances_from_env();

}  // namespace pencilpersist
