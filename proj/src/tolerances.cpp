#include "tolerances.hpp"

#include "types.hpp"

#include <cstdlib>
#include <string>

namespace pencilpersist {

namespace {

void check_field(double value, const char* name) {
  if (!(value > 0.0) || !(value < 1.0))
    fail(ErrorCode::InvalidInput,
         std::string("tolerance ") + name + " must lie strictly in (0, 1)");
}

void apply_env(double& field, const char* var) {
  const char* text = std::getenv(var);
  if (text == nullptr || *text == '\0') return;
  char* end = nullptr;
  const double value = std::strtod(text, &end);
  if (end == text || *end != '\0')
    fail(ErrorCode::InvalidInput,
         std::string(var) + ": cannot parse '" + text + "' as a number");
  field = value;
}

}  // namespace

void ToleranceConfig::validate() const {
  check_field(rank, "rank");
  check_field(eig, "eig");
  check_field(herm, "herm");
  check_field(zero_poly, "zero_poly");
  check_field(real, "real");
  check_field(cluster, "cluster");
}

ToleranceConfig tolerances_from_env() {
  ToleranceConfig cfg;
  apply_env(cfg.rank, "PENCIL_PERSIST_TOL_RANK");
  apply_env(cfg.eig, "PENCIL_PERSIST_TOL_EIG");
  apply_env(cfg.herm, "PENCIL_PERSIST_TOL_HERM");
  apply_env(cfg.zero_poly, "PENCIL_PERSIST_TOL_ZERO_POLY");
  apply_env(cfg.real, "PENCIL_PERSIST_TOL_REAL");
  apply_env(cfg.cluster, "PENCIL_PERSIST_TOL_CLUSTER");
  cfg.validate();
  return cfg;
}

}  // namespace pencilpersist
