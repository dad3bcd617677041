#include "ingarch/likelihood.hpp"

#include <cmath>

namespace ingarch {

namespace {

void require_noge(const IngarchSpec& spec) {
  if (spec.family != Family::NoGe) throw InvalidParameter("expected a NoGe-INGARCH spec");
  validate_bounds(spec);
}

}  // namespace

double noge_loglik(const IngarchSpec& spec, std::span<const Count> x, const InitPolicy& init) {
  require_noge(spec);
  return loglik(spec, x, init);
}

Vector noge_loglik_grad(const IngarchSpec& spec, std::span<const Count> x, const InitPolicy& init) {
  // Zero alpha_i / beta_j are admitted: the right-hand derivative is still well defined.
  require_noge(spec);
  const auto result = loglik_with_grad(spec, x, init);
  if (!std::isfinite(result.value)) throw InvalidParameter("log-likelihood is -inf at the requested point");
  return result.grad;
}

double family_loglik(const IngarchSpec& spec, std::span<const Count> x, const InitPolicy& init) {
  validate_bounds(spec);
  return loglik(spec, x, init);
}

}  // namespace ingarch
