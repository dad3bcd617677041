#pragma once

// Sample paths of an INGARCH process and the four preset NoGe-INGARCH(1,1) scenarios.

#include "ingarch/ingarch.hpp"
#include "ingarch/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ingarch {

struct SimConfig {
  IngarchSpec spec;
  std::size_t n = 0;
  std::size_t burnin = 500;
  std::uint64_t seed = 1;
};

struct SimResult {
  CountSeries series;
  Vector lambda;  ///< lambda_t aligned with series.values
  std::vector<std::string> warnings;
};

/// Simulate n observations after discarding `burnin`. The recursion starts from the
/// stationary pre-sample value. Deterministic given the seed. Throws InvalidParameter for an
/// invalid spec; a spec that is not mean-stationary only adds a warning.
SimResult simulate(const SimConfig& config);

/// Same as simulate() but drawing from a caller-owned generator.
SimResult simulate(const IngarchSpec& spec, std::size_t n, std::size_t burnin, Rng& rng);

enum class ScenarioId { I, II, III, IV };

ScenarioId parse_scenario(const std::string& tag);
std::string scenario_name(ScenarioId id);

/// NoGe-INGARCH(1,1) with (alpha0, alpha1, beta1, phi):
/// I (1, 0.2, 0.1, 0.05), II (1, 0.3, 0.1, 0.05), III (1, 0.4, 0.2, 0.55), IV (1, 0.4, 0.2, 0.35).
IngarchSpec scenario_spec(ScenarioId id);

}  // namespace ingarch
