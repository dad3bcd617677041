#pragma once

// Hamiltonian Monte Carlo with a fixed number of leapfrog steps, dual-averaging step-size
// adaptation and a windowed diagonal mass-matrix estimate during warmup.

#include "ingarch/ingarch.hpp"
#include "ingarch/posterior.hpp"
#include "ingarch/rng.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ingarch {

enum class MassMode { Identity, DiagonalAdapted };

struct HmcConfig {
  int iterations = 25000;
  double warmup_fraction = 0.5;
  int leapfrog_steps = 20;
  double step_size = 0.1;  ///< initial value; adapted during warmup
  MassMode mass = MassMode::DiagonalAdapted;
  double target_accept = 0.8;
  std::uint64_t seed = 1;
  /// Each iteration scales eps by a uniform factor in [1 - jitter, 1 + jitter]; this breaks
  /// the periodic trajectories a fixed L can fall into.
  double step_jitter = 0.2;

  int warmup() const { return static_cast<int>(iterations * warmup_fraction); }
  void check() const;
};

struct LeapfrogResult {
  Vector position;
  Vector momentum;
  Vector grad;  ///< gradient of the log density at `position`
  double log_density = 0.0;
  bool divergent = false;  ///< a non-finite density or gradient was met mid-trajectory
};

/// L steps of half-kick / drift / half-kick for H = -log p(z) + v' M^-1 v / 2.
/// `inv_mass` is the diagonal of M^-1 (identity when empty).
LeapfrogResult leapfrog(const Vector& position, const Vector& momentum, double eps, int L, const LogDensityFn& fn,
                        const Vector& inv_mass = {});

/// Same, reusing the log density and gradient already known at `position`.
LeapfrogResult leapfrog(const Vector& position, const Vector& momentum, const Vector& grad, double eps, int L,
                        const LogDensityFn& fn, const Vector& inv_mass);

struct Chain {
  std::vector<std::string> names;
  Family family = Family::NoGe;
  int p = 0;
  int q = 0;
  Matrix draws;               ///< kept iterations x dim, constrained scale
  Matrix unconstrained_draws; ///< kept iterations x dim
  Vector energies;            ///< Hamiltonian of each kept state
  Vector log_density;         ///< log density of each kept state
  std::vector<std::uint8_t> accepted;
  double accept_rate = 0.0;
  int divergence_count = 0;
  double step_size = 0.0;
  Vector inv_mass;
  bool low_acceptance = false;  ///< accept_rate < 0.01

  Index size() const { return draws.rows(); }
  Index dim() const { return draws.cols(); }
  IngarchSpec spec(Index row) const { return IngarchSpec::from_packed(family, p, q, draws.row(row).transpose()); }
};

/// Sample an arbitrary log density on R^k from `z0`, using generator stream `stream` of
/// config.seed. The chain's constrained and unconstrained draws coincide.
Chain run_hmc(const LogDensityFn& fn, const Vector& z0, const HmcConfig& config, std::uint64_t stream = 0);

/// Posterior sampling for an INGARCH model from a jittered moment-matched start.
Chain hmc_sample(std::span<const Count> x, Family family, int p, int q, const PriorSpec& priors,
                 const HmcConfig& config, std::uint64_t stream = 0, const InitPolicy& init = {});

/// `chains` independent posterior chains (streams 0..chains-1) run on worker threads.
std::vector<Chain> hmc_sample_chains(std::span<const Count> x, Family family, int p, int q, const PriorSpec& priors,
                                     const HmcConfig& config, int chains, const InitPolicy& init = {});

/// Concatenate chains of the same model.
Chain pool_chains(const std::vector<Chain>& chains);

}  // namespace ingarch
