#pragma once

// Priors and the log-posterior on the unconstrained scale.
//
// Each transformed coordinate z_k carries a Normal(mean_k, sd_k^2) prior. For alpha0 (z = log
// alpha0) this is the lognormal prior on alpha0; for the logit coordinates it is the normal
// prior on alpha', beta', phi'. The unconstrained log density is therefore
//   loglik(theta(z)) + sum_k log N(z_k; mean_k, sd_k),
// which equals loglik + log p0(theta) + log|d theta / d z| for the implied constrained prior p0.

#include "ingarch/ingarch.hpp"
#include "ingarch/transform.hpp"

#include <functional>
#include <span>
#include <vector>

namespace ingarch {

struct PriorSpec {
  Vector mean;
  Vector sd;
  /// Adds a -inf barrier where sum(alpha) + sum(beta) >= 1.
  bool strict_stationarity = false;

  /// Normal(0, 10^2) on every transformed coordinate.
  static PriorSpec defaults(Index dim, double sd = 10.0);
  void check(Index dim) const;
};

double normal_logpdf(double z, double mean, double sd);

/// sum_k log N(z_k; mean_k, sd_k).
double log_prior_unconstrained(const PriorSpec& priors, const Vector& z);

/// Density of the implied prior on the constrained parameters (change of variables).
double log_prior_constrained(const PriorSpec& priors, const TransformSpec& ts, const Vector& theta);

/// Log density plus gradient on R^k; value -inf marks an impossible point.
using LogDensityFn = std::function<double(const Vector& z, Vector& grad)>;

class Posterior {
 public:
  Posterior(std::span<const Count> series, Family family, int p, int q, PriorSpec priors,
            InitPolicy init = {});

  const TransformSpec& transform() const { return ts_; }
  const PriorSpec& priors() const { return priors_; }
  Index dim() const { return ts_.dim(); }

  double log_density(const Vector& z) const;
  double log_density(const Vector& z, Vector& grad) const;

  LogDensityFn as_function() const;

 private:
  std::vector<Count> series_;
  TransformSpec ts_;
  PriorSpec priors_;
  InitPolicy init_;
};

}  // namespace ingarch
