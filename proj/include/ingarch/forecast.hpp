#pragma once

// Posterior predictive distribution of X_{t+h} given X_1..X_t, averaged over posterior draws,
// with point forecasts, quantile intervals and HPD sets.

#include "ingarch/hmc.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ingarch {

/// Predictive pmf on 0..x_max.
struct PredictiveDist {
  Vector probs;
  int h = 1;
  double tail_eps = 1e-8;
  bool capped = false;  ///< support hit the x_max cap before the tail bound was met

  Count x_max() const { return static_cast<Count>(probs.size()) - 1; }
  double mass() const { return probs.sum(); }
  double cdf(Count x) const;
  double prob(Count x) const { return x >= 0 && x <= x_max() ? probs(static_cast<Index>(x)) : 0.0; }
};

enum class ForecastMode {
  PlugIn,             ///< future counts and means replaced by their posterior averages
  SampledTrajectory,  ///< future counts simulated per draw and the pmfs averaged
};

struct ForecastOptions {
  double tail_eps = 1e-8;
  Count x_max_cap = 100000;
  /// Bound on (active components x support points) per predictive; heavy-tailed mixtures
  /// that exhaust it stop early with `capped` set.
  double max_terms = 2e7;
  ForecastMode mode = ForecastMode::PlugIn;
  int trajectories = 200;  ///< per draw, SampledTrajectory only
  std::uint64_t seed = 1;
  InitPolicy init = {};
};

/// A one-row chain holding `spec`: the predictive then equals the fitted conditional law.
Chain point_mass_chain(const IngarchSpec& spec);

/// lambda_t under every draw of `chain` over the whole series (draws x n).
Matrix lambda_paths(const Chain& chain, std::span<const Count> x, const InitPolicy& init = {});

/// Predictive of X_{t+h} with t = x.size(). Throws InvalidParameter for an empty chain or h < 1.
PredictiveDist predictive_pmf(const Chain& chain, std::span<const Count> x, int h, const ForecastOptions& opts = {});

/// Predictive of the observation at 0-based index origin + h - 1, conditioning on the first
/// `origin` observations of `x`, with `paths` from lambda_paths over the same series.
PredictiveDist predictive_at(const Chain& chain, const Matrix& paths, std::span<const Count> x, Index origin, int h,
                             const ForecastOptions& opts = {});

double forecast_mean(const PredictiveDist& dist);
/// Smallest x with cdf(x) >= 1/2.
Count forecast_median(const PredictiveDist& dist);
/// Smallest x with cdf(x) >= prob.
Count forecast_quantile(const PredictiveDist& dist, double prob);
/// Tail level of the reported 95% interval. The interval is (quantile(alpha), quantile(1 - alpha))
/// and, by that convention, alpha itself is the nominal miss rate.
inline constexpr double kInterval95Alpha = 0.05;

/// (quantile(alpha), quantile(1 - alpha)); requires 0 < alpha < 0.5.
std::pair<Count, Count> credible_interval(const PredictiveDist& dist, double alpha);
/// Points taken in decreasing probability (ties: smaller x first) until the mass reaches
/// 1 - alpha; returned in ascending order.
std::vector<Count> hpd_set(const PredictiveDist& dist, double alpha);

struct ForecastRow {
  std::size_t t = 0;  ///< 1-based time index of the forecast target
  int horizon = 1;
  double mean = 0.0;
  Count median = 0;
  Count lo95 = 0;
  Count hi95 = 0;
  std::vector<Count> hpd95;
  Count observed = -1;  ///< -1 beyond the end of the series
};

/// h-step forecasts for each target index in [first_target, x.size()), conditioning on the
/// observations up to target - h.
std::vector<ForecastRow> forecast_range(const Chain& chain, std::span<const Count> x, std::size_t first_target, int h,
                                        const ForecastOptions& opts = {});

}  // namespace ingarch
