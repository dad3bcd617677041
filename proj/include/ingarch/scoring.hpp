#pragma once

// Model adequacy and predictive accuracy: AIC, CPO, CRPS, nonrandomised PIT histograms,
// Pearson-residual ACF, PRMSE and PMAD.

#include "ingarch/forecast.hpp"
#include "ingarch/hmc.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ingarch {

/// 2k - 2 loglik.
double aic(double loglik, int k);

struct CpoResult {
  Vector log_cpo;  ///< log CPO_t per observation
  double neg_mean_log_cpo = 0.0;
  bool degenerate = false;  ///< some per-draw likelihood was zero
};

/// CPO_t = ((1/M) sum_m 1 / P(x_t | Theta_m, F_{t-1}))^-1 via log-sum-exp over the draws.
CpoResult cpo(const Chain& chain, std::span<const Count> x, const InitPolicy& init = {});
/// The same from a draws x observations matrix of log-likelihood terms.
CpoResult cpo_from_logliks(const Matrix& loglik_terms);
/// Direct (linear-space) harmonic mean, for comparison.
Vector cpo_linear(const Matrix& loglik_terms);

/// sum_{j < x} F(j)^2 + sum_{j = x}^{n} (F(j) - 1)^2 with n the last support point. Zero for a
/// point mass at x.
double crps(const PredictiveDist& dist, Count x);
double crps_from_cdf(const Vector& cdf, Count x);

/// Mean one-step in-sample CRPS, the predictive at each t averaged over the chain (thinned to
/// at most `max_draws`).
double mean_crps(const Chain& chain, std::span<const Count> x, const ForecastOptions& opts = {},
                 Index max_draws = 1000);

/// Each observation spreads a uniform mass over [F_t(x_t - 1), F_t(x_t)]; returns the J bin
/// masses of the average.
Vector pit_histogram(const std::vector<std::pair<double, double>>& intervals, int bins = 10);
/// PIT intervals from a one-step predictive averaged over the chain (thinned to max_draws).
std::vector<std::pair<double, double>> pit_intervals(const Chain& chain, std::span<const Count> x,
                                                     const ForecastOptions& opts = {}, Index max_draws = 1000);
/// PIT intervals under a single fitted spec.
std::vector<std::pair<double, double>> pit_intervals(const IngarchSpec& spec, std::span<const Count> x,
                                                     const InitPolicy& init = {});

struct ResidualAcf {
  Vector residuals;
  Vector acf;  ///< lags 0..max_lag; empty when the residuals are constant
  bool degenerate = false;
};

/// r_t = (x_t - E[X_t | F]) / sqrt(Var[X_t | F]) with the family conditional variance.
ResidualAcf pearson_residual_acf(std::span<const Count> x, const Vector& lambda, Family family, double disp,
                                 int max_lag = 20);

double prmse(std::span<const Count> test, const std::vector<double>& mean_forecasts);
double pmad(std::span<const Count> test, const std::vector<double>& median_forecasts);

struct ScoreReport {
  std::string model;
  double loglik = 0.0;
  int k = 0;
  double aic = 0.0;
  double neg_mean_log_cpo = 0.0;
  double mean_crps = 0.0;
  Vector pit_bins;
  Vector residual_acf;
  std::optional<double> prmse;
  std::optional<double> pmad;
};

/// Flat key = value text.
std::string format_score_report(const ScoreReport& report);
/// CSV header and row for a cross-model comparison table.
std::string score_csv_header();
std::string score_csv_row(const ScoreReport& report);

}  // namespace ingarch
