#pragma once

// Posterior summaries, effective sample size, autocorrelation, split R-hat and export of the
// per-parameter trace / histogram / ACF tables.

#include "ingarch/hmc.hpp"

#include <string>
#include <vector>

namespace ingarch {

/// Sample autocorrelation at lags 0..max_lag (biased 1/n autocovariance). Empty when the
/// series is constant.
Vector sample_acf(const Vector& x, int max_lag);

/// ESS by Geyer's initial monotone sequence estimator. NaN for a constant series.
double effective_sample_size(const Vector& x);

/// Potential scale reduction on split halves of every chain.
double split_rhat(const std::vector<Vector>& chains);

struct ParamSummary {
  std::string name;
  double mean = 0.0;
  double sd = 0.0;
  double q025 = 0.0;
  double q50 = 0.0;
  double q975 = 0.0;
  double ess = 0.0;
  bool degenerate = false;  ///< constant draws: ESS undefined
};

struct ChainSummary {
  std::vector<ParamSummary> params;
  double accept_rate = 0.0;
  Index draws = 0;
  int divergences = 0;
};

/// Sample quantile by linear interpolation between order statistics.
double quantile(Vector x, double prob);

ChainSummary chain_summary(const Chain& chain);

struct DiagnosticsFiles {
  std::vector<std::string> trace;
  std::vector<std::string> histogram;
  std::vector<std::string> acf;
};

/// Writes <prefix>_<param>_trace.csv (iteration,value), <prefix>_<param>_hist.csv
/// (left,right,count) and <prefix>_<param>_acf.csv (lag,acf for lags 0..50).
DiagnosticsFiles chain_diagnostics_export(const Chain& chain, const std::string& prefix, int bins = 40);

}  // namespace ingarch
