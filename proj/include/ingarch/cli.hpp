#pragma once

// Command implementations behind the `ingarch` executable. Each returns a process exit code:
// 0 success (possibly with warnings), 2 usage error, 3 data error, 4 numeric failure.

#include "ingarch/hmc.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ingarch {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumeric = 4;

struct SimulateArgs {
  std::optional<std::string> scenario;
  Family family = Family::NoGe;
  double alpha0 = 1.0;
  std::vector<double> alpha{0.2};
  std::vector<double> beta{0.1};
  double disp = 0.05;
  std::size_t n = 500;
  std::size_t burnin = 500;
  std::uint64_t seed = 1;
  std::string out;  ///< CSV path; metadata goes to <out>.meta
};

struct FitArgs {
  std::string data;
  Family family = Family::NoGe;
  int p = 1;
  int q = 1;
  std::optional<std::size_t> split;  ///< fit on the first `split` observations
  std::string estimator = "cmle";    ///< cmle | hmc
  std::uint64_t seed = 1;
  HmcConfig hmc;
  int chains = 4;
  double prior_sd = 10.0;
  int starts = 5;
  bool diagnostics = true;
  std::string out_dir;
};

struct ForecastArgs {
  std::string data;
  std::string chain;
  std::optional<std::size_t> split;  ///< forecast every test point; otherwise beyond the end
  int horizon = 1;
  bool hpd = false;
  std::string mode = "plugin";  ///< plugin | sampled
  std::uint64_t seed = 1;
  std::string pmf_out;  ///< predictive pmf dump for the last row
  std::string out;
};

struct ScoreArgs {
  std::string data;
  std::optional<std::size_t> split;
  std::string fits;  ///< directory holding <model>.chain.csv files
  int horizon = 1;
  int pit_bins = 10;
  int max_lag = 20;
  std::string out;  ///< comparison CSV; defaults to <fits>/comparison.csv
};

struct ReplicateArgs {
  std::vector<std::string> scenarios{"I"};
  std::vector<std::size_t> sizes{50, 200, 500};
  int reps = 100;
  std::vector<std::string> estimators{"cmle"};
  std::uint64_t seed = 1;
  std::size_t burnin = 500;
  HmcConfig hmc;
  int chains = 1;
  std::string out;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& log);
int cmd_fit(const FitArgs& args, std::ostream& log);
int cmd_forecast(const ForecastArgs& args, std::ostream& log);
int cmd_score(const ScoreArgs& args, std::ostream& log);
int cmd_replicate(const ReplicateArgs& args, std::ostream& log);

/// Parses argv (plus an optional --config key = value file and the INGARCH_OUTPUT_DIR
/// default) and dispatches to the commands above.
int run_cli(int argc, const char* const* argv);

}  // namespace ingarch
