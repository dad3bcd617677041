#include "ingarch/cli.hpp"

#include "ingarch/chain_stats.hpp"
#include "ingarch/cmle.hpp"
#include "ingarch/forecast.hpp"
#include "ingarch/io.hpp"
#include "ingarch/likelihood.hpp"
#include "ingarch/parallel.hpp"
#include "ingarch/scoring.hpp"
#include "ingarch/simulator.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

namespace ingarch {

namespace fs = std::filesystem;

namespace {

template <typename Fn>
int guarded(std::ostream& log, Fn&& fn) {
  try {
    return fn();
  } catch (const DataError& e) {
    log << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const IoError& e) {
    log << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const NonstationarySpec& e) {
    log << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const SingularMatrix& e) {
    log << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const InvalidParameter& e) {
    log << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

std::string output_dir(const std::string& requested) {
  if (!requested.empty()) return requested;
  if (const char* env = std::getenv("INGARCH_OUTPUT_DIR")) return env;
  return ".";
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

std::span<const Count> training_part(const CountSeries& series, std::optional<std::size_t> split) {
  if (split && (*split < 1 || *split > series.size()))
    throw DataError("split index " + std::to_string(*split) + " outside the series of length " +
                    std::to_string(series.size()));
  return std::span<const Count>(series.values).first(split.value_or(series.size()));
}

std::string model_tag(Family family, const std::string& estimator) { return std::string(family_name(family)) + "_" + estimator; }

/// Posterior mean of the draws (the single row for a CMLE chain).
IngarchSpec point_estimate(const Chain& chain) {
  return IngarchSpec::from_packed(chain.family, chain.p, chain.q, chain.draws.colwise().mean().transpose());
}

std::string fit_report_cmle(const FitResult& fit, const FitArgs& args, std::size_t n_train) {
  std::ostringstream os;
  os << "model = " << family_display_name(args.family) << "(" << args.p << "," << args.q << ")\n";
  os << "estimator = cmle\n";
  os << "n_train = " << n_train << "\n";
  if (args.split) os << "split = " << *args.split << "\n";
  os << "loglik = " << format_double(fit.loglik, 12) << "\n";
  os << "aic = " << format_double(aic(fit.loglik, static_cast<int>(fit.estimates.num_params())), 12) << "\n";
  os << "converged = " << (fit.converged ? "true" : "false") << "\n";
  os << "iterations = " << fit.iterations << "\n";
  os << "hessian_cond = " << format_double(fit.hessian_cond, 6) << "\n";
  const auto names = parameter_names(args.family, args.p, args.q);
  const Vector est = fit.estimates.packed();
  for (std::size_t k = 0; k < names.size(); ++k) {
    os << names[k] << " = " << format_double(est(static_cast<Index>(k)), 10);
    if (fit.std_errors.size()) os << "  [se " << format_double(fit.std_errors(static_cast<Index>(k)), 6) << "]";
    os << "\n";
  }
  for (const auto& w : fit.warnings) os << "warning = " << w << "\n";
  return os.str();
}

std::string fit_report_hmc(const Chain& pooled, const std::vector<Chain>& chains, const FitArgs& args,
                           std::span<const Count> train) {
  const ChainSummary summary = chain_summary(pooled);
  const IngarchSpec mean_spec = point_estimate(pooled);
  const double ll = loglik(mean_spec, train);
  std::ostringstream os;
  os << "model = " << family_display_name(args.family) << "(" << args.p << "," << args.q << ")\n";
  os << "estimator = hmc\n";
  os << "n_train = " << train.size() << "\n";
  if (args.split) os << "split = " << *args.split << "\n";
  os << "chains = " << chains.size() << "\n";
  os << "iterations = " << args.hmc.iterations << "\n";
  os << "kept_draws_per_chain = " << chains.front().size() << "\n";
  os << "accept_rate = " << format_double(summary.accept_rate, 6) << "\n";
  os << "divergences = " << summary.divergences << "\n";
  os << "loglik_at_posterior_mean = " << format_double(ll, 12) << "\n";
  std::vector<Vector> per_chain;
  for (const auto& s : summary.params) {
    per_chain.clear();
    const auto k = static_cast<Index>(&s - summary.params.data());
    for (const auto& c : chains) per_chain.push_back(c.draws.col(k));
    os << s.name << " = " << format_double(s.mean, 10) << "  [sd " << format_double(s.sd, 6) << "]  q2.5 "
       << format_double(s.q025, 6) << "  q50 " << format_double(s.q50, 6) << "  q97.5 " << format_double(s.q975, 6)
       << "  ess " << format_double(s.ess, 6) << "  rhat " << format_double(split_rhat(per_chain), 6) << "\n";
  }
  for (std::size_t c = 0; c < chains.size(); ++c)
    if (chains[c].low_acceptance) os << "warning = chain " << c << " accepted fewer than 1% of proposals\n";
  return os.str();
}

struct ReplicateCell {
  std::string scenario;
  std::size_t n;
  std::string estimator;
  std::vector<Vector> estimates;
};

// Adds `--key value` for config entries whose flag is absent from the command line.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::string config_path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i] == "--config") config_path = args[i + 1];
  if (config_path.empty()) return args;
  std::vector<std::string> merged;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      ++i;
      continue;
    }
    merged.push_back(args[i]);
  }
  const auto kv = read_key_value_file(config_path);
  for (const auto& [key, value] : kv) {
    const std::string flag = "--" + key;
    if (std::find(merged.begin(), merged.end(), flag) != merged.end()) continue;
    if (value == "true") {
      merged.push_back(flag);
      continue;
    }
    if (value == "false") continue;
    merged.push_back(flag);
    std::istringstream is(value);
    std::string token;
    while (is >> token) merged.push_back(token);
  }
  return merged;
}

void add_hmc_options(CLI::App* app, HmcConfig& hmc) {
  app->add_option("--iterations", hmc.iterations, "HMC iterations per chain (warmup included)");
  app->add_option("--warmup-fraction", hmc.warmup_fraction, "fraction of iterations discarded as warmup");
  app->add_option("--leapfrog", hmc.leapfrog_steps, "leapfrog steps per proposal");
  app->add_option("--step-size", hmc.step_size, "initial leapfrog step size");
  app->add_option("--target-accept", hmc.target_accept, "dual-averaging target acceptance");
  app->add_option("--step-jitter", hmc.step_jitter, "relative jitter of the leapfrog step size");
  app->add_option_function<std::string>(
      "--mass",
      [&hmc](const std::string& m) {
        if (m == "identity") hmc.mass = MassMode::Identity;
        else if (m == "diag" || m == "diagonal") hmc.mass = MassMode::DiagonalAdapted;
        else throw CLI::ValidationError("--mass", "expected identity or diag");
      },
      "mass matrix: identity or diag (adapted)");
}

Family family_from_string(const std::string& s) { return parse_family(s); }

}  // namespace

int cmd_simulate(const SimulateArgs& args, std::ostream& log) {
  return guarded(log, [&] {
    if (args.out.empty()) throw InvalidParameter("simulate needs an output path (--out FILE)");
    IngarchSpec spec = args.scenario ? scenario_spec(parse_scenario(*args.scenario))
                                     : make_spec(args.family, args.alpha0, args.alpha, args.beta, args.disp);
    const SimResult sim = simulate(SimConfig{spec, args.n, args.burnin, args.seed});
    for (const auto& w : sim.warnings) log << "warning: " << w << "\n";
    const fs::path out(args.out);
    if (out.has_parent_path()) ensure_dir(out.parent_path().string());
    write_counts_csv(args.out, sim.series);
    write_sim_metadata(args.out + ".meta", spec, args.seed, args.n, args.burnin, args.scenario.value_or(""));
    log << "wrote " << args.out << " (" << sim.series.size() << " counts)\n";
    return kExitOk;
  });
}

int cmd_fit(const FitArgs& args, std::ostream& log) {
  return guarded(log, [&] {
    const CountSeries series = read_counts_csv(args.data);
    const auto train = training_part(series, args.split);
    const std::string dir = output_dir(args.out_dir);
    ensure_dir(dir);
    const std::string tag = model_tag(args.family, args.estimator);
    const std::string base = (fs::path(dir) / tag).string();

    if (args.estimator == "cmle") {
      FitOptions opts;
      opts.starts = args.starts;
      opts.seed = args.seed;
      const FitResult fit = cmle_fit(train, args.family, args.p, args.q, opts);
      if (!std::isfinite(fit.loglik)) throw NonstationarySpec("CMLE did not reach a finite log-likelihood");
      write_chain_csv(base + ".chain.csv", point_mass_chain(fit.estimates));
      write_text_file(base + ".report.txt", fit_report_cmle(fit, args, train.size()));
      for (const auto& w : fit.warnings) log << "warning: " << w << "\n";
    } else if (args.estimator == "hmc") {
      HmcConfig hmc = args.hmc;
      hmc.seed = args.seed;
      const PriorSpec priors =
          PriorSpec::defaults(default_transform(args.family, args.p, args.q).dim(), args.prior_sd);
      if (train.size() <= static_cast<std::size_t>(args.p + args.q + 2)) throw DataError("series too short for the model");
      const std::vector<Chain> chains = hmc_sample_chains(train, args.family, args.p, args.q, priors, hmc, args.chains);
      const Chain pooled = pool_chains(chains);
      write_chain_csv(base + ".chain.csv", pooled);
      write_text_file(base + ".report.txt", fit_report_hmc(pooled, chains, args, train));
      if (args.diagnostics) chain_diagnostics_export(pooled, base);
      for (std::size_t c = 0; c < chains.size(); ++c)
        if (chains[c].low_acceptance) log << "warning: chain " << c << " accepted fewer than 1% of proposals\n";
    } else {
      throw InvalidParameter("unknown estimator '" + args.estimator + "' (expected cmle or hmc)");
    }
    log << "wrote " << base << ".chain.csv and " << base << ".report.txt\n";
    return kExitOk;
  });
}

int cmd_forecast(const ForecastArgs& args, std::ostream& log) {
  return guarded(log, [&] {
    if (args.horizon < 1) throw InvalidParameter("forecast horizon must be >= 1");
    if (args.out.empty()) throw InvalidParameter("forecast needs an output path (--out FILE)");
    const CountSeries series = read_counts_csv(args.data);
    const Chain chain = read_chain_csv(args.chain);
    ForecastOptions opts;
    opts.seed = args.seed;
    if (args.mode == "sampled") opts.mode = ForecastMode::SampledTrajectory;
    else if (args.mode != "plugin") throw InvalidParameter("unknown forecast mode '" + args.mode + "'");

    std::vector<ForecastRow> rows;
    if (args.split) {
      training_part(series, args.split);
      if (*args.split + 1 < static_cast<std::size_t>(args.horizon))
        throw InvalidParameter("split too small for the requested horizon");
      rows = forecast_range(chain, series.values, *args.split, args.horizon, opts);
    } else {
      const PredictiveDist dist = predictive_pmf(chain, series.values, args.horizon, opts);
      ForecastRow row;
      row.t = series.size() + static_cast<std::size_t>(args.horizon);
      row.horizon = args.horizon;
      row.mean = forecast_mean(dist);
      row.median = forecast_median(dist);
      std::tie(row.lo95, row.hi95) = credible_interval(dist, kInterval95Alpha);
      row.hpd95 = hpd_set(dist, kInterval95Alpha);
      rows.push_back(row);
      if (!args.pmf_out.empty()) write_pmf_csv(args.pmf_out, dist);
    }
    const fs::path out(args.out);
    if (out.has_parent_path()) ensure_dir(out.parent_path().string());
    write_forecast_csv(args.out, rows, args.hpd);
    log << "wrote " << args.out << " (" << rows.size() << " rows)\n";
    return kExitOk;
  });
}

int cmd_score(const ScoreArgs& args, std::ostream& log) {
  return guarded(log, [&] {
    if (args.fits.empty()) throw InvalidParameter("score needs --fits DIR");
    const CountSeries series = read_counts_csv(args.data);
    const auto train = training_part(series, args.split);
    std::vector<fs::path> chain_files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(args.fits, ec)) {
      const std::string name = entry.path().filename().string();
      if (name.size() > 10 && name.substr(name.size() - 10) == ".chain.csv") chain_files.push_back(entry.path());
    }
    if (ec) throw IoError("cannot list " + args.fits + ": " + ec.message());
    if (chain_files.empty()) throw DataError("no *.chain.csv files in " + args.fits);
    std::sort(chain_files.begin(), chain_files.end());

    std::vector<ScoreReport> reports;
    for (const auto& path : chain_files) {
      const std::string file = path.filename().string();
      const std::string model = file.substr(0, file.size() - 10);
      const Chain chain = read_chain_csv(path.string());
      const IngarchSpec point = point_estimate(chain);

      ScoreReport r;
      r.model = model;
      r.loglik = loglik(point, train);
      r.k = static_cast<int>(point.num_params());
      r.aic = aic(r.loglik, r.k);
      r.neg_mean_log_cpo = cpo(chain, train).neg_mean_log_cpo;
      r.mean_crps = mean_crps(chain, train);
      r.pit_bins = pit_histogram(pit_intervals(chain, train), args.pit_bins);
      r.residual_acf = pearson_residual_acf(train, lambda_filter(point, train), point.family, point.disp, args.max_lag).acf;
      if (args.split && *args.split < series.size()) {
        const auto rows = forecast_range(chain, series.values, *args.split, args.horizon);
        write_forecast_csv((fs::path(args.fits) / (model + ".forecast.csv")).string(), rows, true);
        std::vector<double> means, medians;
        for (const auto& row : rows) {
          means.push_back(row.mean);
          medians.push_back(static_cast<double>(row.median));
        }
        const auto aligned = std::span<const Count>(series.values).subspan(*args.split);
        r.prmse = prmse(aligned, means);
        r.pmad = pmad(aligned, medians);
      }
      write_text_file((fs::path(args.fits) / (model + ".score.txt")).string(), format_score_report(r));
      reports.push_back(r);
      log << "scored " << model << "\n";
    }

    const std::string out = args.out.empty() ? (fs::path(args.fits) / "comparison.csv").string() : args.out;
    std::string csv = score_csv_header() + "\n";
    for (const auto& r : reports) csv += score_csv_row(r) + "\n";
    write_text_file(out, csv);
    log << "wrote " << out << " (" << reports.size() << " models)\n";
    return kExitOk;
  });
}

int cmd_replicate(const ReplicateArgs& args, std::ostream& log) {
  return guarded(log, [&] {
    if (args.reps < 1) throw InvalidParameter("--reps must be >= 1");
    const std::string out = args.out.empty() ? (fs::path(output_dir("")) / "replicate.csv").string() : args.out;
    for (const auto& e : args.estimators)
      if (e != "cmle" && e != "hmc") throw InvalidParameter("unknown estimator '" + e + "'");

    std::vector<ReplicateCell> cells;
    for (const auto& sc : args.scenarios)
      for (std::size_t n : args.sizes)
        for (const auto& e : args.estimators) cells.push_back({scenario_name(parse_scenario(sc)), n, e, {}});

    for (auto& cell : cells) {
      const IngarchSpec truth = scenario_spec(parse_scenario(cell.scenario));
      cell.estimates.resize(static_cast<std::size_t>(args.reps));
      // The data of replication k depend only on (seed, scenario, n, k), so every estimator
      // sees the same series.
      const std::uint64_t cell_seed =
          derive_stream_seed(args.seed, static_cast<std::uint64_t>(parse_scenario(cell.scenario)) * 1000003ULL + cell.n);
      parallel_for(static_cast<std::size_t>(args.reps), [&](std::size_t k) {
        const SimResult sim = simulate(SimConfig{truth, cell.n, args.burnin, derive_stream_seed(cell_seed, k)});
        if (cell.estimator == "cmle") {
          FitOptions opts;
          opts.seed = derive_stream_seed(cell_seed, k);
          opts.compute_std_errors = false;
          cell.estimates[k] = cmle_fit(sim.series.values, truth.family, truth.p(), truth.q(), opts).estimates.packed();
        } else {
          HmcConfig hmc = args.hmc;
          hmc.seed = derive_stream_seed(cell_seed, k);
          const PriorSpec priors = PriorSpec::defaults(truth.num_params());
          std::vector<Chain> chains;
          for (int c = 0; c < args.chains; ++c)
            chains.push_back(hmc_sample(sim.series.values, truth.family, truth.p(), truth.q(), priors, hmc,
                                        static_cast<std::uint64_t>(c)));
          cell.estimates[k] = pool_chains(chains).draws.colwise().mean().transpose();
        }
      });
      log << "scenario " << cell.scenario << " n=" << cell.n << " " << cell.estimator << ": " << args.reps
          << " replications done\n";
    }

    std::ostringstream csv;
    csv << "scenario,n,estimator,parameter,true,avg_est,mse,rmse,abs_bias\n";
    for (const auto& cell : cells) {
      const IngarchSpec truth = scenario_spec(parse_scenario(cell.scenario));
      const Vector true_v = truth.packed();
      const auto names = parameter_names(truth.family, truth.p(), truth.q());
      for (std::size_t k = 0; k < names.size(); ++k) {
        const auto kk = static_cast<Index>(k);
        double sum = 0.0, sq = 0.0;
        for (const auto& est : cell.estimates) {
          sum += est(kk);
          sq += (est(kk) - true_v(kk)) * (est(kk) - true_v(kk));
        }
        const double reps = static_cast<double>(cell.estimates.size());
        const double avg = sum / reps;
        const double mse = sq / reps;
        csv << cell.scenario << "," << cell.n << "," << cell.estimator << "," << names[k] << ","
            << format_double(true_v(kk)) << "," << format_double(avg) << "," << format_double(mse) << ","
            << format_double(std::sqrt(mse)) << "," << format_double(std::abs(avg - true_v(kk))) << "\n";
      }
    }
    const fs::path out_path(out);
    if (out_path.has_parent_path()) ensure_dir(out_path.parent_path().string());
    write_text_file(out, csv.str());
    log << "wrote " << out << "\n";
    return kExitOk;
  });
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> raw(argv + 1, argv + argc);
  try {
    raw = merge_config(raw);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }

  CLI::App app{"INGARCH count time series: simulation, estimation, forecasting and scoring"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ingarch 0.1.0");
  app.add_option("--config", "flat key = value file; every flag may appear as a key");

  SimulateArgs sim;
  std::string sim_family = "noge";
  auto* s = app.add_subcommand("simulate", "simulate a count series");
  s->add_option("--scenario", sim.scenario, "preset scenario I, II, III or IV (NoGe-INGARCH(1,1))");
  s->add_option("--family", sim_family, "noge, gp, nb or poisson");
  s->add_option("--alpha0", sim.alpha0, "intercept alpha0");
  s->add_option("--alpha", sim.alpha, "alpha_1..alpha_p")->expected(1, 64);
  s->add_option("--beta", sim.beta, "beta_1..beta_q")->expected(0, 64);
  s->add_option("--disp", sim.disp, "dispersion: phi, kappa or n");
  s->add_option("--n", sim.n, "number of observations")->check(CLI::PositiveNumber);
  s->add_option("--burnin", sim.burnin, "discarded prefix length");
  s->add_option("--seed", sim.seed, "random seed");
  s->add_option("--out", sim.out, "output CSV path")->required();

  FitArgs fit;
  std::string fit_family = "noge";
  auto* f = app.add_subcommand("fit", "estimate a model by CMLE or HMC");
  f->add_option("--data", fit.data, "input CSV with a count column")->required();
  f->add_option("--family", fit_family, "noge, gp, nb or poisson");
  f->add_option("--p", fit.p, "order p")->check(CLI::PositiveNumber);
  f->add_option("--q", fit.q, "order q")->check(CLI::NonNegativeNumber);
  f->add_option("--split", fit.split, "fit on the first SPLIT observations");
  f->add_option("--estimator", fit.estimator, "cmle or hmc")->check(CLI::IsMember({"cmle", "hmc"}));
  f->add_option("--seed", fit.seed, "random seed");
  f->add_option("--chains", fit.chains, "HMC chains")->check(CLI::PositiveNumber);
  f->add_option("--prior-sd", fit.prior_sd, "sd of the normal priors on transformed coordinates");
  f->add_option("--starts", fit.starts, "CMLE multi-start count")->check(CLI::PositiveNumber);
  f->add_flag("!--no-diagnostics", fit.diagnostics, "skip trace/histogram/ACF exports");
  f->add_option("--out-dir", fit.out_dir, "output directory (default: $INGARCH_OUTPUT_DIR or .)");
  add_hmc_options(f, fit.hmc);

  ForecastArgs fc;
  auto* c = app.add_subcommand("forecast", "predictive forecasts from a fitted chain");
  c->add_option("--data", fc.data, "input CSV with a count column")->required();
  c->add_option("--chain", fc.chain, "chain CSV written by fit")->required();
  c->add_option("--split", fc.split, "forecast every observation after the first SPLIT");
  c->add_option("--horizon", fc.horizon, "forecast horizon h");
  c->add_flag("--hpd", fc.hpd, "add the 95% HPD set column");
  c->add_option("--mode", fc.mode, "plugin or sampled")->check(CLI::IsMember({"plugin", "sampled"}));
  c->add_option("--seed", fc.seed, "random seed for sampled trajectories");
  c->add_option("--pmf-out", fc.pmf_out, "write the predictive pmf (x,prob) when forecasting past the end");
  c->add_option("--out", fc.out, "output CSV path")->required();

  ScoreArgs sc;
  auto* r = app.add_subcommand("score", "model adequacy and predictive accuracy of fitted models");
  r->add_option("--data", sc.data, "input CSV with a count column")->required();
  r->add_option("--split", sc.split, "training length; the rest is the test set");
  r->add_option("--fits", sc.fits, "directory with *.chain.csv files")->required();
  r->add_option("--horizon", sc.horizon, "forecast horizon for PRMSE/PMAD");
  r->add_option("--pit-bins", sc.pit_bins, "PIT histogram bins");
  r->add_option("--max-lag", sc.max_lag, "residual ACF lags");
  r->add_option("--out", sc.out, "comparison CSV (default <fits>/comparison.csv)");

  ReplicateArgs rep;
  auto* p = app.add_subcommand("replicate", "simulation study over scenarios and sample sizes");
  p->add_option("--scenario", rep.scenarios, "scenarios (I II III IV)")->expected(1, 4);
  p->add_option("--n", rep.sizes, "sample sizes")->expected(1, 16);
  p->add_option("--reps", rep.reps, "replications per cell");
  p->add_option("--estimator", rep.estimators, "cmle and/or hmc")->expected(1, 2);
  p->add_option("--seed", rep.seed, "random seed");
  p->add_option("--burnin", rep.burnin, "simulation burn-in");
  p->add_option("--chains", rep.chains, "HMC chains per replication");
  p->add_option("--out", rep.out, "output CSV (default $INGARCH_OUTPUT_DIR/replicate.csv)");
  add_hmc_options(p, rep.hmc);

  std::vector<std::string> reversed(raw.rbegin(), raw.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*s) {
      sim.family = family_from_string(sim_family);
      return cmd_simulate(sim, std::cerr);
    }
    if (*f) {
      fit.family = family_from_string(fit_family);
      return cmd_fit(fit, std::cerr);
    }
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (*c) return cmd_forecast(fc, std::cerr);
  if (*r) return cmd_score(sc, std::cerr);
  if (*p) return cmd_replicate(rep, std::cerr);
  return kExitUsage;
}

}  // namespace ingarch
