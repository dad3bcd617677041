#include "ingarch/scoring.hpp"

#include "ingarch/chain_stats.hpp"
#include "ingarch/conditional.hpp"
#include "ingarch/io.hpp"
#include "ingarch/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ingarch {

namespace {

/// Every ceil(M / max_draws)-th row of the chain.
Chain thin(const Chain& chain, Index max_draws) {
  if (max_draws <= 0 || chain.size() <= max_draws) return chain;
  const Index stride = (chain.size() + max_draws - 1) / max_draws;
  Chain out = chain;
  const Index rows = (chain.size() + stride - 1) / stride;
  out.draws.resize(rows, chain.dim());
  out.unconstrained_draws.resize(rows, chain.dim());
  for (Index r = 0; r < rows; ++r) {
    out.draws.row(r) = chain.draws.row(r * stride);
    out.unconstrained_draws.row(r) = chain.unconstrained_draws.row(r * stride);
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

double aic(double loglik, int k) {
  if (k < 1) throw InvalidParameter("AIC needs k >= 1");
  return 2.0 * k - 2.0 * loglik;
}

CpoResult cpo_from_logliks(const Matrix& terms) {
  const Index M = terms.rows();
  const Index n = terms.cols();
  if (M == 0) throw InvalidParameter("CPO needs at least one draw");
  CpoResult result;
  result.log_cpo.resize(n);
  for (Index t = 0; t < n; ++t) {
    // log CPO_t = log M - logsumexp_m(-l_mt)
    const Vector neg = -terms.col(t);
    const double top = neg.maxCoeff();
    if (!std::isfinite(top)) {
      result.degenerate = true;
      result.log_cpo(t) = -std::numeric_limits<double>::infinity();
      continue;
    }
    const double lse = top + std::log((neg.array() - top).exp().sum());
    result.log_cpo(t) = std::log(static_cast<double>(M)) - lse;
  }
  result.neg_mean_log_cpo = n > 0 ? -result.log_cpo.mean() : 0.0;
  return result;
}

Vector cpo_linear(const Matrix& terms) {
  Vector out(terms.cols());
  for (Index t = 0; t < terms.cols(); ++t) out(t) = 1.0 / (-terms.col(t).array()).exp().mean();
  return out;
}

CpoResult cpo(const Chain& chain, std::span<const Count> x, const InitPolicy& init) {
  if (chain.size() == 0) throw InvalidParameter("CPO needs a non-empty chain");
  Matrix terms(chain.size(), static_cast<Index>(x.size()));
  for (Index m = 0; m < chain.size(); ++m) terms.row(m) = per_observation_logpmf(chain.spec(m), x, init).transpose();
  return cpo_from_logliks(terms);
}

double crps_from_cdf(const Vector& cdf, Count x) {
  double total = 0.0;
  for (Index j = 0; j < cdf.size(); ++j) {
    const double f = std::clamp(cdf(j), 0.0, 1.0);
    total += static_cast<Count>(j) < x ? f * f : (f - 1.0) * (f - 1.0);
  }
  return total;
}

double crps(const PredictiveDist& dist, Count x) {
  // Last point with nonzero probability; points past it have F = 1 and contribute nothing
  // unless the observation lies beyond them.
  Index last = dist.probs.size() - 1;
  while (last > 0 && !(dist.probs(last) > 0.0)) --last;
  const Index upto = std::max<Index>(last, static_cast<Index>(x));
  Vector cdf(upto + 1);
  double cum = 0.0;
  for (Index j = 0; j <= upto; ++j) {
    cum += dist.prob(static_cast<Count>(j));
    cdf(j) = cum;
  }
  return crps_from_cdf(cdf, x);
}

double mean_crps(const Chain& chain, std::span<const Count> x, const ForecastOptions& opts, Index max_draws) {
  if (x.empty()) return 0.0;
  const Chain thinned = thin(chain, max_draws);
  const Matrix paths = lambda_paths(thinned, x, opts.init);
  double total = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t)
    total += crps(predictive_at(thinned, paths, x, static_cast<Index>(t), 1, opts), x[t]);
  return total / static_cast<double>(x.size());
}

Vector pit_histogram(const std::vector<std::pair<double, double>>& intervals, int bins) {
  if (bins < 1) throw InvalidParameter("PIT histogram needs at least one bin");
  if (intervals.empty()) throw InvalidParameter("PIT histogram needs at least one observation");
  // Mean PIT function F(u) = (1/n) sum_t F_t(u) with F_t uniform on [lo_t, hi_t].
  auto mean_pit = [&](double u) {
    double total = 0.0;
    for (const auto& [lo_raw, hi_raw] : intervals) {
      const double lo = std::clamp(lo_raw, 0.0, 1.0);
      const double hi = std::clamp(hi_raw, lo, 1.0);
      if (u >= hi) total += 1.0;
      else if (u > lo) total += (u - lo) / (hi - lo);
    }
    return total / static_cast<double>(intervals.size());
  };
  Vector masses(bins);
  double prev = mean_pit(0.0);
  for (int j = 1; j <= bins; ++j) {
    const double cur = j == bins ? 1.0 : mean_pit(static_cast<double>(j) / bins);
    masses(j - 1) = cur - prev;
    prev = cur;
  }
  return masses;
}

std::vector<std::pair<double, double>> pit_intervals(const Chain& chain, std::span<const Count> x,
                                                     const ForecastOptions& opts, Index max_draws) {
  // The one-step predictive cdf at x_t is the draw average of the conditional cdfs, so only
  // the support up to x_t is summed.
  const Chain thinned = thin(chain, max_draws);
  const Matrix paths = lambda_paths(thinned, x, opts.init);
  const Family family = thinned.family;
  std::vector<double> disp(static_cast<std::size_t>(thinned.size()));
  for (Index m = 0; m < thinned.size(); ++m) disp[static_cast<std::size_t>(m)] = thinned.spec(m).disp;
  std::vector<std::pair<double, double>> out;
  out.reserve(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) {
    double lo = 0.0, hi = 0.0;
    for (Index m = 0; m < thinned.size(); ++m) {
      const double d = disp[static_cast<std::size_t>(m)];
      double lam = paths(m, static_cast<Index>(t));
      if (family == Family::NoGe) lam = std::max(lam, 1.0 - d);
      const double norm = conditional_support_mass(family, lam, d);
      lo += conditional_cdf(family, x[t] - 1, lam, d) / norm;
      hi += conditional_cdf(family, x[t], lam, d) / norm;
    }
    const double M = static_cast<double>(thinned.size());
    out.emplace_back(std::min(1.0, lo / M), std::min(1.0, hi / M));
  }
  return out;
}

std::vector<std::pair<double, double>> pit_intervals(const IngarchSpec& spec, std::span<const Count> x,
                                                     const InitPolicy& init) {
  const Vector lambda = lambda_filter(spec, x, init);
  std::vector<std::pair<double, double>> out;
  out.reserve(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) {
    const double lam = lambda(static_cast<Index>(t));
    const double norm = conditional_support_mass(spec.family, lam, spec.disp);
    out.emplace_back(conditional_cdf(spec.family, x[t] - 1, lam, spec.disp) / norm,
                     std::min(1.0, conditional_cdf(spec.family, x[t], lam, spec.disp) / norm));
  }
  return out;
}

ResidualAcf pearson_residual_acf(std::span<const Count> x, const Vector& lambda, Family family, double disp,
                                 int max_lag) {
  if (lambda.size() != static_cast<Index>(x.size())) throw InvalidParameter("lambda path and series differ in length");
  ResidualAcf out;
  out.residuals.resize(lambda.size());
  for (Index t = 0; t < lambda.size(); ++t) {
    const double var = conditional_variance(family, lambda(t), disp);
    const double mean = conditional_mean(family, lambda(t), disp);
    // Zero conditional variance (degenerate parameters) leaves the raw error unscaled.
    out.residuals(t) = (static_cast<double>(x[static_cast<std::size_t>(t)]) - mean) / (var > 0.0 ? std::sqrt(var) : 1.0);
    if (!(var > 0.0)) out.degenerate = true;
  }
  out.acf = sample_acf(out.residuals, max_lag);
  if (out.acf.size() == 0) out.degenerate = true;
  return out;
}

double prmse(std::span<const Count> test, const std::vector<double>& forecasts) {
  if (test.size() != forecasts.size()) throw InvalidParameter("PRMSE: test set and forecasts differ in length");
  if (test.empty()) throw InvalidParameter("PRMSE: empty test set");
  double total = 0.0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const double e = static_cast<double>(test[i]) - forecasts[i];
    total += e * e;
  }
  return std::sqrt(total / static_cast<double>(test.size()));
}

double pmad(std::span<const Count> test, const std::vector<double>& forecasts) {
  if (test.size() != forecasts.size()) throw InvalidParameter("PMAD: test set and forecasts differ in length");
  if (test.empty()) throw InvalidParameter("PMAD: empty test set");
  double total = 0.0;
  for (std::size_t i = 0; i < test.size(); ++i) total += std::abs(static_cast<double>(test[i]) - forecasts[i]);
  return total / static_cast<double>(test.size());
}

std::string format_score_report(const ScoreReport& r) {
  std::ostringstream os;
  os << "model = " << r.model << "\n";
  os << "loglik = " << fmt(r.loglik) << "\n";
  os << "k = " << r.k << "\n";
  os << "aic = " << fmt(r.aic) << "\n";
  os << "neg_mean_log_cpo = " << fmt(r.neg_mean_log_cpo) << "\n";
  os << "mean_crps = " << fmt(r.mean_crps) << "\n";
  if (r.prmse) os << "prmse = " << fmt(*r.prmse) << "\n";
  if (r.pmad) os << "pmad = " << fmt(*r.pmad) << "\n";
  for (Index j = 0; j < r.pit_bins.size(); ++j) os << "pit_bin_" << j + 1 << " = " << fmt(r.pit_bins(j)) << "\n";
  for (Index h = 1; h < r.residual_acf.size(); ++h) os << "residual_acf_" << h << " = " << fmt(r.residual_acf(h)) << "\n";
  return os.str();
}

std::string score_csv_header() { return "model,loglik,k,aic,neg_mean_log_cpo,mean_crps,prmse,pmad"; }

std::string score_csv_row(const ScoreReport& r) {
  std::ostringstream os;
  // Full precision so the table can be recomputed from the forecast files.
  auto full = [](double v) { return format_double(v); };
  os << r.model << "," << full(r.loglik) << "," << r.k << "," << full(r.aic) << "," << full(r.neg_mean_log_cpo) << ","
     << full(r.mean_crps) << "," << (r.prmse ? full(*r.prmse) : "") << "," << (r.pmad ? full(*r.pmad) : "");
  return os.str();
}

}  // namespace ingarch
