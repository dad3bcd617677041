#include "ingarch/forecast.hpp"

#include "ingarch/conditional.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ingarch {

namespace {

struct Component {
  double lambda;
  double disp;
  double log_norm;  // log of the support mass, removed so every component sums to one
};

std::vector<IngarchSpec> draw_specs(const Chain& chain) {
  if (chain.size() == 0) throw InvalidParameter("forecast needs a non-empty chain");
  std::vector<IngarchSpec> specs;
  specs.reserve(static_cast<std::size_t>(chain.size()));
  for (Index m = 0; m < chain.size(); ++m) specs.push_back(chain.spec(m));
  return specs;
}

Component make_component(Family family, double lambda, double disp) {
  // A draw whose filtered mean falls below 1 - phi is evaluated at theta = 1.
  if (family == Family::NoGe) lambda = std::max(lambda, 1.0 - disp);
  return {lambda, disp, std::log(conditional_support_mass(family, lambda, disp))};
}

PredictiveDist mixture(Family family, const std::vector<Component>& comps, int h, const ForecastOptions& opts) {
  PredictiveDist dist;
  dist.h = h;
  dist.tail_eps = opts.tail_eps;
  std::vector<double> probs;
  const double weight = 1.0 / static_cast<double>(comps.size());
  // A component leaves the sum once its own remaining tail is far below the mixture bound.
  const double retire = 1e-3 * opts.tail_eps;
  std::vector<std::size_t> active(comps.size());
  std::iota(active.begin(), active.end(), std::size_t{0});
  std::vector<double> own_cum(comps.size(), 0.0);
  double cum = 0.0;
  double work = 0.0;
  // GP terms share log(x!) across components: log eta + (x-1) log(eta + kappa x) - (eta + kappa x) - log x!.
  std::vector<double> gp_log_eta;
  if (family == Family::GP)
    for (const auto& c : comps) gp_log_eta.push_back(std::log((1.0 - c.disp) * c.lambda));
  auto log_term = [&](std::size_t k, Count x, double log_fact) -> double {
    if (family != Family::GP) return conditional_logpmf(family, x, comps[k].lambda, comps[k].disp);
    const double eta = (1.0 - comps[k].disp) * comps[k].lambda;
    const double s = eta + comps[k].disp * static_cast<double>(x);
    if (!(eta > 0.0) || !(s > 0.0) || (comps[k].disp < 0.0 && !(eta + 4.0 * comps[k].disp > 0.0))) return -INFINITY;
    return gp_log_eta[k] + static_cast<double>(x - 1) * std::log(s) - s - log_fact;
  };
  for (Count x = 0;; ++x) {
    double px = 0.0;
    const double log_fact = family == Family::GP ? kernel::log_gamma(static_cast<double>(x) + 1.0) : 0.0;
    for (std::size_t i = 0; i < active.size();) {
      const std::size_t k = active[i];
      const double p = std::exp(log_term(k, x, log_fact) - comps[k].log_norm);
      px += p;
      own_cum[k] += p;
      if (1.0 - own_cum[k] <= retire && static_cast<double>(x) >= conditional_mean(family, comps[k].lambda, comps[k].disp)) {
        active[i] = active.back();
        active.pop_back();
      } else {
        ++i;
      }
    }
    work += static_cast<double>(active.size());
    px *= weight;
    probs.push_back(px);
    cum += px;
    if (cum >= 1.0 - opts.tail_eps || active.empty()) break;
    if (x >= opts.x_max_cap || work > opts.max_terms) {
      dist.capped = true;
      break;
    }
  }
  dist.probs = Eigen::Map<const Vector>(probs.data(), static_cast<Index>(probs.size()));
  return dist;
}

double lag_count(std::span<const Count> x, Index v, Index origin, double pre, const Vector& xhat) {
  if (v < 0) return pre;
  if (v < origin) return static_cast<double>(x[static_cast<std::size_t>(v)]);
  return xhat(v - origin);
}

}  // namespace

double PredictiveDist::cdf(Count x) const {
  if (x < 0) return 0.0;
  const Index upto = std::min<Index>(static_cast<Index>(x), probs.size() - 1);
  return probs.head(upto + 1).sum();
}

Chain point_mass_chain(const IngarchSpec& spec) {
  Chain chain;
  chain.family = spec.family;
  chain.p = spec.p();
  chain.q = spec.q();
  chain.names = parameter_names(spec.family, spec.p(), spec.q());
  chain.draws = spec.packed().transpose();
  chain.unconstrained_draws = chain.draws;
  chain.energies = Vector::Zero(1);
  chain.log_density = Vector::Zero(1);
  chain.accepted = {1};
  chain.accept_rate = 1.0;
  return chain;
}

Matrix lambda_paths(const Chain& chain, std::span<const Count> x, const InitPolicy& init) {
  const auto specs = draw_specs(chain);
  Matrix paths(chain.size(), static_cast<Index>(x.size()));
  for (Index m = 0; m < chain.size(); ++m) paths.row(m) = lambda_filter(specs[static_cast<std::size_t>(m)], x, init).transpose();
  return paths;
}

PredictiveDist predictive_at(const Chain& chain, const Matrix& paths, std::span<const Count> x, Index origin, int h,
                             const ForecastOptions& opts) {
  if (h < 1) throw InvalidParameter("forecast horizon must be >= 1");
  if (origin < 0 || origin > static_cast<Index>(x.size())) throw InvalidParameter("forecast origin outside the series");
  if (paths.rows() != chain.size() || paths.cols() < origin) throw InvalidParameter("lambda paths do not match the chain");
  const auto specs = draw_specs(chain);
  const Index M = chain.size();
  const Family family = chain.family;

  Vector pre(M);
  for (Index m = 0; m < M; ++m) pre(m) = presample_value(specs[static_cast<std::size_t>(m)], opts.init);

  std::vector<Component> comps;
  if (opts.mode == ForecastMode::PlugIn || h == 1) {
    Matrix future(M, h);
    Vector xhat(h), lhat(h);
    for (int s = 0; s < h; ++s) {
      const Index u = origin + s;
      double sum_x = 0.0, sum_l = 0.0;
      for (Index m = 0; m < M; ++m) {
        const IngarchSpec& spec = specs[static_cast<std::size_t>(m)];
        double value = spec.alpha0;
        for (int i = 1; i <= spec.p(); ++i) value += spec.alpha(i - 1) * lag_count(x, u - i, origin, pre(m), xhat);
        for (int j = 1; j <= spec.q(); ++j) {
          const Index v = u - j;
          const double lam = v < 0 ? pre(m) : v < origin ? paths(m, v) : lhat(v - origin);
          value += spec.beta(j - 1) * lam;
        }
        future(m, s) = value;
        sum_x += conditional_mean(family, value, spec.disp);
        sum_l += value;
      }
      xhat(s) = sum_x / static_cast<double>(M);
      lhat(s) = sum_l / static_cast<double>(M);
    }
    comps.reserve(static_cast<std::size_t>(M));
    for (Index m = 0; m < M; ++m) comps.push_back(make_component(family, future(m, h - 1), specs[static_cast<std::size_t>(m)].disp));
  } else {
    if (opts.trajectories < 1) throw InvalidParameter("trajectory count must be >= 1");
    Rng rng = make_stream(opts.seed, static_cast<std::uint64_t>(origin));
    comps.reserve(static_cast<std::size_t>(M * opts.trajectories));
    std::vector<double> xs(static_cast<std::size_t>(h)), ls(static_cast<std::size_t>(h));
    for (Index m = 0; m < M; ++m) {
      const IngarchSpec& spec = specs[static_cast<std::size_t>(m)];
      for (int r = 0; r < opts.trajectories; ++r) {
        for (int s = 0; s < h; ++s) {
          const Index u = origin + s;
          double value = spec.alpha0;
          for (int i = 1; i <= spec.p(); ++i) {
            const Index v = u - i;
            value += spec.alpha(i - 1) * (v < 0 ? pre(m) : v < origin ? static_cast<double>(x[static_cast<std::size_t>(v)])
                                                                     : xs[static_cast<std::size_t>(v - origin)]);
          }
          for (int j = 1; j <= spec.q(); ++j) {
            const Index v = u - j;
            value += spec.beta(j - 1) * (v < 0 ? pre(m) : v < origin ? paths(m, v) : ls[static_cast<std::size_t>(v - origin)]);
          }
          ls[static_cast<std::size_t>(s)] = value;
          if (s + 1 < h)
            xs[static_cast<std::size_t>(s)] = static_cast<double>(conditional_sample(family, value, spec.disp, rng));
        }
        comps.push_back(make_component(family, ls[static_cast<std::size_t>(h - 1)], spec.disp));
      }
    }
  }
  return mixture(family, comps, h, opts);
}

PredictiveDist predictive_pmf(const Chain& chain, std::span<const Count> x, int h, const ForecastOptions& opts) {
  const Matrix paths = lambda_paths(chain, x, opts.init);
  return predictive_at(chain, paths, x, static_cast<Index>(x.size()), h, opts);
}

double forecast_mean(const PredictiveDist& dist) {
  double mean = 0.0;
  for (Index x = 0; x < dist.probs.size(); ++x) mean += static_cast<double>(x) * dist.probs(x);
  return mean;
}

Count forecast_quantile(const PredictiveDist& dist, double prob) {
  double cum = 0.0;
  for (Index x = 0; x < dist.probs.size(); ++x) {
    cum += dist.probs(x);
    if (cum >= prob) return static_cast<Count>(x);
  }
  return dist.x_max();
}

Count forecast_median(const PredictiveDist& dist) { return forecast_quantile(dist, 0.5); }

std::pair<Count, Count> credible_interval(const PredictiveDist& dist, double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw InvalidParameter("credible interval needs 0 < alpha < 0.5");
  return {forecast_quantile(dist, alpha), forecast_quantile(dist, 1.0 - alpha)};
}

std::vector<Count> hpd_set(const PredictiveDist& dist, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidParameter("HPD set needs 0 < alpha < 1");
  std::vector<Index> order(static_cast<std::size_t>(dist.probs.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return dist.probs(a) > dist.probs(b); });
  std::vector<Count> set;
  double mass = 0.0;
  for (Index x : order) {
    if (mass >= 1.0 - alpha) break;
    set.push_back(static_cast<Count>(x));
    mass += dist.probs(x);
  }
  std::sort(set.begin(), set.end());
  return set;
}

std::vector<ForecastRow> forecast_range(const Chain& chain, std::span<const Count> x, std::size_t first_target, int h,
                                        const ForecastOptions& opts) {
  if (h < 1) throw InvalidParameter("forecast horizon must be >= 1");
  if (first_target + 1 < static_cast<std::size_t>(h)) throw InvalidParameter("first target precedes the forecast origin");
  const Matrix paths = lambda_paths(chain, x, opts.init);
  std::vector<ForecastRow> rows;
  for (std::size_t target = first_target; target < x.size(); ++target) {
    const auto origin = static_cast<Index>(target) - h + 1;
    const PredictiveDist dist = predictive_at(chain, paths, x, origin, h, opts);
    ForecastRow row;
    row.t = target + 1;
    row.horizon = h;
    row.mean = forecast_mean(dist);
    row.median = forecast_median(dist);
    std::tie(row.lo95, row.hi95) = credible_interval(dist, kInterval95Alpha);
    row.hpd95 = hpd_set(dist, kInterval95Alpha);
    row.observed = x[target];
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ingarch
