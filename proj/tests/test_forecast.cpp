#include "ingarch/conditional.hpp"
#include "ingarch/count_dists.hpp"
#include "ingarch/forecast.hpp"
#include "ingarch/simulator.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace ingarch;

namespace {

PredictiveDist make_dist(std::vector<double> probs) {
  PredictiveDist d;
  d.probs = Eigen::Map<Vector>(probs.data(), static_cast<Index>(probs.size()));
  return d;
}

Chain chain_of(const std::vector<IngarchSpec>& specs) {
  Chain chain = point_mass_chain(specs.front());
  chain.draws.resize(static_cast<Index>(specs.size()), specs.front().num_params());
  for (std::size_t m = 0; m < specs.size(); ++m) chain.draws.row(static_cast<Index>(m)) = specs[m].packed().transpose();
  chain.unconstrained_draws = chain.draws;
  return chain;
}

double variance_of(const PredictiveDist& d) {
  const double m = forecast_mean(d);
  double v = 0.0;
  for (Index x = 0; x < d.probs.size(); ++x) v += d.probs(x) * (x - m) * (x - m);
  return v;
}

std::vector<Count> series(std::uint64_t seed, std::size_t n = 120) {
  return simulate({scenario_spec(ScenarioId::IV), n, 100, seed}).series.values;
}

}  // namespace

TEST_CASE("single-draw predictive is the conditional pmf") {
  const auto x = series(1);
  for (Family f : {Family::NoGe, Family::GP, Family::NB, Family::Poisson}) {
    double disp = 0.0;
    if (f == Family::NoGe) disp = 0.3;
    if (f == Family::GP) disp = -0.05;
    if (f == Family::NB) disp = 1.7;
    const IngarchSpec spec = make_spec(f, f == Family::NB ? 0.6 : 1.4, {0.3}, {0.2}, disp);
    const Vector lambda = lambda_filter(spec, x);
    const double next = next_lambda(spec, x, lambda);
    const PredictiveDist d = predictive_pmf(point_mass_chain(spec), x, 1);
    CAPTURE(family_name(f));
    const double support = conditional_support_mass(f, next, disp);
    double max_diff = 0.0;
    for (Count k = 0; k <= d.x_max(); ++k)
      max_diff = std::max(max_diff, std::abs(d.prob(k) - std::exp(conditional_logpmf(f, k, next, disp)) / support));
    CHECK(max_diff < 1e-12);
    CHECK(d.mass() >= 1.0 - d.tail_eps);
    CHECK(d.mass() <= 1.0 + 1e-12);
  }
  // The NoGe case against the distribution layer directly.
  const IngarchSpec spec = make_spec(Family::NoGe, 1.4, {0.3}, {0.2}, 0.3);
  const double next = next_lambda(spec, x, lambda_filter(spec, x));
  const PredictiveDist d = predictive_pmf(point_mass_chain(spec), x, 1);
  for (Count k = 0; k <= 30; ++k) CHECK(std::abs(d.prob(k) - noge_pmf(k, {0.7 / next, 0.3})) < 1e-12);
  ForecastOptions fine;
  fine.tail_eps = 1e-15;
  CHECK(forecast_mean(predictive_pmf(point_mass_chain(spec), x, 1, fine)) == doctest::Approx(next).epsilon(1e-12));
}

TEST_CASE("mixture equals the brute-force double loop") {
  const auto x = series(2);
  const std::vector<IngarchSpec> specs{make_spec(Family::NoGe, 1.1, {0.35}, {0.2}, 0.3),
                                       make_spec(Family::NoGe, 0.9, {0.45}, {0.1}, 0.4),
                                       make_spec(Family::NoGe, 1.3, {0.3}, {0.25}, 0.35)};
  const PredictiveDist d = predictive_pmf(chain_of(specs), x, 1);
  std::vector<double> lambdas;
  for (const auto& s : specs) lambdas.push_back(next_lambda(s, x, lambda_filter(s, x)));
  double max_diff = 0.0;
  for (Count k = 0; k <= d.x_max(); ++k) {
    double brute = 0.0;
    for (std::size_t m = 0; m < specs.size(); ++m) brute += noge_pmf(k, {(1 - specs[m].disp) / lambdas[m], specs[m].disp});
    max_diff = std::max(max_diff, std::abs(d.prob(k) - brute / 3.0));
  }
  CHECK(max_diff < 1e-12);

  // Linearity of the mean and the mixture-variance decomposition.
  const std::vector<IngarchSpec> two{specs[0], specs[1]};
  ForecastOptions fine;
  fine.tail_eps = 1e-15;
  const PredictiveDist d2 = predictive_pmf(chain_of(two), x, 1, fine);
  const double mean_avg = 0.5 * (lambdas[0] + lambdas[1]);
  CHECK(std::abs(forecast_mean(d2) - mean_avg) < fine.tail_eps * static_cast<double>(d2.x_max()));
  CHECK(std::abs(forecast_mean(predictive_pmf(chain_of(two), x, 1)) - mean_avg) < 1e-8 * static_cast<double>(d2.x_max()));
  const double within = 0.5 * (conditional_variance(Family::NoGe, lambdas[0], specs[0].disp) +
                               conditional_variance(Family::NoGe, lambdas[1], specs[1].disp));
  const double between = 0.25 * (lambdas[0] - lambdas[1]) * (lambdas[0] - lambdas[1]);
  CHECK(variance_of(d2) == doctest::Approx(within + between).epsilon(1e-10));
  IngarchSpec avg = specs[0];
  avg.alpha0 = 0.5 * (specs[0].alpha0 + specs[1].alpha0);
  avg.alpha = 0.5 * (specs[0].alpha + specs[1].alpha);
  avg.beta = 0.5 * (specs[0].beta + specs[1].beta);
  avg.disp = 0.5 * (specs[0].disp + specs[1].disp);
  CHECK(variance_of(d2) >= variance_of(predictive_pmf(point_mass_chain(avg), x, 1)));
}

TEST_CASE("multi-step plug-in recursion") {
  const auto x = series(3);
  const IngarchSpec spec = make_spec(Family::NoGe, 1.1, {0.35}, {0.2}, 0.3);
  const Vector lambda = lambda_filter(spec, x);
  const double l1 = next_lambda(spec, x, lambda);
  // h = 2 on one draw: x_{n+1} and lambda_{n+1} are both replaced by their means.
  const double l2 = 1.1 + 0.35 * l1 + 0.2 * l1;
  const PredictiveDist d = predictive_pmf(point_mass_chain(spec), x, 2);
  CHECK(d.h == 2);
  CHECK(d.prob(3) == doctest::Approx(noge_pmf(3, {0.7 / l2, 0.3})).epsilon(1e-12));
  ForecastOptions fine;
  fine.tail_eps = 1e-15;
  CHECK(forecast_mean(predictive_pmf(point_mass_chain(spec), x, 2, fine)) == doctest::Approx(l2).epsilon(1e-12));
}

TEST_CASE("errors") {
  const auto x = series(4);
  Chain empty = point_mass_chain(scenario_spec(ScenarioId::I));
  empty.draws.resize(0, 4);
  CHECK_THROWS_AS(predictive_pmf(empty, x, 1), InvalidParameter);
  CHECK_THROWS_AS(predictive_pmf(point_mass_chain(scenario_spec(ScenarioId::I)), x, 0), InvalidParameter);
  CHECK_THROWS(credible_interval(make_dist({0.5, 0.5}), 0.5));
}

TEST_CASE("point forecasts and intervals") {
  const PredictiveDist mass3 = make_dist({0, 0, 0, 1});
  CHECK(forecast_mean(mass3) == 3.0);
  CHECK(forecast_median(mass3) == 3);
  CHECK(credible_interval(mass3, 0.025) == std::pair<Count, Count>{3, 3});
  CHECK(hpd_set(mass3, 0.05) == std::vector<Count>{3});
  CHECK(forecast_median(make_dist({0.5, 0.5})) == 0);

  std::vector<double> geom;
  for (Count k = 0; k <= 200; ++k) geom.push_back(noge_pmf(k, {0.25, 0.1}));
  const PredictiveDist g = make_dist(geom);
  CHECK(g.cdf(2) < 0.5);
  CHECK(g.cdf(3) >= 0.5);
  CHECK(forecast_median(g) == 3);

  const PredictiveDist uniform = make_dist(std::vector<double>(20, 0.05));
  CHECK(credible_interval(uniform, 0.05) == std::pair<Count, Count>{0, 18});
}

TEST_CASE("HPD sets") {
  const auto x = series(5);
  const PredictiveDist d = predictive_pmf(point_mass_chain(make_spec(Family::NoGe, 4.0, {0.3}, {0.3}, 0.05)), x, 1);
  for (double alpha : {0.05, 0.1, 0.3}) {
    const std::vector<Count> set = hpd_set(d, alpha);
    CAPTURE(alpha);
    REQUIRE(!set.empty());
    CHECK(std::is_sorted(set.begin(), set.end()));
    CHECK(set.back() - set.front() + 1 == static_cast<Count>(set.size()));
    double mass = 0.0;
    double least = 1.0;
    for (Count k : set) {
      mass += d.prob(k);
      least = std::min(least, d.prob(k));
    }
    CHECK(mass >= 1.0 - alpha);
    CHECK(mass - least < 1.0 - alpha);
    const auto [lo, hi] = credible_interval(d, alpha / 2);
    double interval_mass = 0.0;
    for (Count k = lo; k <= hi; ++k) interval_mass += d.prob(k);
    CHECK(mass + 1e-12 >= std::min(interval_mass, 1.0 - alpha));
    CHECK(static_cast<Count>(set.size()) <= hi - lo + 2);
  }
  // Not necessarily an interval: the zero-inflated spike sits apart from the body.
  const std::vector<Count> spiky = hpd_set(make_dist({0.3, 0.0, 0.02, 0.3, 0.38}), 0.05);
  CHECK(spiky == std::vector<Count>{0, 3, 4});
}

TEST_CASE("property: the median minimises the expected absolute error") {
  Rng rng = make_stream(6, 0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> probs(12);
    for (double& v : probs) v = uniform01(rng);
    double total = 0.0;
    for (double v : probs) total += v;
    for (double& v : probs) v /= total;
    const PredictiveDist d = make_dist(probs);
    auto mae = [&](Count c) {
      double s = 0.0;
      for (Count k = 0; k <= d.x_max(); ++k) s += d.prob(k) * std::abs(static_cast<double>(k - c));
      return s;
    };
    const double at_median = mae(forecast_median(d));
    for (Count c = 0; c <= d.x_max(); ++c) CHECK(at_median <= mae(c) + 1e-12);
  }
}

TEST_CASE("property: truncation honours the tail bound") {
  const auto x = series(7);
  for (double eps : {1e-4, 1e-8, 1e-12}) {
    ForecastOptions opts;
    opts.tail_eps = eps;
    for (int h : {1, 3}) {
      const PredictiveDist d =
          predictive_pmf(chain_of({scenario_spec(ScenarioId::IV), make_spec(Family::NoGe, 1.2, {0.3}, {0.2}, 0.3)}), x, h, opts);
      CHECK(d.mass() >= 1.0 - eps);
      CHECK(d.mass() <= 1.0 + 1e-12);
      CHECK((d.probs.array() >= 0.0).all());
      CHECK_FALSE(d.capped);
    }
  }
}

TEST_CASE("sampled-trajectory mode agrees with plug-in at h = 1") {
  const auto x = series(8);
  const Chain chain = chain_of({scenario_spec(ScenarioId::IV), make_spec(Family::NoGe, 1.2, {0.3}, {0.2}, 0.3)});
  ForecastOptions opts;
  opts.mode = ForecastMode::SampledTrajectory;
  const PredictiveDist a = predictive_pmf(chain, x, 1, opts);
  const PredictiveDist b = predictive_pmf(chain, x, 1);
  const Index n = std::min(a.probs.size(), b.probs.size());
  CHECK((a.probs.head(n) - b.probs.head(n)).cwiseAbs().maxCoeff() < 1e-12);
  const PredictiveDist c = predictive_pmf(chain, x, 3, opts);
  CHECK(c.mass() >= 1.0 - c.tail_eps);
}

TEST_CASE("forecast rows") {
  const auto x = series(9, 60);
  const Chain chain = point_mass_chain(scenario_spec(ScenarioId::IV));
  const auto rows = forecast_range(chain, x, 50, 1);
  REQUIRE(rows.size() == 10);
  CHECK(rows.front().t == 51);
  CHECK(rows.front().observed == x[50]);
  const std::vector<Count> head(x.begin(), x.begin() + 50);
  const PredictiveDist d = predictive_pmf(chain, head, 1);
  CHECK(rows.front().mean == doctest::Approx(forecast_mean(d)));
  CHECK(rows.front().median == forecast_median(d));
  CHECK(rows.front().lo95 <= rows.front().hi95);
  const auto rows2 = forecast_range(chain, x, 50, 2);
  CHECK(rows2.front().mean == doctest::Approx(forecast_mean(predictive_pmf(chain, std::span<const Count>(x).first(49), 2))));
}

TEST_CASE("one-step 95% interval coverage under the true law") {
  const IngarchSpec truth = scenario_spec(ScenarioId::III);
  const std::vector<Count> x = simulate({truth, 501, 200, 13}).series.values;
  const Chain chain = point_mass_chain(truth);
  const Matrix paths = lambda_paths(chain, x);
  int covered = 0;
  double expected = 0.0;
  for (Index t = 1; t <= 500; ++t) {
    const PredictiveDist d = predictive_at(chain, paths, x, t, 1);
    const auto [lo, hi] = credible_interval(d, kInterval95Alpha);
    const Count obs = x[static_cast<std::size_t>(t)];
    covered += (obs >= lo && obs <= hi) ? 1 : 0;
    for (Count k = lo; k <= hi; ++k) expected += d.prob(k) / 500.0;
  }
  const double rate = covered / 500.0;
  CHECK(rate >= 0.93);
  CHECK(rate <= 0.97);
  // Conditional coverage probability along the path, free of Monte Carlo noise.
  CHECK(expected >= 0.95);
  CHECK(expected <= 0.97);
}
