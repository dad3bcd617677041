#include "ingarch/simulator.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace ingarch;

namespace {

double mean_of(const std::vector<Count>& x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

}  // namespace

TEST_CASE("scenario vectors") {
  const IngarchSpec s1 = scenario_spec(ScenarioId::I);
  CHECK(s1.packed() == (Vector(4) << 1.0, 0.2, 0.1, 0.05).finished());
  CHECK(scenario_spec(ScenarioId::II).packed() == (Vector(4) << 1.0, 0.3, 0.1, 0.05).finished());
  CHECK(scenario_spec(ScenarioId::III).packed() == (Vector(4) << 1.0, 0.4, 0.2, 0.55).finished());
  CHECK(scenario_spec(ScenarioId::IV).packed() == (Vector(4) << 1.0, 0.4, 0.2, 0.35).finished());
  CHECK(parse_scenario("III") == ScenarioId::III);
  CHECK(parse_scenario("iv") == ScenarioId::IV);
  CHECK_THROWS(parse_scenario("V"));
}

TEST_CASE("simulation is deterministic in the seed") {
  SimConfig config{scenario_spec(ScenarioId::II), 300, 100, 42};
  const SimResult a = simulate(config);
  const SimResult b = simulate(config);
  CHECK(a.series.values == b.series.values);
  CHECK(a.lambda == b.lambda);
  config.seed = 43;
  CHECK(simulate(config).series.values != a.series.values);
  CHECK(a.series.size() == 300);
  CHECK(a.lambda.size() == 300);
}

TEST_CASE("simulated lambda satisfies the recursion") {
  const SimResult r = simulate({scenario_spec(ScenarioId::III), 200, 50, 5});
  for (Index t = 1; t < 200; ++t)
    CHECK(r.lambda(t) == doctest::Approx(1.0 + 0.4 * static_cast<double>(r.series.values[t - 1]) + 0.2 * r.lambda(t - 1)));
}

TEST_CASE("long-run mean and zero fraction") {
  const IngarchSpec spec = scenario_spec(ScenarioId::I);
  const SimResult r = simulate({spec, 200000, 500, 7});
  CHECK(mean_of(r.series.values) == doctest::Approx(unconditional_mean(spec)).epsilon(0.01));
  const double zeros = static_cast<double>(std::count(r.series.values.begin(), r.series.values.end(), 0));
  CHECK(zeros / 200000.0 == doctest::Approx(0.05).epsilon(0.05));
}

TEST_CASE("i.i.d. NoGe draws match the pmf (chi-square)") {
  // alpha = beta = 0 gives i.i.d. NoGe with lambda = alpha0.
  const IngarchSpec spec = make_spec(Family::NoGe, 2.0, {0.0}, {}, 0.3);
  const std::size_t n = 100000;
  const SimResult r = simulate({spec, n, 0, 9});
  const double theta = 0.7 / 2.0;
  const int cells = 10;
  std::vector<double> observed(cells + 1, 0.0);
  for (Count v : r.series.values) observed[static_cast<std::size_t>(std::min<Count>(v, cells))] += 1.0;
  double chi2 = 0.0;
  double tail = 1.0;
  for (int k = 0; k <= cells; ++k) {
    double prob = k == 0 ? 0.3 : 0.7 * std::pow(1.0 - theta, k - 1) * theta;
    if (k == cells) prob = tail;
    tail -= prob;
    const double expected = prob * static_cast<double>(n);
    chi2 += (observed[k] - expected) * (observed[k] - expected) / expected;
  }
  // 10 degrees of freedom; 99.9% quantile is 29.59.
  CHECK(chi2 < 29.59);
}

TEST_CASE("invalid and nonstationary specs") {
  CHECK_THROWS_AS(simulate({make_spec(Family::NoGe, 0.5, {0.2}, {0.1}, 0.05), 10, 0, 1}), InvalidParameter);
  const SimResult r = simulate({make_spec(Family::NoGe, 1.0, {0.7}, {0.4}, 0.05), 20, 0, 1});
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("every family simulates") {
  for (Family f : {Family::NoGe, Family::GP, Family::NB, Family::Poisson}) {
    double disp = 0.0;
    if (f == Family::NoGe) disp = 0.2;
    if (f == Family::GP) disp = -0.1;
    if (f == Family::NB) disp = 2.0;
    // NB: E X = n lambda, so the mean solves m = n (alpha0 + alpha1 m) + beta1 m.
    const double a1 = f == Family::NB ? 0.1 : 0.3;
    const IngarchSpec spec = make_spec(f, 1.5, {a1}, {0.2}, disp);
    const SimResult r = simulate({spec, 50000, 500, 3});
    const double target = f == Family::NB ? disp * 1.5 / (1.0 - disp * a1 - 0.2) : unconditional_mean(spec);
    CAPTURE(family_name(f));
    CHECK(mean_of(r.series.values) == doctest::Approx(target).epsilon(0.03));
  }
}
