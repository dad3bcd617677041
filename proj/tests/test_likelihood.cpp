#include "ingarch/cmle.hpp"
#include "ingarch/likelihood.hpp"
#include "ingarch/simulator.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace ingarch;

namespace {

Vector fd_gradient(const IngarchSpec& spec, std::span<const Count> x, double h = 1e-6) {
  const Vector v = spec.packed();
  Vector g(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    Vector up = v, dn = v;
    up(i) += h;
    dn(i) -= h;
    g(i) = (loglik(IngarchSpec::from_packed(spec.family, spec.p(), spec.q(), up), x) -
            loglik(IngarchSpec::from_packed(spec.family, spec.p(), spec.q(), dn), x)) / (2 * h);
  }
  return g;
}

}  // namespace

TEST_CASE("closed-form cases") {
  const IngarchSpec spec = make_spec(Family::NoGe, 1.2, {0.2}, {0.1}, 0.3);
  const std::vector<Count> zeros(25, 0);
  CHECK(noge_loglik(spec, zeros) == doctest::Approx(25 * std::log(0.3)).epsilon(1e-14));
  // One observation x = 1 with lambda_1 = alpha0 under a zero pre-sample.
  const std::vector<Count> one{1};
  CHECK(noge_loglik(spec, one, InitPolicy::fixed(0.0)) ==
        doctest::Approx(2 * std::log(0.7) - std::log(1.2)).epsilon(1e-14));
}

TEST_CASE("log-likelihood is the sum of per-observation terms") {
  const SimResult r = simulate({scenario_spec(ScenarioId::IV), 400, 100, 17});
  const IngarchSpec spec = make_spec(Family::NoGe, 1.1, {0.35}, {0.25}, 0.3);
  const Vector lambda = lambda_filter(spec, r.series.all());
  double sum = 0.0;
  for (std::size_t t = 0; t < r.series.size(); ++t) {
    const Count v = r.series.values[t];
    const double l = lambda(static_cast<Index>(t));
    const double theta = 0.7 / l;
    sum += v == 0 ? std::log(0.3) : std::log(0.7) + (v - 1) * std::log(1 - theta) + std::log(theta);
  }
  CHECK(std::abs(noge_loglik(spec, r.series.all()) - sum) < 1e-10);
  CHECK(per_observation_logpmf(spec, r.series.all()).sum() == doctest::Approx(sum));
}

TEST_CASE("impossible paths give -inf") {
  // lambda < 1 - phi makes theta > 1.
  const IngarchSpec spec = make_spec(Family::NoGe, 0.2, {0.1}, {}, 0.1);
  const std::vector<Count> x{0, 0, 0};
  CHECK(std::isinf(noge_loglik(spec, x, InitPolicy::fixed(0.0))));
  CHECK_THROWS_AS(noge_loglik_grad(spec, x, InitPolicy::fixed(0.0)), InvalidParameter);
  CHECK_THROWS_AS(noge_loglik(make_spec(Family::Poisson, 1.0, {0.2}, {}), x), InvalidParameter);
}

TEST_CASE("analytic gradient matches finite differences") {
  const SimResult r = simulate({scenario_spec(ScenarioId::III), 300, 100, 23});
  const auto x = r.series.all();
  const std::vector<IngarchSpec> specs{
      make_spec(Family::NoGe, 1.3, {0.35}, {0.15}, 0.5),
      make_spec(Family::NoGe, 1.3, {0.2, 0.1}, {0.15, 0.05}, 0.5),
      make_spec(Family::GP, 1.3, {0.3}, {0.2}, 0.2),
      make_spec(Family::GP, 1.8, {0.3}, {0.2}, -0.05),
      make_spec(Family::NB, 0.4, {0.1}, {0.2}, 2.5),
      make_spec(Family::Poisson, 1.3, {0.3}, {0.2}),
  };
  for (const auto& spec : specs) {
    CAPTURE(family_name(spec.family));
    const auto res = loglik_with_grad(spec, x);
    REQUIRE(std::isfinite(res.value));
    CHECK(res.value == doctest::Approx(loglik(spec, x)).epsilon(1e-13));
    const Vector fd = fd_gradient(spec, x);
    for (Index i = 0; i < fd.size(); ++i) CHECK(std::abs(res.grad(i) - fd(i)) <= 1e-5 * std::max(1.0, std::abs(fd(i))));
  }
}

TEST_CASE("family limits") {
  const SimResult r = simulate({make_spec(Family::Poisson, 1.0, {0.3}, {0.2}), 300, 100, 4});
  const auto x = r.series.all();
  const double pois = loglik(make_spec(Family::Poisson, 1.0, {0.3}, {0.2}), x);
  CHECK(loglik(make_spec(Family::GP, 1.0, {0.3}, {0.2}, 0.0), x) == doctest::Approx(pois).epsilon(1e-12));
  // NB with lambda/n scaling: mean n * (lambda / n) with n large approaches Poisson.
  const double n = 1e4;
  const double nb = loglik(make_spec(Family::NB, 1.0 / n, {0.3 / n}, {0.2}, n), x);
  CHECK(std::abs(nb - pois) < 1e-2 * std::abs(pois));
}

TEST_CASE("i.i.d. CMLE of phi equals the zero fraction") {
  const SimResult r = simulate({make_spec(Family::NoGe, 2.0, {0.0}, {}, 0.25), 2000, 0, 31});
  const auto x = r.series.all();
  FitOptions opts;
  opts.fixed = {std::nullopt, 0.0, std::nullopt};
  opts.compute_std_errors = false;
  const FitResult fit = cmle_fit(x, Family::NoGe, 1, 0, opts);
  const double zero_frac = static_cast<double>(std::count(x.begin(), x.end(), 0)) / static_cast<double>(x.size());
  CHECK(fit.estimates.disp == doctest::Approx(zero_frac).epsilon(1e-6));
  CHECK(fit.estimates.alpha(0) == 0.0);
}

TEST_CASE("gradient vanishes at the CMLE") {
  const SimResult r = simulate({scenario_spec(ScenarioId::IV), 1000, 200, 77});
  const auto x = r.series.all();
  const FitResult fit = cmle_fit(x, Family::NoGe, 1, 1);
  CHECK(fit.converged);
  CHECK(noge_loglik_grad(fit.estimates, x).norm() < 1e-4);
  CHECK(fit.std_errors.size() == 4);
  CHECK(fit.loglik == doctest::Approx(noge_loglik(fit.estimates, x)));
}

TEST_CASE("CMLE rejects too-short series") {
  const std::vector<Count> x{1, 0, 2, 1};
  CHECK_THROWS_AS(cmle_fit(x, Family::NoGe, 1, 1), DataError);
}
