#include "ingarch/count_dists.hpp"
#include "oracle_values.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace ingarch;

TEST_CASE("NoGe pmf matches the reference values and its closed-form moments") {
  const NoGeParams params{0.3, 0.2};
  for (int x = 0; x < 6; ++x) CHECK(noge_pmf(x, params) == doctest::Approx(oracle::kNoGe_03_02[x]).epsilon(1e-14));
  CHECK(noge_pmf(-1, params) == 0.0);

  double mean = 0.0, second = 0.0;
  for (int x = 0; x < 400; ++x) {
    const double p = noge_pmf(x, params);
    mean += x * p;
    second += double(x) * x * p;
  }
  const Moments m = noge_moments(params);
  CHECK(mean == doctest::Approx(m.mean).epsilon(1e-12));
  CHECK(second - mean * mean == doctest::Approx(m.variance).epsilon(1e-10));
}

TEST_CASE("NoGe boundary cases") {
  // theta = 1: all non-zero mass sits at one.
  CHECK(noge_pmf(1, {1.0, 0.3}) == doctest::Approx(0.7));
  CHECK(noge_pmf(2, {1.0, 0.3}) == 0.0);
  // phi = 0 is the shifted geometric on {1, 2, ...}.
  CHECK(noge_pmf(0, {0.4, 0.0}) == 0.0);
  CHECK(noge_pmf(1, {0.4, 0.0}) == doctest::Approx(0.4));
  CHECK_THROWS_AS(noge_pmf(1, {0.0, 0.2}), InvalidParameter);
  CHECK_THROWS_AS(noge_pmf(1, {0.5, 1.0}), InvalidParameter);
}

TEST_CASE("GP pmf, truncation and moments") {
  for (int x = 0; x < 6; ++x) CHECK(gp_pmf(x, {2.5, 0.3}) == doctest::Approx(oracle::kGP_25_03[x]).epsilon(1e-13));

  const GPParams trunc{2.0, -0.4};
  REQUIRE(gp_truncation_point(trunc).has_value());
  CHECK(*gp_truncation_point(trunc) == oracle::kGP_2_m04_truncation);
  CHECK(gp_pmf(5, trunc) == 0.0);
  CHECK(gp_cdf(100, trunc) == doctest::Approx(oracle::kGP_2_m04_mass).epsilon(1e-14));
  CHECK_FALSE(gp_truncation_point({2.0, 0.1}).has_value());
  // Fewer than four support points beyond zero.
  CHECK_THROWS_AS(gp_pmf(0, {1.0, -0.3}), TruncationViolation);

  // kappa = 0 reduces to Poisson(eta).
  for (int x = 0; x < 10; ++x) CHECK(gp_pmf(x, {3.2, 0.0}) == doctest::Approx(pois_pmf(x, {3.2})).epsilon(1e-13));

  double mean = 0.0;
  for (int x = 0; x < 300; ++x) mean += x * gp_pmf(x, {2.5, 0.3});
  CHECK(mean == doctest::Approx(gp_moments({2.5, 0.3}).mean).epsilon(1e-10));
}

TEST_CASE("NB and Poisson pmfs") {
  for (int x = 0; x < 6; ++x) {
    CHECK(nb_pmf(x, {2.5, 0.4}) == doctest::Approx(oracle::kNB_25_04[x]).epsilon(1e-13));
    CHECK(pois_pmf(x, {3.2}) == doctest::Approx(oracle::kPois_32[x]).epsilon(1e-13));
  }
  CHECK(nb_cdf(5, {2.5, 0.4}) == doctest::Approx(oracle::kNB_25_04[0] + oracle::kNB_25_04[1] + oracle::kNB_25_04[2] +
                                                 oracle::kNB_25_04[3] + oracle::kNB_25_04[4] + oracle::kNB_25_04[5]));
  CHECK_THROWS_AS(nb_pmf(0, {0.0, 0.5}), InvalidParameter);
  CHECK_THROWS_AS(pois_pmf(0, {-1.0}), InvalidParameter);
}

TEST_CASE("digamma agrees with finite differences of lgamma") {
  for (double x : {0.3, 1.0, 2.5, 7.0, 30.0, 250.0}) {
    const double h = 1e-5 * std::max(1.0, x);
    const double fd = (std::lgamma(x + h) - std::lgamma(x - h)) / (2 * h);
    CHECK(kernel::digamma(x) == doctest::Approx(fd).epsilon(1e-7));
  }
  CHECK(kernel::digamma(1.0) == doctest::Approx(-0.57721566490153286).epsilon(1e-14));
}

TEST_CASE("samplers reproduce their pmfs") {
  Rng rng = make_stream(99, 0);
  constexpr int kDraws = 200000;
  auto check_sampler = [&](auto&& sample, auto&& pmf, int support) {
    std::vector<int> counts(static_cast<std::size_t>(support) + 1, 0);
    for (int i = 0; i < kDraws; ++i) {
      const Count x = sample();
      ++counts[static_cast<std::size_t>(std::min<Count>(x, support))];
    }
    for (int x = 0; x < support; ++x) {
      const double p = pmf(x);
      const double se = std::sqrt(p * (1 - p) / kDraws);
      CHECK(std::abs(counts[static_cast<std::size_t>(x)] / double(kDraws) - p) < 5 * se + 1e-4);
    }
  };
  check_sampler([&] { return noge_sample({0.3, 0.2}, rng); }, [](int x) { return noge_pmf(x, {0.3, 0.2}); }, 8);
  GPSampler gp({2.5, 0.3});
  check_sampler([&] { return gp(rng); }, [](int x) { return gp_pmf(x, {2.5, 0.3}); }, 8);
  GPSampler gp_trunc({2.0, -0.4});
  CHECK(gp_trunc.table_mass() == doctest::Approx(oracle::kGP_2_m04_mass).epsilon(1e-14));
  check_sampler([&] { return gp_trunc(rng); }, [](int x) { return gp_pmf(x, {2.0, -0.4}) / oracle::kGP_2_m04_mass; }, 5);
  check_sampler([&] { return nb_sample({2.5, 0.4}, rng); }, [](int x) { return nb_pmf(x, {2.5, 0.4}); }, 8);
  check_sampler([&] { return pois_sample({3.2}, rng); }, [](int x) { return pois_pmf(x, {3.2}); }, 8);
}

TEST_CASE("property: pmfs sum to one over random parameters") {
  Rng rng = make_stream(2024, 1);
  for (int i = 0; i < 50; ++i) {
    const NoGeParams noge{0.05 + 0.9 * uniform01(rng), 0.9 * uniform01(rng)};
    CHECK(noge_cdf(2000, noge) == doctest::Approx(1.0).epsilon(1e-12));
    const NBParams nb{0.2 + 20 * uniform01(rng), 0.1 + 0.8 * uniform01(rng)};
    CHECK(nb_cdf(4000, nb) == doctest::Approx(1.0).epsilon(1e-12));
  }
}
