#include "ingarch/chain_stats.hpp"
#include "ingarch/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

using namespace ingarch;

namespace {

Vector white_noise(Index n, std::uint64_t seed) {
  Rng rng = make_stream(seed, 0);
  Vector x(n);
  for (Index i = 0; i < n; ++i) x(i) = standard_normal(rng);
  return x;
}

Vector ar1(Index n, double rho, std::uint64_t seed) {
  Vector e = white_noise(n, seed);
  Vector x(n);
  x(0) = e(0) / std::sqrt(1 - rho * rho);
  for (Index i = 1; i < n; ++i) x(i) = rho * x(i - 1) + e(i);
  return x;
}

std::size_t count_lines(const std::string& path) {
  std::ifstream in(path);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

}  // namespace

TEST_CASE("constant chains") {
  const Vector c = Vector::Constant(100, 2.5);
  CHECK(sample_acf(c, 10).size() == 0);
  CHECK(std::isnan(effective_sample_size(c)));
  Chain chain;
  chain.names = {"a"};
  chain.draws = c;
  const ChainSummary s = chain_summary(chain);
  CHECK(s.params[0].degenerate);
  CHECK(s.params[0].mean == doctest::Approx(2.5));
  CHECK(s.params[0].sd == 0.0);
}

TEST_CASE("ESS of independent and AR(1) draws") {
  const double iid = effective_sample_size(white_noise(10000, 1));
  CHECK(iid >= 8000);
  CHECK(iid <= 12000);
  const double rho = 0.7;
  const double ar = effective_sample_size(ar1(50000, rho, 2));
  CHECK(ar == doctest::Approx(50000 * (1 - rho) / (1 + rho)).epsilon(0.2));
}

TEST_CASE("white-noise ACF lies in the band") {
  const Index n = 5000;
  const Vector acf = sample_acf(white_noise(n, 3), 50);
  CHECK(acf(0) == doctest::Approx(1.0));
  int outside = 0;
  for (Index h = 1; h <= 50; ++h) outside += std::abs(acf(h)) > 1.96 / std::sqrt(static_cast<double>(n)) ? 1 : 0;
  CHECK(outside <= 6);
  const Vector acf_ar = sample_acf(ar1(20000, 0.5, 4), 3);
  CHECK(acf_ar(1) == doctest::Approx(0.5).epsilon(0.05));
  CHECK(acf_ar(2) == doctest::Approx(0.25).epsilon(0.12));
}

TEST_CASE("split R-hat") {
  std::vector<Vector> same{white_noise(2000, 5), white_noise(2000, 6), white_noise(2000, 7)};
  CHECK(split_rhat(same) < 1.01);
  std::vector<Vector> shifted = same;
  shifted[0].array() += 3.0;
  CHECK(split_rhat(shifted) > 1.1);
}

TEST_CASE("quantiles and summary identities") {
  Vector x(5);
  x << 4, 1, 3, 2, 5;
  CHECK(quantile(x, 0.5) == doctest::Approx(3.0));
  CHECK(quantile(x, 0.0) == doctest::Approx(1.0));
  CHECK(quantile(x, 1.0) == doctest::Approx(5.0));
  CHECK(quantile(x, 0.125) == doctest::Approx(1.5));

  Chain chain;
  chain.names = {"a", "b"};
  chain.draws.resize(3000, 2);
  chain.draws.col(0) = white_noise(3000, 8);
  chain.draws.col(1) = ar1(3000, 0.3, 9);
  const ChainSummary s = chain_summary(chain);
  CHECK(s.draws == 3000);
  CHECK(s.params[0].mean == doctest::Approx(chain.draws.col(0).mean()).epsilon(1e-14));
  CHECK(s.params[1].q025 < s.params[1].q50);
  CHECK(s.params[1].q50 < s.params[1].q975);
}

TEST_CASE("diagnostics export") {
  const auto dir = std::filesystem::temp_directory_path() / "ingarch_diag_test";
  std::filesystem::create_directories(dir);
  Chain chain;
  chain.names = {"alpha0", "phi"};
  chain.draws.resize(700, 2);
  chain.draws.col(0) = white_noise(700, 10);
  chain.draws.col(1) = ar1(700, 0.5, 11);
  const DiagnosticsFiles files = chain_diagnostics_export(chain, (dir / "m").string(), 25);
  REQUIRE(files.trace.size() == 2);
  CHECK(files.trace[1] == (dir / "m_phi_trace.csv").string());
  for (int k = 0; k < 2; ++k) {
    CHECK(count_lines(files.trace[k]) == 701);
    CHECK(count_lines(files.histogram[k]) == 26);
    CHECK(count_lines(files.acf[k]) == 52);
    std::ifstream hist(files.histogram[k]);
    std::string line;
    std::getline(hist, line);
    CHECK(line == "left,right,count");
    long total = 0;
    while (std::getline(hist, line)) total += std::stol(line.substr(line.rfind(',') + 1));
    CHECK(total == 700);
  }
  std::filesystem::remove_all(dir);
}
