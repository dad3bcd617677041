#include "ingarch/count_dists.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace ingarch {

namespace {

template <typename LogPmf>
double cdf_by_summation(Count x, LogPmf&& logpmf) {
  if (x < 0) return 0.0;
  double sum = 0.0;
  for (Count k = 0; k <= x; ++k) sum += std::exp(logpmf(k));
  return sum;
}

std::string describe(const char* family, double a, double b) {
  std::ostringstream os;
  os << family << "(" << a << ", " << b << ")";
  return os.str();
}

}  // namespace

void validate(const NoGeParams& params) {
  if (!(params.theta > 0.0 && params.theta <= 1.0))
    throw InvalidParameter("NoGe theta must lie in (0, 1]: " + describe("NoGe", params.theta, params.phi));
  if (!(params.phi >= 0.0 && params.phi < 1.0))
    throw InvalidParameter("NoGe phi must lie in [0, 1): " + describe("NoGe", params.theta, params.phi));
}

void validate(const GPParams& params) {
  if (!(params.eta > 0.0)) throw InvalidParameter("GP eta must be positive: " + describe("GP", params.eta, params.kappa));
  if (!(params.kappa > -1.0 && params.kappa < 1.0))
    throw InvalidParameter("GP kappa must lie in (-1, 1): " + describe("GP", params.eta, params.kappa));
  if (params.kappa < 0.0 && !(params.eta + 4.0 * params.kappa > 0.0))
    throw TruncationViolation("GP truncation point below 4: " + describe("GP", params.eta, params.kappa));
}

void validate(const NBParams& params) {
  if (!(params.n > 0.0)) throw InvalidParameter("NB n must be positive: " + describe("NB", params.n, params.p));
  if (!(params.p > 0.0 && params.p < 1.0))
    throw InvalidParameter("NB p must lie in (0, 1): " + describe("NB", params.n, params.p));
}

void validate(const PoissonParams& params) {
  if (!(params.lambda > 0.0))
    throw InvalidParameter("Poisson lambda must be positive: " + std::to_string(params.lambda));
}

// NoGe

double noge_logpmf(Count x, const NoGeParams& params) {
  validate(params);
  return kernel::noge_logpmf(x, params.theta, params.phi);
}

double noge_pmf(Count x, const NoGeParams& params) { return std::exp(noge_logpmf(x, params)); }

double noge_cdf(Count x, const NoGeParams& params) {
  validate(params);
  return cdf_by_summation(x, [&](Count k) { return kernel::noge_logpmf(k, params.theta, params.phi); });
}

Count noge_sample(const NoGeParams& params, Rng& rng) {
  validate(params);
  if (uniform01(rng) < params.phi) return 0;
  if (params.theta == 1.0) return 1;
  // Failures before the first success of a Bernoulli(theta) sequence, by inversion.
  const double failures = std::floor(std::log(uniform_open0(rng)) / std::log1p(-params.theta));
  return 1 + static_cast<Count>(failures);
}

Moments noge_moments(const NoGeParams& params) {
  validate(params);
  const double mean = (1.0 - params.phi) / params.theta;
  return {mean, mean * ((1.0 + params.phi) / params.theta - 1.0)};
}

// GP

std::optional<Count> gp_truncation_point(const GPParams& params) {
  if (params.kappa >= 0.0) return std::nullopt;
  auto m = static_cast<Count>(std::floor(-params.eta / params.kappa));
  while (m > 0 && !(params.eta + params.kappa * static_cast<double>(m) > 0.0)) --m;
  while (params.eta + params.kappa * static_cast<double>(m + 1) > 0.0) ++m;
  return m;
}

double gp_logpmf(Count x, const GPParams& params) {
  validate(params);
  return kernel::gp_logpmf(x, params.eta, params.kappa);
}

double gp_pmf(Count x, const GPParams& params) { return std::exp(gp_logpmf(x, params)); }

double gp_cdf(Count x, const GPParams& params) {
  validate(params);
  if (auto m = gp_truncation_point(params)) x = std::min(x, *m);
  return cdf_by_summation(x, [&](Count k) { return kernel::gp_logpmf(k, params.eta, params.kappa); });
}

GPSampler::GPSampler(const GPParams& params) {
  validate(params);
  const auto m = gp_truncation_point(params);
  const Moments mom = gp_moments(params);
  const double sd = std::sqrt(mom.variance);
  double sum = 0.0;
  for (Count k = 0;; ++k) {
    if (m && k > *m) break;
    sum += std::exp(kernel::gp_logpmf(k, params.eta, params.kappa));
    cumulative_.push_back(sum);
    if (!m && static_cast<double>(k) > mom.mean && 1.0 - sum < 1e-15) break;
    // Guard for rounding leaving the running sum a few ulps short of one.
    if (!m && static_cast<double>(k) > mom.mean + 60.0 * sd + 50.0) break;
  }
}

Count GPSampler::operator()(Rng& rng) const {
  const double u = uniform01(rng) * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<Count>(std::min<std::ptrdiff_t>(it - cumulative_.begin(),
                                                     static_cast<std::ptrdiff_t>(cumulative_.size()) - 1));
}

Count gp_sample(const GPParams& params, Rng& rng) { return GPSampler(params)(rng); }

Moments gp_moments(const GPParams& params) {
  validate(params);
  const double one_minus = 1.0 - params.kappa;
  return {params.eta / one_minus, params.eta / (one_minus * one_minus * one_minus)};
}

// NB

double nb_logpmf(Count x, const NBParams& params) {
  validate(params);
  return kernel::nb_logpmf(x, params.n, params.p);
}

double nb_pmf(Count x, const NBParams& params) { return std::exp(nb_logpmf(x, params)); }

double nb_cdf(Count x, const NBParams& params) {
  validate(params);
  return cdf_by_summation(x, [&](Count k) { return kernel::nb_logpmf(k, params.n, params.p); });
}

Count nb_sample(const NBParams& params, Rng& rng) {
  validate(params);
  // Gamma-Poisson mixture.
  std::gamma_distribution<double> gamma(params.n, (1.0 - params.p) / params.p);
  const double rate = gamma(rng);
  if (!(rate > 0.0)) return 0;
  std::poisson_distribution<Count> poisson(rate);
  return poisson(rng);
}

Moments nb_moments(const NBParams& params) {
  validate(params);
  const double q = 1.0 - params.p;
  return {params.n * q / params.p, params.n * q / (params.p * params.p)};
}

// Poisson

double pois_logpmf(Count x, const PoissonParams& params) {
  validate(params);
  return kernel::poisson_logpmf(x, params.lambda);
}

double pois_pmf(Count x, const PoissonParams& params) { return std::exp(pois_logpmf(x, params)); }

double pois_cdf(Count x, const PoissonParams& params) {
  validate(params);
  return cdf_by_summation(x, [&](Count k) { return kernel::poisson_logpmf(k, params.lambda); });
}

Count pois_sample(const PoissonParams& params, Rng& rng) {
  validate(params);
  std::poisson_distribution<Count> poisson(params.lambda);
  return poisson(rng);
}

Moments pois_moments(const PoissonParams& params) {
  validate(params);
  return {params.lambda, params.lambda};
}

}  // namespace ingarch
