#pragma once

// Conditional count distributions: novel geometric (NoGe), generalized Poisson (GP),
// negative binomial (NB) and Poisson.
//
// The `kernel` namespace holds the scalar-templated log-pmfs used inside the likelihood;
// the parameter structs and free functions below are the checked double-precision surface.

#include "ingarch/rng.hpp"
#include "ingarch/types.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#if defined(__GLIBC__)
#include <math.h>
#endif

namespace ingarch {

namespace kernel {

template <typename Scalar>
constexpr Scalar neg_inf() {
  return -std::numeric_limits<Scalar>::infinity();
}

/// lgamma without touching the global `signgam` where the platform allows it.
inline double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

inline long double log_gamma(long double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgammal_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

/// Digamma for x > 0: upward recurrence to x >= 12, then the asymptotic series.
template <typename Scalar>
Scalar digamma(Scalar x) {
  using std::log;
  Scalar shift = 0;
  while (x < Scalar(12)) {
    shift -= Scalar(1) / x;
    x += Scalar(1);
  }
  const Scalar f = Scalar(1) / (x * x);
  const Scalar series =
      f * (Scalar(1) / 12 -
           f * (Scalar(1) / 120 -
                f * (Scalar(1) / 252 -
                     f * (Scalar(1) / 240 - f * (Scalar(1) / 132 - f * (Scalar(691) / 32760))))));
  return shift + log(x) - Scalar(0.5) / x - series;
}

/// log Pr[X = x] for NoGe(theta, phi): phi at zero, (1-phi)(1-theta)^(x-1) theta on x >= 1.
template <typename Scalar>
Scalar noge_logpmf(Count x, Scalar theta, Scalar phi) {
  using std::log;
  using std::log1p;
  if (x < 0) return neg_inf<Scalar>();
  if (x == 0) return log(phi);
  if (theta == Scalar(1)) return x == 1 ? log1p(-phi) : neg_inf<Scalar>();
  return log1p(-phi) + Scalar(x - 1) * log1p(-theta) + log(theta);
}

/// log Pr[X = x] for GP(eta, kappa); zero mass wherever eta + kappa x <= 0.
template <typename Scalar>
Scalar gp_logpmf(Count x, Scalar eta, Scalar kappa) {
  using std::log;
  if (x < 0) return neg_inf<Scalar>();
  const Scalar s = eta + kappa * Scalar(x);
  if (!(s > Scalar(0))) return neg_inf<Scalar>();
  return log(eta) + Scalar(x - 1) * log(s) - s - log_gamma(Scalar(x + 1));
}

/// log Pr[X = x] for NB(n, p): failures before the n-th success, mean n(1-p)/p. Real n > 0.
template <typename Scalar>
Scalar nb_logpmf(Count x, Scalar n, Scalar p) {
  using std::log;
  using std::log1p;
  if (x < 0) return neg_inf<Scalar>();
  const Scalar xs = Scalar(x);
  return log_gamma(xs + n) - log_gamma(n) - log_gamma(xs + Scalar(1)) + n * log(p) +
         (x == 0 ? Scalar(0) : xs * log1p(-p));
}

template <typename Scalar>
Scalar poisson_logpmf(Count x, Scalar lambda) {
  using std::log;
  if (x < 0) return neg_inf<Scalar>();
  const Scalar xs = Scalar(x);
  return (x == 0 ? Scalar(0) : xs * log(lambda)) - lambda - log_gamma(xs + Scalar(1));
}

}  // namespace kernel

struct Moments {
  double mean;
  double variance;
};

/// NoGe(theta, phi). The boundary phi = 0 (no zero inflation) is admitted as a degenerate case.
struct NoGeParams {
  double theta;
  double phi;
};

/// GP(eta, kappa) with -1 < kappa < 1; for kappa < 0 the support ends at the truncation point m.
struct GPParams {
  double eta;
  double kappa;
};

/// NB(n, p). n is a positive real; integer n gives the classical waiting-time law.
struct NBParams {
  double n;
  double p;
};

struct PoissonParams {
  double lambda;
};

/// Thrown when kappa < 0 leaves fewer than four support points beyond zero (m < 4).
class TruncationViolation : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

void validate(const NoGeParams& params);
void validate(const GPParams& params);
void validate(const NBParams& params);
void validate(const PoissonParams& params);

double noge_pmf(Count x, const NoGeParams& params);
double noge_logpmf(Count x, const NoGeParams& params);
double noge_cdf(Count x, const NoGeParams& params);
Count noge_sample(const NoGeParams& params, Rng& rng);
Moments noge_moments(const NoGeParams& params);

/// Largest m with eta + kappa m > 0 when kappa < 0; nullopt for unbounded support.
std::optional<Count> gp_truncation_point(const GPParams& params);
double gp_pmf(Count x, const GPParams& params);
double gp_logpmf(Count x, const GPParams& params);
double gp_cdf(Count x, const GPParams& params);
Count gp_sample(const GPParams& params, Rng& rng);
Moments gp_moments(const GPParams& params);

/// Inversion sampler over a cached cumulative table of GP(eta, kappa).
/// The table covers 0..m for kappa < 0 (renormalised by its total) and otherwise
/// extends until the remaining mass is below 1e-15.
class GPSampler {
 public:
  explicit GPSampler(const GPParams& params);
  Count operator()(Rng& rng) const;
  double table_mass() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

 private:
  std::vector<double> cumulative_;
};

double nb_pmf(Count x, const NBParams& params);
double nb_logpmf(Count x, const NBParams& params);
double nb_cdf(Count x, const NBParams& params);
Count nb_sample(const NBParams& params, Rng& rng);
Moments nb_moments(const NBParams& params);

double pois_pmf(Count x, const PoissonParams& params);
double pois_logpmf(Count x, const PoissonParams& params);
double pois_cdf(Count x, const PoissonParams& params);
Count pois_sample(const PoissonParams& params, Rng& rng);
Moments pois_moments(const PoissonParams& params);

}  // namespace ingarch
