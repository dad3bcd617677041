#pragma once

// Conditional law of X_t given lambda_t for each family, written in terms of the
// conditional mean parameter lambda and the dispersion:
//
//   NoGe     theta = (1 - phi) / lambda
//   GP       eta   = (1 - kappa) lambda
//   NB       p     = 1 / (1 + lambda), conditional mean n lambda
//   Poisson  mean lambda

#include "ingarch/count_dists.hpp"
#include "ingarch/types.hpp"

#include <cmath>

namespace ingarch {

/// Guard on log arguments near the theta = 1 boundary of NoGe.
inline constexpr double kLogGuard = 1e-12;

template <typename Scalar>
struct LogPmfPartials {
  Scalar value;
  Scalar d_lambda;
  Scalar d_disp;
};

namespace kernel {

/// NoGe log-pmf in lambda form. -inf when lambda < 1 - phi, or when x >= 2 and
/// 1 - theta falls below the guard.
template <typename Scalar>
LogPmfPartials<Scalar> noge_lambda_logpmf(Count x, Scalar lambda, Scalar phi) {
  using std::log;
  const Scalar c = Scalar(1) - phi;
  if (!(lambda >= c) || !(phi > Scalar(0))) return {neg_inf<Scalar>(), Scalar(0), Scalar(0)};
  if (x == 0) return {log(phi), Scalar(0), Scalar(1) / phi};
  if (x == 1) return {Scalar(2) * log(c) - log(lambda), -Scalar(1) / lambda, -Scalar(2) / c};
  const Scalar g = Scalar(1) - c / lambda;
  if (!(g >= Scalar(kLogGuard))) return {neg_inf<Scalar>(), Scalar(0), Scalar(0)};
  const Scalar k = Scalar(x - 1);
  return {Scalar(2) * log(c) + k * log(g) - log(lambda),
          k * (c / (lambda * lambda)) / g - Scalar(1) / lambda,
          -Scalar(2) / c + k / (lambda * g)};
}

template <typename Scalar>
LogPmfPartials<Scalar> gp_lambda_logpmf(Count x, Scalar lambda, Scalar kappa) {
  using std::log;
  const Scalar eta = (Scalar(1) - kappa) * lambda;
  const Scalar xs = Scalar(x);
  const Scalar s = eta + kappa * xs;
  if (!(eta > Scalar(0)) || !(s > Scalar(0))) return {neg_inf<Scalar>(), Scalar(0), Scalar(0)};
  // kappa < 0 needs at least four support points beyond zero.
  if (kappa < Scalar(0) && !(eta + Scalar(4) * kappa > Scalar(0))) return {neg_inf<Scalar>(), Scalar(0), Scalar(0)};
  const Scalar d_eta = Scalar(1) / eta + (xs - Scalar(1)) / s - Scalar(1);
  return {gp_logpmf(x, eta, kappa), (Scalar(1) - kappa) * d_eta,
          -lambda * d_eta + xs * (xs - Scalar(1)) / s - xs};
}

template <typename Scalar>
LogPmfPartials<Scalar> nb_lambda_logpmf(Count x, Scalar lambda, Scalar n) {
  using std::log;
  using std::log1p;
  if (!(lambda > Scalar(0)) || !(n > Scalar(0))) return {neg_inf<Scalar>(), Scalar(0), Scalar(0)};
  const Scalar xs = Scalar(x);
  const Scalar l1p = log1p(lambda);
  const Scalar value = log_gamma(xs + n) - log_gamma(n) - log_gamma(xs + Scalar(1)) - n * l1p +
                       (x == 0 ? Scalar(0) : xs * (log(lambda) - l1p));
  return {value, xs / lambda - (n + xs) / (Scalar(1) + lambda), digamma(xs + n) - digamma(n) - l1p};
}

template <typename Scalar>
LogPmfPartials<Scalar> poisson_lambda_logpmf(Count x, Scalar lambda) {
  if (!(lambda > Scalar(0))) return {neg_inf<Scalar>(), Scalar(0), Scalar(0)};
  return {poisson_logpmf(x, lambda), Scalar(x) / lambda - Scalar(1), Scalar(0)};
}

}  // namespace kernel

/// log Pr[X_t = x | lambda_t = lambda] with partials in lambda and the dispersion.
template <typename Scalar>
LogPmfPartials<Scalar> conditional_logpmf_partials(Family family, Count x, Scalar lambda, Scalar disp) {
  if (x < 0) return {kernel::neg_inf<Scalar>(), Scalar(0), Scalar(0)};
  switch (family) {
    case Family::NoGe: return kernel::noge_lambda_logpmf(x, lambda, disp);
    case Family::GP: return kernel::gp_lambda_logpmf(x, lambda, disp);
    case Family::NB: return kernel::nb_lambda_logpmf(x, lambda, disp);
    case Family::Poisson: return kernel::poisson_lambda_logpmf(x, lambda);
  }
  return {kernel::neg_inf<Scalar>(), Scalar(0), Scalar(0)};
}

template <typename Scalar>
Scalar conditional_logpmf(Family family, Count x, Scalar lambda, Scalar disp) {
  return conditional_logpmf_partials(family, x, lambda, disp).value;
}

/// E[X_t | lambda_t]: lambda for every family except NB, where it is n lambda.
template <typename Scalar>
Scalar conditional_mean(Family family, Scalar lambda, Scalar disp) {
  return family == Family::NB ? disp * lambda : lambda;
}

/// Var[X_t | lambda_t].
template <typename Scalar>
Scalar conditional_variance(Family family, Scalar lambda, Scalar disp) {
  switch (family) {
    case Family::NoGe: return lambda * ((Scalar(1) + disp) / (Scalar(1) - disp) * lambda - Scalar(1));
    case Family::GP: return lambda / ((Scalar(1) - disp) * (Scalar(1) - disp));
    case Family::NB: return disp * lambda * (Scalar(1) + lambda);
    case Family::Poisson: return lambda;
  }
  return Scalar(0);
}

/// Draw X_t given lambda_t. NoGe clamps theta to 1 when lambda < 1 - phi.
Count conditional_sample(Family family, double lambda, double disp, Rng& rng);

/// Pr[X_t <= x | lambda_t] by summation of the conditional pmf (closed form for NoGe).
double conditional_cdf(Family family, Count x, double lambda, double disp);

/// Total conditional mass on the support: below one only for GP with kappa < 0.
double conditional_support_mass(Family family, double lambda, double disp);

}  // namespace ingarch
