#include "ingarch/posterior.hpp"

#include "ingarch/likelihood.hpp"

#include <cmath>
#include <limits>

namespace ingarch {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;

}  // namespace

PriorSpec PriorSpec::defaults(Index dim, double sd) {
  PriorSpec priors;
  priors.mean = Vector::Zero(dim);
  priors.sd = Vector::Constant(dim, sd);
  return priors;
}

void PriorSpec::check(Index dim) const {
  if (mean.size() != dim || sd.size() != dim) throw InvalidParameter("prior dimension does not match the model");
  if (!(sd.array() > 0.0).all() || !sd.allFinite()) throw InvalidParameter("prior standard deviations must be positive");
}

double normal_logpdf(double z, double mean, double sd) {
  const double u = (z - mean) / sd;
  return -0.5 * u * u - std::log(sd) - kLogSqrt2Pi;
}

double log_prior_unconstrained(const PriorSpec& priors, const Vector& z) {
  double total = 0.0;
  for (Index k = 0; k < z.size(); ++k) total += normal_logpdf(z(k), priors.mean(k), priors.sd(k));
  return total;
}

double log_prior_constrained(const PriorSpec& priors, const TransformSpec& ts, const Vector& theta) {
  const Vector z = to_unconstrained(ts, theta);
  return log_prior_unconstrained(priors, z) - log_abs_det_jacobian(ts, z);
}

Posterior::Posterior(std::span<const Count> series, Family family, int p, int q, PriorSpec priors, InitPolicy init)
    : series_(series.begin(), series.end()),
      ts_(default_transform(family, p, q)),
      priors_(std::move(priors)),
      init_(init) {
  priors_.check(ts_.dim());
}

double Posterior::log_density(const Vector& z) const {
  Vector grad;
  return log_density(z, grad);
}

double Posterior::log_density(const Vector& z, Vector& grad) const {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  grad.setZero(ts_.dim());
  if (!z.allFinite()) return kNegInf;
  const Vector theta = to_constrained_packed(ts_, z);
  if (!strictly_interior(ts_, theta)) return kNegInf;
  const IngarchSpec spec = IngarchSpec::from_packed(ts_.family, ts_.p, ts_.q, theta);
  if (priors_.strict_stationarity && !(spec.persistence() < 1.0)) return kNegInf;

  const auto ll = loglik_with_grad(spec, series_, init_);
  if (!std::isfinite(ll.value)) return kNegInf;
  grad = ll.grad.cwiseProduct(jacobian_diagonal(ts_, z));
  for (Index k = 0; k < z.size(); ++k) grad(k) -= (z(k) - priors_.mean(k)) / (priors_.sd(k) * priors_.sd(k));
  return ll.value + log_prior_unconstrained(priors_, z);
}

LogDensityFn Posterior::as_function() const {
  return [this](const Vector& z, Vector& grad) { return log_density(z, grad); };
}

}  // namespace ingarch
