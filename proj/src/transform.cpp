#include "ingarch/transform.hpp"

#include <cmath>
#include <string>

namespace ingarch {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log sigma(z) and log (1 - sigma(z)) without cancellation.
double log_sigmoid(double z) { return z >= 0.0 ? -std::log1p(std::exp(-z)) : z - std::log1p(std::exp(z)); }

}  // namespace

double CoordTransform::forward(double theta) const {
  if (kind == Kind::Log) {
    if (!(theta > 0.0) || !std::isfinite(theta))
      throw InvalidParameter("log transform needs a positive value, got " + std::to_string(theta));
    return std::log(theta);
  }
  if (!(theta > lower && theta < upper))
    throw InvalidParameter("scaled logit needs a value strictly inside (" + std::to_string(lower) + ", " +
                           std::to_string(upper) + "), got " + std::to_string(theta));
  const double a = theta - lower;
  const double b = upper - theta;
  return std::log(a) - std::log(b);
}

double CoordTransform::inverse(double z) const {
  if (kind == Kind::Log) return std::exp(z);
  // Evaluate from the nearer bound so round trips keep full relative precision.
  const double width = upper - lower;
  return z <= 0.0 ? lower + width * sigmoid(z) : upper - width * sigmoid(-z);
}

double CoordTransform::forward_derivative(double z) const {
  if (kind == Kind::Log) return std::exp(z);
  const double s = sigmoid(z);
  return (upper - lower) * s * (1.0 - s);
}

double CoordTransform::log_jacobian(double z) const {
  if (kind == Kind::Log) return z;
  return std::log(upper - lower) + log_sigmoid(z) + log_sigmoid(-z);
}

double CoordTransform::log_jacobian_derivative(double z) const {
  if (kind == Kind::Log) return 1.0;
  return 1.0 - 2.0 * sigmoid(z);
}

TransformSpec default_transform(Family family, int p, int q) {
  TransformSpec ts;
  ts.family = family;
  ts.p = p;
  ts.q = q;
  ts.coords.push_back(CoordTransform::log());
  for (int i = 0; i < p + q; ++i) ts.coords.push_back(CoordTransform::scaled_logit(0.0, 1.0));
  switch (family) {
    case Family::NoGe: ts.coords.push_back(CoordTransform::scaled_logit(0.0, 1.0)); break;
    case Family::GP: ts.coords.push_back(CoordTransform::scaled_logit(-1.0, 1.0)); break;
    case Family::NB: ts.coords.push_back(CoordTransform::log()); break;
    case Family::Poisson: break;
  }
  return ts;
}

Vector to_unconstrained(const TransformSpec& ts, const Vector& packed) {
  if (packed.size() != ts.dim()) throw InvalidParameter("parameter vector has the wrong length for the transform");
  Vector z(ts.dim());
  for (Index k = 0; k < ts.dim(); ++k) z(k) = ts.coords[static_cast<std::size_t>(k)].forward(packed(k));
  return z;
}

Vector to_unconstrained(const TransformSpec& ts, const IngarchSpec& spec) {
  if (spec.family != ts.family || spec.p() != ts.p || spec.q() != ts.q)
    throw InvalidParameter("spec does not match the transform's family and order");
  return to_unconstrained(ts, spec.packed());
}

Vector to_constrained_packed(const TransformSpec& ts, const Vector& z) {
  if (z.size() != ts.dim()) throw InvalidParameter("unconstrained vector has the wrong length for the transform");
  Vector theta(ts.dim());
  for (Index k = 0; k < ts.dim(); ++k) theta(k) = ts.coords[static_cast<std::size_t>(k)].inverse(z(k));
  return theta;
}

IngarchSpec to_constrained(const TransformSpec& ts, const Vector& z) {
  return IngarchSpec::from_packed(ts.family, ts.p, ts.q, to_constrained_packed(ts, z));
}

Vector jacobian_diagonal(const TransformSpec& ts, const Vector& z) {
  Vector d(ts.dim());
  for (Index k = 0; k < ts.dim(); ++k) d(k) = ts.coords[static_cast<std::size_t>(k)].forward_derivative(z(k));
  return d;
}

double log_abs_det_jacobian(const TransformSpec& ts, const Vector& z) {
  double total = 0.0;
  for (Index k = 0; k < ts.dim(); ++k) total += ts.coords[static_cast<std::size_t>(k)].log_jacobian(z(k));
  return total;
}

Vector log_abs_det_jacobian_grad(const TransformSpec& ts, const Vector& z) {
  Vector g(ts.dim());
  for (Index k = 0; k < ts.dim(); ++k) g(k) = ts.coords[static_cast<std::size_t>(k)].log_jacobian_derivative(z(k));
  return g;
}

bool strictly_interior(const TransformSpec& ts, const Vector& packed) {
  for (Index k = 0; k < ts.dim(); ++k) {
    const auto& c = ts.coords[static_cast<std::size_t>(k)];
    const double v = packed(k);
    if (!std::isfinite(v)) return false;
    if (c.kind == CoordTransform::Kind::Log ? !(v > 0.0) : !(v > c.lower && v < c.upper)) return false;
  }
  return true;
}

}  // namespace ingarch
