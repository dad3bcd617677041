#pragma once

// Bijections between the constrained parameter vector (alpha0, alpha, beta, disp) and R^k:
// log for positive coordinates and the scaled log-odds logit((theta - l)/(u - l)) for
// bounded ones.

#include "ingarch/ingarch.hpp"

#include <vector>

namespace ingarch {

struct CoordTransform {
  enum class Kind { Log, ScaledLogit };
  Kind kind = Kind::Log;
  double lower = 0.0;
  double upper = 1.0;

  static CoordTransform log() { return {}; }
  static CoordTransform scaled_logit(double l, double u) { return {Kind::ScaledLogit, l, u}; }

  double forward(double theta) const;  ///< constrained -> unconstrained
  double inverse(double z) const;      ///< unconstrained -> constrained
  double log_jacobian(double z) const;  ///< log |d theta / d z|
  double forward_derivative(double z) const;  ///< d theta / d z
  double log_jacobian_derivative(double z) const;  ///< d log |d theta / d z| / dz
};

struct TransformSpec {
  Family family = Family::NoGe;
  int p = 1;
  int q = 0;
  std::vector<CoordTransform> coords;

  Index dim() const { return static_cast<Index>(coords.size()); }
};

/// alpha0 and NB n: log. alpha_i, beta_j, phi: scaled logit on (0, 1). kappa: scaled logit on (-1, 1).
TransformSpec default_transform(Family family, int p, int q);

/// Throws InvalidParameter when a coordinate sits on (or outside) its bound.
Vector to_unconstrained(const TransformSpec& ts, const IngarchSpec& spec);
Vector to_unconstrained(const TransformSpec& ts, const Vector& packed);

IngarchSpec to_constrained(const TransformSpec& ts, const Vector& z);
Vector to_constrained_packed(const TransformSpec& ts, const Vector& z);

/// d theta_k / d z_k for every coordinate (the Jacobian is diagonal).
Vector jacobian_diagonal(const TransformSpec& ts, const Vector& z);

double log_abs_det_jacobian(const TransformSpec& ts, const Vector& z);
Vector log_abs_det_jacobian_grad(const TransformSpec& ts, const Vector& z);

/// True when every mapped coordinate is strictly inside its bounds (double rounding can land
/// on a bound for extreme z).
bool strictly_interior(const TransformSpec& ts, const Vector& packed);

}  // namespace ingarch
