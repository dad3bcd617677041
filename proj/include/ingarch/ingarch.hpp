#pragma once

// INGARCH(p, q) model definition and the conditional-mean recursion
//
//   lambda_t = alpha0 + sum_i alpha_i X_{t-i} + sum_j beta_j lambda_{t-j},
//
// together with first- and second-order stationarity checks and the closed-form
// autocovariances of the NoGe-INGARCH(1,1) process.

#include "ingarch/types.hpp"

#include <Eigen/Core>

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ingarch {

/// Model Theta = (alpha0, alpha_1..alpha_p, beta_1..beta_q, dispersion).
/// The dispersion is phi (NoGe), kappa (GP) or n (NB) and is ignored for Poisson.
template <typename Scalar>
struct BasicIngarchSpec {
  Family family = Family::NoGe;
  Scalar alpha0 = Scalar(1);
  VectorX<Scalar> alpha = VectorX<Scalar>::Zero(1);
  VectorX<Scalar> beta = VectorX<Scalar>::Zero(0);
  Scalar disp = Scalar(0);

  int p() const { return static_cast<int>(alpha.size()); }
  int q() const { return static_cast<int>(beta.size()); }
  Index num_params() const { return 1 + alpha.size() + beta.size() + (has_dispersion(family) ? 1 : 0); }

  /// Sum of all alpha_i and beta_j.
  Scalar persistence() const { return alpha.sum() + beta.sum(); }

  /// Packed parameter vector in the order (alpha0, alpha, beta, disp).
  VectorX<Scalar> packed() const {
    VectorX<Scalar> out(num_params());
    out(0) = alpha0;
    out.segment(1, alpha.size()) = alpha;
    out.segment(1 + alpha.size(), beta.size()) = beta;
    if (has_dispersion(family)) out(out.size() - 1) = disp;
    return out;
  }

  static BasicIngarchSpec from_packed(Family family, int p, int q, const VectorX<Scalar>& packed) {
    BasicIngarchSpec spec;
    spec.family = family;
    spec.alpha0 = packed(0);
    spec.alpha = packed.segment(1, p);
    spec.beta = packed.segment(1 + p, q);
    spec.disp = has_dispersion(family) ? packed(1 + p + q) : Scalar(0);
    return spec;
  }

  template <typename Other>
  BasicIngarchSpec<Other> cast() const {
    BasicIngarchSpec<Other> out;
    out.family = family;
    out.alpha0 = static_cast<Other>(alpha0);
    out.alpha = alpha.template cast<Other>();
    out.beta = beta.template cast<Other>();
    out.disp = static_cast<Other>(disp);
    return out;
  }
};

using IngarchSpec = BasicIngarchSpec<double>;

IngarchSpec make_spec(Family family, double alpha0, std::vector<double> alpha, std::vector<double> beta,
                      double disp = 0.0);

/// Names of the packed coordinates, e.g. alpha0, alpha1, beta1, phi.
std::vector<std::string> parameter_names(Family family, int p, int q);

/// Coordinate-wise admissibility: alpha0 > 0, alpha_i, beta_j >= 0 and the dispersion within
/// its family's bounds (phi in (0,1), kappa in (-1,1), n > 0).
void validate_bounds(const IngarchSpec& spec);

/// validate_bounds plus the path-wise link guarantees needed to simulate from the model:
/// NoGe requires alpha0 >= 1 - phi (so theta_t = (1-phi)/lambda_t <= 1 for every path) and
/// GP with kappa < 0 requires (1-kappa) alpha0 + 4 kappa > 0 (truncation point m >= 4).
void validate(const IngarchSpec& spec);

/// Ordered counts with an optional train/test split (number of training observations).
struct CountSeries {
  std::vector<Count> values;
  std::optional<std::size_t> split;

  std::size_t size() const { return values.size(); }
  std::span<const Count> all() const { return values; }
  std::span<const Count> train() const { return std::span<const Count>(values).first(split.value_or(values.size())); }
  std::span<const Count> test() const { return std::span<const Count>(values).subspan(split.value_or(values.size())); }
};

/// Pre-sample values of X and lambda used by the recursion before the first observation.
/// Stationary: the unconditional mean when sum(alpha)+sum(beta) < 1, otherwise
/// alpha0 / (1 - sum(beta)) when sum(beta) < 1, otherwise alpha0.
struct InitPolicy {
  enum class Kind { Stationary, Fixed };
  Kind kind = Kind::Stationary;
  double value = 0.0;

  static InitPolicy stationary() { return {}; }
  static InitPolicy fixed(double v) { return {Kind::Fixed, v}; }
};

/// Pre-sample value and, when `d_value` is given, its derivative with respect to the
/// recursion coordinates (alpha0, alpha, beta).
template <typename Scalar>
Scalar presample_value(const BasicIngarchSpec<Scalar>& spec, const InitPolicy& init,
                       VectorX<Scalar>* d_value = nullptr) {
  const Index k = 1 + spec.alpha.size() + spec.beta.size();
  if (d_value) d_value->setZero(k);
  if (init.kind == InitPolicy::Kind::Fixed) return Scalar(init.value);
  const Scalar s = spec.persistence();
  if (s < Scalar(1)) {
    const Scalar denom = Scalar(1) - s;
    const Scalar mu = spec.alpha0 / denom;
    if (d_value) {
      (*d_value)(0) = Scalar(1) / denom;
      d_value->tail(k - 1).setConstant(mu / denom);
    }
    return mu;
  }
  const Scalar b = spec.beta.sum();
  if (b < Scalar(1)) {
    const Scalar denom = Scalar(1) - b;
    if (d_value) {
      (*d_value)(0) = Scalar(1) / denom;
      d_value->tail(spec.beta.size()).setConstant(spec.alpha0 / (denom * denom));
    }
    return spec.alpha0 / denom;
  }
  if (d_value) (*d_value)(0) = Scalar(1);
  return spec.alpha0;
}

/// lambda_t for t = 1..n given X_1..X_n (returned 0-based). Pre-sample values per `init`.
template <typename Scalar>
VectorX<Scalar> lambda_filter(const BasicIngarchSpec<Scalar>& spec, std::span<const Count> x,
                              const InitPolicy& init = {}) {
  const Index n = static_cast<Index>(x.size());
  const int p = spec.p();
  const int q = spec.q();
  const Scalar pre = presample_value(spec, init);
  VectorX<Scalar> lambda(n);
  for (Index t = 0; t < n; ++t) {
    Scalar value = spec.alpha0;
    for (int i = 1; i <= p; ++i) {
      const Index s = t - i;
      value += spec.alpha(i - 1) * (s >= 0 ? Scalar(x[static_cast<std::size_t>(s)]) : pre);
    }
    for (int j = 1; j <= q; ++j) {
      const Index s = t - j;
      value += spec.beta(j - 1) * (s >= 0 ? lambda(s) : pre);
    }
    lambda(t) = value;
  }
  return lambda;
}

/// lambda_{n+1}: the recursion applied once past the end of a filtered path.
template <typename Scalar>
Scalar next_lambda(const BasicIngarchSpec<Scalar>& spec, std::span<const Count> x,
                   const VectorX<Scalar>& lambda, const InitPolicy& init = {}) {
  const Index n = static_cast<Index>(x.size());
  const Scalar pre = presample_value(spec, init);
  Scalar value = spec.alpha0;
  for (int i = 1; i <= spec.p(); ++i) {
    const Index s = n - i;
    value += spec.alpha(i - 1) * (s >= 0 ? Scalar(x[static_cast<std::size_t>(s)]) : pre);
  }
  for (int j = 1; j <= spec.q(); ++j) {
    const Index s = n - j;
    value += spec.beta(j - 1) * (s >= 0 ? lambda(s) : pre);
  }
  return value;
}

/// mu = alpha0 / (1 - sum(alpha) - sum(beta)). Throws NonstationarySpec when the sum is >= 1.
double unconditional_mean(const IngarchSpec& spec);

struct StationarityReport {
  bool mean_stationary = false;
  Eigen::VectorXcd char_roots;
  double max_root_modulus = 0.0;
  std::optional<bool> second_order_stationary;
  /// Coefficients L_1..L_p of the second-moment recursion (q = 0), or the single (1,1)
  /// coefficient zeta a1^2 + 2 a1 b1 + b1^2.
  std::optional<Vector> L_coeffs;
};

/// Roots of b^P - c_1 b^(P-1) - ... - c_P as eigenvalues of the companion matrix.
Eigen::VectorXcd characteristic_roots(const Vector& coeffs);

/// Mean stationarity: the roots of 1 - sum_{i<=q}(alpha_i + beta_i) b^-i - sum_{i>q} alpha_i b^-i
/// must lie inside the unit circle. For p <= q alpha is zero-padded to length q + 1.
StationarityReport mean_stationarity_check(const IngarchSpec& spec);

/// Second-order stationarity of NoGe models: the L_r recursion for INARCH(p) (q = 0) or the
/// closed (1,1) condition zeta a1^2 + 2 a1 b1 + b1^2 < 1 with zeta = 2/(1-phi). Other orders and
/// families report second_order_stationary = nullopt. Throws SingularMatrix if M is
/// numerically singular.
StationarityReport second_order_check(const IngarchSpec& spec);

/// Autocovariance structure of a second-order stationary NoGe-INGARCH(1,1) process.
struct Acvf11 {
  Vector gamma_x;       ///< Cov[X_t, X_{t-h}], h = 0..h_max
  Vector gamma_lambda;  ///< Cov[lambda_t, lambda_{t-h}]
  Vector rho_x;
  Vector rho_lambda;
  double uncond_var = 0.0;
  double uncond_mean = 0.0;
};

Acvf11 acvf_11(const IngarchSpec& spec, int h_max);

}  // namespace ingarch
