#pragma once

// Conditional log-likelihood of an INGARCH path and its gradient with respect to the
// packed parameter vector (alpha0, alpha, beta, disp).

#include "ingarch/conditional.hpp"
#include "ingarch/ingarch.hpp"

#include <Eigen/Core>

#include <span>

namespace ingarch {

/// sum_t log Pr[X_t = x_t | lambda_t]; -inf as soon as any term is impossible.
template <typename Scalar>
Scalar loglik(const BasicIngarchSpec<Scalar>& spec, std::span<const Count> x, const InitPolicy& init = {}) {
  const VectorX<Scalar> lambda = lambda_filter(spec, x, init);
  Scalar total = 0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    const Scalar term = conditional_logpmf(spec.family, x[t], lambda(static_cast<Index>(t)), spec.disp);
    if (!(term > kernel::neg_inf<Scalar>())) return kernel::neg_inf<Scalar>();
    total += term;
  }
  return total;
}

/// log Pr[X_t = x_t | lambda_t] for every t.
template <typename Scalar>
VectorX<Scalar> per_observation_logpmf(const BasicIngarchSpec<Scalar>& spec, std::span<const Count> x,
                                       const InitPolicy& init = {}) {
  const VectorX<Scalar> lambda = lambda_filter(spec, x, init);
  VectorX<Scalar> out(lambda.size());
  for (Index t = 0; t < lambda.size(); ++t)
    out(t) = conditional_logpmf(spec.family, x[static_cast<std::size_t>(t)], lambda(t), spec.disp);
  return out;
}

template <typename Scalar>
struct LoglikGrad {
  Scalar value;
  VectorX<Scalar> grad;  ///< d loglik / d packed(); zero when value is -inf
};

/// Log-likelihood and its exact gradient. The conditional-mean sensitivities follow
///   d lambda_t = e_alpha0 + sum_i X_{t-i} e_alpha_i + sum_j (lambda_{t-j} e_beta_j + beta_j d lambda_{t-j}),
/// with pre-sample values (and their parameter dependence) per `init`.
template <typename Scalar>
LoglikGrad<Scalar> loglik_with_grad(const BasicIngarchSpec<Scalar>& spec, std::span<const Count> x,
                                    const InitPolicy& init = {}) {
  const int p = spec.p();
  const int q = spec.q();
  const Index k = 1 + p + q;
  const Index dim = spec.num_params();
  const auto n = static_cast<Index>(x.size());

  VectorX<Scalar> d_pre;
  const Scalar pre = presample_value(spec, init, &d_pre);

  VectorX<Scalar> lambda(n);
  MatrixX<Scalar> d_lambda(k, n);  // column t holds d lambda_t / d(alpha0, alpha, beta)
  LoglikGrad<Scalar> out{Scalar(0), VectorX<Scalar>::Zero(dim)};

  for (Index t = 0; t < n; ++t) {
    Scalar value = spec.alpha0;
    VectorX<Scalar> dv = VectorX<Scalar>::Zero(k);
    dv(0) = Scalar(1);
    for (int i = 1; i <= p; ++i) {
      const Index s = t - i;
      if (s >= 0) {
        const Scalar xs = Scalar(x[static_cast<std::size_t>(s)]);
        value += spec.alpha(i - 1) * xs;
        dv(i) += xs;
      } else {
        value += spec.alpha(i - 1) * pre;
        dv(i) += pre;
        dv += spec.alpha(i - 1) * d_pre;
      }
    }
    for (int j = 1; j <= q; ++j) {
      const Index s = t - j;
      const Scalar b = spec.beta(j - 1);
      if (s >= 0) {
        value += b * lambda(s);
        dv(p + j) += lambda(s);
        dv += b * d_lambda.col(s);
      } else {
        value += b * pre;
        dv(p + j) += pre;
        dv += b * d_pre;
      }
    }
    lambda(t) = value;
    d_lambda.col(t) = dv;

    const auto term = conditional_logpmf_partials(spec.family, x[static_cast<std::size_t>(t)], value, spec.disp);
    if (!(term.value > kernel::neg_inf<Scalar>())) return {kernel::neg_inf<Scalar>(), VectorX<Scalar>::Zero(dim)};
    out.value += term.value;
    out.grad.head(k) += term.d_lambda * dv;
    if (dim > k) out.grad(k) += term.d_disp;
  }
  return out;
}

/// NoGe-INGARCH log-likelihood. Throws InvalidParameter for a non-NoGe spec or a spec
/// outside the coordinate bounds.
double noge_loglik(const IngarchSpec& spec, std::span<const Count> x, const InitPolicy& init = {});

/// Gradient of noge_loglik with respect to (alpha0, alpha, beta, phi). Throws
/// InvalidParameter when the spec is not strictly interior or the likelihood is -inf there.
Vector noge_loglik_grad(const IngarchSpec& spec, std::span<const Count> x, const InitPolicy& init = {});

/// Log-likelihood of any family after a bounds check.
double family_loglik(const IngarchSpec& spec, std::span<const Count> x, const InitPolicy& init = {});

}  // namespace ingarch
