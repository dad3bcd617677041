#include "ingarch/cmle.hpp"

#include "ingarch/likelihood.hpp"
#include "ingarch/rng.hpp"
#include "ingarch/transform.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ingarch {

namespace {

// Objective over the free (unpinned) coordinates in unconstrained space.
class Objective {
 public:
  Objective(std::span<const Count> x, Family family, int p, int q, const FitOptions& opts)
      : x_(x), ts_(default_transform(family, p, q)), init_(opts.init) {
    const Index dim = ts_.dim();
    fixed_ = opts.fixed;
    fixed_.resize(static_cast<std::size_t>(dim));
    for (Index k = 0; k < dim; ++k)
      if (!fixed_[static_cast<std::size_t>(k)]) free_.push_back(k);
  }

  Index free_dim() const { return static_cast<Index>(free_.size()); }
  const TransformSpec& transform() const { return ts_; }

  Vector packed(const Vector& z_free) const {
    Vector theta(ts_.dim());
    for (Index k = 0; k < ts_.dim(); ++k)
      if (fixed_[static_cast<std::size_t>(k)]) theta(k) = *fixed_[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < free_.size(); ++i)
      theta(free_[i]) = ts_.coords[static_cast<std::size_t>(free_[i])].inverse(z_free(static_cast<Index>(i)));
    return theta;
  }

  Vector free_unconstrained(const Vector& theta) const {
    Vector z(free_dim());
    for (std::size_t i = 0; i < free_.size(); ++i)
      z(static_cast<Index>(i)) = ts_.coords[static_cast<std::size_t>(free_[i])].forward(theta(free_[i]));
    return z;
  }

  Vector free_jacobian(const Vector& z_free) const {
    Vector d(free_dim());
    for (std::size_t i = 0; i < free_.size(); ++i)
      d(static_cast<Index>(i)) =
          ts_.coords[static_cast<std::size_t>(free_[i])].forward_derivative(z_free(static_cast<Index>(i)));
    return d;
  }

  const std::vector<Index>& free_indices() const { return free_; }

  bool admissible(const Vector& theta) const {
    for (Index k : free_) {
      const auto& c = ts_.coords[static_cast<std::size_t>(k)];
      const double v = theta(k);
      if (!std::isfinite(v)) return false;
      if (c.kind == CoordTransform::Kind::Log ? !(v > 0.0) : !(v > c.lower && v < c.upper)) return false;
    }
    return true;
  }

  IngarchSpec spec(const Vector& theta) const { return IngarchSpec::from_packed(ts_.family, ts_.p, ts_.q, theta); }

  double value(const Vector& z_free) const {
    const Vector theta = packed(z_free);
    if (!admissible(theta)) return INFINITY;
    const double ll = loglik(spec(theta), x_, init_);
    return std::isfinite(ll) ? -ll : INFINITY;
  }

  double value_grad(const Vector& z_free, Vector& grad) const {
    grad.setZero(free_dim());
    const Vector theta = packed(z_free);
    if (!admissible(theta)) return INFINITY;
    const auto ll = loglik_with_grad(spec(theta), x_, init_);
    if (!std::isfinite(ll.value)) return INFINITY;
    const Vector d = free_jacobian(z_free);
    for (std::size_t i = 0; i < free_.size(); ++i)
      grad(static_cast<Index>(i)) = -ll.grad(free_[i]) * d(static_cast<Index>(i));
    return -ll.value;
  }

 private:
  std::span<const Count> x_;
  TransformSpec ts_;
  InitPolicy init_;
  std::vector<std::optional<double>> fixed_;
  std::vector<Index> free_;
};

double mean_of(std::span<const Count> x) {
  double s = 0.0;
  for (Count v : x) s += static_cast<double>(v);
  return x.empty() ? 0.0 : s / static_cast<double>(x.size());
}

}  // namespace

IngarchSpec moment_start(std::span<const Count> x, Family family, int p, int q) {
  const double mean = std::max(mean_of(x), 0.1);
  double var = 0.0;
  std::size_t zeros = 0;
  for (Count v : x) {
    var += (static_cast<double>(v) - mean) * (static_cast<double>(v) - mean);
    zeros += v == 0 ? 1 : 0;
  }
  var = x.size() > 1 ? var / static_cast<double>(x.size() - 1) : mean;
  const double zero_frac = x.empty() ? 0.5 : static_cast<double>(zeros) / static_cast<double>(x.size());

  IngarchSpec spec;
  spec.family = family;
  spec.alpha = Vector::Constant(p, 0.2 / std::max(p, 1));
  spec.beta = Vector::Constant(q, 0.2 / std::max(q, 1));
  if (p == 0) spec.alpha.resize(0);
  double lambda_mean = mean;
  switch (family) {
    case Family::NoGe: spec.disp = std::clamp(zero_frac, 0.02, 0.95); break;
    case Family::GP: spec.disp = 0.1; break;
    case Family::NB: {
      // Var / mean = 1 + lambda under the conditional law, used as a rough marginal guide.
      const double lam = std::clamp(var / mean - 1.0, 0.05, 50.0);
      spec.disp = std::clamp(mean / lam, 0.5, 1000.0);
      lambda_mean = mean / spec.disp;
      break;
    }
    case Family::Poisson: spec.disp = 0.0; break;
  }
  spec.alpha0 = lambda_mean * (1.0 - spec.persistence());
  // Every lambda_t is at least alpha0, so this keeps the NoGe start away from theta_t > 1.
  if (family == Family::NoGe) spec.alpha0 = std::max(spec.alpha0, 1.05 * (1.0 - spec.disp));
  if (family == Family::GP) spec.alpha0 = std::max(spec.alpha0, 0.05);
  return spec;
}

FitResult cmle_fit(std::span<const Count> x, Family family, int p, int q, const FitOptions& opts) {
  if (p < 1 || q < 0) throw InvalidParameter("INGARCH order must satisfy p >= 1, q >= 0");
  if (x.size() <= static_cast<std::size_t>(p + q + 2))
    throw DataError("series too short for an INGARCH(" + std::to_string(p) + "," + std::to_string(q) + ") fit");

  Objective obj(x, family, p, q, opts);
  const Index dim = obj.transform().dim();
  if (!opts.fixed.empty() && static_cast<Index>(opts.fixed.size()) != dim)
    throw InvalidParameter("fixed-coordinate vector has the wrong length");

  Vector start = moment_start(x, family, p, q).packed();
  for (Index k = 0; k < dim; ++k)
    if (k < static_cast<Index>(opts.fixed.size()) && opts.fixed[static_cast<std::size_t>(k)])
      start(k) = *opts.fixed[static_cast<std::size_t>(k)];
  const Vector z0 = obj.free_unconstrained(start);

  Rng rng = make_stream(opts.seed, 0);
  FitResult best;
  best.loglik = -INFINITY;
  Vector best_z;
  bool have_best = false;
  int total_iterations = 0;

  const auto value_fn = [&](const Vector& z) { return obj.value(z); };
  const ValueGradFn grad_fn = [&](const Vector& z, Vector& g) { return obj.value_grad(z, g); };

  for (int s = 0; s < std::max(opts.starts, 1); ++s) {
    Vector z = z0;
    if (s > 0) {
      // Jittered start; retried a few times until the likelihood is finite.
      for (int attempt = 0; attempt < 20; ++attempt) {
        Vector trial = z0;
        for (Index i = 0; i < trial.size(); ++i) trial(i) += 0.5 * standard_normal(rng);
        if (std::isfinite(obj.value(trial))) {
          z = trial;
          break;
        }
      }
    }
    if (!std::isfinite(obj.value(z))) continue;
    const OptimResult nm = nelder_mead(value_fn, z, opts.nelder_mead);
    const OptimResult polished = bfgs(grad_fn, nm.x, opts.bfgs);
    const OptimResult& final_step = polished.fx <= nm.fx ? polished : nm;
    total_iterations += nm.iterations + polished.iterations;
    const double ll = -final_step.fx;
    if (std::isfinite(ll) && (!have_best || ll > best.loglik)) {
      have_best = true;
      best.loglik = ll;
      best.converged = polished.converged || nm.converged;
      best_z = final_step.x;
    }
  }
  best.iterations = total_iterations;
  if (!have_best) {
    best.converged = false;
    best.estimates = IngarchSpec::from_packed(family, p, q, start);
    best.warnings.emplace_back("no start produced a finite log-likelihood");
    return best;
  }

  const Vector theta = obj.packed(best_z);
  best.estimates = IngarchSpec::from_packed(family, p, q, theta);
  best.loglik = loglik(best.estimates, x, opts.init);
  if (!best.converged) best.warnings.emplace_back("optimizer did not meet its convergence tolerance");

  if (opts.compute_std_errors && obj.free_dim() > 0) {
    // Observed information on the unconstrained scale, mapped back by the delta method.
    const Matrix H = fd_hessian(grad_fn, best_z);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(H);
    const Vector ev = eig.eigenvalues();
    best.hessian_cond = ev.minCoeff() > 0.0 ? ev.maxCoeff() / ev.minCoeff() : INFINITY;
    if (!(ev.minCoeff() > 0.0) || !(best.hessian_cond < 1e14) || !H.allFinite()) {
      best.singular_hessian = true;
      best.warnings.emplace_back("Hessian is not positive definite; standard errors omitted");
    } else {
      const Matrix cov_z = eig.eigenvectors() * ev.cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
      const Vector d = obj.free_jacobian(best_z);
      best.std_errors = Vector::Zero(dim);
      const auto& free = obj.free_indices();
      for (std::size_t i = 0; i < free.size(); ++i) {
        const auto ii = static_cast<Index>(i);
        best.std_errors(free[i]) = std::abs(d(ii)) * std::sqrt(std::max(cov_z(ii, ii), 0.0));
      }
    }
  }
  return best;
}

}  // namespace ingarch
