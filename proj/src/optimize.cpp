#include "ingarch/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace ingarch {

OptimResult nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0,
                        const NelderMeadOptions& opts) {
  const Index n = x0.size();
  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  OptimResult result;
  auto eval = [&](const Vector& x) {
    ++result.evaluations;
    const double v = f(x);
    return std::isnan(v) ? INFINITY : v;
  };

  std::vector<Vector> simplex(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> values(static_cast<std::size_t>(n + 1));
  values[0] = eval(x0);
  for (Index i = 0; i < n; ++i) {
    simplex[static_cast<std::size_t>(i + 1)](i) += opts.initial_step;
    values[static_cast<std::size_t>(i + 1)] = eval(simplex[static_cast<std::size_t>(i + 1)]);
  }

  std::vector<std::size_t> order(simplex.size());
  for (; result.iterations < opts.max_iterations; ++result.iterations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[order.size() - 2];

    double diameter = 0.0;
    for (const auto& v : simplex) diameter = std::max(diameter, (v - simplex[best]).lpNorm<Eigen::Infinity>());
    const double spread = values[worst] - values[best];
    if (std::isfinite(values[best]) && spread <= opts.f_tol * (1.0 + std::abs(values[best])) &&
        diameter <= opts.x_tol * (1.0 + simplex[best].lpNorm<Eigen::Infinity>())) {
      result.converged = true;
      break;
    }

    Vector centroid = Vector::Zero(n);
    for (std::size_t i = 0; i < simplex.size(); ++i)
      if (i != worst) centroid += simplex[i];
    centroid /= static_cast<double>(n);

    const Vector reflected = centroid + kReflect * (centroid - simplex[worst]);
    const double f_reflected = eval(reflected);
    if (f_reflected < values[best]) {
      const Vector expanded = centroid + kExpand * (reflected - centroid);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = f_reflected;
      continue;
    }
    const bool outside = f_reflected < values[worst];
    const Vector contracted = outside ? Vector(centroid + kContract * (reflected - centroid))
                                      : Vector(centroid + kContract * (simplex[worst] - centroid));
    const double f_contracted = eval(contracted);
    if (f_contracted < (outside ? f_reflected : values[worst])) {
      simplex[worst] = contracted;
      values[worst] = f_contracted;
      continue;
    }
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + kShrink * (simplex[i] - simplex[best]);
      values[i] = eval(simplex[i]);
    }
  }

  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  result.x = simplex[best];
  result.fx = values[best];
  return result;
}

OptimResult bfgs(const ValueGradFn& f, const Vector& x0, const BfgsOptions& opts) {
  const Index n = x0.size();
  OptimResult result;
  result.x = x0;
  Vector g(n);
  result.fx = f(result.x, g);
  ++result.evaluations;
  if (!std::isfinite(result.fx) || !g.allFinite()) return result;

  Matrix H = Matrix::Identity(n, n);  // inverse Hessian approximation
  Vector g_new(n);
  int stalled = 0;
  // Stiff directions can leave a gradient that no representable step reduces further.
  auto near_stationary = [&] { return g.lpNorm<Eigen::Infinity>() <= 1e-6 * (1.0 + std::abs(result.fx)); };
  for (; result.iterations < opts.max_iterations; ++result.iterations) {
    if (g.lpNorm<Eigen::Infinity>() <= opts.grad_tol) {
      result.converged = true;
      break;
    }
    Vector dir = -H * g;
    double slope = g.dot(dir);
    if (!(slope < 0.0)) {
      H.setIdentity();
      dir = -g;
      slope = -g.squaredNorm();
    }

    // Armijo backtracking.
    double step = 1.0;
    double f_new = INFINITY;
    Vector x_new;
    bool accepted = false;
    for (int k = 0; k < 40; ++k) {
      x_new = result.x + step * dir;
      f_new = f(x_new, g_new);
      ++result.evaluations;
      if (std::isfinite(f_new) && g_new.allFinite() && f_new <= result.fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No descent possible along the current direction: converged to rounding.
      result.converged = near_stationary();
      break;
    }

    const Vector s = x_new - result.x;
    const Vector y = g_new - g;
    const double improvement = result.fx - f_new;
    result.x = x_new;
    result.fx = f_new;
    g = g_new;

    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (result.iterations == 0) H *= sy / y.squaredNorm();
      const Vector Hy = H * y;
      const double rho = 1.0 / sy;
      H += (rho * rho * y.dot(Hy) + rho) * s * s.transpose() - rho * (Hy * s.transpose() + s * Hy.transpose());
    }
    const bool tiny = improvement <= opts.f_tol * (1.0 + std::abs(result.fx));
    if (tiny && g.lpNorm<Eigen::Infinity>() <= 1e3 * opts.grad_tol) {
      result.converged = true;
      break;
    }
    stalled = tiny ? stalled + 1 : 0;
    if (stalled >= 10) {
      result.converged = near_stationary();
      break;
    }
  }
  return result;
}

Matrix fd_hessian(const ValueGradFn& f, const Vector& x, double rel_step) {
  const Index n = x.size();
  Matrix H(n, n);
  Vector gp(n), gm(n);
  for (Index k = 0; k < n; ++k) {
    const double h = rel_step * std::max(1.0, std::abs(x(k)));
    Vector xp = x, xm = x;
    xp(k) += h;
    xm(k) -= h;
    f(xp, gp);
    f(xm, gm);
    H.col(k) = (gp - gm) / (2.0 * h);
  }
  return 0.5 * (H + H.transpose());
}

}  // namespace ingarch
