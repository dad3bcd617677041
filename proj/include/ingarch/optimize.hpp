#pragma once

// Unconstrained minimisers: Nelder-Mead simplex and BFGS with backtracking line search.
// Objectives may return +inf to reject a point.

#include "ingarch/types.hpp"

#include <functional>

namespace ingarch {

struct OptimResult {
  Vector x;
  double fx = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

struct NelderMeadOptions {
  int max_iterations = 4000;
  double initial_step = 0.5;
  double f_tol = 1e-10;  ///< spread of simplex values
  double x_tol = 1e-8;   ///< simplex diameter
};

OptimResult nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0,
                        const NelderMeadOptions& opts = {});

struct BfgsOptions {
  int max_iterations = 500;
  double grad_tol = 1e-8;  ///< infinity norm of the gradient
  double f_tol = 1e-14;    ///< relative improvement below which the run stops
};

/// f returns the value and writes the gradient into its second argument.
using ValueGradFn = std::function<double(const Vector&, Vector&)>;

/// Stops on a small gradient, on a failed line search, or after ten consecutive steps with
/// negligible improvement; the last two count as converged when the gradient is small relative to |f|.
OptimResult bfgs(const ValueGradFn& f, const Vector& x0, const BfgsOptions& opts = {});

/// Central-difference Hessian of a gradient function; symmetrised.
Matrix fd_hessian(const ValueGradFn& f, const Vector& x, double rel_step = 1e-5);

}  // namespace ingarch
