#pragma once

// Conditional maximum likelihood for every family: Nelder-Mead on the unconstrained scale,
// a BFGS polish using the analytic gradient, multi-start with best-loglik selection, and
// delta-method standard errors from a finite-difference Hessian.

#include "ingarch/ingarch.hpp"
#include "ingarch/optimize.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ingarch {

struct FitOptions {
  int starts = 5;
  std::uint64_t seed = 1;
  InitPolicy init = {};
  /// Per packed coordinate: a value pins it (e.g. alpha = beta = 0 for an i.i.d. fit).
  std::vector<std::optional<double>> fixed;
  bool compute_std_errors = true;
  NelderMeadOptions nelder_mead = {};
  BfgsOptions bfgs = {};
};

struct FitResult {
  IngarchSpec estimates;
  Vector std_errors;  ///< empty when the Hessian is not positive definite
  double loglik = 0.0;
  bool converged = false;
  int iterations = 0;
  double hessian_cond = 0.0;
  bool singular_hessian = false;
  std::vector<std::string> warnings;
};

/// Starting point from sample moments: alpha0 from the mean, small alpha/beta, and the
/// dispersion from the zero fraction (NoGe), the index of dispersion (NB) or a fixed value (GP).
IngarchSpec moment_start(std::span<const Count> x, Family family, int p, int q);

/// Requires x.size() > p + q + 2. Never throws on non-convergence; the flag is set instead.
FitResult cmle_fit(std::span<const Count> x, Family family, int p, int q, const FitOptions& opts = {});

}  // namespace ingarch
