#include "ingarch/conditional.hpp"

#include <algorithm>
#include <cmath>

namespace ingarch {

Count conditional_sample(Family family, double lambda, double disp, Rng& rng) {
  switch (family) {
    case Family::NoGe: {
      const double theta = std::min(1.0, (1.0 - disp) / lambda);
      return noge_sample({theta, disp}, rng);
    }
    case Family::GP: return gp_sample({(1.0 - disp) * lambda, disp}, rng);
    case Family::NB: return nb_sample({disp, 1.0 / (1.0 + lambda)}, rng);
    case Family::Poisson: return pois_sample({lambda}, rng);
  }
  return 0;
}

double conditional_cdf(Family family, Count x, double lambda, double disp) {
  if (x < 0) return 0.0;
  if (family == Family::NoGe) {
    // phi + (1 - phi)(1 - (1 - theta)^x)
    const double theta = std::min(1.0, (1.0 - disp) / lambda);
    if (x == 0) return disp;
    if (theta >= 1.0) return 1.0;
    return disp + (1.0 - disp) * -std::expm1(static_cast<double>(x) * std::log1p(-theta));
  }
  if (family == Family::GP && disp < 0.0) {
    if (auto m = gp_truncation_point({(1.0 - disp) * lambda, disp})) x = std::min(x, *m);
  }
  double sum = 0.0;
  for (Count k = 0; k <= x; ++k) sum += std::exp(conditional_logpmf(family, k, lambda, disp));
  return std::min(sum, 1.0);
}

double conditional_support_mass(Family family, double lambda, double disp) {
  if (family != Family::GP || disp >= 0.0) return 1.0;
  const double eta = (1.0 - disp) * lambda;
  const auto m = gp_truncation_point({eta, disp});
  double sum = 0.0;
  for (Count k = 0; k <= *m; ++k) {
    const double term = std::exp(kernel::gp_logpmf(k, eta, disp));
    sum += term;
    if (static_cast<double>(k) > eta && term < 1e-18) break;
  }
  return sum;
}

}  // namespace ingarch
