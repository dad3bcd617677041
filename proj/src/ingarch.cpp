#include "ingarch/ingarch.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace ingarch {

namespace {

constexpr double kUnitCircleTol = 1e-12;
constexpr double kMaxConditionNumber = 1e12;

std::string spec_string(const IngarchSpec& spec) {
  std::ostringstream os;
  os << family_name(spec.family) << "(" << spec.p() << "," << spec.q() << ") " << spec.packed().transpose();
  return os.str();
}

StationarityReport roots_report(const Vector& coeffs) {
  StationarityReport report;
  report.char_roots = characteristic_roots(coeffs);
  report.max_root_modulus = report.char_roots.size() ? report.char_roots.cwiseAbs().maxCoeff() : 0.0;
  report.mean_stationary = report.max_root_modulus < 1.0 - kUnitCircleTol;
  return report;
}

}  // namespace

IngarchSpec make_spec(Family family, double alpha0, std::vector<double> alpha, std::vector<double> beta,
                      double disp) {
  IngarchSpec spec;
  spec.family = family;
  spec.alpha0 = alpha0;
  spec.alpha = Eigen::Map<const Vector>(alpha.data(), static_cast<Index>(alpha.size()));
  spec.beta = Eigen::Map<const Vector>(beta.data(), static_cast<Index>(beta.size()));
  spec.disp = disp;
  return spec;
}

std::vector<std::string> parameter_names(Family family, int p, int q) {
  std::vector<std::string> names{"alpha0"};
  for (int i = 1; i <= p; ++i) names.push_back("alpha" + std::to_string(i));
  for (int j = 1; j <= q; ++j) names.push_back("beta" + std::to_string(j));
  if (has_dispersion(family)) names.emplace_back(dispersion_name(family));
  return names;
}

void validate_bounds(const IngarchSpec& spec) {
  if (spec.p() < 1) throw InvalidParameter("INGARCH order p must be >= 1");
  if (!(spec.alpha0 > 0.0)) throw InvalidParameter("alpha0 must be positive: " + spec_string(spec));
  if (!((spec.alpha.array() >= 0.0).all() && (spec.beta.array() >= 0.0).all()))
    throw InvalidParameter("alpha_i and beta_j must be nonnegative: " + spec_string(spec));
  if (!spec.packed().allFinite()) throw InvalidParameter("non-finite parameter: " + spec_string(spec));
  switch (spec.family) {
    case Family::NoGe:
      if (!(spec.disp > 0.0 && spec.disp < 1.0)) throw InvalidParameter("phi must lie in (0, 1): " + spec_string(spec));
      break;
    case Family::GP:
      if (!(spec.disp > -1.0 && spec.disp < 1.0)) throw InvalidParameter("kappa must lie in (-1, 1): " + spec_string(spec));
      break;
    case Family::NB:
      if (!(spec.disp > 0.0)) throw InvalidParameter("n must be positive: " + spec_string(spec));
      break;
    case Family::Poisson:
      break;
  }
}

void validate(const IngarchSpec& spec) {
  validate_bounds(spec);
  if (spec.family == Family::NoGe && spec.alpha0 < 1.0 - spec.disp)
    throw InvalidParameter("NoGe requires alpha0 >= 1 - phi so that theta_t <= 1: " + spec_string(spec));
  if (spec.family == Family::GP && spec.disp < 0.0 && !((1.0 - spec.disp) * spec.alpha0 + 4.0 * spec.disp > 0.0))
    throw InvalidParameter("GP with kappa < 0 requires (1-kappa) alpha0 + 4 kappa > 0: " + spec_string(spec));
}

double unconditional_mean(const IngarchSpec& spec) {
  const double s = spec.persistence();
  if (!(s < 1.0)) throw NonstationarySpec("sum(alpha) + sum(beta) >= 1: " + spec_string(spec));
  return spec.alpha0 / (1.0 - s);
}

Eigen::VectorXcd characteristic_roots(const Vector& coeffs) {
  const Index degree = coeffs.size();
  if (degree == 0) return Eigen::VectorXcd(0);
  if (degree == 1) return Eigen::VectorXcd::Constant(1, std::complex<double>(coeffs(0), 0.0));
  Matrix companion = Matrix::Zero(degree, degree);
  companion.row(0) = coeffs.transpose();
  companion.diagonal(-1).setOnes();
  Eigen::EigenSolver<Matrix> solver(companion, /*computeEigenvectors=*/false);
  return solver.eigenvalues();
}

StationarityReport mean_stationarity_check(const IngarchSpec& spec) {
  const int p = spec.p();
  const int q = spec.q();
  const int degree = p > q ? p : q + 1;
  Vector coeffs = Vector::Zero(degree);
  for (int i = 1; i <= p; ++i) coeffs(i - 1) += spec.alpha(i - 1);
  for (int j = 1; j <= q; ++j) coeffs(j - 1) += spec.beta(j - 1);
  return roots_report(coeffs);
}

StationarityReport second_order_check(const IngarchSpec& spec) {
  StationarityReport report = mean_stationarity_check(spec);
  if (spec.family != Family::NoGe) return report;

  const double zeta = 2.0 / (1.0 - spec.disp);
  const int p = spec.p();
  const int q = spec.q();

  if (p == 1 && q == 1) {
    const double a = spec.alpha(0);
    const double b = spec.beta(0);
    const double coeff = zeta * a * a + 2.0 * a * b + b * b;
    report.L_coeffs = Vector::Constant(1, coeff);
    report.second_order_stationary = report.mean_stationary && coeff < 1.0;
    return report;
  }
  if (q != 0) return report;

  // alpha_i for i in 1..p, zero outside.
  auto a = [&](int i) { return (i >= 1 && i <= p) ? spec.alpha(i - 1) : 0.0; };
  // nu_{sr} = sum over i in 1..p with |i - s| = r of alpha_i, i.e. alpha_{s-r} + alpha_{s+r}.
  auto nu = [&](int s, int r) {
    if (r == 0) return a(s);
    double sum = a(s + r);
    if (s - r >= 1) sum += a(s - r);
    return r == s ? sum - 1.0 : sum;
  };

  Vector L(p);
  if (p == 1) {
    L(0) = zeta * a(1) * a(1);
  } else {
    const int dim = p - 1;
    Matrix M(dim, dim);
    for (int s = 1; s <= dim; ++s)
      for (int r = 1; r <= dim; ++r) M(s - 1, r - 1) = nu(s, r);
    Eigen::JacobiSVD<Matrix> svd(M);
    const auto& sv = svd.singularValues();
    const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    if (!(cond <= kMaxConditionNumber))
      throw SingularMatrix("second-order M matrix is numerically singular: " + spec_string(spec));
    const Matrix Minv = M.inverse();
    // c_v = sum over ordered pairs (i, j), i != j, with |i - j| = v of alpha_i alpha_j.
    Vector c = Vector::Zero(dim);
    for (int i = 1; i <= p; ++i)
      for (int j = 1; j <= p; ++j)
        if (i != j) c(std::abs(i - j) - 1) += a(i) * a(j);
    for (int r = 1; r <= dim; ++r) {
      double correction = 0.0;
      for (int v = 1; v <= dim; ++v) correction += c(v - 1) * Minv(v - 1, r - 1) * nu(r, 0);
      L(r - 1) = zeta * (a(r) * a(r) - correction);
    }
    L(p - 1) = zeta * a(p) * a(p);
  }
  report.L_coeffs = L;
  const StationarityReport second = roots_report(L);
  report.second_order_stationary = report.mean_stationary && second.mean_stationary;
  return report;
}

Acvf11 acvf_11(const IngarchSpec& spec, int h_max) {
  if (spec.family != Family::NoGe || spec.p() != 1 || spec.q() != 1)
    throw InvalidParameter("acvf_11 requires a NoGe-INGARCH(1,1) spec: " + spec_string(spec));
  validate_bounds(spec);
  const StationarityReport report = second_order_check(spec);
  if (!report.second_order_stationary.value_or(false))
    throw NonstationarySpec("acvf_11 requires a second-order stationary spec: " + spec_string(spec));
  if (h_max < 0) throw InvalidParameter("h_max must be nonnegative");

  const double a = spec.alpha(0);
  const double b = spec.beta(0);
  const double phi = spec.disp;
  const double mu = unconditional_mean(spec);
  const double zeta = 2.0 / (1.0 - phi);
  // E[Var(X_t | F_{t-1})] evaluated at lambda = mu.
  const double cond_var_at_mu = mu * ((1.0 + phi) / (1.0 - phi) * mu - 1.0);
  const double denom = 1.0 - (zeta * a * a + 2.0 * a * b + b * b);

  const double gamma_lambda0 = a * a * cond_var_at_mu / denom;
  const double var_x = zeta * gamma_lambda0 + cond_var_at_mu;
  const double gamma_x1 = (zeta * a + b) * gamma_lambda0 + a * cond_var_at_mu;
  const double r = a + b;

  Acvf11 out;
  out.uncond_mean = mu;
  out.uncond_var = var_x;
  out.gamma_x.resize(h_max + 1);
  out.gamma_lambda.resize(h_max + 1);
  out.gamma_x(0) = var_x;
  out.gamma_lambda(0) = gamma_lambda0;
  for (int h = 1; h <= h_max; ++h) {
    out.gamma_x(h) = h == 1 ? gamma_x1 : r * out.gamma_x(h - 1);
    out.gamma_lambda(h) = r * out.gamma_lambda(h - 1);
  }
  out.rho_x = out.gamma_x / var_x;
  out.rho_lambda.resize(h_max + 1);
  out.rho_lambda(0) = 1.0;
  for (int h = 1; h <= h_max; ++h) out.rho_lambda(h) = r * out.rho_lambda(h - 1);
  return out;
}

}  // namespace ingarch
