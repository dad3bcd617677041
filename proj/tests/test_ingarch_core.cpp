#include "ingarch/ingarch.hpp"
#include "ingarch/rng.hpp"
#include "oracle_values.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include <cmath>

using namespace ingarch;

namespace {

// Spectral radius of the linear part of the second-moment recursion of (X_t..X_{t-p+1}) for
// NoGe-INARCH(p): S -> [zeta a'Sa, (Sa)'; Sa, S shifted].
double second_moment_radius(const Vector& a, double zeta) {
  const Index p = a.size();
  Matrix A(p * p, p * p);
  for (Index c = 0; c < p * p; ++c) {
    Matrix S = Matrix::Zero(p, p);
    S(c / p, c % p) = 1.0;
    Matrix T = Matrix::Zero(p, p);
    T(0, 0) = zeta * a.dot(S * a);
    const Vector Sa = S * a;
    const Vector Sta = S.transpose() * a;
    for (Index k = 1; k < p; ++k) {
      T(0, k) = Sta(k - 1);
      T(k, 0) = Sa(k - 1);
      for (Index l = 1; l < p; ++l) T(k, l) = S(k - 1, l - 1);
    }
    for (Index r = 0; r < p * p; ++r) A(r, c) = T(r / p, r % p);
  }
  return Eigen::EigenSolver<Matrix>(A, false).eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("packed representation round trip") {
  const IngarchSpec spec = make_spec(Family::GP, 1.5, {0.2, 0.1}, {0.3}, -0.1);
  CHECK(spec.num_params() == 5);
  const Vector v = spec.packed();
  const IngarchSpec back = IngarchSpec::from_packed(Family::GP, 2, 1, v);
  CHECK(back.packed() == v);
  CHECK(parameter_names(Family::GP, 2, 1) == std::vector<std::string>{"alpha0", "alpha1", "alpha2", "beta1", "kappa"});
  CHECK(parameter_names(Family::Poisson, 1, 1).size() == 3);
}

TEST_CASE("lambda filter follows the recursion") {
  const IngarchSpec spec = make_spec(Family::NoGe, 1.0, {0.2}, {0.1}, 0.05);
  const std::vector<Count> x{0, 3, 1, 2};
  const Vector lambda = lambda_filter(spec, x);
  const double mu = 1.0 / 0.7;
  CHECK(lambda(0) == doctest::Approx(1.0 + 0.2 * mu + 0.1 * mu));
  CHECK(lambda(1) == doctest::Approx(1.0 + 0.2 * 0 + 0.1 * lambda(0)));
  CHECK(lambda(3) == doctest::Approx(1.0 + 0.2 * 1 + 0.1 * lambda(2)));
  CHECK(next_lambda(spec, x, lambda) == doctest::Approx(1.0 + 0.2 * 2 + 0.1 * lambda(3)));
  const Vector fixed = lambda_filter(spec, x, InitPolicy::fixed(0.0));
  CHECK(fixed(0) == doctest::Approx(1.0));
}

TEST_CASE("validation") {
  CHECK_NOTHROW(validate(make_spec(Family::NoGe, 1.0, {0.2}, {0.1}, 0.05)));
  CHECK_THROWS_AS(validate(make_spec(Family::NoGe, 0.5, {0.2}, {0.1}, 0.05)), InvalidParameter);
  CHECK_NOTHROW(validate_bounds(make_spec(Family::NoGe, 0.5, {0.2}, {0.1}, 0.05)));
  CHECK_THROWS_AS(validate(make_spec(Family::NoGe, 1.0, {-0.1}, {0.1}, 0.05)), InvalidParameter);
  CHECK_THROWS_AS(validate(make_spec(Family::GP, 1.0, {0.2}, {}, -0.5)), InvalidParameter);
  CHECK_THROWS_AS(validate(make_spec(Family::NB, 1.0, {0.2}, {}, 0.0)), InvalidParameter);
}

TEST_CASE("unconditional mean") {
  CHECK(unconditional_mean(make_spec(Family::NoGe, 1.0, {0.2}, {0.1}, 0.05)) == doctest::Approx(oracle::kScenarioIMean));
  CHECK_THROWS_AS(unconditional_mean(make_spec(Family::NoGe, 1.0, {0.6}, {0.4}, 0.05)), NonstationarySpec);
}

TEST_CASE("characteristic roots are the companion eigenvalues") {
  Vector c(2);
  c << 0.5, 0.24;  // b^2 - 0.5 b - 0.24 = (b - 0.8)(b + 0.3)
  const Eigen::VectorXcd roots = characteristic_roots(c);
  Vector mod = roots.cwiseAbs();
  std::sort(mod.data(), mod.data() + 2);
  CHECK(mod(0) == doctest::Approx(0.3));
  CHECK(mod(1) == doctest::Approx(0.8));
}

TEST_CASE("property: mean-stationarity verdict equals the coefficient-sum rule") {
  Rng rng = make_stream(11, 0);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const int p = 1 + static_cast<int>(uniform01(rng) * 3);
    const int q = static_cast<int>(uniform01(rng) * 3);
    IngarchSpec spec;
    spec.alpha0 = 1.0;
    spec.alpha = Vector(p);
    spec.beta = Vector(q);
    const double scale = 1.4 * uniform01(rng);
    for (int k = 0; k < p; ++k) spec.alpha(k) = uniform01(rng);
    for (int k = 0; k < q; ++k) spec.beta(k) = uniform01(rng);
    const double total = spec.persistence();
    spec.alpha *= scale / total;
    spec.beta *= scale / total;
    if (std::abs(spec.persistence() - 1.0) < 1e-9) continue;
    ++checked;
    CHECK(mean_stationarity_check(spec).mean_stationary == (spec.persistence() < 1.0));
  }
  CHECK(checked > 990);
}

TEST_CASE("second-order condition for INGARCH(1,1)") {
  const IngarchSpec s3 = make_spec(Family::NoGe, 1.0, {0.4}, {0.2}, 0.55);
  const StationarityReport r = second_order_check(s3);
  REQUIRE(r.L_coeffs);
  CHECK((*r.L_coeffs)(0) == doctest::Approx(oracle::kScenarioIIISecondOrder).epsilon(1e-14));
  CHECK(r.second_order_stationary.value());
  const IngarchSpec unstable = make_spec(Family::NoGe, 1.0, {0.5}, {0.3}, 0.6);
  CHECK_FALSE(second_order_check(unstable).second_order_stationary.value());
  CHECK_FALSE(second_order_check(make_spec(Family::Poisson, 1.0, {0.5}, {0.3})).second_order_stationary.has_value());
}

TEST_CASE("property: INARCH(p) second-order verdict agrees with the second-moment map") {
  Rng rng = make_stream(12, 0);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    const int p = 1 + i % 4;
    Vector a(p);
    for (int k = 0; k < p; ++k) a(k) = uniform01(rng) + 0.01;
    a *= (0.05 + 0.94 * uniform01(rng)) / a.sum();
    const double phi = 0.01 + 0.94 * uniform01(rng);
    const double radius = second_moment_radius(a, 2.0 / (1.0 - phi));
    if (std::abs(radius - 1.0) < 1e-6) continue;
    IngarchSpec spec;
    spec.alpha0 = 1.0;
    spec.alpha = a;
    spec.beta = Vector(0);
    spec.disp = phi;
    const auto report = second_order_check(spec);
    REQUIRE(report.second_order_stationary.has_value());
    CHECK(*report.second_order_stationary == (radius < 1.0));
    ++checked;
  }
  CHECK(checked > 390);
}

TEST_CASE("(1,1) autocovariances") {
  const Acvf11 acvf = acvf_11(make_spec(Family::NoGe, 1.0, {0.2}, {0.1}, 0.05), 5);
  CHECK(acvf.uncond_mean == doctest::Approx(oracle::kScenarioIMean).epsilon(1e-14));
  CHECK(acvf.uncond_var == doctest::Approx(oracle::kScenarioIVar).epsilon(1e-13));
  CHECK(acvf.gamma_x(1) == doctest::Approx(oracle::kScenarioIGammaX1).epsilon(1e-13));
  CHECK(acvf.rho_x(1) == doctest::Approx(oracle::kScenarioIRhoX1).epsilon(1e-13));
  CHECK(acvf.rho_x(2) == doctest::Approx(oracle::kScenarioIRhoX2).epsilon(1e-13));
  CHECK(acvf.gamma_lambda(0) == doctest::Approx(oracle::kScenarioIGammaLambda0).epsilon(1e-13));
  CHECK(acvf.rho_lambda(3) == doctest::Approx(std::pow(0.3, 3)));
  CHECK_THROWS_AS(acvf_11(make_spec(Family::NoGe, 1.0, {0.5}, {0.3}, 0.6), 3), NonstationarySpec);
}
