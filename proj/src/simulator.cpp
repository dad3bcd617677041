#include "ingarch/simulator.hpp"

#include "ingarch/conditional.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace ingarch {

namespace {

class GPDraws {
 public:
  explicit GPDraws(double kappa) : kappa_(kappa) {}

  // The cumulative table depends on lambda, so it is reused while lambda repeats.
  Count operator()(double lambda, Rng& rng) {
    if (!sampler_ || lambda != last_lambda_) {
      sampler_.emplace(GPParams{(1.0 - kappa_) * lambda, kappa_});
      last_lambda_ = lambda;
    }
    return (*sampler_)(rng);
  }

 private:
  double kappa_;
  double last_lambda_ = -1.0;
  std::optional<GPSampler> sampler_;
};

}  // namespace

SimResult simulate(const IngarchSpec& spec, std::size_t n, std::size_t burnin, Rng& rng) {
  if (n < 1) throw InvalidParameter("simulation length n must be >= 1");
  validate(spec);
  SimResult result;
  if (!mean_stationarity_check(spec).mean_stationary)
    result.warnings.emplace_back("spec is not mean-stationary; the path has no equilibrium mean");

  const int p = spec.p();
  const int q = spec.q();
  const std::size_t total = n + burnin;
  const double pre = presample_value(spec, InitPolicy::stationary());
  std::vector<Count> x(total);
  std::vector<double> lambda(total);
  GPDraws gp(spec.disp);

  for (std::size_t t = 0; t < total; ++t) {
    double value = spec.alpha0;
    for (int i = 1; i <= p; ++i)
      value += spec.alpha(i - 1) * (t >= static_cast<std::size_t>(i) ? static_cast<double>(x[t - i]) : pre);
    for (int j = 1; j <= q; ++j)
      value += spec.beta(j - 1) * (t >= static_cast<std::size_t>(j) ? lambda[t - j] : pre);
    lambda[t] = value;
    x[t] = spec.family == Family::GP ? gp(value, rng) : conditional_sample(spec.family, value, spec.disp, rng);
  }

  result.series.values.assign(x.begin() + static_cast<std::ptrdiff_t>(burnin), x.end());
  result.lambda = Eigen::Map<const Vector>(lambda.data() + burnin, static_cast<Index>(n));
  return result;
}

SimResult simulate(const SimConfig& config) {
  Rng rng = make_stream(config.seed, 0);
  return simulate(config.spec, config.n, config.burnin, rng);
}

ScenarioId parse_scenario(const std::string& tag) {
  std::string t;
  for (char c : tag) t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (t == "I" || t == "1") return ScenarioId::I;
  if (t == "II" || t == "2") return ScenarioId::II;
  if (t == "III" || t == "3") return ScenarioId::III;
  if (t == "IV" || t == "4") return ScenarioId::IV;
  throw InvalidParameter("unknown scenario '" + tag + "' (expected I, II, III or IV)");
}

std::string scenario_name(ScenarioId id) {
  switch (id) {
    case ScenarioId::I: return "I";
    case ScenarioId::II: return "II";
    case ScenarioId::III: return "III";
    case ScenarioId::IV: return "IV";
  }
  return "?";
}

IngarchSpec scenario_spec(ScenarioId id) {
  switch (id) {
    case ScenarioId::I: return make_spec(Family::NoGe, 1.0, {0.2}, {0.1}, 0.05);
    case ScenarioId::II: return make_spec(Family::NoGe, 1.0, {0.3}, {0.1}, 0.05);
    case ScenarioId::III: return make_spec(Family::NoGe, 1.0, {0.4}, {0.2}, 0.55);
    case ScenarioId::IV: return make_spec(Family::NoGe, 1.0, {0.4}, {0.2}, 0.35);
  }
  throw InvalidParameter("unknown scenario");
}

}  // namespace ingarch
