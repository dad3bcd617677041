#include "ingarch/hmc.hpp"

#include "ingarch/cmle.hpp"
#include "ingarch/parallel.hpp"
#include "ingarch/transform.hpp"

#include <algorithm>
#include <cmath>

namespace ingarch {

namespace {

constexpr double kDivergenceThreshold = 1000.0;

double kinetic(const Vector& v, const Vector& inv_mass) { return 0.5 * v.cwiseProduct(inv_mass).dot(v); }

/// Step-size adaptation by dual averaging towards the target acceptance statistic.
class DualAveraging {
 public:
  explicit DualAveraging(double target) : target_(target) {}

  void restart(double eps) {
    mu_ = std::log(10.0 * eps);
    counter_ = 0;
    h_bar_ = 0.0;
    log_eps_bar_ = 0.0;
  }

  double update(double accept_stat) {
    constexpr double kGamma = 0.05;
    constexpr double kT0 = 10.0;
    constexpr double kKappa = 0.75;
    ++counter_;
    const double c = static_cast<double>(counter_);
    const double eta = 1.0 / (c + kT0);
    h_bar_ = (1.0 - eta) * h_bar_ + eta * (target_ - accept_stat);
    const double log_eps = mu_ - std::sqrt(c) / kGamma * h_bar_;
    const double w = std::pow(c, -kKappa);
    log_eps_bar_ = w * log_eps + (1.0 - w) * log_eps_bar_;
    return std::exp(log_eps);
  }

  double final_step() const { return std::exp(log_eps_bar_); }

 private:
  double target_;
  double mu_ = 0.0;
  long counter_ = 0;
  double h_bar_ = 0.0;
  double log_eps_bar_ = 0.0;
};

/// Warmup schedule: an initial fast buffer, doubling slow windows that feed the mass
/// matrix, and a terminal fast buffer.
struct WarmupWindows {
  int init_buffer = 75;
  int term_buffer = 50;
  int base_window = 25;
  std::vector<int> window_ends;  // iteration index (exclusive) at which each slow window closes

  explicit WarmupWindows(int warmup) {
    if (warmup < 20) {
      init_buffer = warmup;
      term_buffer = 0;
      return;
    }
    // A long warmup gets a longer terminal buffer so the step size can recover after the last
    // mass update.
    term_buffer = std::max(term_buffer, warmup / 20);
    if (init_buffer + term_buffer + base_window > warmup) {
      init_buffer = static_cast<int>(0.15 * warmup);
      term_buffer = static_cast<int>(0.1 * warmup);
      base_window = warmup - init_buffer - term_buffer;
    }
    const int slow_end = warmup - term_buffer;
    int start = init_buffer;
    int size = base_window;
    while (start < slow_end) {
      int end = start + size;
      const int next_size = 2 * size;
      if (end + next_size > slow_end) end = slow_end;
      window_ends.push_back(end);
      start = end;
      size = next_size;
    }
  }

  bool in_slow_phase(int it) const { return !window_ends.empty() && it >= init_buffer && it < window_ends.back(); }
  bool closes_window(int it) const { return std::find(window_ends.begin(), window_ends.end(), it + 1) != window_ends.end(); }
};

/// Welford accumulator for the running variance of a window.
class VarianceEstimator {
 public:
  explicit VarianceEstimator(Index dim) : mean_(Vector::Zero(dim)), m2_(Vector::Zero(dim)) {}

  void add(const Vector& z) {
    ++n_;
    const Vector delta = z - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta.cwiseProduct(z - mean_);
  }

  /// Sample variance shrunk towards 1e-3 as in the usual regularised estimator.
  Vector regularized() const {
    const double n = static_cast<double>(n_);
    const Vector var = n_ > 1 ? Vector(m2_ / (n - 1.0)) : Vector(Vector::Ones(mean_.size()));
    return (n / (n + 5.0)) * var.array() + 1e-3 * (5.0 / (n + 5.0));
  }

  void reset() {
    n_ = 0;
    mean_.setZero();
    m2_.setZero();
  }

  long count() const { return n_; }

 private:
  long n_ = 0;
  Vector mean_;
  Vector m2_;
};

Vector draw_momentum(const Vector& inv_mass, Rng& rng) {
  Vector v(inv_mass.size());
  for (Index i = 0; i < v.size(); ++i) v(i) = standard_normal(rng) / std::sqrt(inv_mass(i));
  return v;
}

/// Doubles or halves eps until the one-step acceptance crosses 1/2.
double find_reasonable_step(const Vector& z, double logp, const Vector& grad, double eps, const LogDensityFn& fn,
                            const Vector& inv_mass, Rng& rng) {
  const Vector v = draw_momentum(inv_mass, rng);
  const double h0 = -logp + kinetic(v, inv_mass);
  auto log_ratio = [&](double e) -> double {
    const LeapfrogResult r = leapfrog(z, v, grad, e, 1, fn, inv_mass);
    if (r.divergent) return -INFINITY;
    return h0 - (-r.log_density + kinetic(r.momentum, inv_mass));
  };
  double lr = log_ratio(eps);
  const int direction = lr > std::log(0.5) ? 1 : -1;
  for (int k = 0; k < 50; ++k) {
    if (direction == 1 ? !(lr > std::log(0.5)) : lr > std::log(0.5)) break;
    eps = direction == 1 ? 2.0 * eps : 0.5 * eps;
    if (eps > 1e3 || eps < 1e-10) break;
    lr = log_ratio(eps);
  }
  return std::clamp(eps, 1e-10, 1e3);
}

}  // namespace

void HmcConfig::check() const {
  if (!(step_size > 0.0)) throw InvalidParameter("step size must be positive");
  if (leapfrog_steps < 1) throw InvalidParameter("leapfrog steps L must be >= 1");
  if (iterations < 1) throw InvalidParameter("iterations must be >= 1");
  if (!(warmup_fraction >= 0.0 && warmup_fraction < 1.0) || warmup() >= iterations)
    throw InvalidParameter("warmup must be shorter than the run");
  if (!(target_accept > 0.0 && target_accept < 1.0)) throw InvalidParameter("target acceptance must lie in (0, 1)");
  if (!(step_jitter >= 0.0 && step_jitter < 1.0)) throw InvalidParameter("step jitter must lie in [0, 1)");
}

LeapfrogResult leapfrog(const Vector& position, const Vector& momentum, const Vector& grad, double eps, int L,
                        const LogDensityFn& fn, const Vector& inv_mass_in) {
  if (!(eps > 0.0) || L < 1) throw InvalidParameter("leapfrog needs eps > 0 and L >= 1");
  const Vector inv_mass = inv_mass_in.size() ? inv_mass_in : Vector(Vector::Ones(position.size()));
  LeapfrogResult r{position, momentum, grad, 0.0, false};
  for (int step = 0; step < L; ++step) {
    r.momentum += 0.5 * eps * r.grad;
    r.position += eps * inv_mass.cwiseProduct(r.momentum);
    r.log_density = fn(r.position, r.grad);
    if (!std::isfinite(r.log_density) || !r.grad.allFinite()) {
      r.divergent = true;
      return r;
    }
    r.momentum += 0.5 * eps * r.grad;
  }
  return r;
}

LeapfrogResult leapfrog(const Vector& position, const Vector& momentum, double eps, int L, const LogDensityFn& fn,
                        const Vector& inv_mass) {
  Vector grad(position.size());
  const double logp = fn(position, grad);
  if (!std::isfinite(logp) || !grad.allFinite()) return {position, momentum, grad, logp, true};
  return leapfrog(position, momentum, grad, eps, L, fn, inv_mass);
}

Chain run_hmc(const LogDensityFn& fn, const Vector& z0, const HmcConfig& config, std::uint64_t stream) {
  config.check();
  Rng rng = make_stream(config.seed, stream);
  const Index dim = z0.size();
  const int warmup = config.warmup();
  const int kept = config.iterations - warmup;

  Vector z = z0;
  Vector grad(dim);
  double logp = fn(z, grad);
  if (!std::isfinite(logp) || !grad.allFinite()) throw InvalidParameter("HMC start point has zero density");

  Vector inv_mass = Vector::Ones(dim);
  double eps = find_reasonable_step(z, logp, grad, config.step_size, fn, inv_mass, rng);
  DualAveraging adapt(config.target_accept);
  adapt.restart(eps);
  const WarmupWindows windows(warmup);
  VarianceEstimator window_var(dim);

  Chain chain;
  chain.draws.resize(kept, dim);
  chain.energies.resize(kept);
  chain.log_density.resize(kept);
  chain.accepted.resize(static_cast<std::size_t>(kept));
  long accepted_count = 0;

  for (int it = 0; it < config.iterations; ++it) {
    const bool warming = it < warmup;
    double step = eps;
    if (config.step_jitter > 0.0) step *= 1.0 + config.step_jitter * (2.0 * uniform01(rng) - 1.0);

    const Vector v = draw_momentum(inv_mass, rng);
    const double h0 = -logp + kinetic(v, inv_mass);
    const LeapfrogResult prop = leapfrog(z, v, grad, step, config.leapfrog_steps, fn, inv_mass);

    double accept_stat = 0.0;
    bool divergent = prop.divergent;
    double h1 = INFINITY;
    if (!divergent) {
      h1 = -prop.log_density + kinetic(prop.momentum, inv_mass);
      const double delta = h0 - h1;
      if (!std::isfinite(delta) || std::abs(delta) > kDivergenceThreshold) divergent = true;
      else accept_stat = delta >= 0.0 ? 1.0 : std::exp(delta);
    }
    const bool accept = !divergent && uniform01(rng) < accept_stat;
    if (accept) {
      z = prop.position;
      grad = prop.grad;
      logp = prop.log_density;
    }

    if (warming) {
      eps = adapt.update(accept_stat);
      if (config.mass == MassMode::DiagonalAdapted && windows.in_slow_phase(it)) {
        window_var.add(z);
        if (windows.closes_window(it)) {
          inv_mass = window_var.regularized();
          window_var.reset();
          eps = find_reasonable_step(z, logp, grad, eps, fn, inv_mass, rng);
          adapt.restart(eps);
        }
      }
      if (it + 1 == warmup) eps = adapt.final_step();
      continue;
    }

    const int row = it - warmup;
    chain.draws.row(row) = z.transpose();
    chain.log_density(row) = logp;
    chain.energies(row) = accept ? h1 : -logp + kinetic(v, inv_mass);
    chain.accepted[static_cast<std::size_t>(row)] = accept ? 1 : 0;
    accepted_count += accept ? 1 : 0;
    chain.divergence_count += divergent ? 1 : 0;
  }

  chain.unconstrained_draws = chain.draws;
  chain.accept_rate = kept > 0 ? static_cast<double>(accepted_count) / kept : 0.0;
  chain.low_acceptance = chain.accept_rate < 0.01;
  chain.step_size = eps;
  chain.inv_mass = inv_mass;
  for (Index k = 0; k < dim; ++k) chain.names.push_back("z" + std::to_string(k));
  return chain;
}

Chain hmc_sample(std::span<const Count> x, Family family, int p, int q, const PriorSpec& priors,
                 const HmcConfig& config, std::uint64_t stream, const InitPolicy& init) {
  const Posterior post(x, family, p, q, priors, init);
  const TransformSpec& ts = post.transform();
  const Vector base = to_unconstrained(ts, moment_start(x, family, p, q));

  // Per-chain jitter of the start, kept only where the density is finite.
  Rng init_rng = make_stream(config.seed ^ 0xA5A5A5A5A5A5A5A5ULL, stream);
  Vector z0 = base;
  for (int attempt = 0; attempt < 50; ++attempt) {
    Vector trial = base;
    for (Index k = 0; k < trial.size(); ++k) trial(k) += 0.3 * standard_normal(init_rng);
    if (std::isfinite(post.log_density(trial))) {
      z0 = trial;
      break;
    }
  }

  Chain chain = run_hmc(post.as_function(), z0, config, stream);
  chain.family = family;
  chain.p = p;
  chain.q = q;
  chain.names = parameter_names(family, p, q);
  for (Index r = 0; r < chain.unconstrained_draws.rows(); ++r)
    chain.draws.row(r) = to_constrained_packed(ts, chain.unconstrained_draws.row(r).transpose()).transpose();
  return chain;
}

std::vector<Chain> hmc_sample_chains(std::span<const Count> x, Family family, int p, int q, const PriorSpec& priors,
                                     const HmcConfig& config, int chains, const InitPolicy& init) {
  if (chains < 1) throw InvalidParameter("at least one chain is required");
  std::vector<Chain> out(static_cast<std::size_t>(chains));
  parallel_for(out.size(), [&](std::size_t c) {
    out[c] = hmc_sample(x, family, p, q, priors, config, static_cast<std::uint64_t>(c), init);
  });
  return out;
}

Chain pool_chains(const std::vector<Chain>& chains) {
  if (chains.empty()) throw InvalidParameter("no chains to pool");
  Chain pooled = chains.front();
  Index rows = 0;
  for (const auto& c : chains) {
    if (c.dim() != pooled.dim()) throw InvalidParameter("cannot pool chains of different dimension");
    rows += c.size();
  }
  pooled.draws.resize(rows, pooled.dim());
  pooled.unconstrained_draws.resize(rows, pooled.dim());
  pooled.energies.resize(rows);
  pooled.log_density.resize(rows);
  pooled.accepted.clear();
  pooled.divergence_count = 0;
  Index offset = 0;
  double accepted = 0.0;
  for (const auto& c : chains) {
    pooled.draws.middleRows(offset, c.size()) = c.draws;
    pooled.unconstrained_draws.middleRows(offset, c.size()) = c.unconstrained_draws;
    pooled.energies.segment(offset, c.size()) = c.energies;
    pooled.log_density.segment(offset, c.size()) = c.log_density;
    pooled.accepted.insert(pooled.accepted.end(), c.accepted.begin(), c.accepted.end());
    pooled.divergence_count += c.divergence_count;
    accepted += c.accept_rate * static_cast<double>(c.size());
    offset += c.size();
  }
  pooled.accept_rate = rows > 0 ? accepted / static_cast<double>(rows) : 0.0;
  pooled.low_acceptance = pooled.accept_rate < 0.01;
  return pooled;
}

}  // namespace ingarch
