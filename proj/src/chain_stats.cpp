#include "ingarch/chain_stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace ingarch {

Vector sample_acf(const Vector& x, int max_lag) {
  const Index n = x.size();
  if (n < 2) return {};
  const Vector centered = x.array() - x.mean();
  const double c0 = centered.squaredNorm() / static_cast<double>(n);
  if (!(c0 > 0.0)) return {};
  const Index lags = std::min<Index>(max_lag, n - 1);
  Vector acf(lags + 1);
  for (Index h = 0; h <= lags; ++h)
    acf(h) = centered.head(n - h).dot(centered.tail(n - h)) / static_cast<double>(n) / c0;
  return acf;
}

double effective_sample_size(const Vector& x) {
  const Index n = x.size();
  if (n < 4) return std::numeric_limits<double>::quiet_NaN();
  const Vector centered = x.array() - x.mean();
  const double c0 = centered.squaredNorm() / static_cast<double>(n);
  if (!(c0 > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  auto rho = [&](Index h) { return centered.head(n - h).dot(centered.tail(n - h)) / static_cast<double>(n) / c0; };

  // Sum of paired autocorrelations Gamma_k = rho(2k) + rho(2k+1), truncated at the first
  // non-positive pair and forced monotone.
  double sum = 0.0;
  double prev = INFINITY;
  for (Index k = 0; 2 * k + 1 < n; ++k) {
    double pair = rho(2 * k) + rho(2 * k + 1);
    if (!(pair > 0.0)) break;
    pair = std::min(pair, prev);
    prev = pair;
    sum += pair;
  }
  const double tau = std::max(-1.0 + 2.0 * sum, 1.0 / std::log10(static_cast<double>(n)));
  return static_cast<double>(n) / tau;
}

double split_rhat(const std::vector<Vector>& chains) {
  std::vector<Vector> halves;
  for (const auto& c : chains) {
    const Index half = c.size() / 2;
    if (half < 2) continue;
    halves.push_back(c.head(half));
    halves.push_back(c.segment(c.size() - half, half));
  }
  if (halves.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const Index n = std::min_element(halves.begin(), halves.end(), [](const Vector& a, const Vector& b) {
                    return a.size() < b.size();
                  })->size();
  const double m = static_cast<double>(halves.size());
  Vector means(static_cast<Index>(halves.size()));
  double within = 0.0;
  for (std::size_t j = 0; j < halves.size(); ++j) {
    const Vector h = halves[j].head(n);
    means(static_cast<Index>(j)) = h.mean();
    within += (h.array() - h.mean()).square().sum() / static_cast<double>(n - 1);
  }
  within /= m;
  const double between = static_cast<double>(n) * (means.array() - means.mean()).square().sum() / (m - 1.0);
  if (!(within > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  const double var_plus = (static_cast<double>(n) - 1.0) / static_cast<double>(n) * within + between / static_cast<double>(n);
  return std::sqrt(var_plus / within);
}

double quantile(Vector x, double prob) {
  if (x.size() == 0) return std::numeric_limits<double>::quiet_NaN();
  std::sort(x.data(), x.data() + x.size());
  const double pos = prob * static_cast<double>(x.size() - 1);
  const auto lo = static_cast<Index>(std::floor(pos));
  const Index hi = std::min<Index>(lo + 1, x.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return x(lo) + frac * (x(hi) - x(lo));
}

ChainSummary chain_summary(const Chain& chain) {
  if (chain.size() == 0) throw InvalidParameter("cannot summarise an empty chain");
  ChainSummary out;
  out.accept_rate = chain.accept_rate;
  out.draws = chain.size();
  out.divergences = chain.divergence_count;
  for (Index k = 0; k < chain.dim(); ++k) {
    const Vector col = chain.draws.col(k);
    ParamSummary s;
    s.name = k < static_cast<Index>(chain.names.size()) ? chain.names[static_cast<std::size_t>(k)] : "x" + std::to_string(k);
    s.mean = col.mean();
    s.sd = col.size() > 1 ? std::sqrt((col.array() - s.mean).square().sum() / static_cast<double>(col.size() - 1)) : 0.0;
    s.q025 = quantile(col, 0.025);
    s.q50 = quantile(col, 0.5);
    s.q975 = quantile(col, 0.975);
    s.ess = effective_sample_size(col);
    s.degenerate = !std::isfinite(s.ess);
    out.params.push_back(s);
  }
  return out;
}

DiagnosticsFiles chain_diagnostics_export(const Chain& chain, const std::string& prefix, int bins) {
  if (chain.size() == 0) throw InvalidParameter("cannot export diagnostics of an empty chain");
  if (bins < 1) throw InvalidParameter("histogram needs at least one bin");
  DiagnosticsFiles files;
  auto open = [](const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out.precision(17);
    return out;
  };
  for (Index k = 0; k < chain.dim(); ++k) {
    const std::string name =
        k < static_cast<Index>(chain.names.size()) ? chain.names[static_cast<std::size_t>(k)] : "x" + std::to_string(k);
    const Vector col = chain.draws.col(k);

    const std::string trace_path = prefix + "_" + name + "_trace.csv";
    auto trace = open(trace_path);
    trace << "iteration,value\n";
    for (Index i = 0; i < col.size(); ++i) trace << i + 1 << "," << col(i) << "\n";
    files.trace.push_back(trace_path);

    const std::string hist_path = prefix + "_" + name + "_hist.csv";
    auto hist = open(hist_path);
    hist << "left,right,count\n";
    const double lo = col.minCoeff();
    double hi = col.maxCoeff();
    if (!(hi > lo)) hi = lo + 1.0;
    const double width = (hi - lo) / bins;
    std::vector<long> counts(static_cast<std::size_t>(bins), 0);
    for (Index i = 0; i < col.size(); ++i) {
      auto b = static_cast<long>((col(i) - lo) / width);
      b = std::clamp<long>(b, 0, bins - 1);
      ++counts[static_cast<std::size_t>(b)];
    }
    for (int b = 0; b < bins; ++b) hist << lo + b * width << "," << lo + (b + 1) * width << "," << counts[static_cast<std::size_t>(b)] << "\n";
    files.histogram.push_back(hist_path);

    const std::string acf_path = prefix + "_" + name + "_acf.csv";
    auto acf_out = open(acf_path);
    acf_out << "lag,acf\n";
    const Vector acf = sample_acf(col, 50);
    for (Index h = 0; h < acf.size(); ++h) acf_out << h << "," << acf(h) << "\n";
    files.acf.push_back(acf_path);
  }
  return files;
}

}  // namespace ingarch
