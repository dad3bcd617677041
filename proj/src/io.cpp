#include "ingarch/io.hpp"

#include "ingarch/transform.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ingarch {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

bool parse_int(const std::string& s, long long& v) {
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  return res.ec == std::errc() && res.ptr == end;
}

double parse_double(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError("not a number '" + s + "' in " + where);
  }
}

std::string join_counts(const std::vector<Count>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

}  // namespace

std::string format_double(double v, int precision) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

CountSeries read_counts_csv(const std::string& path) {
  auto in = open_in(path);
  CountSeries series;
  std::string line;
  std::size_t line_no = 0;
  long column = -1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto cells = split_csv(t);
    if (column < 0) {
      long long probe = 0;
      const auto it = std::find(cells.begin(), cells.end(), "count");
      if (it != cells.end()) {
        column = static_cast<long>(it - cells.begin());
        continue;
      }
      if (cells.size() == 1 && !parse_int(cells[0], probe)) {
        column = 0;  // single column with another header name
        continue;
      }
      if (cells.size() != 1) throw DataError(path + ": no `count` column in header");
      column = 0;  // headerless single column
    }
    long long v = 0;
    if (static_cast<std::size_t>(column) >= cells.size() || !parse_int(cells[static_cast<std::size_t>(column)], v))
      throw DataError(path + ":" + std::to_string(line_no) + ": expected an integer count, got '" + t + "'");
    if (v < 0) throw DataError(path + ":" + std::to_string(line_no) + ": negative count " + std::to_string(v));
    series.values.push_back(static_cast<Count>(v));
  }
  if (series.values.empty()) throw DataError(path + ": no counts found");
  return series;
}

void write_counts_csv(const std::string& path, const CountSeries& series) {
  auto out = open_out(path);
  out << "count\n";
  for (Count v : series.values) out << v << "\n";
}

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
  auto in = open_in(path);
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string t = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw DataError(path + ":" + std::to_string(line_no) + ": expected key = value");
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return kv;
}

void write_key_value_file(const std::string& path, const std::vector<std::pair<std::string, std::string>>& entries) {
  auto out = open_out(path);
  for (const auto& [k, v] : entries) out << k << " = " << v << "\n";
}

void write_sim_metadata(const std::string& path, const IngarchSpec& spec, std::uint64_t seed, std::size_t n,
                        std::size_t burnin, const std::string& scenario) {
  std::vector<std::pair<std::string, std::string>> kv{
      {"format_version", "1"},
      {"family", std::string(family_name(spec.family))},
      {"p", std::to_string(spec.p())},
      {"q", std::to_string(spec.q())},
  };
  const auto names = parameter_names(spec.family, spec.p(), spec.q());
  const Vector packed = spec.packed();
  for (std::size_t k = 0; k < names.size(); ++k) kv.emplace_back(names[k], format_double(packed(static_cast<Index>(k))));
  kv.emplace_back("seed", std::to_string(seed));
  kv.emplace_back("n", std::to_string(n));
  kv.emplace_back("burnin", std::to_string(burnin));
  if (!scenario.empty()) kv.emplace_back("scenario", scenario);
  write_key_value_file(path, kv);
}

void write_chain_csv(const std::string& path, const Chain& chain) {
  auto out = open_out(path);
  out.precision(17);
  for (const auto& name : chain.names) out << name << ",";
  out << "energy,accepted\n";
  for (Index r = 0; r < chain.size(); ++r) {
    for (Index k = 0; k < chain.dim(); ++k) out << chain.draws(r, k) << ",";
    out << (r < chain.energies.size() ? chain.energies(r) : 0.0) << ","
        << (static_cast<std::size_t>(r) < chain.accepted.size() ? int(chain.accepted[static_cast<std::size_t>(r)]) : 1)
        << "\n";
  }
}

Chain read_chain_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty chain file");
  const auto header = split_csv(trim(line));
  std::vector<std::string> names;
  long energy_col = -1, accepted_col = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "energy") energy_col = static_cast<long>(i);
    else if (header[i] == "accepted") accepted_col = static_cast<long>(i);
    else names.push_back(header[i]);
  }

  Chain chain;
  chain.names = names;
  int p = 0, q = 0;
  Family family = Family::Poisson;
  for (const auto& n : names) {
    if (n.rfind("alpha", 0) == 0 && n != "alpha0") ++p;
    else if (n.rfind("beta", 0) == 0) ++q;
    else if (n == "phi") family = Family::NoGe;
    else if (n == "kappa") family = Family::GP;
    else if (n == "n") family = Family::NB;
    else if (n != "alpha0") throw DataError(path + ": unknown chain column '" + n + "'");
  }
  if (names != parameter_names(family, p, q)) throw DataError(path + ": chain columns do not describe an INGARCH model");
  chain.family = family;
  chain.p = p;
  chain.q = q;

  std::vector<std::vector<double>> rows;
  std::vector<double> energies;
  std::vector<std::uint8_t> accepted;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto cells = split_csv(t);
    if (cells.size() != header.size()) throw DataError(path + ":" + std::to_string(line_no) + ": wrong number of columns");
    std::vector<double> row;
    const std::string where = path + ":" + std::to_string(line_no);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const double v = parse_double(cells[i], where);
      if (static_cast<long>(i) == energy_col) energies.push_back(v);
      else if (static_cast<long>(i) == accepted_col) accepted.push_back(v != 0.0 ? 1 : 0);
      else row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError(path + ": chain has no draws");
  const auto dim = static_cast<Index>(names.size());
  chain.draws.resize(static_cast<Index>(rows.size()), dim);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (Index k = 0; k < dim; ++k) chain.draws(static_cast<Index>(r), k) = rows[r][static_cast<std::size_t>(k)];
  chain.energies = energies.empty() ? Vector(Vector::Zero(chain.draws.rows()))
                                    : Vector(Eigen::Map<const Vector>(energies.data(), static_cast<Index>(energies.size())));
  chain.accepted = accepted.empty() ? std::vector<std::uint8_t>(rows.size(), 1) : accepted;
  chain.log_density = Vector::Zero(chain.draws.rows());
  double acc = 0.0;
  for (auto a : chain.accepted) acc += a;
  chain.accept_rate = acc / static_cast<double>(chain.accepted.size());

  // Unconstrained coordinates where the draw is interior (CMLE rows may sit on a bound).
  const TransformSpec ts = default_transform(family, p, q);
  chain.unconstrained_draws = chain.draws;
  for (Index r = 0; r < chain.draws.rows(); ++r) {
    const Vector theta = chain.draws.row(r).transpose();
    if (strictly_interior(ts, theta)) chain.unconstrained_draws.row(r) = to_unconstrained(ts, theta).transpose();
  }
  return chain;
}

void write_forecast_csv(const std::string& path, const std::vector<ForecastRow>& rows, bool with_hpd) {
  auto out = open_out(path);
  out.precision(17);
  out << "t,horizon,mean,median,lo95,hi95" << (with_hpd ? ",hpd95" : "") << ",observed\n";
  for (const auto& r : rows) {
    out << r.t << "," << r.horizon << "," << r.mean << "," << r.median << "," << r.lo95 << "," << r.hi95;
    if (with_hpd) out << "," << join_counts(r.hpd95);
    out << ",";
    if (r.observed >= 0) out << r.observed;
    out << "\n";
  }
}

std::vector<ForecastRow> read_forecast_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty forecast file");
  const auto header = split_csv(trim(line));
  auto col = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1L : static_cast<long>(it - header.begin());
  };
  const long c_t = col("t"), c_h = col("horizon"), c_mean = col("mean"), c_med = col("median"), c_lo = col("lo95"),
             c_hi = col("hi95"), c_hpd = col("hpd95"), c_obs = col("observed");
  if (c_t < 0 || c_h < 0 || c_mean < 0 || c_med < 0 || c_lo < 0 || c_hi < 0)
    throw DataError(path + ": forecast header must contain t,horizon,mean,median,lo95,hi95");
  std::vector<ForecastRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    auto cells = split_csv(t);
    cells.resize(header.size());
    const std::string where = path + ":" + std::to_string(line_no);
    auto get = [&](long c) { return parse_double(cells[static_cast<std::size_t>(c)], where); };
    ForecastRow r;
    r.t = static_cast<std::size_t>(get(c_t));
    r.horizon = static_cast<int>(get(c_h));
    r.mean = get(c_mean);
    r.median = static_cast<Count>(get(c_med));
    r.lo95 = static_cast<Count>(get(c_lo));
    r.hi95 = static_cast<Count>(get(c_hi));
    if (c_hpd >= 0) {
      std::istringstream is(cells[static_cast<std::size_t>(c_hpd)]);
      Count v;
      while (is >> v) r.hpd95.push_back(v);
    }
    if (c_obs >= 0 && !cells[static_cast<std::size_t>(c_obs)].empty()) r.observed = static_cast<Count>(get(c_obs));
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_pmf_csv(const std::string& path, const PredictiveDist& dist) {
  auto out = open_out(path);
  out.precision(17);
  out << "x,prob\n";
  for (Index x = 0; x < dist.probs.size(); ++x) out << x << "," << dist.probs(x) << "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
}

}  // namespace ingarch
