#pragma once

// Plain-text artifacts: count series, run metadata, chains, forecasts and key = value files.

#include "ingarch/forecast.hpp"
#include "ingarch/hmc.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ingarch {

/// Headered CSV with a `count` column (or a single unnamed column). Throws DataError on
/// malformed rows or negative counts, IoError when the file cannot be read.
CountSeries read_counts_csv(const std::string& path);
void write_counts_csv(const std::string& path, const CountSeries& series);

/// `key = value` lines; `#` starts a comment. Throws IoError / DataError.
std::map<std::string, std::string> read_key_value_file(const std::string& path);
void write_key_value_file(const std::string& path, const std::vector<std::pair<std::string, std::string>>& entries);

/// Sidecar describing how a simulated series was produced.
void write_sim_metadata(const std::string& path, const IngarchSpec& spec, std::uint64_t seed, std::size_t n,
                        std::size_t burnin, const std::string& scenario = "");

/// One column per parameter plus `energy` and `accepted`.
void write_chain_csv(const std::string& path, const Chain& chain);
/// Family and order are recovered from the parameter column names.
Chain read_chain_csv(const std::string& path);

void write_forecast_csv(const std::string& path, const std::vector<ForecastRow>& rows, bool with_hpd = false);
std::vector<ForecastRow> read_forecast_csv(const std::string& path);

void write_pmf_csv(const std::string& path, const PredictiveDist& dist);

void write_text_file(const std::string& path, const std::string& text);

std::string format_double(double v, int precision = 17);

}  // namespace ingarch
