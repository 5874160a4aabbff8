#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "zol/core/rng.hpp"
#include "zol/harness/stats.hpp"

namespace zol::harness {

inline constexpr const char* kToolVersion = "0.1.0";

/// Keyed hash of a compact JSON dump, printed as 16 hex digits.
std::string fingerprint(const Json& config);

/// {"tool", "version", "experiment", "config", "config_fingerprint", "seed"}.
/// Reports never carry timings so that reruns compare byte for byte.
Json report_header(const std::string& experiment, const Json& config, Seed seed);

struct SentenceSeries {
  std::string label;
  std::vector<int> sizes;
  std::vector<Estimate> estimates;
  Trend trend = Trend::Inconclusive;
  /// Optional per-size sanity bound; empty when not applicable.
  std::vector<double> envelope;

  double abort_rate() const;
  bool non_decreasing() const { return non_decreasing_within_ci(estimates); }
};

struct ConvergenceReport {
  std::string experiment;
  Json config;
  Seed seed = 0;
  std::vector<SentenceSeries> series;
  Json extra = Json::object();

  double max_abort_rate() const;
  const SentenceSeries& find(const std::string& label) const;
  Json to_json() const;
  /// One row per size, one column pair (frequency, aborts) per series.
  std::string to_csv() const;
};

}  // namespace zol::harness
