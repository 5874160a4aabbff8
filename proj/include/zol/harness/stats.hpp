#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace zol::harness {

using Json = nlohmann::json;

struct Interval {
  double lo = 0, hi = 1;
};

/// Wilson score interval; z = 1.96 for 95%.
Interval wilson(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

/// Successes among completed trials; aborted trials are counted apart.
struct Estimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  std::uint64_t aborts = 0;

  double frequency() const { return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials); }
  double abort_rate() const;
  Interval ci(double z = 1.96) const { return wilson(successes, trials, z); }
  Json to_json() const;
};

enum class Trend { ToOne, ToZero, Inconclusive };
std::string to_string(Trend t);

/// No later interval lies entirely below an earlier one.
bool non_decreasing_within_ci(const std::vector<Estimate>& xs, double z = 1.96);
bool non_increasing_within_ci(const std::vector<Estimate>& xs, double z = 1.96);

/// ->1 when the series is non-decreasing within CIs and the last interval
/// sits at or above 1/2; ->0 symmetrically; otherwise inconclusive.
Trend classify_trend(const std::vector<Estimate>& xs, double z = 1.96);

struct Moments {
  double mean = 0, variance = 0;  // sample variance
};
Moments moments(const std::vector<double>& xs);

}  // namespace zol::harness
