#include "zol/harness/stats.hpp"

#include <algorithm>
#include <cmath>

namespace zol::harness {

Interval wilson(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0, 1};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1 + z2 / n;
  const double centre = (p + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double Estimate::abort_rate() const {
  const auto all = trials + aborts;
  return all == 0 ? 0.0 : static_cast<double>(aborts) / static_cast<double>(all);
}

Json Estimate::to_json() const {
  auto c = ci();
  return {{"successes", successes}, {"trials", trials},   {"aborts", aborts},
          {"frequency", frequency()}, {"ci95", {c.lo, c.hi}}};
}

std::string to_string(Trend t) {
  switch (t) {
    case Trend::ToOne:
      return "->1";
    case Trend::ToZero:
      return "->0";
    default:
      return "inconclusive";
  }
}

bool non_decreasing_within_ci(const std::vector<Estimate>& xs, double z) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (xs[j].ci(z).hi < xs[i].ci(z).lo) return false;
  return true;
}

bool non_increasing_within_ci(const std::vector<Estimate>& xs, double z) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (xs[j].ci(z).lo > xs[i].ci(z).hi) return false;
  return true;
}

Trend classify_trend(const std::vector<Estimate>& xs, double z) {
  if (xs.empty()) return Trend::Inconclusive;
  const auto last = xs.back().ci(z);
  if (non_decreasing_within_ci(xs, z) && last.lo >= 0.5) return Trend::ToOne;
  if (non_increasing_within_ci(xs, z) && last.hi <= 0.5) return Trend::ToZero;
  return Trend::Inconclusive;
}

Moments moments(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    for (double x : xs) m.variance += (x - m.mean) * (x - m.mean);
    m.variance /= static_cast<double>(xs.size() - 1);
  }
  return m;
}

}  // namespace zol::harness
