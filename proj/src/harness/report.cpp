#include "zol/harness/report.hpp"

#include <algorithm>
#include <sstream>

#include "zol/core/error.hpp"
#include "zol/core/structure_io.hpp"

namespace zol::harness {

std::string fingerprint(const Json& config) {
  Hasher h(tag("config"));
  for (char c : config.dump()) h.add(static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
  return io::hex64(h.value());
}

Json report_header(const std::string& experiment, const Json& config, Seed seed) {
  return {{"tool", "zol"},
          {"version", kToolVersion},
          {"experiment", experiment},
          {"config", config},
          {"config_fingerprint", fingerprint(config)},
          {"seed", seed}};
}

double SentenceSeries::abort_rate() const {
  std::uint64_t aborts = 0, all = 0;
  for (const auto& e : estimates) {
    aborts += e.aborts;
    all += e.aborts + e.trials;
  }
  return all == 0 ? 0.0 : static_cast<double>(aborts) / static_cast<double>(all);
}

double ConvergenceReport::max_abort_rate() const {
  double worst = 0;
  for (const auto& s : series) worst = std::max(worst, s.abort_rate());
  return worst;
}

const SentenceSeries& ConvergenceReport::find(const std::string& label) const {
  for (const auto& s : series)
    if (s.label == label) return s;
  throw InvalidArgument("no series named " + label);
}

Json ConvergenceReport::to_json() const {
  Json j = report_header(experiment, config, seed);
  Json rows = Json::array();
  for (const auto& s : series) {
    Json points = Json::array();
    for (std::size_t i = 0; i < s.sizes.size(); ++i) {
      Json p = s.estimates[i].to_json();
      p["n"] = s.sizes[i];
      if (!s.envelope.empty()) p["envelope"] = s.envelope[i];
      points.push_back(std::move(p));
    }
    rows.push_back({{"label", s.label},
                    {"points", std::move(points)},
                    {"verdict", to_string(s.trend)},
                    {"non_decreasing_within_ci", s.non_decreasing()},
                    {"abort_rate", s.abort_rate()}});
  }
  j["series"] = std::move(rows);
  j["max_abort_rate"] = max_abort_rate();
  if (!extra.empty()) j["extra"] = extra;
  return j;
}

std::string ConvergenceReport::to_csv() const {
  std::ostringstream out;
  out << "n";
  for (const auto& s : series) out << ",\"" << s.label << "\",\"" << s.label << " aborts\"";
  out << "\n";
  std::vector<int> sizes;
  for (const auto& s : series) sizes.insert(sizes.end(), s.sizes.begin(), s.sizes.end());
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  for (int n : sizes) {
    out << n;
    for (const auto& s : series) {
      auto it = std::find(s.sizes.begin(), s.sizes.end(), n);
      if (it == s.sizes.end()) {
        out << ",,";
        continue;
      }
      const auto& e = s.estimates[static_cast<std::size_t>(it - s.sizes.begin())];
      out << "," << e.frequency() << "," << e.aborts;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace zol::harness
