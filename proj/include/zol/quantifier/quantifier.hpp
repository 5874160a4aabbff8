#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "zol/core/graph.hpp"
#include "zol/core/growth.hpp"
#include "zol/core/rng.hpp"
#include "zol/lowness/lowness.hpp"
#include "zol/quantifier/canonical.hpp"

namespace zol::quantifier {

using Json = nlohmann::json;

/// How the membership probability of a high graph H is chosen.
enum class ProbMode { HOfSize, GInverse };

struct QuantifierConfig {
  int iota = 1;
  GrowthFunctions gf = GrowthFunctions::paper_default();
  Seed seed = 0;
  ProbMode mode = ProbMode::HOfSize;
  std::uint64_t budget = lowness::kDefaultBudget;
};

struct MembershipDetail {
  CanonicalForm canon;
  bool low = true;
  double probability = 0;  // 0 for low graphs
  double draw = 1;         // the hashed uniform; 1 for low graphs
  bool member = false;
};

/// The seeded class of high graphs. One hashed uniform per isomorphism
/// class decides membership, so the class is closed under isomorphism and
/// needs no enumeration. Safe for concurrent use.
class QuantifierClass {
 public:
  explicit QuantifierClass(QuantifierConfig config);

  const QuantifierConfig& config() const noexcept { return config_; }

  /// Throws BudgetExhausted when lowness cannot be settled.
  bool member(const Graph& h) const { return detail(h).member; }
  MembershipDetail detail(const Graph& h) const;

  double probability(std::uint64_t n) const;
  std::size_t cache_size() const;

 private:
  MembershipDetail compute(const Graph& h, CanonicalForm canon) const;

  QuantifierConfig config_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<CanonicalForm, MembershipDetail> cache_;
};

struct PrefixEntry {
  std::size_t m = 0;
  CanonicalForm canon;
  bool low = true;
  bool t = false;
};

/// <t_m : m < m_max> over the enumeration order of all graphs.
std::vector<PrefixEntry> sample_tbar_prefix(const QuantifierClass& q, std::size_t m_max);
Json prefix_to_json(const std::vector<PrefixEntry>& prefix);

const char* to_string(ProbMode m);
ProbMode prob_mode_from_string(const std::string& s);

}  // namespace zol::quantifier
