#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "zol/core/graph.hpp"
#include "zol/core/growth.hpp"

namespace zol::lowness {

using Json = nlohmann::json;

enum class Level { Low, High };
enum class Method { Exhaustive, BranchAndBound, HeuristicVerified };

/// A homogeneous disjoint pair: every a in `a` and b in `b` are adjacent
/// iff `edge`.
struct PairWitness {
  std::vector<int> a, b;
  bool edge = true;
};

/// The colored configuration of 2-highness. `b` lists b_{l,k} for
/// l < k <= m in lexicographic order of (l,k). `c1` is indexed like
/// triple_index and `c2` like pair_index.
struct ColorWitness {
  int m = 0;
  std::vector<int> a, b;
  std::vector<int> c1, c2;
};

struct LownessVerdict {
  int iota = 1;
  Level level = Level::Low;
  Method method = Method::BranchAndBound;
  double threshold = 0;
  std::uint64_t required = 1;  // integer reading of the threshold
  std::uint64_t expansions = 0;
  std::optional<PairWitness> pair;
  std::optional<ColorWitness> colored;

  bool high() const { return level == Level::High; }
};

constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Exact unless the search runs out of budget, which raises
/// BudgetExhausted. High verdicts are re-verified before returning.
LownessVerdict classify_low_1(const Graph& h, const GrowthFunctions& gf, std::uint64_t budget = kDefaultBudget);

/// Plain enumeration of all minimal-size A; the oracle for the search.
/// Throws OracleTooLarge above `cap` nodes unless the number of subsets
/// stays below 1e8.
LownessVerdict classify_low_1_exhaustive(const Graph& h, const GrowthFunctions& gf, int cap = 20);

/// m = floor(ln ln n); no configuration exists when m < 1.
int two_low_length(int n);
/// Largest color, floor(ln ln m), never below 0.
int two_low_max_color(int m);
int triple_index(int m, int l, int k, int j);
int pair_index(int m, int l, int j);

LownessVerdict classify_low_2(const Graph& h, std::uint64_t budget = kDefaultBudget);

bool verify_witness(const Graph& h, const LownessVerdict& v);

/// Shared by both classifiers: some ra-set whose common neighbourhood
/// (within `rows`) has at least rb vertices. Counts node expansions into
/// `spent` and throws BudgetExhausted past `budget`.
std::optional<PairWitness> find_biclique(const Graph& g, std::size_t ra, std::size_t rb, std::uint64_t budget,
                                         std::uint64_t& spent);

Json verdict_to_json(const LownessVerdict& v);
const char* to_string(Level l);
const char* to_string(Method m);

}  // namespace zol::lowness
