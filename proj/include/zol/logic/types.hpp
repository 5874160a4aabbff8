#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zol/core/graph.hpp"
#include "zol/core/structure.hpp"

namespace zol::logic {

/// Classes of length-`length` tuples that no formula of quantifier rank
/// <= `rank` tells apart. Classes are numbered by first occurrence in
/// lexicographic tuple order.
struct TypePartition {
  int rank = 0;
  int length = 1;
  int n = 0;
  std::vector<int> class_of;  // indexed by tuple_index
  int class_count = 0;

  /// Base-n index of a 1-based tuple.
  std::size_t tuple_index(std::span<const int> t) const;
  std::vector<std::vector<Tuple>> classes() const;
};

constexpr std::uint64_t kTypeBudget = 50'000'000;

/// Throws BudgetExhausted when n^(length+rank) exceeds the budget.
TypePartition type_partition(const Structure& m, int rank, int length, std::uint64_t budget = kTypeBudget);

/// S (1-based nodes) is a union of rank-r classes of single nodes.
bool fo_definable(const Structure& m, const std::vector<int>& s, int rank, std::uint64_t budget = kTypeBudget);

/// Like fo_definable, but the formula may mention up to `max_params`
/// named elements. Returns the first parameter tuple that works.
std::optional<Tuple> fo_definable_with_params(const Structure& m, const std::vector<int>& s, int rank, int max_params,
                                              std::uint64_t budget = kTypeBudget);

/// Every pair of disjoint sets X (size k), Y (size l) has a witness z
/// outside both, adjacent to all of X and to none of Y.
bool check_extension_axiom(const Graph& g, int k, int l);

}  // namespace zol::logic
