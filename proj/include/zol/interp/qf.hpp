#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "zol/core/structure.hpp"
#include "zol/logic/formula.hpp"

namespace zol::interp {

/// A quantifier-free formula compiled against a signature, with its free
/// variables bound to numbered slots.
class QfProgram {
 public:
  QfProgram() = default;
  /// Throws InvalidArgument for quantifiers, unknown kinds or variables
  /// outside `slots`, and ArityMismatch for wrong atom arity.
  QfProgram(const logic::Formula& f, const KindSequence& sig, std::span<const std::string> slots);

  bool operator()(const Structure& m, std::span<const int> values) const;
  std::size_t width() const noexcept { return width_; }
  /// Kind indices mentioned by some atom.
  const std::vector<std::size_t>& kinds() const noexcept { return kinds_; }

 private:
  struct Node {
    logic::Op op;
    std::size_t kind_index = 0;
    std::vector<int> slots;
    int a = -1, b = -1;
  };
  bool eval(int i, const Structure& m, std::span<const int> values) const;

  std::vector<Node> nodes_;
  int root_ = -1;
  std::size_t width_ = 0;
  std::vector<std::size_t> kinds_;
};

/// Counts elementary steps of the type enumerations; throws
/// BudgetExhausted when the limit is passed.
class TypeBudget {
 public:
  explicit TypeBudget(std::uint64_t limit = 50'000'000) : limit_(limit) {}
  void spend(std::uint64_t n = 1);
  std::uint64_t used() const noexcept { return used_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

/// One atomic type of a `width`-slot tuple: slot s holds element
/// values[s] of `model`, whose universe is exactly the set of values.
struct AtomicTypeView {
  const Structure& model;
  std::span<const int> values;
};

/// Which slots may share an element. Called with the slot -> class map
/// (restricted growth string, classes numbered from 1).
using PartitionFilter = std::function<bool(std::span<const int>)>;

PartitionFilter injective_on(std::vector<std::vector<int>> slot_groups);
PartitionFilter all_injective();

/// Enumerates every atomic type of a `width`-tuple that is consistent with
/// irreflexivity and invariance, varying only the relations of `kinds`
/// (other kinds stay empty). `f` returns false to stop early.
void for_each_type(const KindSequence& sig, int width, std::span<const std::size_t> kinds,
                   const PartitionFilter& ok, TypeBudget& budget,
                   const std::function<bool(const AtomicTypeView&)>& f);

/// Kind indices that can appear in a type of `width` elements.
std::vector<std::size_t> kinds_up_to_arity(const KindSequence& sig, int width);

/// Canonical key of the type restricted to `slots` (in that order):
/// equalities and every relation instance over those slots.
std::string type_key(const AtomicTypeView& t, std::span<const std::size_t> kinds, std::span<const int> slots);

/// The complete quantifier-free formula describing the type restricted
/// to `slots`, named by `names` (parallel to `slots`).
logic::FormulaPtr type_formula(const AtomicTypeView& t, std::span<const std::size_t> kinds,
                               std::span<const int> slots, std::span<const std::string> names);

}  // namespace zol::interp
