#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zol {

/// A permutation of {0..k-1}, stored as its image list.
using Perm = std::vector<int>;
using Tuple = std::vector<int>;

bool is_permutation_of_degree(const Perm& p, int degree);
Perm identity_perm(int degree);
Perm compose(const Perm& outer, const Perm& inner);  // (outer o inner)(i)
Perm inverse(const Perm& p);

/// <a_pi(0), ..., a_pi(k-1)>: the action used for E_K orbits.
Tuple permute(std::span<const int> tuple, const Perm& pi);

/// All elements of the group generated by `gens` on {0..degree-1},
/// identity first, the rest in lexicographic order.
std::vector<Perm> close_group(std::span<const Perm> gens, int degree);

/// True when `tuple` is the lexicographic minimum of its orbit.
bool is_orbit_minimum(std::span<const int> tuple, std::span<const Perm> group);
Tuple orbit_minimum(std::span<const int> tuple, std::span<const Perm> group);

bool repetition_free(std::span<const int> tuple);

struct Kind {
  int id = 0;
  int arity = 0;
  std::vector<Perm> generators;
  std::vector<Perm> group;  // closure of generators, filled by KindSequence

  std::size_t group_order() const { return group.size(); }
};

/// Ordered list of relation kinds. Kind 0 is conventionally the graph
/// kind (arity 2, full symmetric group).
class KindSequence {
 public:
  KindSequence() = default;
  explicit KindSequence(std::vector<Kind> kinds);

  static KindSequence graph();
  static Kind graph_kind();

  const std::vector<Kind>& kinds() const noexcept { return kinds_; }
  std::size_t size() const noexcept { return kinds_.size(); }
  const Kind& operator[](std::size_t i) const { return kinds_[i]; }

  std::optional<std::size_t> index_of(int id) const;
  const Kind& by_id(int id) const;
  bool has_graph_kind() const;
  bool is_graph_signature() const { return kinds_.size() == 1 && has_graph_kind(); }

  /// s is a sub-sequence of `other`: every kind of s appears there with
  /// identical arity and group.
  bool extended_by(const KindSequence& other) const;

  KindSequence with(Kind k) const;

  friend bool operator==(const KindSequence& a, const KindSequence& b);

 private:
  std::vector<Kind> kinds_;
};

bool same_group(const Kind& a, const Kind& b);

}  // namespace zol
