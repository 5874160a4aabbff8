#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "zol/core/graph.hpp"
#include "zol/core/kinds.hpp"

namespace zol {

/// Calls f(tuple) for every repetition-free k-tuple over {1..n}, in
/// lexicographic order.
template <class F>
void for_each_injective_tuple(int n, int k, F&& f) {
  Tuple t(static_cast<std::size_t>(k));
  std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == k) {
      f(static_cast<const Tuple&>(t));
      return;
    }
    for (int a = 1; a <= n; ++a) {
      if (used[static_cast<std::size_t>(a)]) continue;
      used[static_cast<std::size_t>(a)] = 1;
      t[static_cast<std::size_t>(pos)] = a;
      self(self, pos + 1);
      used[static_cast<std::size_t>(a)] = 0;
    }
  };
  rec(rec, 0);
}

/// Calls f(tuple) for every k-tuple over {1..n} (repetitions allowed).
template <class F>
void for_each_tuple(int n, int k, F&& f) {
  Tuple t(static_cast<std::size_t>(k), 1);
  if (k == 0) {
    f(static_cast<const Tuple&>(t));
    return;
  }
  if (n == 0) return;
  while (true) {
    f(static_cast<const Tuple&>(t));
    int pos = k - 1;
    while (pos >= 0 && t[static_cast<std::size_t>(pos)] == n) t[static_cast<std::size_t>(pos--)] = 1;
    if (pos < 0) return;
    ++t[static_cast<std::size_t>(pos)];
  }
}

/// A finite s-structure with universe {1..n}. Relations are stored as
/// dense bit arrays indexed by tuples.
class Structure {
 public:
  Structure() = default;
  Structure(KindSequence sig, int n);

  static Structure from_graph(const Graph& g);

  int size() const noexcept { return n_; }
  const KindSequence& signature() const noexcept { return sig_; }

  bool holds(std::size_t kind_index, std::span<const int> tuple) const;
  bool holds_id(int kind_id, std::span<const int> tuple) const;

  /// Sets one tuple only; can break invariance (used to build invalid
  /// structures in tests and by readers before validation).
  void set(std::size_t kind_index, std::span<const int> tuple, bool value);
  /// Sets every member of the tuple's K-orbit.
  void set_orbit(std::size_t kind_index, std::span<const int> tuple, bool value);

  std::vector<Tuple> tuples(std::size_t kind_index) const;
  std::size_t tuple_count(std::size_t kind_index) const;

  /// The graph layer (kind 0), vertices shifted to 0-based.
  Graph to_graph() const;

  std::uint64_t fingerprint() const;

  friend bool operator==(const Structure& a, const Structure& b) {
    return a.n_ == b.n_ && a.sig_ == b.sig_ && a.bits_ == b.bits_;
  }

 private:
  std::size_t offset(std::size_t kind_index, std::span<const int> tuple) const;

  KindSequence sig_;
  int n_ = 0;
  std::vector<std::vector<bool>> bits_;
};

/// Empty when the structure is irreflexive and K_t-invariant for every kind.
std::vector<std::string> validate_structure(const Structure& m);

std::string tuple_to_string(std::span<const int> t);

}  // namespace zol
