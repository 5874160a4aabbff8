#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "zol/core/graph.hpp"

namespace zol::quantifier {

/// Isomorphism-invariant code of a graph: the upper triangle of a
/// canonically relabeled adjacency matrix in graph6 order, one char
/// '0'/'1' per pair.
struct CanonicalForm {
  enum class Method { LexMin, Refinement };

  int n = 0;
  std::string bits;
  Method method = Method::LexMin;

  /// "n:hex", the triangle packed most significant bit first.
  std::string hex() const;
  Graph to_graph() const;

  // Ordering of the H*_m sequence: node count, then bits.
  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) { return a.n == b.n && a.bits == b.bits; }
  friend std::strong_ordering operator<=>(const CanonicalForm& a, const CanonicalForm& b) {
    if (auto c = a.n <=> b.n; c != 0) return c;
    return a.bits.compare(b.bits) <=> 0;
  }
};

constexpr int kExactCap = 10;

/// Up to `exact_cap` nodes: the lexicographically least triangle over all
/// orderings. Above it: the least leaf of an individualization-refinement
/// search tree. Both explore their whole (pruned) space and are canonical.
CanonicalForm canonical_form(const Graph& g, int exact_cap = kExactCap);
CanonicalForm lexmin_form(const Graph& g);
CanonicalForm refinement_form(const Graph& g);

/// The triangle of g as is, in graph6 order.
std::string triangle_bits(const Graph& g);

/// One representative per isomorphism class, ordered by (n, bits).
/// Calls f for each until it returns false.
void enumerate_graphs(int max_n, const std::function<bool(const CanonicalForm&)>& f);
std::vector<CanonicalForm> enumerate_graphs(int max_n);

}  // namespace zol::quantifier

template <>
struct std::hash<zol::quantifier::CanonicalForm> {
  std::size_t operator()(const zol::quantifier::CanonicalForm& c) const noexcept {
    return std::hash<std::string>{}(c.bits) ^ static_cast<std::size_t>(c.n) * 0x9e3779b97f4a7c15ULL;
  }
};
