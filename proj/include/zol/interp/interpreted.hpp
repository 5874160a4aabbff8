#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zol/core/graph.hpp"
#include "zol/core/rng.hpp"
#include "zol/interp/scheme.hpp"

namespace zol::interp {

/// A node of H: the block index and the lexicographically least tuple of
/// its orbit.
struct InterpretedNode {
  int block = 0;
  Tuple rep;
  friend bool operator==(const InterpretedNode&, const InterpretedNode&) = default;
  friend auto operator<=>(const InterpretedNode&, const InterpretedNode&) = default;
};

struct InterpretedGraph {
  std::vector<InterpretedNode> nodes;  // vertex v of `graph` is nodes[v]
  Graph graph;
  std::string scheme;
  std::uint64_t host_fingerprint = 0;
  Tuple params;

  int size() const { return graph.size(); }
  /// Index of the node, or -1.
  int index_of(const InterpretedNode& node) const;
};

struct BuildOptions {
  /// When set, nodes are listed in a random order and edges are decided on
  /// random orbit members instead of the least ones. Only useful for
  /// checking representative independence.
  std::optional<Seed> scramble;
};

/// H_{φ̄,M,c̄}. Throws ArityMismatch when |c̄| is wrong and
/// ParameterRejected when c̄ repeats or M ⊭ φ_2[c̄]. Without scrambling
/// the nodes are sorted by (block, representative).
InterpretedGraph build_interpreted_graph(const Structure& m, const CompiledScheme& s, std::span<const int> c,
                                         const BuildOptions& opt = {});
InterpretedGraph build_interpreted_graph(const Structure& m, const Scheme& s, std::span<const int> c);

/// The same graph with nodes in ascending (block, representative) order,
/// which is the order of an unscrambled build.
InterpretedGraph sorted_by_node(const InterpretedGraph& h);

Json interpreted_to_json(const InterpretedGraph& h);

}  // namespace zol::interp
