#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace zol {

/// Finite simple graph on vertices 0..n-1 with bitset adjacency rows.
class Graph {
 public:
  using Row = boost::dynamic_bitset<std::uint64_t>;

  Graph() = default;
  explicit Graph(int n);

  static Graph empty(int n) { return Graph(n); }
  static Graph complete(int n);
  static Graph cycle(int n);
  static Graph path(int n);
  static Graph complete_bipartite(int a, int b);

  int size() const noexcept { return static_cast<int>(rows_.size()); }
  bool adjacent(int u, int v) const { return rows_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]; }
  const Row& neighbors(int v) const { return rows_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(rows_[static_cast<std::size_t>(v)].count()); }
  std::size_t edge_count() const;
  std::vector<std::pair<int, int>> edges() const;

  void set_edge(int u, int v, bool present);
  void add_edge(int u, int v) { set_edge(u, v, true); }

  /// Complement without loops.
  Graph complement() const;
  /// Vertex v of this graph becomes vertex perm[v] of the result.
  Graph relabeled(std::span<const int> perm) const;
  Graph induced(std::span<const int> vertices) const;
  Graph disjoint_union(const Graph& other) const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.rows_ == b.rows_; }

 private:
  std::vector<Row> rows_;
};

}  // namespace zol
