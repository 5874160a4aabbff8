#include "zol/core/graph.hpp"

#include "zol/core/error.hpp"

namespace zol {

Graph::Graph(int n) {
  if (n < 0) throw InvalidArgument("negative graph size");
  rows_.assign(static_cast<std::size_t>(n), Row(static_cast<std::size_t>(n)));
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph Graph::cycle(int n) {
  Graph g(n);
  if (n >= 3)
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

Graph Graph::path(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph Graph::complete_bipartite(int a, int b) {
  Graph g(a + b);
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) g.add_edge(u, a + v);
  return g;
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& r : rows_) twice += r.count();
  return twice / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < size(); ++u)
    for (int v = u + 1; v < size(); ++v)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

void Graph::set_edge(int u, int v, bool present) {
  if (u == v) throw InvalidArgument("loops are not allowed");
  if (u < 0 || v < 0 || u >= size() || v >= size()) throw InvalidArgument("vertex out of range");
  rows_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = present;
  rows_[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = present;
}

Graph Graph::complement() const {
  Graph g(size());
  for (int v = 0; v < size(); ++v) {
    auto& r = g.rows_[static_cast<std::size_t>(v)];
    r = ~rows_[static_cast<std::size_t>(v)];
    r[static_cast<std::size_t>(v)] = false;
  }
  return g;
}

Graph Graph::relabeled(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != size()) throw InvalidArgument("relabeling has wrong length");
  Graph g(size());
  for (int u = 0; u < size(); ++u)
    for (int v = u + 1; v < size(); ++v)
      if (adjacent(u, v)) g.add_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
  return g;
}

Graph Graph::induced(std::span<const int> vertices) const {
  Graph g(static_cast<int>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (adjacent(vertices[i], vertices[j])) g.add_edge(static_cast<int>(i), static_cast<int>(j));
  return g;
}

Graph Graph::disjoint_union(const Graph& other) const {
  Graph g(size() + other.size());
  for (auto [u, v] : edges()) g.add_edge(u, v);
  for (auto [u, v] : other.edges()) g.add_edge(size() + u, size() + v);
  return g;
}

}  // namespace zol
