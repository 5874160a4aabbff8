#include "zol/interp/interpreted.hpp"

#include <algorithm>

#include "zol/core/error.hpp"
#include "zol/core/graph6.hpp"
#include "zol/core/structure_io.hpp"

namespace zol::interp {

int InterpretedGraph::index_of(const InterpretedNode& node) const {
  auto it = std::find(nodes.begin(), nodes.end(), node);
  return it == nodes.end() ? -1 : static_cast<int>(it - nodes.begin());
}

InterpretedGraph build_interpreted_graph(const Structure& m, const CompiledScheme& cs, std::span<const int> c,
                                         const BuildOptions& opt) {
  const Scheme& s = cs.scheme();
  if (!cs.params_ok(m, c))
    throw ParameterRejected("parameters " + tuple_to_string(c) + " fail the parameter formula of '" + s.name + "'");

  InterpretedGraph h;
  h.scheme = s.name;
  h.host_fingerprint = m.fingerprint();
  h.params.assign(c.begin(), c.end());
  for (int i = 0; i < s.block_count(); ++i) {
    const Block& b = s.blocks[static_cast<std::size_t>(i)];
    for_each_injective_tuple(m.size(), b.length(), [&](const Tuple& t) {
      if (is_orbit_minimum(t, b.group) && cs.node(m, i, t, c)) h.nodes.push_back({i, t});
    });
  }

  // Representatives used for edge evaluation.
  std::vector<Tuple> reps;
  reps.reserve(h.nodes.size());
  if (opt.scramble) {
    Rng rng(*opt.scramble);
    rng.shuffle(h.nodes.begin(), h.nodes.end());
    for (const auto& node : h.nodes) {
      const auto& group = s.blocks[static_cast<std::size_t>(node.block)].group;
      reps.push_back(permute(node.rep, group[rng.below(group.size())]));
    }
  } else {
    for (const auto& node : h.nodes) reps.push_back(node.rep);
  }

  const int count = static_cast<int>(h.nodes.size());
  h.graph = Graph(count);
  for (int u = 0; u < count; ++u)
    for (int v = u + 1; v < count; ++v) {
      const int bu = h.nodes[static_cast<std::size_t>(u)].block;
      const int bv = h.nodes[static_cast<std::size_t>(v)].block;
      const auto& ru = reps[static_cast<std::size_t>(u)];
      const auto& rv = reps[static_cast<std::size_t>(v)];
      bool uv = cs.edge(m, bu, bv, ru, rv, c);
      bool vu = cs.edge(m, bv, bu, rv, ru, c);
      if (uv != vu) throw InvalidArgument("edge formulas of '" + s.name + "' are not symmetric");
      if (uv) h.graph.add_edge(u, v);
    }
  return h;
}

InterpretedGraph build_interpreted_graph(const Structure& m, const Scheme& s, std::span<const int> c) {
  return build_interpreted_graph(m, CompiledScheme(s, m.signature()), c);
}

InterpretedGraph sorted_by_node(const InterpretedGraph& h) {
  std::vector<int> order(static_cast<std::size_t>(h.size()));
  for (int v = 0; v < h.size(); ++v) order[static_cast<std::size_t>(v)] = v;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return h.nodes[static_cast<std::size_t>(a)] < h.nodes[static_cast<std::size_t>(b)];
  });
  InterpretedGraph out = h;
  std::vector<int> where(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.nodes[k] = h.nodes[static_cast<std::size_t>(order[k])];
    where[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
  }
  out.graph = h.graph.relabeled(where);
  return out;
}

Json interpreted_to_json(const InterpretedGraph& h) {
  Json nodes = Json::array();
  for (const auto& n : h.nodes) nodes.push_back({{"block", n.block}, {"tuple", n.rep}});
  return {{"scheme", h.scheme},
          {"host", io::hex64(h.host_fingerprint)},
          {"params", h.params},
          {"nodes", nodes},
          {"graph6", graph6::encode(h.graph)}};
}

}  // namespace zol::interp
