#include "zol/lowness/lowness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "zol/core/error.hpp"

namespace zol::lowness {

const char* to_string(Level l) { return l == Level::Low ? "low" : "high"; }

const char* to_string(Method m) {
  switch (m) {
    case Method::Exhaustive:
      return "exhaustive";
    case Method::BranchAndBound:
      return "branch-and-bound";
    default:
      return "heuristic-verified";
  }
}

namespace {

using Row = Graph::Row;

struct Search {
  const Graph& g;
  std::size_t ra, rb;
  std::uint64_t budget;
  std::uint64_t& spent;
  std::vector<int> chosen;

  bool grow(int start, const Row& common) {
    if (chosen.size() == ra) return true;
    const int n = g.size();
    const int missing = static_cast<int>(ra - chosen.size());
    for (int v = start; v + missing <= n; ++v) {
      if (static_cast<std::size_t>(g.degree(v)) < rb) continue;
      if (++spent > budget) throw BudgetExhausted("lowness search exceeded " + std::to_string(budget) + " expansions");
      Row next = common & g.neighbors(v);
      if (next.count() < rb) continue;
      chosen.push_back(v);
      if (grow(v + 1, next)) return true;
      chosen.pop_back();
    }
    return false;
  }
};

std::vector<int> first_members(const Row& r, std::size_t count) {
  std::vector<int> out;
  for (auto v = r.find_first(); v != Row::npos && out.size() < count; v = r.find_next(v))
    out.push_back(static_cast<int>(v));
  return out;
}

LownessVerdict base_verdict(const Graph& h, const GrowthFunctions& gf) {
  LownessVerdict v;
  v.iota = 1;
  v.threshold = gf.threshold(static_cast<std::uint64_t>(std::max(1, h.size())));
  v.required = required_size(v.threshold);
  return v;
}

double binomial(int n, int k) {
  double r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

std::optional<PairWitness> find_biclique(const Graph& g, std::size_t ra, std::size_t rb, std::uint64_t budget,
                                         std::uint64_t& spent) {
  const auto n = static_cast<std::size_t>(g.size());
  if (ra == 0 || rb == 0 || ra + rb > n) return std::nullopt;
  Search s{g, ra, rb, budget, spent, {}};
  Row all(n);
  all.set();
  if (!s.grow(0, all)) return std::nullopt;
  Row common = all;
  for (int v : s.chosen) common &= g.neighbors(v);
  return PairWitness{s.chosen, first_members(common, rb), true};
}

LownessVerdict classify_low_1(const Graph& h, const GrowthFunctions& gf, std::uint64_t budget) {
  LownessVerdict v = base_verdict(h, gf);
  const std::size_t r = v.required;
  if (2 * r > static_cast<std::size_t>(h.size())) return v;
  for (bool edge : {true, false}) {
    const Graph g = edge ? h : h.complement();
    if (auto w = find_biclique(g, r, r, budget, v.expansions)) {
      w->edge = edge;
      v.level = Level::High;
      v.pair = *w;
      if (!verify_witness(h, v)) throw Error("internal error: lowness witness failed verification");
      return v;
    }
  }
  return v;
}

LownessVerdict classify_low_1_exhaustive(const Graph& h, const GrowthFunctions& gf, int cap) {
  LownessVerdict v = base_verdict(h, gf);
  v.method = Method::Exhaustive;
  const int n = h.size();
  const int r = static_cast<int>(std::min<std::uint64_t>(v.required, 64));
  if (2 * static_cast<std::uint64_t>(r) > static_cast<std::uint64_t>(n)) return v;
  if (n > cap && binomial(n, r) > 1e8)
    throw OracleTooLarge("exhaustive lowness oracle refuses " + std::to_string(n) + " nodes");
  if (n > 63) throw OracleTooLarge("exhaustive lowness oracle is limited to 63 nodes");

  std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (h.adjacent(a, b)) adj[static_cast<std::size_t>(a)] |= std::uint64_t{1} << b;
  const std::uint64_t everything = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;

  for (bool edge : {true, false}) {
    // Combinations of r positions in increasing order.
    std::vector<int> pick(static_cast<std::size_t>(r));
    for (int k = 0; k < r; ++k) pick[static_cast<std::size_t>(k)] = k;
    while (true) {
      ++v.expansions;
      std::uint64_t mask = 0, common = everything;
      for (int a : pick) mask |= std::uint64_t{1} << a;
      for (int a : pick) {
        std::uint64_t row = adj[static_cast<std::size_t>(a)];
        if (!edge) row = ~row & everything & ~(std::uint64_t{1} << a);
        common &= row;
      }
      common &= ~mask;
      if (std::popcount(common) >= r) {
        PairWitness w;
        w.edge = edge;
        w.a = pick;
        for (int b = 0; b < n && static_cast<int>(w.b.size()) < r; ++b)
          if (common & (std::uint64_t{1} << b)) w.b.push_back(b);
        v.level = Level::High;
        v.pair = w;
        return v;
      }
      int k = r - 1;
      while (k >= 0 && pick[static_cast<std::size_t>(k)] == n - r + k) --k;
      if (k < 0) break;
      ++pick[static_cast<std::size_t>(k)];
      for (int l = k + 1; l < r; ++l) pick[static_cast<std::size_t>(l)] = pick[static_cast<std::size_t>(l - 1)] + 1;
    }
  }
  return v;
}

int two_low_length(int n) {
  if (n < 2) return 0;
  double inner = std::log(static_cast<double>(n));
  if (inner <= 1.0) return 0;
  return std::max(0, static_cast<int>(std::floor(std::log(inner))));
}

int two_low_max_color(int m) {
  if (m < 2) return 0;
  double inner = std::log(static_cast<double>(m));
  if (inner <= 1.0) return 0;
  return std::max(0, static_cast<int>(std::floor(std::log(inner))));
}

namespace {
int b_index(int m, int l, int k) {
  // Pairs (l,k) with l < k <= m in lexicographic order.
  int idx = 0;
  for (int x = 0; x < l; ++x) idx += m - x;
  return idx + (k - l - 1);
}
int b_count(int m) { return m * (m + 1) / 2; }
}  // namespace

int triple_index(int m, int l, int k, int j) { return b_index(m, l, k) * m + j; }
int pair_index(int m, int l, int j) { return l * m + j; }

LownessVerdict classify_low_2(const Graph& h, std::uint64_t budget) {
  LownessVerdict v;
  v.iota = 2;
  const int n = h.size();
  const int m = two_low_length(n);
  v.threshold = m;
  v.required = static_cast<std::uint64_t>(m);
  if (m < 1) return v;
  const int bc = b_count(m);
  if (m + bc > n) return v;

  ColorWitness w;
  w.m = m;
  w.c2.assign(static_cast<std::size_t>((m + 1) * m), 0);
  w.c1.assign(static_cast<std::size_t>(bc * m), 0);
  if (two_low_max_color(m) >= 1) {
    // Two colors already let c1 record the edge relation itself, so any
    // repetition-free configuration works.
    for (int x = 0; x < m; ++x) w.a.push_back(x);
    for (int x = 0; x < bc; ++x) w.b.push_back(m + x);
    for (int l = 0; l <= m; ++l)
      for (int k = l + 1; k <= m; ++k)
        for (int j = 0; j < m; ++j)
          w.c1[static_cast<std::size_t>(triple_index(m, l, k, j))] =
              h.adjacent(w.b[static_cast<std::size_t>(b_index(m, l, k))], w.a[static_cast<std::size_t>(j)]) ? 1 : 0;
  } else {
    // One color: the cross pattern between a and b must be homogeneous.
    std::optional<PairWitness> found;
    for (bool edge : {true, false}) {
      const Graph g = edge ? h : h.complement();
      found = find_biclique(g, static_cast<std::size_t>(m), static_cast<std::size_t>(bc), budget, v.expansions);
      if (found) break;
    }
    if (!found) return v;
    w.a = found->a;
    w.b = found->b;
  }
  v.level = Level::High;
  v.colored = w;
  if (!verify_witness(h, v)) throw Error("internal error: 2-lowness witness failed verification");
  return v;
}

bool verify_witness(const Graph& h, const LownessVerdict& v) {
  const int n = h.size();
  auto in_range = [&](const std::vector<int>& xs) {
    return std::all_of(xs.begin(), xs.end(), [&](int x) { return x >= 0 && x < n; });
  };
  auto distinct = [](std::vector<int> xs) {
    std::sort(xs.begin(), xs.end());
    return std::adjacent_find(xs.begin(), xs.end()) == xs.end();
  };
  if (v.iota == 1) {
    if (!v.pair) return false;
    const auto& w = *v.pair;
    if (!in_range(w.a) || !in_range(w.b)) return false;
    std::vector<int> both = w.a;
    both.insert(both.end(), w.b.begin(), w.b.end());
    if (!distinct(both)) return false;
    // Recompute the size bound rather than trusting the stored integer.
    const std::uint64_t need = required_size(v.threshold);
    if (w.a.size() < need || w.b.size() < need) return false;
    for (int a : w.a)
      for (int b : w.b)
        if (h.adjacent(a, b) != w.edge) return false;
    return true;
  }
  if (!v.colored) return false;
  const auto& w = *v.colored;
  const int m = w.m;
  if (m < 1 || m != two_low_length(n)) return false;
  if (static_cast<int>(w.a.size()) != m || static_cast<int>(w.b.size()) != b_count(m)) return false;
  if (static_cast<int>(w.c1.size()) != b_count(m) * m || static_cast<int>(w.c2.size()) != (m + 1) * m) return false;
  if (!in_range(w.a) || !in_range(w.b)) return false;
  std::vector<int> both = w.a;
  both.insert(both.end(), w.b.begin(), w.b.end());
  if (!distinct(both)) return false;
  const int top = two_low_max_color(m);
  auto color_ok = [&](int c) { return c >= 0 && c <= top; };
  if (!std::all_of(w.c1.begin(), w.c1.end(), color_ok) || !std::all_of(w.c2.begin(), w.c2.end(), color_ok))
    return false;
  struct Cell {
    int c1, c2l, c2k;
    bool edge;
  };
  std::vector<Cell> cells;
  for (int l = 0; l <= m; ++l)
    for (int k = l + 1; k <= m; ++k)
      for (int j = 0; j < m; ++j)
        cells.push_back({w.c1[static_cast<std::size_t>(triple_index(m, l, k, j))],
                         w.c2[static_cast<std::size_t>(pair_index(m, l, j))],
                         w.c2[static_cast<std::size_t>(pair_index(m, k, j))],
                         h.adjacent(w.b[static_cast<std::size_t>(b_index(m, l, k))], w.a[static_cast<std::size_t>(j)])});
  for (const auto& x : cells)
    for (const auto& y : cells)
      if (x.c1 == y.c1 && x.c2l == y.c2l && x.c2k == y.c2k && x.edge != y.edge) return false;
  return true;
}

Json verdict_to_json(const LownessVerdict& v) {
  Json j{{"iota", v.iota},
         {"verdict", to_string(v.level)},
         {"method", to_string(v.method)},
         {"threshold", v.threshold},
         {"required", v.required},
         {"expansions", v.expansions}};
  // Witness vertices are reported 1-based, like every other node label.
  auto one_based = [](std::vector<int> xs) {
    for (int& x : xs) ++x;
    return xs;
  };
  if (v.pair)
    j["witness"] = {{"A", one_based(v.pair->a)}, {"B", one_based(v.pair->b)}, {"t", v.pair->edge ? "edge" : "non-edge"}};
  if (v.colored)
    j["witness"] = {{"m", v.colored->m},
                    {"a", one_based(v.colored->a)},
                    {"b", one_based(v.colored->b)},
                    {"c1", v.colored->c1},
                    {"c2", v.colored->c2}};
  return j;
}

}  // namespace zol::lowness
