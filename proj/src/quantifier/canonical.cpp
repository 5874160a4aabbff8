#include "zol/quantifier/canonical.hpp"

#include <algorithm>
#include <set>

#include "zol/core/error.hpp"

namespace zol::quantifier {

std::string CanonicalForm::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out = std::to_string(n) + ":";
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    int v = 0;
    for (std::size_t k = 0; k < 4; ++k) v = v * 2 + (i + k < bits.size() && bits[i + k] == '1' ? 1 : 0);
    out += digits[v];
  }
  return out;
}

Graph CanonicalForm::to_graph() const {
  Graph g(n);
  std::size_t k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k)
      if (bits[k] == '1') g.add_edge(i, j);
  return g;
}

std::string triangle_bits(const Graph& g) {
  std::string out;
  for (int j = 1; j < g.size(); ++j)
    for (int i = 0; i < j; ++i) out += g.adjacent(i, j) ? '1' : '0';
  return out;
}

namespace {

/// Representative of each vertex's twin class (same neighbourhood once
/// the pair itself is ignored). Swapping twins is an automorphism.
std::vector<int> twin_classes(const Graph& g) {
  const int n = g.size();
  std::vector<int> rep(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    rep[static_cast<std::size_t>(v)] = v;
    for (int u = 0; u < v; ++u) {
      if (rep[static_cast<std::size_t>(u)] != u) continue;
      Graph::Row a = g.neighbors(u), b = g.neighbors(v);
      a.reset(static_cast<std::size_t>(v));
      b.reset(static_cast<std::size_t>(u));
      if (a == b) {
        rep[static_cast<std::size_t>(v)] = u;
        break;
      }
    }
  }
  return rep;
}

struct LexMin {
  const Graph& g;
  std::vector<int> twin;
  int n;
  std::vector<int> order;
  std::vector<char> used;
  std::string cur, best;
  bool have_best = false;

  void go(int pos, bool less) {
    if (pos == n) {
      if (!have_best || cur < best) {
        best = cur;
        have_best = true;
      }
      return;
    }
    const std::size_t off = static_cast<std::size_t>(pos) * static_cast<std::size_t>(pos - 1) / 2;
    std::vector<char> tried(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      int t = twin[static_cast<std::size_t>(v)];
      if (tried[static_cast<std::size_t>(t)]) continue;
      tried[static_cast<std::size_t>(t)] = 1;
      cur.resize(off);
      for (int i = 0; i < pos; ++i) cur += g.adjacent(order[static_cast<std::size_t>(i)], v) ? '1' : '0';
      bool now_less = less;
      if (have_best && !less) {
        int c = cur.compare(off, std::string::npos, best, off, static_cast<std::size_t>(pos));
        if (c > 0) continue;
        now_less = c < 0;
      }
      used[static_cast<std::size_t>(v)] = 1;
      order[static_cast<std::size_t>(pos)] = v;
      go(pos + 1, now_less);
      used[static_cast<std::size_t>(v)] = 0;
    }
  }
};

using Partition = std::vector<std::vector<int>>;

void refine(const Graph& g, Partition& p) {
  const int n = g.size();
  while (true) {
    std::vector<int> cell_of(static_cast<std::size_t>(n));
    for (std::size_t c = 0; c < p.size(); ++c)
      for (int v : p[c]) cell_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
    Partition next;
    for (const auto& cell : p) {
      if (cell.size() == 1) {
        next.push_back(cell);
        continue;
      }
      std::vector<std::pair<std::vector<int>, int>> sig;
      for (int v : cell) {
        std::vector<int> counts(p.size(), 0);
        const auto& row = g.neighbors(v);
        for (auto u = row.find_first(); u != Graph::Row::npos; u = row.find_next(u))
          ++counts[static_cast<std::size_t>(cell_of[u])];
        sig.emplace_back(std::move(counts), v);
      }
      std::sort(sig.begin(), sig.end());
      for (std::size_t i = 0; i < sig.size(); ++i) {
        if (i == 0 || sig[i].first != sig[i - 1].first) next.emplace_back();
        next.back().push_back(sig[i].second);
      }
    }
    bool stable = next.size() == p.size();
    p = std::move(next);
    if (stable) return;
  }
}

struct Refinement {
  const Graph& g;
  std::vector<int> twin;
  std::string best;
  bool have_best = false;
  std::uint64_t nodes = 0;

  void go(Partition p) {
    if (++nodes > 2'000'000) throw BudgetExhausted("canonical labeling search exceeded 2e6 nodes");
    refine(g, p);
    auto target = std::find_if(p.begin(), p.end(), [](const auto& c) { return c.size() > 1; });
    if (target == p.end()) {
      std::vector<int> where(static_cast<std::size_t>(g.size()));
      for (std::size_t i = 0; i < p.size(); ++i) where[static_cast<std::size_t>(p[i][0])] = static_cast<int>(i);
      std::string leaf = triangle_bits(g.relabeled(where));
      if (!have_best || leaf < best) {
        best = std::move(leaf);
        have_best = true;
      }
      return;
    }
    const std::size_t t = static_cast<std::size_t>(target - p.begin());
    std::vector<char> tried(static_cast<std::size_t>(g.size()), 0);
    for (int v : p[t]) {
      int tw = twin[static_cast<std::size_t>(v)];
      if (tried[static_cast<std::size_t>(tw)]) continue;
      tried[static_cast<std::size_t>(tw)] = 1;
      Partition q;
      q.reserve(p.size() + 1);
      for (std::size_t c = 0; c < p.size(); ++c) {
        if (c != t) {
          q.push_back(p[c]);
          continue;
        }
        q.push_back({v});
        std::vector<int> rest;
        for (int u : p[c])
          if (u != v) rest.push_back(u);
        q.push_back(std::move(rest));
      }
      go(std::move(q));
    }
  }
};

}  // namespace

CanonicalForm lexmin_form(const Graph& g) {
  LexMin s{g, twin_classes(g), g.size(), std::vector<int>(static_cast<std::size_t>(g.size())),
           std::vector<char>(static_cast<std::size_t>(g.size()), 0), {}, {}};
  s.go(0, false);
  return {g.size(), s.best, CanonicalForm::Method::LexMin};
}

CanonicalForm refinement_form(const Graph& g) {
  Refinement s{g, twin_classes(g), {}, false, 0};
  Partition all(1);
  for (int v = 0; v < g.size(); ++v) all[0].push_back(v);
  if (g.size() == 0) all.clear();
  s.go(all);
  return {g.size(), s.best, CanonicalForm::Method::Refinement};
}

CanonicalForm canonical_form(const Graph& g, int exact_cap) {
  return g.size() <= exact_cap ? lexmin_form(g) : refinement_form(g);
}

void enumerate_graphs(int max_n, const std::function<bool(const CanonicalForm&)>& f) {
  std::set<CanonicalForm> level{CanonicalForm{0, "", CanonicalForm::Method::LexMin}};
  for (int n = 0;; ++n) {
    for (const auto& c : level)
      if (!f(c)) return;
    if (n == max_n) return;
    std::set<CanonicalForm> next;
    for (const auto& c : level) {
      Graph base = c.to_graph();
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Graph g(n + 1);
        for (auto [a, b] : base.edges()) g.add_edge(a, b);
        for (int v = 0; v < n; ++v)
          if (mask & (std::uint64_t{1} << v)) g.add_edge(v, n);
        next.insert(canonical_form(g));
      }
    }
    level = std::move(next);
  }
}

std::vector<CanonicalForm> enumerate_graphs(int max_n) {
  std::vector<CanonicalForm> out;
  enumerate_graphs(max_n, [&](const CanonicalForm& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

}  // namespace zol::quantifier
