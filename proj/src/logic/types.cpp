#include "zol/logic/types.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "zol/core/error.hpp"

namespace zol::logic {

std::size_t TypePartition::tuple_index(std::span<const int> t) const {
  std::size_t idx = 0;
  for (int v : t) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(v - 1);
  return idx;
}

std::vector<std::vector<Tuple>> TypePartition::classes() const {
  std::vector<std::vector<Tuple>> out(static_cast<std::size_t>(class_count));
  for_each_tuple(n, length, [&](const Tuple& t) { out[static_cast<std::size_t>(class_of[tuple_index(t)])].push_back(t); });
  return out;
}

namespace {

std::uint64_t power(std::uint64_t base, int exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

/// Equality pattern plus every relation fact among the tuple's positions.
std::vector<char> atomic_key(const Structure& m, const Tuple& t) {
  std::vector<char> key;
  const int len = static_cast<int>(t.size());
  for (int a = 0; a < len; ++a)
    for (int b = a + 1; b < len; ++b) key.push_back(t[static_cast<std::size_t>(a)] == t[static_cast<std::size_t>(b)]);
  const auto& sig = m.signature();
  for (std::size_t k = 0; k < sig.size(); ++k) {
    Tuple sub(static_cast<std::size_t>(sig[k].arity));
    for_each_tuple(len, sig[k].arity, [&](const Tuple& pos) {
      for (std::size_t i = 0; i < pos.size(); ++i) sub[i] = t[static_cast<std::size_t>(pos[i] - 1)];
      key.push_back(m.holds(k, sub));
    });
  }
  return key;
}

template <class Key>
int intern(std::map<Key, int>& ids, Key key) {
  auto [it, fresh] = ids.emplace(std::move(key), static_cast<int>(ids.size()));
  return it->second;
}

}  // namespace

TypePartition type_partition(const Structure& m, int rank, int length, std::uint64_t budget) {
  if (rank < 0 || length < 0) throw InvalidArgument("rank and length must be non-negative");
  const int n = m.size();
  const int top = length + rank;
  if (power(static_cast<std::uint64_t>(n), top, budget) > budget)
    throw BudgetExhausted("type partition needs " + std::to_string(n) + "^" + std::to_string(top) + " tuples");

  // Rank 0 on the longest tuples, then one quantifier per shorter length.
  std::vector<int> ids(power(static_cast<std::uint64_t>(n), top, budget));
  {
    std::map<std::vector<char>, int> names;
    std::size_t idx = 0;
    for_each_tuple(n, top, [&](const Tuple& t) { ids[idx++] = intern(names, atomic_key(m, t)); });
  }
  for (int len = top - 1; len >= length; --len) {
    std::map<std::pair<std::vector<char>, std::vector<int>>, int> names;
    std::vector<int> next(power(static_cast<std::uint64_t>(n), len, budget));
    std::size_t idx = 0;
    for_each_tuple(n, len, [&](const Tuple& t) {
      std::vector<int> seen;
      for (int b = 0; b < n; ++b) seen.push_back(ids[idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(b)]);
      std::sort(seen.begin(), seen.end());
      seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
      next[idx] = intern(names, std::make_pair(atomic_key(m, t), std::move(seen)));
      ++idx;
    });
    ids = std::move(next);
  }

  // Renumber by first occurrence so the numbering is stable.
  TypePartition p;
  p.rank = rank;
  p.length = length;
  p.n = n;
  p.class_of.resize(ids.size());
  std::map<int, int> order;
  for (std::size_t i = 0; i < ids.size(); ++i) p.class_of[i] = intern(order, ids[i]);
  p.class_count = static_cast<int>(order.size());
  return p;
}

namespace {

bool union_of_classes(const TypePartition& p, const std::vector<int>& s, std::span<const int> prefix) {
  std::vector<char> in(static_cast<std::size_t>(p.n) + 1, 0);
  for (int v : s) {
    if (v < 1 || v > p.n) throw InvalidArgument("set element outside the universe");
    in[static_cast<std::size_t>(v)] = 1;
  }
  std::map<int, char> verdict;
  Tuple t(prefix.begin(), prefix.end());
  t.push_back(0);
  for (int v = 1; v <= p.n; ++v) {
    t.back() = v;
    int c = p.class_of[p.tuple_index(t)];
    auto [it, fresh] = verdict.emplace(c, in[static_cast<std::size_t>(v)]);
    if (!fresh && it->second != in[static_cast<std::size_t>(v)]) return false;
  }
  return true;
}

}  // namespace

bool fo_definable(const Structure& m, const std::vector<int>& s, int rank, std::uint64_t budget) {
  return union_of_classes(type_partition(m, rank, 1, budget), s, {});
}

std::optional<Tuple> fo_definable_with_params(const Structure& m, const std::vector<int>& s, int rank, int max_params,
                                              std::uint64_t budget) {
  for (int p = 0; p <= max_params; ++p) {
    auto part = type_partition(m, rank, p + 1, budget);
    std::optional<Tuple> found;
    for_each_injective_tuple(m.size(), p, [&](const Tuple& c) {
      if (!found && union_of_classes(part, s, c)) found = c;
    });
    if (found) return found;
  }
  return std::nullopt;
}

bool check_extension_axiom(const Graph& g, int k, int l) {
  const int n = g.size();
  if (k < 0 || l < 0) throw InvalidArgument("extension axiom sizes must be non-negative");
  if (k + l >= n) throw InvalidArgument("extension axiom needs k + l < n");
  Graph::Row all(static_cast<std::size_t>(n));
  all.set();
  const Graph co = g.complement();
  bool ok = true;
  // X and Y as increasing index lists; order inside them does not matter.
  std::vector<int> x;
  std::function<void(int, Graph::Row)> pick_x;
  std::function<void(int, int, Graph::Row, Graph::Row)> pick_y;
  pick_y = [&](int from, int left, Graph::Row cand, Graph::Row used) {
    if (!ok) return;
    if (left == 0) {
      if ((cand & ~used).none()) ok = false;
      return;
    }
    for (int v = from; v < n && ok; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      Graph::Row u2 = used;
      u2.set(static_cast<std::size_t>(v));
      pick_y(v + 1, left - 1, cand & co.neighbors(v), u2);
    }
  };
  pick_x = [&](int from, Graph::Row cand) {
    if (!ok) return;
    if (static_cast<int>(x.size()) == k) {
      Graph::Row used(static_cast<std::size_t>(n));
      for (int v : x) used.set(static_cast<std::size_t>(v));
      pick_y(0, l, cand, used);
      return;
    }
    for (int v = from; v < n && ok; ++v) {
      x.push_back(v);
      pick_x(v + 1, cand & g.neighbors(v));
      x.pop_back();
    }
  };
  pick_x(0, all);
  return ok;
}

}  // namespace zol::logic
