#include "zol/core/kinds.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "zol/core/error.hpp"

namespace zol {

bool is_permutation_of_degree(const Perm& p, int degree) {
  if (static_cast<int>(p.size()) != degree) return false;
  std::vector<char> seen(static_cast<std::size_t>(degree), 0);
  for (int v : p) {
    if (v < 0 || v >= degree || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

Perm identity_perm(int degree) {
  Perm p(static_cast<std::size_t>(degree));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm compose(const Perm& outer, const Perm& inner) {
  Perm r(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i)
    r[i] = outer[static_cast<std::size_t>(inner[i])];
  return r;
}

Perm inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return r;
}

Tuple permute(std::span<const int> tuple, const Perm& pi) {
  Tuple r(tuple.size());
  for (std::size_t l = 0; l < tuple.size(); ++l) r[l] = tuple[static_cast<std::size_t>(pi[l])];
  return r;
}

std::vector<Perm> close_group(std::span<const Perm> gens, int degree) {
  for (const auto& g : gens)
    if (!is_permutation_of_degree(g, degree))
      throw InvalidArgument("generator is not a permutation of degree " + std::to_string(degree));
  std::set<Perm> seen{identity_perm(degree)};
  std::vector<Perm> frontier{identity_perm(degree)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& p : frontier)
      for (const auto& g : gens) {
        Perm q = compose(g, p);
        if (seen.insert(q).second) next.push_back(std::move(q));
      }
    frontier = std::move(next);
  }
  std::vector<Perm> out;
  out.reserve(seen.size());
  out.push_back(identity_perm(degree));
  for (const auto& p : seen)
    if (p != out.front()) out.push_back(p);
  return out;
}

bool is_orbit_minimum(std::span<const int> tuple, std::span<const Perm> group) {
  for (const auto& pi : group) {
    for (std::size_t l = 0; l < tuple.size(); ++l) {
      int a = tuple[static_cast<std::size_t>(pi[l])];
      if (a < tuple[l]) return false;
      if (a > tuple[l]) break;
    }
  }
  return true;
}

Tuple orbit_minimum(std::span<const int> tuple, std::span<const Perm> group) {
  Tuple best(tuple.begin(), tuple.end());
  for (const auto& pi : group) {
    Tuple t = permute(tuple, pi);
    if (t < best) best = std::move(t);
  }
  return best;
}

bool repetition_free(std::span<const int> tuple) {
  for (std::size_t i = 0; i < tuple.size(); ++i)
    for (std::size_t j = i + 1; j < tuple.size(); ++j)
      if (tuple[i] == tuple[j]) return false;
  return true;
}

KindSequence::KindSequence(std::vector<Kind> kinds) : kinds_(std::move(kinds)) {
  std::set<int> ids;
  for (auto& k : kinds_) {
    if (!ids.insert(k.id).second) throw InvalidArgument("duplicate kind id " + std::to_string(k.id));
    if (k.arity < 0) throw InvalidArgument("negative arity");
    k.group = close_group(k.generators, k.arity);
  }
  if (auto g = index_of(0)) {
    const Kind& k = kinds_[*g];
    if (k.arity != 2 || k.group.size() != 2)
      throw InvalidArgument("kind 0 is reserved for the graph kind: arity 2, group Sym(2)");
  }
}

Kind KindSequence::graph_kind() {
  Kind k;
  k.id = 0;
  k.arity = 2;
  k.generators = {Perm{1, 0}};
  return k;
}

KindSequence KindSequence::graph() { return KindSequence({graph_kind()}); }

std::optional<std::size_t> KindSequence::index_of(int id) const {
  for (std::size_t i = 0; i < kinds_.size(); ++i)
    if (kinds_[i].id == id) return i;
  return std::nullopt;
}

const Kind& KindSequence::by_id(int id) const {
  auto i = index_of(id);
  if (!i) throw InvalidArgument("unknown kind id " + std::to_string(id));
  return kinds_[*i];
}

bool KindSequence::has_graph_kind() const { return index_of(0).has_value(); }

bool same_group(const Kind& a, const Kind& b) {
  if (a.arity != b.arity) return false;
  std::set<Perm> ga(a.group.begin(), a.group.end()), gb(b.group.begin(), b.group.end());
  return ga == gb;
}

bool KindSequence::extended_by(const KindSequence& other) const {
  for (const auto& k : kinds_) {
    auto j = other.index_of(k.id);
    if (!j || !same_group(k, other.kinds_[*j])) return false;
  }
  return true;
}

KindSequence KindSequence::with(Kind k) const {
  auto ks = kinds_;
  ks.push_back(std::move(k));
  return KindSequence(std::move(ks));
}

bool operator==(const KindSequence& a, const KindSequence& b) {
  return a.extended_by(b) && b.extended_by(a) && a.size() == b.size();
}

}  // namespace zol
