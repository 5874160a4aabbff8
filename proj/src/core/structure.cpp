#include "zol/core/structure.hpp"

#include "zol/core/error.hpp"
#include "zol/core/rng.hpp"

namespace zol {

namespace {
constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 30;
}

Structure::Structure(KindSequence sig, int n) : sig_(std::move(sig)), n_(n) {
  if (n < 0) throw InvalidArgument("negative universe size");
  bits_.reserve(sig_.size());
  for (const auto& k : sig_.kinds()) {
    std::uint64_t cells = 1;
    for (int i = 0; i < k.arity; ++i) {
      cells *= static_cast<std::uint64_t>(n);
      if (cells > kMaxCells) throw InvalidArgument("structure too large for dense storage");
    }
    bits_.emplace_back(static_cast<std::size_t>(cells), false);
  }
}

Structure Structure::from_graph(const Graph& g) {
  Structure m(KindSequence::graph(), g.size());
  for (auto [u, v] : g.edges()) {
    int t[2] = {u + 1, v + 1};
    m.set_orbit(0, t, true);
  }
  return m;
}

std::size_t Structure::offset(std::size_t kind_index, std::span<const int> tuple) const {
  const Kind& k = sig_[kind_index];
  if (static_cast<int>(tuple.size()) != k.arity)
    throw ArityMismatch("kind " + std::to_string(k.id) + " expects arity " + std::to_string(k.arity));
  std::size_t off = 0;
  for (int a : tuple) {
    if (a < 1 || a > n_) throw InvalidArgument("element " + std::to_string(a) + " outside universe");
    off = off * static_cast<std::size_t>(n_) + static_cast<std::size_t>(a - 1);
  }
  return off;
}

bool Structure::holds(std::size_t kind_index, std::span<const int> tuple) const {
  return bits_[kind_index][offset(kind_index, tuple)];
}

bool Structure::holds_id(int kind_id, std::span<const int> tuple) const {
  auto i = sig_.index_of(kind_id);
  if (!i) throw InvalidArgument("unknown kind id " + std::to_string(kind_id));
  return holds(*i, tuple);
}

void Structure::set(std::size_t kind_index, std::span<const int> tuple, bool value) {
  bits_[kind_index][offset(kind_index, tuple)] = value;
}

void Structure::set_orbit(std::size_t kind_index, std::span<const int> tuple, bool value) {
  for (const auto& pi : sig_[kind_index].group) set(kind_index, permute(tuple, pi), value);
}

std::vector<Tuple> Structure::tuples(std::size_t kind_index) const {
  std::vector<Tuple> out;
  for_each_tuple(n_, sig_[kind_index].arity, [&](const Tuple& t) {
    if (holds(kind_index, t)) out.push_back(t);
  });
  return out;
}

std::size_t Structure::tuple_count(std::size_t kind_index) const {
  std::size_t c = 0;
  for (bool b : bits_[kind_index]) c += b ? 1 : 0;
  return c;
}

Graph Structure::to_graph() const {
  auto gi = sig_.index_of(0);
  if (!gi) throw InvalidArgument("structure has no graph kind");
  Graph g(n_);
  for (int u = 1; u <= n_; ++u)
    for (int v = u + 1; v <= n_; ++v) {
      int t[2] = {u, v};
      if (holds(*gi, t)) g.add_edge(u - 1, v - 1);
    }
  return g;
}

std::uint64_t Structure::fingerprint() const {
  Hasher h(tag("structure"));
  h.add(static_cast<std::uint64_t>(n_));
  for (std::size_t i = 0; i < sig_.size(); ++i) {
    h.add(static_cast<std::uint64_t>(sig_[i].id));
    std::uint64_t word = 0;
    int filled = 0;
    for (bool b : bits_[i]) {
      word = (word << 1) | (b ? 1u : 0u);
      if (++filled == 64) {
        h.add(word);
        word = 0;
        filled = 0;
      }
    }
    h.add(word).add(static_cast<std::uint64_t>(filled));
  }
  return h.value();
}

std::string tuple_to_string(std::span<const int> t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

std::vector<std::string> validate_structure(const Structure& m) {
  std::vector<std::string> out;
  const auto& sig = m.signature();
  for (std::size_t ki = 0; ki < sig.size(); ++ki) {
    const Kind& k = sig[ki];
    for (const auto& t : m.tuples(ki)) {
      const std::string where = "kind " + std::to_string(k.id) + ": tuple " + tuple_to_string(t);
      if (!repetition_free(t)) {
        out.push_back(where + " has repeated entries (irreflexivity)");
        continue;
      }
      for (const auto& pi : k.group) {
        Tuple p = permute(t, pi);
        if (!m.holds(ki, p))
          out.push_back(where + " present but " + tuple_to_string(p) + " missing (K-invariance)");
      }
    }
  }
  return out;
}

}  // namespace zol
