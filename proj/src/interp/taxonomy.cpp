#include "zol/interp/taxonomy.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "zol/core/draw.hpp"
#include "zol/core/error.hpp"

namespace zol::interp {

std::string to_string(Tri t) {
  switch (t) {
    case Tri::True:
      return "true";
    case Tri::False:
      return "false";
    default:
      return "undetermined";
  }
}

namespace {

// A type frame lays out the slots [x̄_i | x̄'_j | active params]. Blocks
// that are absent have index -1 and length 0. Inert parameters have no
// slot; programs read a dummy value for them, which they never inspect.
struct Frame {
  const Scheme* s = nullptr;
  int i = -1, j = -1;
  int ki = 0, kj = 0;
  std::vector<int> active;

  int width() const { return ki + kj + static_cast<int>(active.size()); }
  int zslot(int p) const {
    auto it = std::find(active.begin(), active.end(), p);
    return it == active.end() ? -1 : ki + kj + static_cast<int>(it - active.begin());
  }
  std::vector<int> x_slots() const { return range(0, ki); }
  std::vector<int> y_slots() const { return range(ki, ki + kj); }
  std::vector<int> z_slots() const { return range(ki + kj, width()); }
  std::vector<int> param_map() const {
    std::vector<int> m;
    for (int p = 0; p < s->param_count(); ++p) m.push_back(zslot(p));
    return m;
  }
  std::vector<int> node_i_map() const { return cat(x_slots(), param_map()); }
  std::vector<int> node_j_map() const { return cat(y_slots(), param_map()); }
  std::vector<int> edge_map() const { return cat(cat(x_slots(), y_slots()), param_map()); }

  /// x̄⌢z̄ and x̄'⌢z̄ repetition-free, as the node guards demand.
  PartitionFilter guards() const {
    return injective_on({cat(x_slots(), z_slots()), cat(y_slots(), z_slots())});
  }

  static std::vector<int> range(int a, int b) {
    std::vector<int> v(static_cast<std::size_t>(std::max(0, b - a)));
    std::iota(v.begin(), v.end(), a);
    return v;
  }
  static std::vector<int> cat(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }
};

Frame make_frame(const Scheme& s, int i, int j, std::vector<int> active) {
  Frame f;
  f.s = &s;
  f.i = i;
  f.j = j;
  f.ki = i < 0 ? 0 : s.blocks[static_cast<std::size_t>(i)].length();
  f.kj = j < 0 ? 0 : s.blocks[static_cast<std::size_t>(j)].length();
  f.active = std::move(active);
  return f;
}

std::vector<int> gather(const AtomicTypeView& t, const std::vector<int>& map) {
  std::vector<int> v;
  v.reserve(map.size());
  for (int m : map) v.push_back(m < 0 ? 0 : t.values[static_cast<std::size_t>(m)]);
  return v;
}

bool run(const QfProgram& p, const AtomicTypeView& t, const std::vector<int>& map) {
  auto v = gather(t, map);
  return p(t.model, v);
}

std::vector<std::size_t> merge_kinds(std::initializer_list<const QfProgram*> progs) {
  std::set<std::size_t> ks;
  for (const auto* p : progs) ks.insert(p->kinds().begin(), p->kinds().end());
  return {ks.begin(), ks.end()};
}

std::vector<int> without(const std::vector<int>& v, int x) {
  std::vector<int> out;
  for (int e : v)
    if (e != x) out.push_back(e);
  return out;
}

/// A stored atomic type (the views handed out by for_each_type are
/// transient).
struct OwnedType {
  Structure model;
  std::vector<int> values;
  AtomicTypeView view() const { return {model, values}; }
};

/// Required restriction of the parameter part: the parameters `params`
/// must have the same type as in `ref` (whose slots follow `ref_active`).
struct ParamContext {
  const OwnedType* ref = nullptr;
  std::vector<int> ref_active;
  std::vector<int> params;

  bool matches(const AtomicTypeView& t, const Frame& f, std::span<const std::size_t> kinds) const {
    if (!ref) return true;
    std::vector<int> mine, theirs;
    for (int p : params) {
      mine.push_back(f.zslot(p));
      auto it = std::find(ref_active.begin(), ref_active.end(), p);
      theirs.push_back(static_cast<int>(it - ref_active.begin()));
    }
    return type_key(t, kinds, mine) == type_key(ref->view(), kinds, theirs);
  }
};

/// Whether `value` is constant on every group of types (satisfying `cond`)
/// that agree on all slots but `drop_slot`.
template <class Cond, class Value>
bool constant_without(const KindSequence& sig, const Frame& f, int drop_slot, std::span<const std::size_t> kinds,
                      TypeBudget& budget, Cond&& cond, Value&& value) {
  std::vector<int> others;
  for (int s = 0; s < f.width(); ++s)
    if (s != drop_slot) others.push_back(s);
  std::map<std::string, int> seen;
  bool constant = true;
  for_each_type(sig, f.width(), kinds, f.guards(), budget, [&](const AtomicTypeView& t) {
    if (!cond(t)) return true;
    int& bits = seen[type_key(t, kinds, others)];
    bits |= value(t) ? 1 : 2;
    if (bits == 3) constant = false;
    return constant;
  });
  return constant;
}

/// True when no formula of the scheme can tell parameter p's relations
/// apart, within the given context.
bool independent_of(const CompiledScheme& cs, int p, const ParamContext& ctx, TypeBudget& budget) {
  const Scheme& s = cs.scheme();
  const KindSequence& sig = cs.signature();
  const auto active = s.active_params();
  const QfProgram& phi2 = cs.param_program();

  {
    Frame f = make_frame(s, -1, -1, active);
    auto kinds = phi2.kinds();
    auto pm = f.param_map();
    if (!constant_without(
            sig, f, f.zslot(p), kinds, budget, [&](const AtomicTypeView& t) { return ctx.matches(t, f, kinds); },
            [&](const AtomicTypeView& t) { return run(phi2, t, pm); }))
      return false;
  }
  for (int i = 0; i < s.block_count(); ++i) {
    Frame f = make_frame(s, i, -1, active);
    const QfProgram& node = cs.node_program(i);
    auto kinds = merge_kinds({&phi2, &node});
    auto pm = f.param_map();
    auto nm = f.node_i_map();
    if (!constant_without(
            sig, f, f.zslot(p), kinds, budget,
            [&](const AtomicTypeView& t) { return ctx.matches(t, f, kinds) && run(phi2, t, pm); },
            [&](const AtomicTypeView& t) { return run(node, t, nm); }))
      return false;
  }
  for (int i = 0; i < s.block_count(); ++i)
    for (int j = i; j < s.block_count(); ++j) {
      Frame f = make_frame(s, i, j, active);
      const QfProgram& ni = cs.node_program(i);
      const QfProgram& nj = cs.node_program(j);
      const QfProgram& e = cs.edge_program(i, j);
      auto kinds = merge_kinds({&phi2, &ni, &nj, &e});
      auto pm = f.param_map();
      auto im = f.node_i_map();
      auto jm = f.node_j_map();
      auto em = f.edge_map();
      if (!constant_without(
              sig, f, f.zslot(p), kinds, budget,
              [&](const AtomicTypeView& t) {
                return ctx.matches(t, f, kinds) && run(phi2, t, pm) && run(ni, t, im) && run(nj, t, jm);
              },
              [&](const AtomicTypeView& t) { return run(e, t, em); }))
        return false;
    }
  return true;
}

/// Replaces every atom and equality that mentions v by a constant, which
/// makes v disappear from the formula.
logic::FormulaPtr drop_var(const logic::FormulaPtr& f, const std::string& v) {
  using logic::Op;
  switch (f->op) {
    case Op::Atom:
      return logic::mentions_var(*f, v) ? logic::make_false() : f;
    case Op::Eq:
      if (f->vars[0] == v && f->vars[1] == v) return logic::make_true();
      return logic::mentions_var(*f, v) ? logic::make_false() : f;
    case Op::Not:
    case Op::And:
    case Op::Or: {
      auto g = std::make_shared<logic::Formula>(*f);
      for (auto& k : g->kids) k = drop_var(k, v);
      return g;
    }
    default:
      return f;
  }
}

Scheme make_inert(const Scheme& s, int p) {
  Scheme t = s;
  const std::string& v = s.params[static_cast<std::size_t>(p)];
  t.param_formula = drop_var(t.param_formula, v);
  for (auto& b : t.blocks) b.node = drop_var(b.node, v);
  for (auto& [k, f] : t.edges) f = drop_var(f, v);
  t.inert.push_back(p);
  return make_scheme(std::move(t));
}

std::vector<int> mask_positions(unsigned mask, int k) {
  std::vector<int> out;
  for (int l = 0; l < k; ++l)
    if (mask & (1u << l)) out.push_back(l);
  return out;
}

void restrict_graph(const InterpretedGraph& h, const std::set<int>& avoid, std::vector<InterpretedNode>& nodes,
                    std::set<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<int> keep;
  for (int v = 0; v < h.size(); ++v) {
    const auto& rep = h.nodes[static_cast<std::size_t>(v)].rep;
    if (std::none_of(rep.begin(), rep.end(), [&](int a) { return avoid.count(a) > 0; })) keep.push_back(v);
  }
  std::sort(keep.begin(), keep.end(), [&](int a, int b) {
    return h.nodes[static_cast<std::size_t>(a)] < h.nodes[static_cast<std::size_t>(b)];
  });
  for (int v : keep) nodes.push_back(h.nodes[static_cast<std::size_t>(v)]);
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = a + 1; b < keep.size(); ++b)
      if (h.graph.adjacent(keep[a], keep[b])) edges.emplace(a, b);
}

bool same_group_set(std::vector<Perm> a, std::vector<Perm> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

Structure sample_host(const KindSequence& sig, int n, double q, Seed seed) {
  std::map<int, double> probs;
  for (const auto& k : sig.kinds()) probs[k.id] = q;
  return draw_structure(sig, ProbabilityProfile::p0(probs), n, seed);
}

std::optional<Tuple> sample_params(const Structure& m, const CompiledScheme& cs, Seed seed) {
  std::vector<Tuple> ok;
  for_each_injective_tuple(m.size(), cs.scheme().param_count(), [&](const Tuple& t) {
    if (cs.params_ok(m, t)) ok.push_back(t);
  });
  if (ok.empty()) return std::nullopt;
  Rng rng(seed);
  return ok[rng.below(ok.size())];
}

bool is_trivial(const Scheme& s) {
  return std::all_of(s.blocks.begin(), s.blocks.end(), [](const Block& b) { return b.length() == 0; });
}

bool is_degenerated(const Scheme& s, const KindSequence& sig) {
  CompiledScheme cs(s, sig);
  Frame f = make_frame(s, -1, -1, s.active_params());
  TypeBudget budget;
  bool sat = false;
  auto pm = f.param_map();
  for_each_type(sig, f.width(), cs.param_program().kinds(), all_injective(), budget, [&](const AtomicTypeView& t) {
    sat = run(cs.param_program(), t, pm);
    return !sat;
  });
  return !sat;
}

bool is_complete(const Scheme& s, const KindSequence& sig) {
  CompiledScheme cs(s, sig);
  TypeBudget budget;
  for (int i = 0; i < s.block_count(); ++i) {
    Frame f = make_frame(s, i, -1, s.active_params());
    auto kinds = kinds_up_to_arity(sig, f.width());
    auto nm = f.node_i_map();
    int satisfying = 0;
    for_each_type(sig, f.width(), kinds, all_injective(), budget, [&](const AtomicTypeView& t) {
      if (run(cs.node_program(i), t, nm)) ++satisfying;
      return satisfying < 2;
    });
    if (satisfying != 1) return false;
  }
  return true;
}

Verdict is_one_weak(const Scheme& s, const KindSequence& sig, const MonteCarlo& mc) {
  if (is_trivial(s)) return {Tri::True, "a", Json::object()};
  if (is_degenerated(s, sig)) return {Tri::True, "b", Json::object()};
  CompiledScheme cs(s, sig);
  TypeBudget budget(mc.type_budget);
  const auto active = s.active_params();
  try {
    for (int i1 = 0; i1 < s.block_count(); ++i1)
      for (int i2 = i1; i2 < s.block_count(); ++i2) {
        Frame f = make_frame(s, i1, i2, active);
        if (f.ki == 0 || f.kj == 0) continue;
        const QfProgram& phi2 = cs.param_program();
        const QfProgram& n1 = cs.node_program(i1);
        const QfProgram& n2 = cs.node_program(i2);
        const QfProgram& e = cs.edge_program(i1, i2);
        auto kinds = merge_kinds({&phi2, &n1, &n2, &e});
        auto pm = f.param_map();
        auto m1 = f.node_i_map();
        auto m2 = f.node_j_map();
        auto em = f.edge_map();
        for (unsigned v1 = 0; v1 + 1 < (1u << f.ki); ++v1)
          for (unsigned v2 = 0; v2 + 1 < (1u << f.kj); ++v2) {
            auto guards = f.guards();
            // Free positions of one tuple avoid every position of the other.
            PartitionFilter filter = [&, guards](std::span<const int> cls) {
              if (!guards(cls)) return false;
              for (int a = 0; a < f.ki; ++a)
                for (int b = 0; b < f.kj; ++b) {
                  bool anchored = (v1 & (1u << a)) && (v2 & (1u << b));
                  if (!anchored && cls[static_cast<std::size_t>(a)] == cls[static_cast<std::size_t>(f.ki + b)])
                    return false;
                }
              return true;
            };
            std::vector<int> base = mask_positions(v1, f.ki);
            for (int b : mask_positions(v2, f.kj)) base.push_back(f.ki + b);
            for (int z : f.z_slots()) base.push_back(z);
            std::map<std::string, int> seen;
            for_each_type(sig, f.width(), kinds, filter, budget, [&](const AtomicTypeView& t) {
              if (run(phi2, t, pm) && run(n1, t, m1) && run(n2, t, m2))
                seen[type_key(t, kinds, base)] |= run(e, t, em) ? 1 : 2;
              return true;
            });
            for (const auto& [key, bits] : seen)
              if (bits != 3)
                return {Tri::True, "c",
                        Json{{"t", bits == 1 ? "edge" : "non-edge"},
                             {"i1", i1},
                             {"i2", i2},
                             {"v1", mask_positions(v1, f.ki)},
                             {"v2", mask_positions(v2, f.kj)}}};
          }
      }
  } catch (const BudgetExhausted& e) {
    return {Tri::Undetermined, "none", Json{{"reason", e.what()}}};
  }
  return {Tri::False, "none", Json::object()};
}

Verdict is_two_weak(const Scheme& s, const KindSequence& sig, const MonteCarlo& mc) {
  if (is_trivial(s)) return {Tri::True, "a", Json::object()};
  if (is_degenerated(s, sig)) return {Tri::True, "b", Json::object()};
  for (int i = 0; i < s.block_count(); ++i)
    if (s.blocks[static_cast<std::size_t>(i)].length() >= 2) return {Tri::True, "c", Json{{"block", i}}};

  CompiledScheme cs(s, sig);
  Verdict out{Tri::False, "none", Json::object()};
  TypeBudget budget(mc.type_budget);
  try {
    for (int i1 = 0; i1 < s.block_count() && out.value == Tri::False; ++i1)
      for (int i2 = i1; i2 < s.block_count(); ++i2) {
        Frame f = make_frame(s, i1, i2, s.active_params());
        if (f.ki != 1 || f.kj != 1) continue;
        const QfProgram& phi2 = cs.param_program();
        const QfProgram& n1 = cs.node_program(i1);
        const QfProgram& n2 = cs.node_program(i2);
        const QfProgram& e = cs.edge_program(i1, i2);
        auto kinds = merge_kinds({&phi2, &n1, &n2, &e});
        auto pm = f.param_map();
        auto m1 = f.node_i_map();
        auto m2 = f.node_j_map();
        auto em = f.edge_map();
        auto guards = f.guards();
        PartitionFilter filter = [guards](std::span<const int> cls) { return guards(cls) && cls[0] != cls[1]; };
        auto base = f.z_slots();
        std::map<std::string, int> seen;
        for_each_type(sig, f.width(), kinds, filter, budget, [&](const AtomicTypeView& t) {
          if (run(phi2, t, pm) && run(n1, t, m1) && run(n2, t, m2))
            seen[type_key(t, kinds, base)] |= run(e, t, em) ? 1 : 2;
          return true;
        });
        for (const auto& [key, bits] : seen)
          if (bits != 3) {
            out = {Tri::True, "d", Json{{"t", bits == 1 ? "edge" : "non-edge"}, {"i1", i1}, {"i2", i2}}};
            break;
          }
        if (out.value == Tri::True) break;
      }
  } catch (const BudgetExhausted& e) {
    out = {Tri::Undetermined, "none", Json{{"reason", e.what()}}};
  }

  if (mc.trials > 0) {
    std::uint64_t edges = 0, non_edges = 0, samples = 0;
    for (int n : mc.sizes)
      for (int trial = 0; trial < mc.trials; ++trial) {
        Seed seed = derive_seed(mc.seed, {tag("cross-pattern"), static_cast<std::uint64_t>(n),
                                          static_cast<std::uint64_t>(trial)});
        Structure host = sample_host(sig, n, mc.q, seed);
        auto c = sample_params(host, cs, derive_seed(seed, {tag("params")}));
        if (!c) continue;
        ++samples;
        auto h = build_interpreted_graph(host, cs, *c);
        for (int u = 0; u < h.size(); ++u)
          for (int v = u + 1; v < h.size(); ++v) {
            if (s.blocks[static_cast<std::size_t>(h.nodes[static_cast<std::size_t>(u)].block)].length() != 1) continue;
            if (s.blocks[static_cast<std::size_t>(h.nodes[static_cast<std::size_t>(v)].block)].length() != 1) continue;
            (h.graph.adjacent(u, v) ? edges : non_edges) += 1;
          }
      }
    out.evidence["sampled"] = {{"hosts", samples}, {"edges", edges}, {"non_edges", non_edges}};
  }
  return out;
}

Verdict is_reduced(const Scheme& s, const KindSequence& sig, const MonteCarlo& mc) {
  const auto active = s.active_params();
  if (active.empty()) return {Tri::True, "no-parameters", Json::object()};
  CompiledScheme cs(s, sig);
  TypeBudget budget(mc.type_budget);

  // Greedily make parameters inert while the graphs stay the same.
  std::vector<int> droppable;
  try {
    Scheme cur = s;
    for (int p : active) {
      CompiledScheme cc(cur, sig);
      if (independent_of(cc, p, ParamContext{}, budget)) {
        droppable.push_back(p);
        cur = make_inert(cur, p);
      }
    }
  } catch (const BudgetExhausted& e) {
    return {Tri::Undetermined, "none", Json{{"reason", e.what()}}};
  }
  if (!droppable.empty()) return {Tri::False, "droppable", Json{{"droppable", droppable}}};

  // Every parameter matters in principle; look for hosts that show it.
  Json shown = Json::object();
  std::vector<int> unshown;
  for (int p : active) {
    bool found = false;
    for (int n : mc.sizes) {
      for (int trial = 0; trial < mc.trials && !found; ++trial) {
        Seed seed = derive_seed(mc.seed, {tag("reduced"), static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(n),
                                          static_cast<std::uint64_t>(trial)});
        Structure host = sample_host(sig, n, mc.q, seed);
        auto c = sample_params(host, cs, derive_seed(seed, {tag("params")}));
        if (!c) continue;
        std::vector<int> alts;
        for (int v = 1; v <= n; ++v) {
          if (std::find(c->begin(), c->end(), v) != c->end()) continue;
          Tuple c2 = *c;
          c2[static_cast<std::size_t>(p)] = v;
          if (cs.params_ok(host, c2)) alts.push_back(v);
        }
        if (alts.empty()) continue;
        Rng rng(derive_seed(seed, {tag("alt")}));
        int v = alts[rng.below(alts.size())];
        Tuple c2 = *c;
        c2[static_cast<std::size_t>(p)] = v;
        auto h1 = build_interpreted_graph(host, cs, *c);
        auto h2 = build_interpreted_graph(host, cs, c2);
        std::set<int> avoid{(*c)[static_cast<std::size_t>(p)], v};
        std::vector<InterpretedNode> n1, n2;
        std::set<std::pair<std::size_t, std::size_t>> e1, e2;
        restrict_graph(h1, avoid, n1, e1);
        restrict_graph(h2, avoid, n2, e2);
        if (n1 != n2 || e1 != e2) {
          found = true;
          shown[s.params[static_cast<std::size_t>(p)]] = {{"n", n}, {"trial", trial}, {"params", *c}, {"changed_to", v}};
        }
      }
      if (found) break;
    }
    if (!found) unshown.push_back(p);
  }
  Json ev{{"needed", shown}};
  if (!unshown.empty()) {
    ev["unresolved"] = unshown;
    return {Tri::Undetermined, "none", ev};
  }
  return {Tri::True, "sampled", ev};
}

namespace {

struct Member {
  Scheme scheme;
  Json signature;  // scheme JSON without the name, for deduplication
};

/// Builds the member for one complete parameter type, after `cur` has
/// made some parameters inert. nullopt when every block is empty.
std::optional<Scheme> member_for(const Scheme& cur, const KindSequence& sig, const OwnedType& rho,
                                 const std::vector<int>& rho_active, TypeBudget& budget) {
  CompiledScheme cs(cur, sig);
  const auto active = cur.active_params();
  std::vector<std::string> active_names;
  for (int p : active) active_names.push_back(cur.params[static_cast<std::size_t>(p)]);

  ParamContext ctx{&rho, rho_active, active};
  Scheme m;
  m.params = cur.params;
  m.inert = cur.inert;
  {
    std::vector<int> slots;
    for (int p : active)
      slots.push_back(static_cast<int>(std::find(rho_active.begin(), rho_active.end(), p) - rho_active.begin()));
    m.param_formula = type_formula(rho.view(), kinds_up_to_arity(sig, static_cast<int>(rho_active.size())), slots,
                                   active_names);
  }

  struct Piece {
    int orig;
    logic::FormulaPtr node;
    std::vector<Perm> stabilizer;
  };
  std::vector<std::vector<Piece>> per_block(static_cast<std::size_t>(cur.block_count()));
  for (int i = 0; i < cur.block_count(); ++i) {
    const Block& b = cur.blocks[static_cast<std::size_t>(i)];
    Frame f = make_frame(cur, i, -1, active);
    auto kinds = kinds_up_to_arity(sig, f.width());
    auto nm = f.node_i_map();
    std::vector<std::string> names = b.vars;
    names.insert(names.end(), active_names.begin(), active_names.end());
    std::set<std::string> covered;
    std::vector<int> all(static_cast<std::size_t>(f.width()));
    std::iota(all.begin(), all.end(), 0);
    for_each_type(sig, f.width(), kinds, all_injective(), budget, [&](const AtomicTypeView& t) {
      if (!ctx.matches(t, f, kinds) || !run(cs.node_program(i), t, nm)) return true;
      std::string key = type_key(t, kinds, all);
      if (covered.count(key)) return true;
      Piece piece{i, type_formula(t, kinds, all, names), {}};
      for (const Perm& pi : b.group) {
        std::vector<int> slots = all;
        for (int l = 0; l < f.ki; ++l) slots[static_cast<std::size_t>(l)] = pi[static_cast<std::size_t>(l)];
        std::string k2 = type_key(t, kinds, slots);
        covered.insert(k2);
        if (k2 == key) piece.stabilizer.push_back(pi);
      }
      per_block[static_cast<std::size_t>(i)].push_back(std::move(piece));
      return true;
    });
  }

  // Member blocks keep the original names unless a block split.
  std::vector<int> origin;
  for (int i = 0; i < cur.block_count(); ++i) {
    const auto& pieces = per_block[static_cast<std::size_t>(i)];
    const Block& b = cur.blocks[static_cast<std::size_t>(i)];
    for (const auto& piece : pieces) {
      Block nb;
      std::string prefix = pieces.size() > 1 ? "m" + std::to_string(m.blocks.size()) + "_" : "";
      std::map<std::string, std::string> ren;
      for (std::size_t l = 0; l < b.vars.size(); ++l) {
        nb.vars.push_back(prefix + b.vars[l]);
        nb.primed.push_back(prefix + b.primed[l]);
        ren[b.vars[l]] = nb.vars.back();
      }
      nb.generators = piece.stabilizer;
      nb.node = logic::rename(piece.node, ren);
      m.blocks.push_back(std::move(nb));
      origin.push_back(i);
    }
  }
  if (m.blocks.empty()) return std::nullopt;

  for (int a = 0; a < static_cast<int>(m.blocks.size()); ++a)
    for (int b = a; b < static_cast<int>(m.blocks.size()); ++b) {
      const int i = origin[static_cast<std::size_t>(a)];
      const int j = origin[static_cast<std::size_t>(b)];
      auto e = edge_formula(cur, i, j);
      if (e->op == logic::Op::False) continue;
      std::map<std::string, std::string> ren;
      const Block& bi = cur.blocks[static_cast<std::size_t>(i)];
      const Block& bj = cur.blocks[static_cast<std::size_t>(j)];
      for (std::size_t l = 0; l < bi.vars.size(); ++l) ren[bi.vars[l]] = m.blocks[static_cast<std::size_t>(a)].vars[l];
      for (std::size_t l = 0; l < bj.primed.size(); ++l)
        ren[bj.primed[l]] = m.blocks[static_cast<std::size_t>(b)].primed[l];
      m.edges[{a, b}] = logic::rename(e, ren);
    }
  return make_scheme(std::move(m));
}

std::vector<Scheme> decompose_impl(const Scheme& s, const KindSequence& sig, bool per_type) {
  TypeBudget budget;
  CompiledScheme cs(s, sig);
  const auto active = s.active_params();

  // Parameters that are irrelevant everywhere are dropped first.
  Scheme global = s;
  for (int p : active) {
    CompiledScheme cc(global, sig);
    if (independent_of(cc, p, ParamContext{}, budget)) global = make_inert(global, p);
  }

  Frame f0 = make_frame(s, -1, -1, active);
  auto kinds0 = kinds_up_to_arity(sig, f0.width());
  auto pm = f0.param_map();
  std::vector<OwnedType> rhos;
  std::vector<bool> rho_ok;
  for_each_type(sig, f0.width(), kinds0, all_injective(), budget, [&](const AtomicTypeView& t) {
    rhos.push_back(OwnedType{t.model, std::vector<int>(t.values.begin(), t.values.end())});
    rho_ok.push_back(run(cs.param_program(), t, pm));
    return true;
  });

  std::vector<Member> members;
  std::vector<int> member_of(rhos.size(), -1);
  for (std::size_t r = 0; r < rhos.size(); ++r) {
    if (!rho_ok[r]) continue;
    Scheme cur = global;
    if (per_type) {
      for (int p : cur.active_params()) {
        CompiledScheme cc(cur, sig);
        ParamContext ctx{&rhos[r], active, without(cur.active_params(), p)};
        if (independent_of(cc, p, ctx, budget)) cur = make_inert(cur, p);
      }
    }
    auto m = member_for(cur, sig, rhos[r], active, budget);
    if (!m) continue;
    Json key = scheme_to_json(*m);
    key.erase("name");
    auto it = std::find_if(members.begin(), members.end(), [&](const Member& x) { return x.signature == key; });
    if (it == members.end()) {
      members.push_back({std::move(*m), key});
      member_of[r] = static_cast<int>(members.size()) - 1;
    } else {
      member_of[r] = static_cast<int>(it - members.begin());
    }
  }

  // Each parameter type must be claimed by its own member and no other.
  for (std::size_t r = 0; r < rhos.size(); ++r) {
    for (std::size_t k = 0; k < members.size(); ++k) {
      CompiledScheme mc(members[k].scheme, sig);
      bool claims = run(mc.param_program(), rhos[r].view(), pm);
      if (claims != (member_of[r] == static_cast<int>(k))) {
        if (!per_type) throw Error("decomposition produced overlapping members");
        return decompose_impl(s, sig, false);
      }
    }
  }

  std::vector<Scheme> out;
  for (std::size_t k = 0; k < members.size(); ++k) {
    Scheme m = std::move(members[k].scheme);
    m.name = s.name + "__" + std::to_string(k);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

std::vector<Scheme> decompose_to_complete_reduced(const Scheme& s, const KindSequence& sig) {
  if (is_degenerated(s, sig)) throw DegenerateInput("scheme '" + s.name + "' is degenerated");
  if (is_complete(s, sig)) {
    TypeBudget budget;
    CompiledScheme cs(s, sig);
    bool reduced = true;
    for (int p : s.active_params()) reduced = reduced && !independent_of(cs, p, ParamContext{}, budget);
    if (reduced) return {s};
  }
  return decompose_impl(s, sig, true);
}

namespace {

/// Exact check of clause (d) for fixed π and ϰ.
bool iso_with(const CompiledScheme& a, const CompiledScheme& b, const Perm& pi, const Perm& kappa,
              TypeBudget& budget) {
  const Scheme& sa = a.scheme();
  const Scheme& sb = b.scheme();
  const KindSequence& sig = a.signature();
  const auto active = sa.active_params();
  // Program slots of b read a's frame: b's parameter kappa[l] is a's l.
  auto b_params = [&](const Frame& f) {
    std::vector<int> m(static_cast<std::size_t>(sb.param_count()), -1);
    for (int l = 0; l < sa.param_count(); ++l) m[static_cast<std::size_t>(kappa[static_cast<std::size_t>(l)])] = f.zslot(l);
    return m;
  };
  auto differ = [&](const Frame& f, std::vector<std::size_t> kinds, auto&& cond, const QfProgram& pa,
                    const std::vector<int>& ma, const QfProgram& pb, const std::vector<int>& mb) {
    bool bad = false;
    for_each_type(sig, f.width(), kinds, f.guards(), budget, [&](const AtomicTypeView& t) {
      if (cond(t) && run(pa, t, ma) != run(pb, t, mb)) bad = true;
      return !bad;
    });
    return bad;
  };
  const QfProgram& a2 = a.param_program();
  const QfProgram& b2 = b.param_program();
  {
    Frame f = make_frame(sa, -1, -1, active);
    if (differ(f, merge_kinds({&a2, &b2}), [](const AtomicTypeView&) { return true; }, a2, f.param_map(), b2,
               b_params(f)))
      return false;
  }
  for (int i = 0; i < sa.block_count(); ++i) {
    Frame f = make_frame(sa, i, -1, active);
    const int bi = pi[static_cast<std::size_t>(i)];
    auto pm = f.param_map();
    auto bmap = Frame::cat(f.x_slots(), b_params(f));
    if (differ(
            f, merge_kinds({&a2, &a.node_program(i), &b.node_program(bi)}),
            [&](const AtomicTypeView& t) { return run(a2, t, pm); }, a.node_program(i), f.node_i_map(),
            b.node_program(bi), bmap))
      return false;
  }
  for (int i = 0; i < sa.block_count(); ++i)
    for (int j = i; j < sa.block_count(); ++j) {
      Frame f = make_frame(sa, i, j, active);
      const int bi = pi[static_cast<std::size_t>(i)];
      const int bj = pi[static_cast<std::size_t>(j)];
      auto pm = f.param_map();
      auto im = f.node_i_map();
      auto jm = f.node_j_map();
      auto bmap = Frame::cat(Frame::cat(f.x_slots(), f.y_slots()), b_params(f));
      const QfProgram& ea = a.edge_program(i, j);
      const QfProgram& eb = b.edge_program(bi, bj);
      if (differ(
              f, merge_kinds({&a2, &a.node_program(i), &a.node_program(j), &ea, &eb}),
              [&](const AtomicTypeView& t) {
                return run(a2, t, pm) && run(a.node_program(i), t, im) && run(a.node_program(j), t, jm);
              },
              ea, f.edge_map(), eb, bmap))
        return false;
    }
  return true;
}

bool admissible_blocks(const Scheme& a, const Scheme& b, const Perm& pi) {
  for (int i = 0; i < a.block_count(); ++i) {
    const Block& x = a.blocks[static_cast<std::size_t>(i)];
    const Block& y = b.blocks[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)])];
    if (x.length() != y.length() || !same_group_set(x.group, y.group)) return false;
  }
  return true;
}

bool admissible_params(const Scheme& a, const Scheme& b, const Perm& kappa) {
  for (int l = 0; l < a.param_count(); ++l)
    if (a.is_inert(l) != b.is_inert(kappa[static_cast<std::size_t>(l)])) return false;
  return true;
}

}  // namespace

IsoVerdict explicitly_isomorphic(const Scheme& a, const Scheme& b, const KindSequence& sig, const MonteCarlo& mc) {
  IsoVerdict out;
  if (a.block_count() != b.block_count() || a.param_count() != b.param_count()) {
    out.evidence = {{"reason", "block or parameter counts differ"}};
    return out;
  }
  CompiledScheme ca(a, sig), cb(b, sig);
  TypeBudget budget(mc.type_budget);
  Perm pi = identity_perm(a.block_count());
  bool found = false;
  try {
    do {
      if (!admissible_blocks(a, b, pi)) continue;
      Perm kappa = identity_perm(a.param_count());
      do {
        if (admissible_params(a, b, kappa) && iso_with(ca, cb, pi, kappa, budget)) {
          out.blocks = pi;
          out.params = kappa;
          found = true;
        }
      } while (!found && std::next_permutation(kappa.begin(), kappa.end()));
    } while (!found && std::next_permutation(pi.begin(), pi.end()));
  } catch (const BudgetExhausted& e) {
    out.value = Tri::Undetermined;
    out.evidence = {{"reason", e.what()}};
    return out;
  }
  if (!found) {
    out.evidence = {{"reason", "no block and parameter correspondence works"}};
    return out;
  }

  // Sampled confirmation of the witness.
  std::uint64_t samples = 0, mismatches = 0;
  for (int n : mc.sizes)
    for (int trial = 0; trial < mc.trials; ++trial) {
      Seed seed = derive_seed(mc.seed, {tag("explicit-iso"), static_cast<std::uint64_t>(n),
                                        static_cast<std::uint64_t>(trial)});
      Structure host = sample_host(sig, n, mc.q, seed);
      auto c1 = sample_params(host, ca, derive_seed(seed, {tag("params")}));
      if (!c1) continue;
      Tuple c2(c1->size());
      for (std::size_t l = 0; l < c1->size(); ++l) c2[static_cast<std::size_t>(out.params[l])] = (*c1)[l];
      ++samples;
      if (!cb.params_ok(host, c2)) {
        ++mismatches;
        continue;
      }
      auto h1 = build_interpreted_graph(host, ca, *c1);
      auto h2 = build_interpreted_graph(host, cb, c2);
      bool same = h1.size() == h2.size();
      std::vector<int> to(static_cast<std::size_t>(h1.size()), -1);
      for (int u = 0; same && u < h1.size(); ++u) {
        auto node = h1.nodes[static_cast<std::size_t>(u)];
        node.block = out.blocks[static_cast<std::size_t>(node.block)];
        to[static_cast<std::size_t>(u)] = h2.index_of(node);
        same = to[static_cast<std::size_t>(u)] >= 0;
      }
      for (int u = 0; same && u < h1.size(); ++u)
        for (int v = u + 1; same && v < h1.size(); ++v)
          same = h1.graph.adjacent(u, v) == h2.graph.adjacent(to[static_cast<std::size_t>(u)], to[static_cast<std::size_t>(v)]);
      if (!same) ++mismatches;
    }
  out.evidence = {{"sampled_hosts", samples}, {"mismatches", mismatches}};
  out.value = mismatches == 0 ? Tri::True : Tri::Undetermined;
  return out;
}

std::vector<Perm> scheme_symmetry_group(const Scheme& s, const KindSequence& sig) {
  CompiledScheme cs(s, sig);
  TypeBudget budget;
  std::vector<Perm> out;
  Perm kappa = identity_perm(s.param_count());
  do {
    if (!admissible_params(s, s, kappa)) continue;
    Perm pi = identity_perm(s.block_count());
    bool ok = false;
    do {
      ok = admissible_blocks(s, s, pi) && iso_with(cs, cs, pi, kappa, budget);
    } while (!ok && std::next_permutation(pi.begin(), pi.end()));
    if (ok) out.push_back(kappa);
  } while (std::next_permutation(kappa.begin(), kappa.end()));
  return out;
}

std::vector<std::string> well_formedness_violations(const Scheme& s, const KindSequence& sig) {
  std::vector<std::string> out;
  CompiledScheme cs(s, sig);
  TypeBudget budget;
  const auto active = s.active_params();
  auto check = [&](const Frame& f, const std::vector<std::size_t>& kinds, auto&& same) {
    bool ok = true;
    for_each_type(sig, f.width(), kinds, f.guards(), budget, [&](const AtomicTypeView& t) {
      ok = same(t);
      return ok;
    });
    return ok;
  };
  for (int i = 0; i < s.block_count(); ++i) {
    Frame f = make_frame(s, i, -1, active);
    const QfProgram& node = cs.node_program(i);
    auto nm = f.node_i_map();
    for (const Perm& g : s.blocks[static_cast<std::size_t>(i)].generators) {
      auto moved = nm;
      for (int l = 0; l < f.ki; ++l) moved[static_cast<std::size_t>(l)] = nm[static_cast<std::size_t>(g[static_cast<std::size_t>(l)])];
      if (!check(f, node.kinds(), [&](const AtomicTypeView& t) { return run(node, t, nm) == run(node, t, moved); }))
        out.push_back("node formula " + std::to_string(i) + " is not invariant under " + tuple_to_string(g));
    }
    // Anti-reflexivity: no node is adjacent to itself.
    const QfProgram& e = cs.edge_program(i, i);
    auto self = Frame::cat(Frame::cat(f.x_slots(), f.x_slots()), f.param_map());
    if (!check(f, e.kinds(), [&](const AtomicTypeView& t) { return !run(e, t, self); }))
      out.push_back("edge formula (" + std::to_string(i) + "," + std::to_string(i) + ") is not anti-reflexive");
  }
  for (int i = 0; i < s.block_count(); ++i)
    for (int j = 0; j < s.block_count(); ++j) {
      Frame f = make_frame(s, i, j, active);
      const QfProgram& e = cs.edge_program(i, j);
      auto em = f.edge_map();
      auto invariant_under = [&](const Perm& g, int offset, int len) {
        auto moved = em;
        for (int l = 0; l < len; ++l)
          moved[static_cast<std::size_t>(offset + l)] = em[static_cast<std::size_t>(offset + g[static_cast<std::size_t>(l)])];
        return check(f, e.kinds(), [&](const AtomicTypeView& t) { return run(e, t, em) == run(e, t, moved); });
      };
      for (const Perm& g : s.blocks[static_cast<std::size_t>(i)].generators)
        if (!invariant_under(g, 0, f.ki))
          out.push_back("edge formula (" + std::to_string(i) + "," + std::to_string(j) +
                        ") is not invariant under " + tuple_to_string(g) + " on the first block");
      for (const Perm& g : s.blocks[static_cast<std::size_t>(j)].generators)
        if (!invariant_under(g, f.ki, f.kj))
          out.push_back("edge formula (" + std::to_string(i) + "," + std::to_string(j) +
                        ") is not invariant under " + tuple_to_string(g) + " on the second block");
      if (i == j) {
        auto swapped = Frame::cat(Frame::cat(f.y_slots(), f.x_slots()), f.param_map());
        if (!check(f, e.kinds(), [&](const AtomicTypeView& t) { return run(e, t, em) == run(e, t, swapped); }))
          out.push_back("edge formula (" + std::to_string(i) + "," + std::to_string(i) + ") is not symmetric");
      }
    }
  return out;
}

}  // namespace zol::interp
