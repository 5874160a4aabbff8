#include "zol/interp/qf.hpp"

#include <algorithm>
#include <array>

#include "zol/core/error.hpp"

namespace zol::interp {

using logic::Op;

QfProgram::QfProgram(const logic::Formula& f, const KindSequence& sig, std::span<const std::string> slots)
    : width_(slots.size()) {
  auto slot_of = [&](const std::string& v) {
    auto it = std::find(slots.begin(), slots.end(), v);
    if (it == slots.end()) throw InvalidArgument("variable '" + v + "' is not free in this position");
    return static_cast<int>(it - slots.begin());
  };
  auto build = [&](auto&& self, const logic::Formula& g) -> int {
    Node n{g.op};
    switch (g.op) {
      case Op::True:
      case Op::False:
        break;
      case Op::Atom: {
        auto idx = sig.index_of(g.kind);
        if (!idx) throw InvalidArgument("unknown kind R" + std::to_string(g.kind));
        if (static_cast<int>(g.vars.size()) != sig[*idx].arity)
          throw ArityMismatch("kind R" + std::to_string(g.kind) + " has arity " + std::to_string(sig[*idx].arity));
        if (g.vars.size() > 16) throw InvalidArgument("atom arity above 16");
        n.kind_index = *idx;
        for (const auto& v : g.vars) n.slots.push_back(slot_of(v));
        if (std::find(kinds_.begin(), kinds_.end(), *idx) == kinds_.end()) kinds_.push_back(*idx);
        break;
      }
      case Op::Eq:
        n.slots = {slot_of(g.vars[0]), slot_of(g.vars[1])};
        break;
      case Op::Not:
        n.a = self(self, *g.kids[0]);
        break;
      case Op::And:
      case Op::Or:
        n.a = self(self, *g.kids[0]);
        n.b = self(self, *g.kids[1]);
        break;
      default:
        throw InvalidArgument("formula is not quantifier free: " + logic::to_string(g));
    }
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  };
  root_ = build(build, f);
  std::sort(kinds_.begin(), kinds_.end());
}

bool QfProgram::operator()(const Structure& m, std::span<const int> values) const {
  return eval(root_, m, values);
}

bool QfProgram::eval(int i, const Structure& m, std::span<const int> values) const {
  const Node& n = nodes_[static_cast<std::size_t>(i)];
  switch (n.op) {
    case Op::True:
      return true;
    case Op::False:
      return false;
    case Op::Atom: {
      std::array<int, 16> t{};
      for (std::size_t l = 0; l < n.slots.size(); ++l) t[l] = values[static_cast<std::size_t>(n.slots[l])];
      return m.holds(n.kind_index, std::span<const int>(t.data(), n.slots.size()));
    }
    case Op::Eq:
      return values[static_cast<std::size_t>(n.slots[0])] == values[static_cast<std::size_t>(n.slots[1])];
    case Op::Not:
      return !eval(n.a, m, values);
    case Op::And:
      return eval(n.a, m, values) && eval(n.b, m, values);
    case Op::Or:
      return eval(n.a, m, values) || eval(n.b, m, values);
    default:
      return false;
  }
}

void TypeBudget::spend(std::uint64_t n) {
  used_ += n;
  if (used_ > limit_) throw BudgetExhausted("atomic type enumeration exceeded " + std::to_string(limit_) + " steps");
}

PartitionFilter injective_on(std::vector<std::vector<int>> slot_groups) {
  return [groups = std::move(slot_groups)](std::span<const int> cls) {
    for (const auto& g : groups)
      for (std::size_t a = 0; a < g.size(); ++a)
        for (std::size_t b = a + 1; b < g.size(); ++b)
          if (cls[static_cast<std::size_t>(g[a])] == cls[static_cast<std::size_t>(g[b])]) return false;
    return true;
  };
}

PartitionFilter all_injective() {
  return [](std::span<const int> cls) {
    for (std::size_t a = 0; a < cls.size(); ++a)
      if (cls[a] != static_cast<int>(a) + 1) return false;
    return true;
  };
}

std::vector<std::size_t> kinds_up_to_arity(const KindSequence& sig, int width) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sig.size(); ++i)
    if (sig[i].arity <= width) out.push_back(i);
  return out;
}

void for_each_type(const KindSequence& sig, int width, std::span<const std::size_t> kinds,
                   const PartitionFilter& ok, TypeBudget& budget,
                   const std::function<bool(const AtomicTypeView&)>& f) {
  std::vector<int> cls(static_cast<std::size_t>(width), 1);
  bool stop = false;

  auto per_partition = [&](int classes) {
    // Orbits of every varied kind over the `classes` elements.
    std::vector<std::pair<std::size_t, Tuple>> orbits;
    for (std::size_t ki : kinds) {
      const Kind& k = sig[ki];
      for_each_injective_tuple(classes, k.arity, [&](const Tuple& t) {
        if (is_orbit_minimum(t, k.group)) orbits.emplace_back(ki, t);
      });
    }
    if (orbits.size() > 30) throw BudgetExhausted("too many relation orbits in a type of width " + std::to_string(width));
    Structure m(sig, classes);
    const std::uint64_t total = std::uint64_t{1} << orbits.size();
    budget.spend(total);
    std::uint64_t gray = 0;
    for (std::uint64_t i = 0; i < total; ++i) {
      if (i > 0) {
        std::uint64_t next = i ^ (i >> 1);
        std::uint64_t diff = next ^ gray;
        int bit = __builtin_ctzll(diff);
        const auto& [ki, t] = orbits[static_cast<std::size_t>(bit)];
        m.set_orbit(ki, t, (next >> bit) & 1);
        gray = next;
      }
      if (!f(AtomicTypeView{m, cls})) {
        stop = true;
        return;
      }
    }
  };

  // Restricted growth strings enumerate set partitions of the slots.
  auto rec = [&](auto&& self, int pos, int used) -> void {
    if (stop) return;
    if (pos == width) {
      if (ok && !ok(cls)) return;
      per_partition(used);
      return;
    }
    for (int c = 1; c <= used + 1 && !stop; ++c) {
      cls[static_cast<std::size_t>(pos)] = c;
      self(self, pos + 1, std::max(used, c));
    }
  };
  rec(rec, 0, 0);
}

namespace {
template <class F>
void for_each_slot_tuple(int width, int k, F&& f) {
  std::vector<int> t(static_cast<std::size_t>(k), 0);
  if (k == 0) {
    f(t);
    return;
  }
  if (width == 0) return;
  while (true) {
    f(t);
    int pos = k - 1;
    while (pos >= 0 && t[static_cast<std::size_t>(pos)] == width - 1) t[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) return;
    ++t[static_cast<std::size_t>(pos)];
  }
}
}  // namespace

std::string type_key(const AtomicTypeView& t, std::span<const std::size_t> kinds, std::span<const int> slots) {
  std::string key;
  const int w = static_cast<int>(slots.size());
  for (int a = 0; a < w; ++a)
    for (int b = a + 1; b < w; ++b)
      key.push_back(t.values[static_cast<std::size_t>(slots[static_cast<std::size_t>(a)])] ==
                            t.values[static_cast<std::size_t>(slots[static_cast<std::size_t>(b)])]
                        ? '='
                        : '.');
  Tuple vals;
  for (std::size_t ki : kinds) {
    key.push_back('|');
    const int k = t.model.signature()[ki].arity;
    for_each_slot_tuple(w, k, [&](const std::vector<int>& pos) {
      vals.clear();
      for (int p : pos) vals.push_back(t.values[static_cast<std::size_t>(slots[static_cast<std::size_t>(p)])]);
      key.push_back(t.model.holds(ki, vals) ? '1' : '0');
    });
  }
  return key;
}

logic::FormulaPtr type_formula(const AtomicTypeView& t, std::span<const std::size_t> kinds,
                               std::span<const int> slots, std::span<const std::string> names) {
  std::vector<logic::FormulaPtr> parts;
  const int w = static_cast<int>(slots.size());
  auto val = [&](int p) { return t.values[static_cast<std::size_t>(slots[static_cast<std::size_t>(p)])]; };
  std::vector<int> reps;  // first slot of each element
  for (int a = 0; a < w; ++a) {
    bool first = true;
    for (int b = 0; b < a; ++b) {
      bool same = val(a) == val(b);
      if (same) first = false;
      parts.push_back(same ? logic::eq(names[static_cast<std::size_t>(b)], names[static_cast<std::size_t>(a)])
                           : logic::neq(names[static_cast<std::size_t>(b)], names[static_cast<std::size_t>(a)]));
    }
    if (first) reps.push_back(a);
  }
  const int r = static_cast<int>(reps.size());
  for (std::size_t ki : kinds) {
    const Kind& k = t.model.signature()[ki];
    for_each_injective_tuple(r, k.arity, [&](const Tuple& idx) {
      Tuple vals;
      std::vector<std::string> vs;
      for (int i : idx) {
        int p = reps[static_cast<std::size_t>(i - 1)];
        vals.push_back(val(p));
        vs.push_back(names[static_cast<std::size_t>(p)]);
      }
      if (!is_orbit_minimum(vals, k.group)) return;
      auto a = logic::atom(k.id, vs);
      parts.push_back(t.model.holds(ki, vals) ? a : logic::negate(a));
    });
  }
  return logic::conj_all(parts);
}

}  // namespace zol::interp
