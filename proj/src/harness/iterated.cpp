#include "zol/harness/iterated.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>

#include "zol/core/draw.hpp"
#include "zol/core/error.hpp"
#include "zol/interp/interpreted.hpp"
#include "zol/logic/eval.hpp"

namespace zol::harness {

namespace {

void atoms_ok(const logic::Formula& f, const KindSequence& sig, const std::string& where,
              std::vector<std::string>& out) {
  if (f.op == logic::Op::QApply) {
    out.push_back(where + ": Q is not allowed here");
    return;
  }
  if (f.op == logic::Op::Atom) {
    auto idx = sig.index_of(f.kind);
    if (!idx)
      out.push_back(where + ": kind " + std::to_string(f.kind) + " is not available at this level");
    else if (sig[*idx].arity != static_cast<int>(f.vars.size()))
      out.push_back(where + ": kind " + std::to_string(f.kind) + " used with the wrong arity");
  }
  for (const auto& k : f.kids) atoms_ok(*k, sig, where, out);
}

bool subset_of(const std::vector<std::string>& xs, const std::set<std::string>& allowed) {
  return std::all_of(xs.begin(), xs.end(), [&](const std::string& x) { return allowed.count(x) > 0; });
}

struct Counter {
  const Structure& m;
  interp::SchemeRegistry none;
  logic::Evaluator ev;

  explicit Counter(const Structure& host) : m(host), ev(host, none, nullptr) {}

  bool phi(const NewKind& nk, const Tuple& c) {
    if (!nk.phi) return true;
    logic::Assignment asg;
    for (std::size_t i = 0; i < c.size(); ++i) asg[nk.params[i]] = c[i];
    return ev.eval(*nk.phi, asg);
  }

  std::uint64_t count_expression(const NewKind& nk, const Tuple& c) {
    double total = 0;
    for (const auto& cf : nk.counts) {
      logic::Assignment asg;
      for (std::size_t i = 0; i < c.size(); ++i) asg[nk.params[i]] = c[i];
      std::uint64_t hits = 0;
      for_each_tuple(m.size(), static_cast<int>(cf.vars.size()), [&](const Tuple& y) {
        for (std::size_t i = 0; i < y.size(); ++i) asg[cf.vars[i]] = y[i];
        if (ev.eval(*cf.formula, asg)) ++hits;
      });
      const auto order = close_group(cf.generators, static_cast<int>(cf.vars.size())).size();
      total += static_cast<double>(hits) / static_cast<double>(order);
    }
    return static_cast<std::uint64_t>(std::llround(total));
  }
};

template <class Prob>
Structure draw_levels(const UDescriptor& u, int n, Seed seed, Prob&& prob) {
  if (auto v = u_violations(u); !v.empty()) throw InvalidArgument("descriptor: " + v.front());
  Structure m = draw_random_graph(n, u.q, seed);
  for (int level = 0; level < u.level_count(); ++level) {
    Structure next = expand(m, u.signature(level + 1));
    Counter counter(m);
    for (const auto& nk : u.levels[static_cast<std::size_t>(level)].kinds) {
      const std::size_t idx = *next.signature().index_of(nk.kind.id);
      const Seed ks = derive_seed(seed, {tag("iterated"), static_cast<std::uint64_t>(level),
                                         static_cast<std::uint64_t>(nk.kind.id)});
      draw_kind_into(
          next, idx, ks, [&](const Tuple& c) { return counter.phi(nk, c); },
          [&](const Tuple& c) { return prob(m, counter, nk, c); });
    }
    m = std::move(next);
  }
  return m;
}

std::vector<Perm> perms_from_json(const Json& j) {
  std::vector<Perm> out;
  if (j.is_null()) return out;
  for (const auto& p : j) out.push_back(p.get<Perm>());
  return out;
}

}  // namespace

KindSequence UDescriptor::signature(int level) const {
  std::vector<Kind> kinds{KindSequence::graph_kind()};
  for (int l = 0; l < level && l < level_count(); ++l)
    for (const auto& nk : levels[static_cast<std::size_t>(l)].kinds) kinds.push_back(nk.kind);
  return KindSequence(std::move(kinds));
}

std::vector<std::string> u_violations(const UDescriptor& u) {
  std::vector<std::string> out;
  if (!(u.q > 0 && u.q < 1)) out.push_back("q must lie in (0,1)");
  std::set<int> ids{0};
  for (int level = 0; level < u.level_count(); ++level) {
    KindSequence sig;
    try {
      sig = u.signature(level);
    } catch (const Error& e) {
      out.push_back(e.what());
      return out;
    }
    for (const auto& nk : u.levels[static_cast<std::size_t>(level)].kinds) {
      const std::string where = "kind " + std::to_string(nk.kind.id);
      if (!ids.insert(nk.kind.id).second) out.push_back(where + ": id is reserved or repeated");
      if (nk.kind.arity != static_cast<int>(nk.params.size()))
        out.push_back(where + ": arity differs from the number of parameters");
      for (const auto& g : nk.kind.generators)
        if (!is_permutation_of_degree(g, nk.kind.arity)) out.push_back(where + ": bad generator");
      std::set<std::string> params(nk.params.begin(), nk.params.end());
      if (params.size() != nk.params.size()) out.push_back(where + ": repeated parameter name");
      if (nk.phi) {
        if (!logic::is_quantifier_free(*nk.phi)) out.push_back(where + ": phi is not quantifier-free");
        if (!subset_of(logic::free_vars(*nk.phi), params)) out.push_back(where + ": phi has foreign variables");
        atoms_ok(*nk.phi, sig, where + " phi", out);
      }
      for (const auto& cf : nk.counts) {
        std::set<std::string> scope = params;
        for (const auto& y : cf.vars)
          if (!scope.insert(y).second) out.push_back(where + ": counted variable " + y + " clashes");
        if (u.singleton_y && cf.vars.size() != 1) out.push_back(where + ": counting tuple is not a singleton");
        for (const auto& g : cf.generators)
          if (!is_permutation_of_degree(g, static_cast<int>(cf.vars.size())))
            out.push_back(where + ": bad counting generator");
        if (!cf.formula) {
          out.push_back(where + ": missing counting formula");
          continue;
        }
        if (!logic::is_quantifier_free(*cf.formula)) out.push_back(where + ": counting formula has quantifiers");
        if (!subset_of(logic::free_vars(*cf.formula), scope))
          out.push_back(where + ": counting formula has foreign variables");
        atoms_ok(*cf.formula, sig, where + " count", out);
      }
    }
  }
  return out;
}

UDescriptor u_from_json(const Json& j) {
  UDescriptor u;
  u.q = j.value("q", 0.5);
  u.singleton_y = j.value("singleton_y", false);
  for (const auto& jl : j.value("levels", Json::array())) {
    ULevel level;
    for (const auto& jk : jl.at("kinds")) {
      NewKind nk;
      nk.kind.id = jk.at("id").get<int>();
      nk.params = jk.at("params").get<std::vector<std::string>>();
      nk.kind.arity = jk.value("arity", static_cast<int>(nk.params.size()));
      nk.kind.generators = perms_from_json(jk.value("generators", Json::array()));
      nk.phi = logic::parse(jk.value("phi", std::string("true")));
      for (const auto& jc : jk.value("counts", Json::array())) {
        CountingFormula cf;
        cf.vars = jc.at("vars").get<std::vector<std::string>>();
        cf.generators = perms_from_json(jc.value("generators", Json::array()));
        cf.formula = logic::parse(jc.at("formula").get<std::string>());
        nk.counts.push_back(std::move(cf));
      }
      nk.scheme = jk.value("scheme", std::string());
      level.kinds.push_back(std::move(nk));
    }
    u.levels.push_back(std::move(level));
  }
  return u;
}

Json u_to_json(const UDescriptor& u) {
  Json levels = Json::array();
  for (const auto& level : u.levels) {
    Json kinds = Json::array();
    for (const auto& nk : level.kinds) {
      Json counts = Json::array();
      for (const auto& cf : nk.counts)
        counts.push_back({{"vars", cf.vars}, {"generators", cf.generators}, {"formula", logic::to_string(cf.formula)}});
      Json k = {{"id", nk.kind.id},
                {"arity", nk.kind.arity},
                {"generators", nk.kind.generators},
                {"params", nk.params},
                {"phi", nk.phi ? logic::to_string(nk.phi) : "true"},
                {"counts", std::move(counts)}};
      if (!nk.scheme.empty()) k["scheme"] = nk.scheme;
      kinds.push_back(std::move(k));
    }
    levels.push_back({{"kinds", std::move(kinds)}});
  }
  return {{"q", u.q}, {"singleton_y", u.singleton_y}, {"levels", std::move(levels)}};
}

Structure expand(const Structure& m, const KindSequence& bigger) {
  if (!m.signature().extended_by(bigger)) throw InvalidArgument("expand: signature is not a sub-sequence");
  Structure out(bigger, m.size());
  for (std::size_t k = 0; k < m.signature().size(); ++k) {
    const std::size_t to = *bigger.index_of(m.signature()[k].id);
    for (const auto& t : m.tuples(k)) out.set(to, t, true);
  }
  return out;
}

Structure iterated_draw(const UDescriptor& u, int n, Seed seed, const GrowthFunctions& gf) {
  return draw_levels(u, n, seed, [&](const Structure&, Counter& counter, const NewKind& nk, const Tuple& c) {
    return gf.h(counter.count_expression(nk, c));
  });
}

Structure iterated_draw_b17(const UDescriptor& u, int n, Seed seed, const interp::SchemeRegistry& registry,
                            const GrowthFunctions& gf, B17Stats* stats) {
  std::map<std::pair<int, int>, std::unique_ptr<interp::CompiledScheme>> compiled;
  B17Stats local;
  auto out = draw_levels(u, n, seed, [&](const Structure& m, Counter&, const NewKind& nk, const Tuple& c) {
    if (nk.scheme.empty()) throw InvalidArgument("kind " + std::to_string(nk.kind.id) + " has no scheme");
    auto& cs = compiled[{nk.kind.id, static_cast<int>(m.signature().size())}];
    if (!cs) {
      cs = std::make_unique<interp::CompiledScheme>(registry.get(nk.scheme), m.signature());
      if (cs->scheme().param_count() != nk.kind.arity)
        throw ArityMismatch("scheme " + nk.scheme + " takes " + std::to_string(cs->scheme().param_count()) +
                            " parameters");
    }
    std::uint64_t nodes = 0;
    if (cs->params_ok(m, c)) nodes = static_cast<std::uint64_t>(interp::build_interpreted_graph(m, *cs, c).size());
    ++local.orbits;
    if (nodes == 0) {
      ++local.clamped;
      nodes = 1;
    }
    return 1.0 / gf.g(nodes);
  });
  if (stats) *stats = local;
  return out;
}

}  // namespace zol::harness
