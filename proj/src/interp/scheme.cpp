#include "zol/interp/scheme.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "zol/core/error.hpp"

namespace zol::interp {

int Scheme::width() const {
  int k = param_count();
  for (const auto& b : blocks) k = std::max(k, b.length());
  return k;
}

bool Scheme::is_inert(int p) const { return std::find(inert.begin(), inert.end(), p) != inert.end(); }

std::vector<int> Scheme::active_params() const {
  std::vector<int> out;
  for (int p = 0; p < param_count(); ++p)
    if (!is_inert(p)) out.push_back(p);
  return out;
}

namespace {

std::vector<logic::FormulaPtr> distinct_all(const std::vector<std::string>& vs) {
  std::vector<logic::FormulaPtr> out;
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b) out.push_back(logic::neq(vs[a], vs[b]));
  return out;
}

/// φ over (x̄_i, x̄'_j) rewritten over (x̄_j, x̄'_i).
logic::FormulaPtr flip(const Scheme& s, int i, int j, const logic::FormulaPtr& f) {
  std::map<std::string, std::string> m;
  const Block& bi = s.blocks[static_cast<std::size_t>(i)];
  const Block& bj = s.blocks[static_cast<std::size_t>(j)];
  for (std::size_t l = 0; l < bi.vars.size(); ++l) m[bi.vars[l]] = bi.primed[l];
  for (std::size_t l = 0; l < bj.vars.size(); ++l) m[bj.primed[l]] = bj.vars[l];
  return logic::rename(f, m);
}

void require_free_in(const logic::FormulaPtr& f, const std::vector<std::string>& allowed, const std::string& where) {
  for (const auto& v : logic::free_vars(*f))
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end())
      throw InvalidArgument(where + " mentions variable '" + v + "' outside its slots");
  if (!logic::is_quantifier_free(*f)) throw InvalidArgument(where + " is not quantifier free");
}

}  // namespace

std::vector<std::string> node_slots(const Scheme& s, int i) {
  auto out = s.blocks[static_cast<std::size_t>(i)].vars;
  out.insert(out.end(), s.params.begin(), s.params.end());
  return out;
}

std::vector<std::string> edge_slots(const Scheme& s, int i, int j) {
  auto out = s.blocks[static_cast<std::size_t>(i)].vars;
  const auto& pj = s.blocks[static_cast<std::size_t>(j)].primed;
  out.insert(out.end(), pj.begin(), pj.end());
  out.insert(out.end(), s.params.begin(), s.params.end());
  return out;
}

Scheme make_scheme(Scheme s) {
  if (s.blocks.empty()) throw InvalidArgument("scheme '" + s.name + "' has no blocks");
  if (!s.param_formula) s.param_formula = logic::make_true();
  std::set<std::string> names;
  auto claim = [&](const std::string& v) {
    if (v.empty()) throw InvalidArgument("empty variable name in scheme '" + s.name + "'");
    if (!names.insert(v).second) throw InvalidArgument("variable '" + v + "' used twice in scheme '" + s.name + "'");
  };
  for (const auto& p : s.params) claim(p);
  for (auto& b : s.blocks) {
    if (b.primed.empty())
      for (const auto& v : b.vars) b.primed.push_back(v + "'");
    if (b.primed.size() != b.vars.size()) throw InvalidArgument("primed block length differs from block length");
    for (const auto& v : b.vars) claim(v);
    for (const auto& v : b.primed) claim(v);
    for (const auto& g : b.generators)
      if (!is_permutation_of_degree(g, b.length())) throw InvalidArgument("block generator has the wrong degree");
    b.group = close_group(b.generators, b.length());
    if (!b.node) b.node = logic::make_true();
  }
  for (int p : s.inert)
    if (p < 0 || p >= s.param_count()) throw InvalidArgument("inert parameter position out of range");
  std::sort(s.inert.begin(), s.inert.end());
  s.inert.erase(std::unique(s.inert.begin(), s.inert.end()), s.inert.end());

  std::map<std::pair<int, int>, logic::FormulaPtr> edges;
  for (const auto& [key, f] : s.edges) {
    auto [i, j] = key;
    if (i < 0 || j < 0 || i >= s.block_count() || j >= s.block_count())
      throw InvalidArgument("edge formula refers to a missing block");
    require_free_in(f, edge_slots(s, i, j), "edge formula (" + std::to_string(i) + "," + std::to_string(j) + ")");
    auto norm = i <= j ? std::make_pair(i, j) : std::make_pair(j, i);
    auto g = i <= j ? f : flip(s, i, j, f);
    if (!edges.emplace(norm, g).second)
      throw InvalidArgument("edge formula for blocks " + std::to_string(norm.first) + "," +
                            std::to_string(norm.second) + " given twice");
  }
  s.edges = std::move(edges);

  require_free_in(s.param_formula, s.params, "parameter formula");
  for (int i = 0; i < s.block_count(); ++i)
    require_free_in(s.blocks[static_cast<std::size_t>(i)].node, node_slots(s, i), "node formula " + std::to_string(i));
  for (int p : s.inert) {
    const std::string& v = s.params[static_cast<std::size_t>(p)];
    bool used = logic::mentions_var(*s.param_formula, v);
    for (const auto& b : s.blocks) used = used || logic::mentions_var(*b.node, v);
    for (const auto& [k, f] : s.edges) used = used || logic::mentions_var(*f, v);
    if (used) throw InvalidArgument("inert parameter '" + v + "' is mentioned by a formula");
  }
  return s;
}

logic::FormulaPtr edge_formula(const Scheme& s, int i, int j) {
  if (i <= j) {
    auto it = s.edges.find({i, j});
    return it == s.edges.end() ? logic::make_false() : it->second;
  }
  auto it = s.edges.find({j, i});
  return it == s.edges.end() ? logic::make_false() : flip(s, j, i, it->second);
}

logic::FormulaPtr guarded_node(const Scheme& s, int i) {
  auto guards = distinct_all(node_slots(s, i));
  guards.insert(guards.begin(), s.blocks[static_cast<std::size_t>(i)].node);
  return logic::conj_all(guards);
}

logic::FormulaPtr guarded_params(const Scheme& s) {
  auto guards = distinct_all(s.params);
  guards.insert(guards.begin(), s.param_formula);
  return logic::conj_all(guards);
}

CompiledScheme::CompiledScheme(const Scheme& s, const KindSequence& sig) : scheme_(s), sig_(sig) {
  params_ = QfProgram(*s.param_formula, sig, s.params);
  for (int i = 0; i < s.block_count(); ++i) {
    auto slots = node_slots(s, i);
    nodes_.emplace_back(*s.blocks[static_cast<std::size_t>(i)].node, sig, slots);
  }
  for (int i = 0; i < s.block_count(); ++i)
    for (int j = 0; j < s.block_count(); ++j) {
      auto slots = edge_slots(s, i, j);
      edges_.emplace_back(*edge_formula(s, i, j), sig, slots);
    }
}

bool CompiledScheme::params_ok(const Structure& m, std::span<const int> c) const {
  if (c.size() != scheme_.params.size())
    throw ArityMismatch("scheme '" + scheme_.name + "' takes " + std::to_string(scheme_.params.size()) +
                        " parameters, got " + std::to_string(c.size()));
  for (int v : c)
    if (v < 1 || v > m.size()) throw InvalidArgument("parameter outside the universe");
  return repetition_free(c) && params_(m, c);
}

bool CompiledScheme::node(const Structure& m, int i, std::span<const int> a, std::span<const int> c) const {
  std::array<int, 32> buf{};
  if (a.size() + c.size() > buf.size()) throw InvalidArgument("scheme too wide");
  std::size_t w = 0;
  for (int v : a) buf[w++] = v;
  for (int v : c) buf[w++] = v;
  std::span<const int> vals(buf.data(), w);
  if (!repetition_free(vals)) return false;
  return nodes_[static_cast<std::size_t>(i)](m, vals);
}

bool CompiledScheme::edge(const Structure& m, int i, int j, std::span<const int> a, std::span<const int> b,
                          std::span<const int> c) const {
  std::array<int, 48> buf{};
  if (a.size() + b.size() + c.size() > buf.size()) throw InvalidArgument("scheme too wide");
  std::size_t w = 0;
  for (int v : a) buf[w++] = v;
  for (int v : b) buf[w++] = v;
  for (int v : c) buf[w++] = v;
  return edge_program(i, j)(m, std::span<const int>(buf.data(), w));
}

const QfProgram& CompiledScheme::edge_program(int i, int j) const {
  return edges_[static_cast<std::size_t>(i * scheme_.block_count() + j)];
}

Json scheme_to_json(const Scheme& s) {
  Json j;
  j["name"] = s.name;
  j["params"] = s.params;
  if (!s.inert.empty()) j["inert"] = s.inert;
  j["param_formula"] = logic::to_string(s.param_formula);
  Json blocks = Json::array();
  for (const auto& b : s.blocks) {
    Json jb;
    jb["vars"] = b.vars;
    jb["primed"] = b.primed;
    jb["group"] = b.generators;
    jb["node"] = logic::to_string(b.node);
    blocks.push_back(jb);
  }
  j["blocks"] = blocks;
  Json edges = Json::array();
  for (const auto& [key, f] : s.edges) edges.push_back({{"i", key.first}, {"j", key.second}, {"formula", logic::to_string(f)}});
  j["edges"] = edges;
  return j;
}

Scheme scheme_from_json(const Json& j) {
  try {
    Scheme s;
    s.name = j.value("name", std::string{});
    s.params = j.value("params", std::vector<std::string>{});
    s.inert = j.value("inert", std::vector<int>{});
    s.param_formula = logic::parse(j.value("param_formula", std::string("true")));
    for (const auto& jb : j.at("blocks")) {
      Block b;
      b.vars = jb.value("vars", std::vector<std::string>{});
      b.primed = jb.value("primed", std::vector<std::string>{});
      b.generators = jb.value("group", std::vector<Perm>{});
      b.node = logic::parse(jb.value("node", std::string("true")));
      s.blocks.push_back(std::move(b));
    }
    if (j.contains("edges"))
      for (const auto& je : j.at("edges"))
        s.edges[{je.at("i").get<int>(), je.at("j").get<int>()}] = logic::parse(je.at("formula").get<std::string>());
    return make_scheme(std::move(s));
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed scheme JSON: ") + e.what());
  }
}

SchemeRegistry SchemeRegistry::with_builtins() {
  SchemeRegistry r;
  r.add(neighborhood_scheme());
  r.add(constant_edge_scheme());
  return r;
}

void SchemeRegistry::add(Scheme s) {
  if (s.name.empty()) throw InvalidArgument("registered schemes need a name");
  std::string name = s.name;
  schemes_[name] = make_scheme(std::move(s));
}

const Scheme& SchemeRegistry::get(const std::string& name) const {
  auto it = schemes_.find(name);
  if (it == schemes_.end()) throw InvalidArgument("unknown scheme '" + name + "'");
  return it->second;
}

std::vector<std::string> SchemeRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [n, s] : schemes_) out.push_back(n);
  return out;
}

void SchemeRegistry::load_json(const Json& j) {
  if (j.is_array()) {
    for (const auto& e : j) add(scheme_from_json(e));
  } else {
    add(scheme_from_json(j));
  }
}

namespace {
Scheme nbhd_with_edge(std::string name, const char* edge) {
  Scheme s;
  s.name = std::move(name);
  s.params = {"z"};
  s.param_formula = logic::parse("z = z");
  Block b;
  b.vars = {"x"};
  b.node = logic::parse("R(x,z)");
  s.blocks.push_back(b);
  s.edges[{0, 0}] = logic::parse(edge);
  return make_scheme(std::move(s));
}
}  // namespace

Scheme neighborhood_scheme() { return nbhd_with_edge("nbhd", "R(x,x')"); }
Scheme constant_edge_scheme() { return nbhd_with_edge("nbhd_const", "x != x'"); }

}  // namespace zol::interp
