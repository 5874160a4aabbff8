#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zol/core/kinds.hpp"
#include "zol/interp/qf.hpp"
#include "zol/logic/formula.hpp"

namespace zol::interp {

using Json = nlohmann::json;

/// One node sort of a scheme: the tuples x̄_i satisfying `node`, taken up
/// to the permutation group on their positions.
struct Block {
  std::vector<std::string> vars;
  std::vector<std::string> primed;  // names of x̄'_i in edge formulas
  std::vector<Perm> generators;
  std::vector<Perm> group;  // closure of generators
  logic::FormulaPtr node;

  int length() const { return static_cast<int>(vars.size()); }
};

/// A graph interpretation scheme. Formulas are the user's; the
/// distinctness guards on x̄_i⌢z̄ and z̄ are added by guarded_node() and
/// guarded_params() rather than stored.
struct Scheme {
  std::string name;
  std::vector<std::string> params;
  /// Parameter positions that no formula mentions but that still keep
  /// node tuples away from their values (left behind by reduction).
  std::vector<int> inert;
  logic::FormulaPtr param_formula;
  std::vector<Block> blocks;
  /// Edge formulas keyed by (i, j) with i <= j, over x̄_i, x̄'_j, z̄.
  std::map<std::pair<int, int>, logic::FormulaPtr> edges;

  int block_count() const { return static_cast<int>(blocks.size()); }
  int param_count() const { return static_cast<int>(params.size()); }
  /// k(φ̄): the longest block or parameter list.
  int width() const;
  bool is_inert(int p) const;
  std::vector<int> active_params() const;
};

/// Checks names and groups, closes the groups and normalizes edges so
/// that only i <= j is stored. Edges given as (j, i) with j > i are
/// renamed into (i, j). Throws InvalidArgument on malformed input.
Scheme make_scheme(Scheme s);

/// φ_{1,i,j}(x̄_i, x̄'_j, z̄) for any i, j; `false` when none was given.
logic::FormulaPtr edge_formula(const Scheme& s, int i, int j);
logic::FormulaPtr guarded_node(const Scheme& s, int i);
logic::FormulaPtr guarded_params(const Scheme& s);

/// Slot layouts used by the compiled programs.
std::vector<std::string> node_slots(const Scheme& s, int i);
std::vector<std::string> edge_slots(const Scheme& s, int i, int j);

/// Every formula compiled against a signature.
class CompiledScheme {
 public:
  CompiledScheme(const Scheme& s, const KindSequence& sig);

  const Scheme& scheme() const noexcept { return scheme_; }
  const KindSequence& signature() const noexcept { return sig_; }
  /// M ⊨ φ_2[c̄] with c̄ repetition-free.
  bool params_ok(const Structure& m, std::span<const int> c) const;
  bool node(const Structure& m, int i, std::span<const int> a, std::span<const int> c) const;
  bool edge(const Structure& m, int i, int j, std::span<const int> a, std::span<const int> b,
            std::span<const int> c) const;

  const QfProgram& node_program(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  const QfProgram& edge_program(int i, int j) const;
  const QfProgram& param_program() const { return params_; }

 private:
  Scheme scheme_;
  KindSequence sig_;
  QfProgram params_;
  std::vector<QfProgram> nodes_;
  std::vector<QfProgram> edges_;  // row-major block_count x block_count
};

Json scheme_to_json(const Scheme& s);
Scheme scheme_from_json(const Json& j);

/// Named schemes, as referenced by Q[name] in formulas.
class SchemeRegistry {
 public:
  /// The registry with the built-in schemes "nbhd" and "nbhd_const".
  static SchemeRegistry with_builtins();

  void add(Scheme s);
  bool contains(const std::string& name) const { return schemes_.count(name) > 0; }
  const Scheme& get(const std::string& name) const;
  std::vector<std::string> names() const;
  /// Accepts a single scheme object or an array of them.
  void load_json(const Json& j);

 private:
  std::map<std::string, Scheme> schemes_;
};

/// Nodes: the neighbours of the parameter. Edges: the host's edges.
Scheme neighborhood_scheme();
/// Same nodes, but every pair of distinct nodes is joined.
Scheme constant_edge_scheme();

}  // namespace zol::interp
