#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "zol/core/growth.hpp"
#include "zol/core/rng.hpp"
#include "zol/core/structure.hpp"
#include "zol/interp/scheme.hpp"
#include "zol/logic/formula.hpp"

namespace zol::harness {

using Json = nlohmann::json;

/// ψ(ȳ, z̄): its satisfying ȳ are counted, divided by the order of the
/// group on ȳ.
struct CountingFormula {
  std::vector<std::string> vars;
  std::vector<Perm> generators;
  logic::FormulaPtr formula;
};

/// A relation added at some level. `params` names z̄ in φ and in the
/// counting formulas; `scheme` is only used by the 1/g variant.
struct NewKind {
  Kind kind;
  std::vector<std::string> params;
  logic::FormulaPtr phi;
  std::vector<CountingFormula> counts;
  std::string scheme;
};

struct ULevel {
  std::vector<NewKind> kinds;
};

/// Recipe for the iterated random structure: a random graph with edge
/// probability q, then one batch of new relations per level.
struct UDescriptor {
  double q = 0.5;
  std::vector<ULevel> levels;
  /// Requires every counting formula to count single elements.
  bool singleton_y = false;

  int level_count() const { return static_cast<int>(levels.size()); }
  /// The kind sequence after `level` levels (0 is the graph kind alone).
  KindSequence signature(int level) const;
};

/// Empty when u is usable: fresh positive ids, arities matching params,
/// quantifier-free formulas over the right variables and kinds.
std::vector<std::string> u_violations(const UDescriptor& u);

UDescriptor u_from_json(const Json& j);
Json u_to_json(const UDescriptor& u);

/// Copies m into the larger signature; new kinds start empty.
Structure expand(const Structure& m, const KindSequence& bigger);

/// Level 0 is draw_random_graph(n, q, seed) bit for bit. At each later
/// level every orbit of a new kind whose representative c̄ satisfies φ is
/// set with probability h(round(Σ_i |ψ_i(M, c̄)| / |K_i|)); orbits failing
/// φ stay empty.
Structure iterated_draw(const UDescriptor& u, int n, Seed seed,
                        const GrowthFunctions& gf = GrowthFunctions::paper_default());

struct B17Stats {
  std::uint64_t orbits = 0;
  /// Orbits whose interpreted graph was empty, drawn as if it had one node.
  std::uint64_t clamped = 0;
};

/// The variant drawing with probability 1/g(m), m the node count of the
/// bound scheme's interpreted graph at c̄ (clamped to at least 1).
Structure iterated_draw_b17(const UDescriptor& u, int n, Seed seed, const interp::SchemeRegistry& registry,
                            const GrowthFunctions& gf = GrowthFunctions::paper_default(), B17Stats* stats = nullptr);

}  // namespace zol::harness
