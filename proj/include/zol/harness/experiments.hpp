#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zol/core/graph.hpp"
#include "zol/core/growth.hpp"
#include "zol/core/rng.hpp"
#include "zol/harness/iterated.hpp"
#include "zol/harness/report.hpp"
#include "zol/interp/scheme.hpp"
#include "zol/interp/taxonomy.hpp"
#include "zol/lowness/lowness.hpp"
#include "zol/quantifier/quantifier.hpp"

namespace zol::harness {

/// Joint draws a fresh quantifier seed with every graph; FixedTbar keeps
/// one class for the whole run.
enum class Drawing { Joint, FixedTbar };
std::string to_string(Drawing d);
Drawing drawing_from_string(const std::string& s);

/// Settings shared by the sampling experiments.
struct SamplingConfig {
  std::vector<int> sizes;
  int trials = 200;
  double q = 0.5;
  GrowthFunctions gf = GrowthFunctions::paper_default();
  int iota = 1;
  quantifier::ProbMode mode = quantifier::ProbMode::HOfSize;
  Drawing drawing = Drawing::Joint;
  Seed seed = 1;
  /// Quantifier seed in FixedTbar mode.
  Seed tbar_seed = 0;
  std::uint64_t budget = lowness::kDefaultBudget;
  unsigned threads = 1;

  /// Throws InvalidArgument unless trials >= 1, sizes are non-empty and
  /// strictly ascending with n >= 1, and q lies in (0,1).
  void validate() const;
  Json to_json() const;
  static SamplingConfig from_json(const Json& j);

  Seed graph_seed(int n, int trial) const;
  quantifier::QuantifierConfig quantifier_config(int n, int trial) const;
};

struct ZeroOneConfig {
  SamplingConfig sampling;
  std::vector<std::string> sentences;
  Json to_json() const;
  static ZeroOneConfig from_json(const Json& j);
};

/// Estimates Pr[G ⊨ sentence] per size over the joint (or fixed-seed)
/// draw. Sentences are elaborated first; trials whose evaluation aborts
/// are counted in the abort rate and left out of the frequency.
ConvergenceReport run_zero_one_experiment(const ZeroOneConfig& cfg,
                                          const interp::SchemeRegistry& registry =
                                              interp::SchemeRegistry::with_builtins());

struct ExtensionConfig {
  SamplingConfig sampling;
  std::vector<std::pair<int, int>> pairs{{1, 1}};
  Json to_json() const;
  static ExtensionConfig from_json(const Json& j);
};

/// One series per (k, l), labelled "E(k,l)". Sizes with k + l >= n make
/// the axiom vacuous and are reported as all-true.
ConvergenceReport run_extension_axiom_experiment(const ExtensionConfig& cfg);

/// Exact Pr[E(k,l)] on G(n,q) by summing over all labelled graphs.
/// Throws OracleTooLarge above 7 nodes.
double exact_extension_probability(int n, int k, int l, double q);

/// Q-defined relations added on top of the random graph, in order. The
/// free variables of `formula`, in order of first occurrence, become the
/// arguments of kind `kind_id`.
struct QLevel {
  int kind_id = 1;
  std::string formula;
};

struct CompareConfig {
  SamplingConfig sampling;
  std::vector<QLevel> levels;
  std::vector<std::string> sentences;
  Json to_json() const;
  static CompareConfig from_json(const Json& j);
};

/// Sampler (i) expands G(n,q) by the Q-defined relations; sampler (ii)
/// draws the same kinds independently with probability q/g(n) on the same
/// graph. Both share graph seeds, so with no levels they coincide.
Json compare_distributions(const CompareConfig& cfg,
                           const interp::SchemeRegistry& registry = interp::SchemeRegistry::with_builtins());

/// Induced counts in the graph layer.
struct SmallSubgraphs {
  std::uint64_t k3 = 0, p3 = 0, c4 = 0;
};
SmallSubgraphs count_small_subgraphs(const Graph& g);

struct DichotomyConfig {
  SamplingConfig sampling;
  std::string scheme = "nbhd";
  interp::MonteCarlo weak_mc{};
  Json to_json() const;
  static DichotomyConfig from_json(const Json& j);
};

/// Samples hosts and parameters, builds the interpreted graphs and
/// reports the 1-high rate per size next to the scheme's 1-weak verdict.
Json run_dichotomy_experiment(const DichotomyConfig& cfg,
                              const interp::SchemeRegistry& registry = interp::SchemeRegistry::with_builtins());

struct DefinabilityConfig {
  SamplingConfig sampling;
  std::string formula = "Q[nbhd](x)";
  int rank = 1;
  /// Parameters tried by the with-parameters variant; 0 skips it.
  int max_params = 1;
  Json to_json() const;
  static DefinabilityConfig from_json(const Json& j);
};

/// Per size: how often the set defined by `formula` fails to be
/// first-order definable at the given rank, without and with parameters.
Json run_definability_experiment(const DefinabilityConfig& cfg,
                                 const interp::SchemeRegistry& registry = interp::SchemeRegistry::with_builtins());

struct IteratedConfig {
  SamplingConfig sampling;
  UDescriptor u;
  bool b17 = false;
  Json to_json() const;
  static IteratedConfig from_json(const Json& j);
};

/// Densities of every new kind per size for iterated_draw (or the 1/g
/// variant). `sampling.q` is ignored in favour of u.q.
Json run_iterated_experiment(const IteratedConfig& cfg,
                             const interp::SchemeRegistry& registry = interp::SchemeRegistry::with_builtins());

/// Fraction of repetition-free tuples in the kind, counting each orbit
/// once.
double relation_density(const Structure& m, std::size_t kind_index);

}  // namespace zol::harness
