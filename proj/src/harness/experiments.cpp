#include "zol/harness/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "zol/core/draw.hpp"
#include "zol/core/error.hpp"
#include "zol/core/structure_io.hpp"
#include "zol/harness/parallel.hpp"
#include "zol/interp/interpreted.hpp"
#include "zol/logic/eval.hpp"
#include "zol/logic/types.hpp"

namespace zol::harness {

namespace {

using quantifier::QuantifierClass;

/// Either one class per trial or a shared one, depending on the drawing.
class ClassSource {
 public:
  explicit ClassSource(const SamplingConfig& cfg) : cfg_(cfg) {
    if (cfg.drawing == Drawing::FixedTbar) shared_.emplace(cfg.quantifier_config(0, 0));
  }
  template <class F>
  auto with(int n, int trial, F&& f) const {
    if (shared_) return f(&*shared_);
    QuantifierClass own(cfg_.quantifier_config(n, trial));
    return f(&own);
  }
  const QuantifierClass* shared() const { return shared_ ? &*shared_ : nullptr; }

 private:
  const SamplingConfig& cfg_;
  std::optional<QuantifierClass> shared_;
};

logic::FormulaPtr elaborate_text(const std::string& text, interp::SchemeRegistry& registry, const KindSequence& sig) {
  return logic::elaborate(logic::parse(text), registry, sig);
}

bool is_neighbourhood_sentence(const logic::Formula& f) {
  if (f.op != logic::Op::Exists || f.kids.size() != 1) return false;
  const auto& body = *f.kids[0];
  return body.op == logic::Op::QApply && body.scheme == "nbhd" && body.vars == std::vector<std::string>{f.vars[0]};
}

/// k + l > n leaves nothing to quantify over; k + l == n leaves no room
/// for the witness.
bool extension_holds(const Graph& g, int k, int l) {
  if (k + l > g.size()) return true;
  if (k + l == g.size()) return false;
  return logic::check_extension_axiom(g, k, l);
}

Json moments_json(const Moments& m) { return {{"mean", m.mean}, {"sd", std::sqrt(m.variance)}}; }

Json perms_json(const std::vector<Perm>& ps) {
  Json j = Json::array();
  for (const auto& p : ps) j.push_back(p);
  return j;
}

bool intervals_overlap(const Interval& a, const Interval& b) { return a.lo <= b.hi && b.lo <= a.hi; }

std::string direction(Trend t) {
  switch (t) {
    case Trend::ToOne:
      return "high";
    case Trend::ToZero:
      return "low";
    default:
      return "inconclusive";
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// configuration

std::string to_string(Drawing d) { return d == Drawing::Joint ? "joint" : "fixed-tbar"; }

Drawing drawing_from_string(const std::string& s) {
  if (s == "joint") return Drawing::Joint;
  if (s == "fixed-tbar") return Drawing::FixedTbar;
  throw InvalidArgument("unknown drawing mode: " + s);
}

void SamplingConfig::validate() const {
  if (trials < 1) throw InvalidArgument("trials must be at least 1");
  if (sizes.empty()) throw InvalidArgument("sizes must not be empty");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw InvalidArgument("sizes must be positive");
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw InvalidArgument("sizes must be strictly ascending");
  }
  if (!(q > 0 && q < 1)) throw InvalidArgument("q must lie in (0,1)");
  if (iota != 1 && iota != 2) throw InvalidArgument("iota must be 1 or 2");
}

Json SamplingConfig::to_json() const {
  return {{"sizes", sizes},
          {"trials", trials},
          {"q", q},
          {"growth", io::growth_to_json(gf)},
          {"iota", iota},
          {"prob_mode", quantifier::to_string(mode)},
          {"drawing", to_string(drawing)},
          {"seed", seed},
          {"tbar_seed", tbar_seed},
          {"budget", budget}};
}

SamplingConfig SamplingConfig::from_json(const Json& j) {
  SamplingConfig c;
  if (j.contains("sizes")) c.sizes = j.at("sizes").get<std::vector<int>>();
  c.trials = j.value("trials", c.trials);
  c.q = j.value("q", c.q);
  if (j.contains("growth")) c.gf = io::growth_from_json(j.at("growth"));
  c.iota = j.value("iota", c.iota);
  if (j.contains("prob_mode")) c.mode = quantifier::prob_mode_from_string(j.at("prob_mode").get<std::string>());
  if (j.contains("drawing")) c.drawing = drawing_from_string(j.at("drawing").get<std::string>());
  c.seed = j.value("seed", c.seed);
  c.tbar_seed = j.value("tbar_seed", c.tbar_seed);
  c.budget = j.value("budget", c.budget);
  c.threads = j.value("threads", c.threads);
  return c;
}

Seed SamplingConfig::graph_seed(int n, int trial) const {
  return derive_seed(seed, {tag("graph"), static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial)});
}

quantifier::QuantifierConfig SamplingConfig::quantifier_config(int n, int trial) const {
  quantifier::QuantifierConfig qc;
  qc.iota = iota;
  qc.gf = gf;
  qc.mode = mode;
  qc.budget = budget;
  qc.seed = drawing == Drawing::FixedTbar
                ? tbar_seed
                : derive_seed(seed, {tag("tbar"), static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial)});
  return qc;
}

Json ZeroOneConfig::to_json() const {
  Json j = sampling.to_json();
  j["sentences"] = sentences;
  return j;
}

ZeroOneConfig ZeroOneConfig::from_json(const Json& j) {
  ZeroOneConfig c;
  c.sampling = SamplingConfig::from_json(j);
  c.sentences = j.value("sentences", std::vector<std::string>{});
  return c;
}

Json ExtensionConfig::to_json() const {
  Json j = sampling.to_json();
  Json ps = Json::array();
  for (auto [k, l] : pairs) ps.push_back({k, l});
  j["pairs"] = ps;
  return j;
}

ExtensionConfig ExtensionConfig::from_json(const Json& j) {
  ExtensionConfig c;
  c.sampling = SamplingConfig::from_json(j);
  if (j.contains("pairs")) {
    c.pairs.clear();
    for (const auto& p : j.at("pairs")) c.pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  }
  return c;
}

Json CompareConfig::to_json() const {
  Json j = sampling.to_json();
  Json ls = Json::array();
  for (const auto& l : levels) ls.push_back({{"kind", l.kind_id}, {"formula", l.formula}});
  j["levels"] = ls;
  j["sentences"] = sentences;
  return j;
}

CompareConfig CompareConfig::from_json(const Json& j) {
  CompareConfig c;
  c.sampling = SamplingConfig::from_json(j);
  for (const auto& l : j.value("levels", Json::array()))
    c.levels.push_back({l.at("kind").get<int>(), l.at("formula").get<std::string>()});
  c.sentences = j.value("sentences", std::vector<std::string>{});
  return c;
}

Json DichotomyConfig::to_json() const {
  Json j = sampling.to_json();
  j["scheme"] = scheme;
  j["weak_mc"] = {{"sizes", weak_mc.sizes}, {"trials", weak_mc.trials}, {"q", weak_mc.q}, {"seed", weak_mc.seed}};
  return j;
}

DichotomyConfig DichotomyConfig::from_json(const Json& j) {
  DichotomyConfig c;
  c.sampling = SamplingConfig::from_json(j);
  c.scheme = j.value("scheme", c.scheme);
  if (j.contains("weak_mc")) {
    const auto& w = j.at("weak_mc");
    if (w.contains("sizes")) c.weak_mc.sizes = w.at("sizes").get<std::vector<int>>();
    c.weak_mc.trials = w.value("trials", c.weak_mc.trials);
    c.weak_mc.q = w.value("q", c.weak_mc.q);
    c.weak_mc.seed = w.value("seed", c.weak_mc.seed);
  }
  return c;
}

Json DefinabilityConfig::to_json() const {
  Json j = sampling.to_json();
  j["formula"] = formula;
  j["rank"] = rank;
  j["max_params"] = max_params;
  return j;
}

DefinabilityConfig DefinabilityConfig::from_json(const Json& j) {
  DefinabilityConfig c;
  c.sampling = SamplingConfig::from_json(j);
  c.formula = j.value("formula", c.formula);
  c.rank = j.value("rank", c.rank);
  c.max_params = j.value("max_params", c.max_params);
  return c;
}

Json IteratedConfig::to_json() const {
  Json j = sampling.to_json();
  j["u"] = u_to_json(u);
  j["b17"] = b17;
  return j;
}

IteratedConfig IteratedConfig::from_json(const Json& j) {
  IteratedConfig c;
  c.sampling = SamplingConfig::from_json(j);
  if (j.contains("u")) c.u = u_from_json(j.at("u"));
  c.b17 = j.value("b17", false);
  return c;
}

// ---------------------------------------------------------------------------
// zero-one

ConvergenceReport run_zero_one_experiment(const ZeroOneConfig& cfg, const interp::SchemeRegistry& base) {
  cfg.sampling.validate();
  if (cfg.sentences.empty()) throw InvalidArgument("no sentences given");
  const auto& sc = cfg.sampling;
  interp::SchemeRegistry registry = base;
  const KindSequence sig = KindSequence::graph();
  std::vector<logic::FormulaPtr> sentences;
  for (const auto& s : cfg.sentences) {
    auto f = elaborate_text(s, registry, sig);
    if (!logic::free_vars(*f).empty()) throw InvalidArgument("not a sentence: " + s);
    sentences.push_back(std::move(f));
  }
  ClassSource classes(sc);

  ConvergenceReport report;
  report.experiment = "zero-one";
  report.config = cfg.to_json();
  report.seed = sc.seed;
  for (const auto& s : cfg.sentences) report.series.push_back({s, sc.sizes, {}, Trend::Inconclusive, {}});

  for (int n : sc.sizes) {
    // 1 true, 0 false, -1 aborted.
    auto outcomes = parallel_map(static_cast<std::size_t>(sc.trials), sc.threads, [&](std::size_t i) {
      const int trial = static_cast<int>(i);
      Structure g = draw_random_graph(n, sc.q, sc.graph_seed(n, trial));
      return classes.with(n, trial, [&](const QuantifierClass* qc) {
        logic::Evaluator ev(g, registry, qc);
        std::vector<int> out;
        for (const auto& f : sentences) {
          try {
            out.push_back(ev.eval(*f, {}) ? 1 : 0);
          } catch (const EvaluationAborted&) {
            out.push_back(-1);
          }
        }
        return out;
      });
    });
    for (std::size_t s = 0; s < sentences.size(); ++s) {
      Estimate e;
      for (const auto& o : outcomes) {
        if (o[s] < 0)
          ++e.aborts;
        else {
          ++e.trials;
          e.successes += static_cast<std::uint64_t>(o[s]);
        }
      }
      report.series[s].estimates.push_back(e);
    }
  }

  for (std::size_t s = 0; s < sentences.size(); ++s) {
    auto& series = report.series[s];
    series.trend = classify_trend(series.estimates);
    // Sanity envelope for "some node's neighbourhood is in the class":
    // n independent chances at the membership probability of a typical
    // neighbourhood, assuming that neighbourhood is high.
    if (is_neighbourhood_sentence(*logic::parse(cfg.sentences[s]))) {
      for (int n : sc.sizes) {
        QuantifierClass qc(sc.quantifier_config(n, 0));
        const auto m = static_cast<std::uint64_t>(std::llround((n - 1) * sc.q));
        series.envelope.push_back(1 - std::pow(1 - qc.probability(m), n));
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// extension axioms

ConvergenceReport run_extension_axiom_experiment(const ExtensionConfig& cfg) {
  cfg.sampling.validate();
  const auto& sc = cfg.sampling;
  for (auto [k, l] : cfg.pairs)
    if (k < 0 || l < 0) throw InvalidArgument("extension axiom sizes must be non-negative");
  ConvergenceReport report;
  report.experiment = "ext-axioms";
  report.config = cfg.to_json();
  report.seed = sc.seed;
  for (auto [k, l] : cfg.pairs)
    report.series.push_back({"E(" + std::to_string(k) + "," + std::to_string(l) + ")", sc.sizes, {}, {}, {}});

  Json exact = Json::array();
  for (int n : sc.sizes) {
    auto outcomes = parallel_map(static_cast<std::size_t>(sc.trials), sc.threads, [&](std::size_t i) {
      Graph g = draw_random_graph(n, sc.q, sc.graph_seed(n, static_cast<int>(i))).to_graph();
      std::vector<char> out;
      for (auto [k, l] : cfg.pairs) out.push_back(extension_holds(g, k, l) ? 1 : 0);
      return out;
    });
    for (std::size_t p = 0; p < cfg.pairs.size(); ++p) {
      Estimate e;
      e.trials = outcomes.size();
      for (const auto& o : outcomes) e.successes += static_cast<std::uint64_t>(o[p]);
      report.series[p].estimates.push_back(e);
      if (n <= 7) {
        auto [k, l] = cfg.pairs[p];
        exact.push_back({{"label", report.series[p].label}, {"n", n}, {"probability", exact_extension_probability(n, k, l, sc.q)}});
      }
    }
  }
  for (auto& s : report.series) s.trend = classify_trend(s.estimates);
  if (!exact.empty()) report.extra["exact"] = exact;
  return report;
}

double exact_extension_probability(int n, int k, int l, double q) {
  if (n < 1) throw InvalidArgument("n must be positive");
  if (n > 7) throw OracleTooLarge("exact extension probability is limited to 7 nodes");
  std::vector<std::pair<int, int>> slots;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
  const std::size_t e = slots.size();
  double total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << e); ++mask) {
    Graph g(n);
    int edges = 0;
    for (std::size_t b = 0; b < e; ++b)
      if (mask >> b & 1U) {
        g.add_edge(slots[b].first, slots[b].second);
        ++edges;
      }
    if (extension_holds(g, k, l)) total += std::pow(q, edges) * std::pow(1 - q, static_cast<double>(e) - edges);
  }
  return total;
}

// ---------------------------------------------------------------------------
// sampler comparison

SmallSubgraphs count_small_subgraphs(const Graph& g) {
  SmallSubgraphs out;
  const int n = g.size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        const int e = g.adjacent(a, b) + g.adjacent(a, c) + g.adjacent(b, c);
        if (e == 3) ++out.k3;
        if (e == 2) ++out.p3;
      }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          const int da = g.adjacent(a, b) + g.adjacent(a, c) + g.adjacent(a, d);
          const int db = g.adjacent(b, a) + g.adjacent(b, c) + g.adjacent(b, d);
          const int dc = g.adjacent(c, a) + g.adjacent(c, b) + g.adjacent(c, d);
          const int dd = g.adjacent(d, a) + g.adjacent(d, b) + g.adjacent(d, c);
          if (da == 2 && db == 2 && dc == 2 && dd == 2) ++out.c4;
        }
  return out;
}

double relation_density(const Structure& m, std::size_t kind_index) {
  const Kind& k = m.signature()[kind_index];
  std::uint64_t orbits = 0, set = 0;
  for_each_injective_tuple(m.size(), k.arity, [&](const Tuple& t) {
    if (!is_orbit_minimum(t, k.group)) return;
    ++orbits;
    if (m.holds(kind_index, t)) ++set;
  });
  return orbits == 0 ? 0.0 : static_cast<double>(set) / static_cast<double>(orbits);
}

Json compare_distributions(const CompareConfig& cfg, const interp::SchemeRegistry& base) {
  cfg.sampling.validate();
  const auto& sc = cfg.sampling;
  interp::SchemeRegistry registry = base;

  // Signatures per level; level formulas are elaborated over the kinds
  // available before their own.
  std::vector<KindSequence> sigs{KindSequence::graph()};
  std::vector<logic::FormulaPtr> level_formulas;
  std::vector<std::vector<std::string>> level_vars;
  for (const auto& level : cfg.levels) {
    if (level.kind_id <= 0) throw InvalidArgument("level kinds need positive ids");
    auto f = elaborate_text(level.formula, registry, sigs.back());
    auto vars = logic::free_vars(*f);
    if (vars.empty()) throw InvalidArgument("level formula has no free variables: " + level.formula);
    Kind k;
    k.id = level.kind_id;
    k.arity = static_cast<int>(vars.size());
    sigs.push_back(sigs.back().with(k));
    level_formulas.push_back(std::move(f));
    level_vars.push_back(std::move(vars));
  }
  std::vector<logic::FormulaPtr> sentences;
  for (const auto& s : cfg.sentences) {
    auto f = elaborate_text(s, registry, sigs.back());
    if (!logic::free_vars(*f).empty()) throw InvalidArgument("not a sentence: " + s);
    sentences.push_back(std::move(f));
  }
  ClassSource classes(sc);

  std::vector<std::string> stat_names{"edge_density", "k3", "p3", "c4"};
  for (const auto& level : cfg.levels) stat_names.push_back("density_R" + std::to_string(level.kind_id));

  struct TrialResult {
    bool aborted = false;
    bool identical = false;
    std::vector<double> stats_i, stats_ii;
    std::vector<char> truth_i, truth_ii;
  };

  Json per_size = Json::array();
  bool all_agree = true;
  bool zero_divergence = true;
  for (int n : sc.sizes) {
    const double direct_p = sc.q / sc.gf.g(static_cast<std::uint64_t>(n));
    auto results = parallel_map(static_cast<std::size_t>(sc.trials), sc.threads, [&](std::size_t i) {
      const int trial = static_cast<int>(i);
      TrialResult r;
      const Structure g = draw_random_graph(n, sc.q, sc.graph_seed(n, trial));
      const Seed direct_seed =
          derive_seed(sc.seed, {tag("direct"), static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial)});
      return classes.with(n, trial, [&](const QuantifierClass* qc) {
        try {
          Structure a = g, b = g;
          for (std::size_t l = 0; l < cfg.levels.size(); ++l) {
            const KindSequence& sig = sigs[l + 1];
            const std::size_t idx = sig.size() - 1;
            const int arity = sig[idx].arity;
            std::vector<Tuple> defined;
            {
              logic::Evaluator ev(a, registry, qc);
              for_each_injective_tuple(n, arity, [&](const Tuple& t) {
                logic::Assignment asg;
                for (std::size_t v = 0; v < t.size(); ++v) asg[level_vars[l][v]] = t[v];
                if (ev.eval(*level_formulas[l], asg)) defined.push_back(t);
              });
            }
            a = expand(a, sig);
            for (const auto& t : defined) a.set(idx, t, true);
            b = expand(b, sig);
            draw_kind_into(
                b, idx, direct_seed, [](const Tuple&) { return true; }, [&](const Tuple&) { return direct_p; });
          }
          const Graph gg = g.to_graph();
          const auto sub = count_small_subgraphs(gg);
          const double pairs = n < 2 ? 1.0 : n * (n - 1) / 2.0;
          std::vector<double> common{static_cast<double>(gg.edge_count()) / pairs, static_cast<double>(sub.k3),
                                     static_cast<double>(sub.p3), static_cast<double>(sub.c4)};
          r.stats_i = common;
          r.stats_ii = common;
          for (std::size_t l = 0; l < cfg.levels.size(); ++l) {
            r.stats_i.push_back(relation_density(a, l + 1));
            r.stats_ii.push_back(relation_density(b, l + 1));
          }
          logic::Evaluator ea(a, registry, qc), eb(b, registry, qc);
          for (const auto& f : sentences) {
            r.truth_i.push_back(ea.eval(*f, {}) ? 1 : 0);
            r.truth_ii.push_back(eb.eval(*f, {}) ? 1 : 0);
          }
          r.identical = a == b;
        } catch (const EvaluationAborted&) {
          r = TrialResult{};
          r.aborted = true;
        }
        return r;
      });
    });

    std::uint64_t aborts = 0;
    bool identical = true;
    std::vector<std::vector<double>> xs(stat_names.size()), ys(stat_names.size());
    std::vector<Estimate> ti(sentences.size()), tii(sentences.size());
    for (const auto& r : results) {
      if (r.aborted) {
        ++aborts;
        for (auto& e : ti) ++e.aborts;
        for (auto& e : tii) ++e.aborts;
        continue;
      }
      identical = identical && r.identical;
      for (std::size_t s = 0; s < stat_names.size(); ++s) {
        xs[s].push_back(r.stats_i[s]);
        ys[s].push_back(r.stats_ii[s]);
      }
      for (std::size_t s = 0; s < sentences.size(); ++s) {
        ++ti[s].trials;
        ++tii[s].trials;
        ti[s].successes += static_cast<std::uint64_t>(r.truth_i[s]);
        tii[s].successes += static_cast<std::uint64_t>(r.truth_ii[s]);
      }
    }

    double max_diff = 0;
    Json stats = Json::array();
    for (std::size_t s = 0; s < stat_names.size(); ++s) {
      const auto mi = moments(xs[s]), mii = moments(ys[s]);
      const double count = std::max<double>(1, static_cast<double>(xs[s].size()));
      const double diff = mi.mean - mii.mean;
      const double half = 1.96 * std::sqrt(mi.variance / count + mii.variance / count);
      max_diff = std::max(max_diff, std::abs(diff));
      stats.push_back({{"statistic", stat_names[s]},
                       {"sampler_i", moments_json(mi)},
                       {"sampler_ii", moments_json(mii)},
                       {"difference", diff},
                       {"ci95_half_width", half},
                       {"within_ci", std::abs(diff) <= half}});
    }
    Json sent = Json::array();
    for (std::size_t s = 0; s < sentences.size(); ++s) {
      const bool agree = intervals_overlap(ti[s].ci(), tii[s].ci());
      all_agree = all_agree && agree;
      max_diff = std::max(max_diff, std::abs(ti[s].frequency() - tii[s].frequency()));
      sent.push_back({{"sentence", cfg.sentences[s]},
                      {"sampler_i", ti[s].to_json()},
                      {"sampler_ii", tii[s].to_json()},
                      {"agree", agree}});
    }
    zero_divergence = zero_divergence && identical && max_diff == 0;
    per_size.push_back({{"n", n},
                        {"trials", sc.trials},
                        {"aborts", aborts},
                        {"abort_rate", static_cast<double>(aborts) / sc.trials},
                        {"direct_probability", direct_p},
                        {"identical_samples", identical},
                        {"max_abs_difference", max_diff},
                        {"statistics", std::move(stats)},
                        {"sentences", std::move(sent)}});
  }

  Json j = report_header("compare", cfg.to_json(), sc.seed);
  j["results"] = std::move(per_size);
  j["levels"] = cfg.levels.size();
  j["all_sentences_agree"] = all_agree;
  j["zero_divergence"] = zero_divergence;
  return j;
}

// ---------------------------------------------------------------------------
// dichotomy

Json run_dichotomy_experiment(const DichotomyConfig& cfg, const interp::SchemeRegistry& registry) {
  cfg.sampling.validate();
  const auto& sc = cfg.sampling;
  const KindSequence sig = KindSequence::graph();
  const interp::Scheme& scheme = registry.get(cfg.scheme);
  const interp::CompiledScheme cs(scheme, sig);
  const interp::Verdict weak = interp::is_one_weak(scheme, sig, cfg.weak_mc);

  struct Outcome {
    int status = 0;  // 0 low, 1 high, 2 aborted, 3 no parameters
    int nodes = 0;
  };
  std::vector<Estimate> series;
  Json points = Json::array();
  for (int n : sc.sizes) {
    auto outcomes = parallel_map(static_cast<std::size_t>(sc.trials), sc.threads, [&](std::size_t i) {
      const Seed seed = sc.graph_seed(n, static_cast<int>(i));
      Outcome o;
      Structure host = interp::sample_host(sig, n, sc.q, seed);
      auto c = interp::sample_params(host, cs, derive_seed(seed, {tag("params")}));
      if (!c) {
        o.status = 3;
        return o;
      }
      auto h = interp::build_interpreted_graph(host, cs, *c);
      o.nodes = h.size();
      try {
        o.status = lowness::classify_low_1(h.graph, sc.gf, sc.budget).high() ? 1 : 0;
      } catch (const BudgetExhausted&) {
        o.status = 2;
      }
      return o;
    });
    Estimate e;
    std::uint64_t no_params = 0;
    std::vector<double> sizes;
    for (const auto& o : outcomes) {
      if (o.status == 3) {
        ++no_params;
        continue;
      }
      sizes.push_back(o.nodes);
      if (o.status == 2)
        ++e.aborts;
      else {
        ++e.trials;
        e.successes += static_cast<std::uint64_t>(o.status);
      }
    }
    series.push_back(e);
    Json p = e.to_json();
    p["n"] = n;
    p["no_parameters"] = no_params;
    p["nodes"] = moments_json(moments(sizes));
    points.push_back(std::move(p));
  }

  const std::string expected =
      weak.value == interp::Tri::True ? "low" : weak.value == interp::Tri::False ? "high" : "unknown";
  const Trend trend = classify_trend(series);
  const std::string observed = direction(trend);
  Json j = report_header("dichotomy", cfg.to_json(), sc.seed);
  j["scheme"] = scheme_to_json(scheme);
  j["one_weak"] = {{"value", interp::to_string(weak.value)}, {"clause", weak.clause}, {"evidence", weak.evidence}};
  j["high_rate"] = std::move(points);
  j["expected_direction"] = expected;
  j["observed_direction"] = observed;
  j["high_rate_non_decreasing_within_ci"] = non_decreasing_within_ci(series);
  if (expected == "unknown" || observed == "inconclusive")
    j["matches_expectation"] = nullptr;
  else
    j["matches_expectation"] = expected == observed;
  return j;
}

// ---------------------------------------------------------------------------
// definability

Json run_definability_experiment(const DefinabilityConfig& cfg, const interp::SchemeRegistry& base) {
  cfg.sampling.validate();
  if (cfg.rank < 0) throw InvalidArgument("rank must be non-negative");
  const auto& sc = cfg.sampling;
  interp::SchemeRegistry registry = base;
  const auto f = elaborate_text(cfg.formula, registry, KindSequence::graph());
  if (logic::free_vars(*f).size() != 1) throw InvalidArgument("formula needs exactly one free variable");
  ClassSource classes(sc);

  struct Outcome {
    bool aborted = false;
    int size = 0;
    bool definable = true;
    bool definable_with_params = true;
  };
  Json points = Json::array();
  bool degenerate = true;
  std::uint64_t total_aborts = 0, total = 0;
  for (int n : sc.sizes) {
    auto outcomes = parallel_map(static_cast<std::size_t>(sc.trials), sc.threads, [&](std::size_t i) {
      const int trial = static_cast<int>(i);
      Structure g = draw_random_graph(n, sc.q, sc.graph_seed(n, trial));
      return classes.with(n, trial, [&](const QuantifierClass* qc) {
        Outcome o;
        try {
          logic::Evaluator ev(g, registry, qc);
          const auto s = ev.defined_set(*f);
          o.size = static_cast<int>(s.size());
          o.definable = logic::fo_definable(g, s, cfg.rank);
          o.definable_with_params =
              o.definable || (cfg.max_params > 0 && logic::fo_definable_with_params(g, s, cfg.rank, cfg.max_params));
        } catch (const EvaluationAborted&) {
          o.aborted = true;
        } catch (const BudgetExhausted&) {
          o.aborted = true;
        }
        return o;
      });
    });
    Estimate plain, with_params;
    std::uint64_t empty = 0, full = 0;
    std::vector<double> sizes;
    for (const auto& o : outcomes) {
      ++total;
      if (o.aborted) {
        ++plain.aborts;
        ++with_params.aborts;
        ++total_aborts;
        continue;
      }
      ++plain.trials;
      ++with_params.trials;
      plain.successes += o.definable ? 0 : 1;
      with_params.successes += o.definable_with_params ? 0 : 1;
      sizes.push_back(o.size);
      if (o.size == 0) ++empty;
      if (o.size == n) ++full;
      if (o.size != 0 && o.size != n) degenerate = false;
    }
    Json p = {{"n", n},
              {"non_definable", plain.to_json()},
              {"set_size", moments_json(moments(sizes))},
              {"empty_sets", empty},
              {"full_sets", full}};
    if (cfg.max_params > 0) p["non_definable_with_params"] = with_params.to_json();
    points.push_back(std::move(p));
  }
  Json j = report_header("definability", cfg.to_json(), sc.seed);
  j["results"] = std::move(points);
  j["degenerate_regime"] = degenerate;
  j["abort_rate"] = total == 0 ? 0.0 : static_cast<double>(total_aborts) / static_cast<double>(total);
  return j;
}

// ---------------------------------------------------------------------------
// iterated drawing

Json run_iterated_experiment(const IteratedConfig& cfg, const interp::SchemeRegistry& registry) {
  cfg.sampling.validate();
  if (auto v = u_violations(cfg.u); !v.empty()) throw InvalidArgument("descriptor: " + v.front());
  const auto& sc = cfg.sampling;
  const KindSequence sig = cfg.u.signature(cfg.u.level_count());

  struct Outcome {
    std::vector<double> densities;
    B17Stats b17;
  };
  Json points = Json::array();
  std::uint64_t clamped = 0, orbits = 0;
  for (int n : sc.sizes) {
    auto outcomes = parallel_map(static_cast<std::size_t>(sc.trials), sc.threads, [&](std::size_t i) {
      Outcome o;
      const Seed seed = sc.graph_seed(n, static_cast<int>(i));
      Structure m = cfg.b17 ? iterated_draw_b17(cfg.u, n, seed, registry, sc.gf, &o.b17)
                            : iterated_draw(cfg.u, n, seed, sc.gf);
      for (std::size_t k = 0; k < sig.size(); ++k) o.densities.push_back(relation_density(m, k));
      return o;
    });
    Json kinds = Json::array();
    for (std::size_t k = 0; k < sig.size(); ++k) {
      std::vector<double> xs;
      for (const auto& o : outcomes) xs.push_back(o.densities[k]);
      Json d = moments_json(moments(xs));
      d["kind"] = sig[k].id;
      d["arity"] = sig[k].arity;
      d["generators"] = perms_json(sig[k].generators);
      kinds.push_back(std::move(d));
    }
    for (const auto& o : outcomes) {
      clamped += o.b17.clamped;
      orbits += o.b17.orbits;
    }
    points.push_back({{"n", n}, {"densities", std::move(kinds)}});
  }
  Json j = report_header(cfg.b17 ? "iterated-b17" : "iterated", cfg.to_json(), sc.seed);
  j["results"] = std::move(points);
  if (cfg.b17) j["b17"] = {{"orbits", orbits}, {"clamped", clamped}, {"clamp_rule", "empty interpreted graph drawn as one node"}};
  return j;
}

}  // namespace zol::harness
