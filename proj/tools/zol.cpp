#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zol/core/draw.hpp"
#include "zol/core/error.hpp"
#include "zol/core/graph6.hpp"
#include "zol/core/structure_io.hpp"
#include "zol/harness/experiments.hpp"
#include "zol/interp/scheme.hpp"
#include "zol/logic/eval.hpp"
#include "zol/lowness/lowness.hpp"
#include "zol/quantifier/canonical.hpp"
#include "zol/quantifier/quantifier.hpp"

using namespace zol;
using Json = nlohmann::json;

namespace {

struct GrowthFlags {
  std::string mode = "default";
  double h = 0.3;
  std::string table;  // "n:h,n:h"
  bool given = false;

  GrowthFunctions build() const {
    if (mode == "default") return GrowthFunctions::paper_default();
    if (mode == "constant") return GrowthFunctions::constant(h);
    if (mode == "table") {
      std::map<std::uint64_t, double> steps;
      std::stringstream ss(table);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw InvalidArgument("--h-table entries look like n:h");
        steps[std::stoull(item.substr(0, colon))] = std::stod(item.substr(colon + 1));
      }
      return GrowthFunctions::table(std::move(steps));
    }
    throw InvalidArgument("--h-mode is one of default, constant, table");
  }
};

void add_growth(CLI::App* app, GrowthFlags& g) {
  // "--h" is the growth exponent, so help is "--help" only.
  app->set_help_flag("--help", "print this help and exit");
  app->add_option("--h-mode", g.mode, "growth mode: default, constant or table")
      ->check(CLI::IsMember({"default", "constant", "table"}))
      ->each([&](const std::string&) { g.given = true; });
  app->add_option("--h", g.h, "constant h (implies --h-mode constant)")->each([&](const std::string&) {
    g.mode = "constant";
    g.given = true;
  });
  app->add_option("--h-table", g.table, "step table n:h,n:h (implies --h-mode table)")
      ->each([&](const std::string&) {
        g.mode = "table";
        g.given = true;
      });
}

std::vector<Graph> read_graphs(const std::string& path) {
  if (path.empty() || path == "-") return graph6::read_all(std::cin);
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  return graph6::read_all(in);
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  return Json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
}

interp::SchemeRegistry registry_with(const std::string& schemes_path) {
  auto r = interp::SchemeRegistry::with_builtins();
  if (!schemes_path.empty()) r.load_json(read_json(schemes_path));
  return r;
}

/// Flags that override the sampling part of an experiment config.
struct SamplingFlags {
  std::vector<int> sizes;
  int trials = 0;
  double q = 0;
  int iota = 0;
  std::string prob_mode, drawing;
  Seed seed = 0, tbar_seed = 0;
  bool seed_given = false, tbar_given = false;
  std::uint64_t budget = 0;
  unsigned threads = 0;
  GrowthFlags growth;

  void apply(Json& j) const {
    if (!sizes.empty()) j["sizes"] = sizes;
    if (trials > 0) j["trials"] = trials;
    if (q > 0) j["q"] = q;
    if (iota > 0) j["iota"] = iota;
    if (!prob_mode.empty()) j["prob_mode"] = prob_mode;
    if (!drawing.empty()) j["drawing"] = drawing;
    if (seed_given) j["seed"] = seed;
    if (tbar_given) j["tbar_seed"] = tbar_seed;
    if (budget > 0) j["budget"] = budget;
    if (threads > 0) j["threads"] = threads;
    if (growth.given) j["growth"] = io::growth_to_json(growth.build());
  }
};

void add_sampling(CLI::App* app, SamplingFlags& f) {
  app->add_option("--sizes", f.sizes, "universe sizes, ascending")->delimiter(',');
  app->add_option("--trials", f.trials, "trials per size");
  app->add_option("--q", f.q, "edge probability");
  app->add_option("--iota", f.iota, "lowness notion (1 or 2)");
  app->add_option("--prob-mode", f.prob_mode, "membership probability: h or g-inverse");
  app->add_option("--drawing", f.drawing, "joint or fixed-tbar");
  app->add_option("--seed", f.seed, "master seed")->each([&](const std::string&) { f.seed_given = true; });
  app->add_option("--tbar-seed", f.tbar_seed, "quantifier seed for fixed-tbar")->each([&](const std::string&) {
    f.tbar_given = true;
  });
  app->add_option("--budget", f.budget, "search budget for lowness");
  app->add_option("--threads", f.threads, "worker threads");
  add_growth(app, f.growth);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zol: random high-graph quantifiers and zero-one experiments"};
  app.set_help_flag("--help", "print this help and exit");
  app.set_config("--flags-file", "", "TOML-style file with flag values");
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "draw G(n,q) and print it as graph6 or JSON");
  int gen_n = 10, gen_count = 1;
  double gen_q = 0.5;
  Seed gen_seed = 0;
  std::string gen_format = "g6", gen_out;
  gen->add_option("-n,--n", gen_n, "number of nodes")->required();
  gen->add_option("--q", gen_q, "edge probability");
  gen->add_option("--seed", gen_seed, "seed of the first graph; later ones use seed+1, ...");
  gen->add_option("--count", gen_count, "how many graphs");
  gen->add_option("--format", gen_format)->check(CLI::IsMember({"g6", "json"}));
  gen->add_option("-o,--out", gen_out, "output file (default stdout)");

  // classify
  auto* classify = app.add_subcommand("classify", "decide 1-low/2-low for graph6 input");
  std::string cls_in;
  int cls_iota = 1;
  std::uint64_t cls_budget = lowness::kDefaultBudget;
  bool cls_exhaustive = false;
  GrowthFlags cls_growth;
  classify->add_option("-i,--input", cls_in, "graph6 file (default stdin)");
  classify->add_option("--iota", cls_iota)->check(CLI::IsMember({1, 2}));
  classify->add_option("--budget", cls_budget, "search node budget");
  classify->add_flag("--exhaustive", cls_exhaustive, "use the enumeration oracle (iota 1)");
  add_growth(classify, cls_growth);

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "one graph6 line per isomorphism class");
  int enum_max = 5;
  bool enum_count = false;
  enumerate->add_option("--max-n", enum_max, "largest size")->check(CLI::Range(0, 10));
  enumerate->add_flag("--count", enum_count, "print counts per size instead");

  // quantifier sample
  auto* quant = app.add_subcommand("quantifier", "inspect the random class");
  auto* sample = quant->add_subcommand("sample", "membership bits over the enumeration order");
  std::size_t q_m = 50;
  quantifier::QuantifierConfig q_cfg;
  std::string q_mode = "h";
  GrowthFlags q_growth;
  sample->add_option("--m-max", q_m, "prefix length");
  sample->add_option("--seed", q_cfg.seed, "quantifier seed");
  sample->add_option("--iota", q_cfg.iota)->check(CLI::IsMember({1, 2}));
  sample->add_option("--budget", q_cfg.budget);
  sample->add_option("--prob-mode", q_mode)->check(CLI::IsMember({"h", "g-inverse"}));
  add_growth(sample, q_growth);
  quant->require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a formula on graph6 input or a random graph");
  std::string ev_formula, ev_in, ev_schemes;
  int ev_n = 0;
  double ev_q = 0.5;
  Seed ev_graph_seed = 0;
  quantifier::QuantifierConfig ev_cfg;
  std::string ev_mode = "h";
  GrowthFlags ev_growth;
  eval->add_option("-f,--formula", ev_formula, "sentence, or formula with one free variable")->required();
  eval->add_option("-i,--input", ev_in, "graph6 file; '-' for stdin");
  eval->add_option("-n,--n", ev_n, "draw G(n,q) instead of reading input");
  eval->add_option("--q", ev_q);
  eval->add_option("--graph-seed", ev_graph_seed);
  eval->add_option("--seed", ev_cfg.seed, "quantifier seed");
  eval->add_option("--iota", ev_cfg.iota)->check(CLI::IsMember({1, 2}));
  eval->add_option("--budget", ev_cfg.budget);
  eval->add_option("--prob-mode", ev_mode)->check(CLI::IsMember({"h", "g-inverse"}));
  eval->add_option("--schemes", ev_schemes, "JSON file with extra schemes");
  add_growth(eval, ev_growth);

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a Monte Carlo experiment and emit a JSON report");
  std::string ex_kind, ex_config, ex_out, ex_csv, ex_schemes;
  SamplingFlags ex_flags;
  exp->add_option("kind", ex_kind, "zero-one, ext-axioms, dichotomy, definability, compare or iterated")
      ->required()
      ->check(CLI::IsMember({"zero-one", "ext-axioms", "dichotomy", "definability", "compare", "iterated"}));
  exp->add_option("-c,--config", ex_config, "JSON config; flags override its fields");
  exp->add_option("-o,--out", ex_out, "report file (default stdout)");
  exp->add_option("--csv", ex_csv, "also write a CSV matrix (zero-one, ext-axioms)");
  exp->add_option("--schemes", ex_schemes, "JSON file with extra schemes");
  std::vector<std::string> ex_sentences;
  exp->add_option("--sentence", ex_sentences, "sentence to estimate (repeatable)");
  add_sampling(exp, ex_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      std::string text;
      for (int i = 0; i < gen_count; ++i) {
        auto m = draw_random_graph(gen_n, gen_q, gen_seed + static_cast<Seed>(i));
        text += gen_format == "g6" ? graph6::encode(m.to_graph()) + "\n" : io::structure_to_json(m).dump() + "\n";
      }
      write_text(gen_out, text);
      return 0;
    }

    if (*classify) {
      const auto gf = cls_growth.build();
      for (const auto& g : read_graphs(cls_in)) {
        lowness::LownessVerdict v = cls_iota == 2      ? lowness::classify_low_2(g, cls_budget)
                                    : cls_exhaustive ? lowness::classify_low_1_exhaustive(g, gf)
                                                     : lowness::classify_low_1(g, gf, cls_budget);
        Json j = lowness::verdict_to_json(v);
        j["graph6"] = graph6::encode(g);
        std::cout << j.dump() << "\n";
      }
      return 0;
    }

    if (*enumerate) {
      std::vector<std::size_t> counts(static_cast<std::size_t>(enum_max) + 1, 0);
      quantifier::enumerate_graphs(enum_max, [&](const quantifier::CanonicalForm& c) {
        ++counts[static_cast<std::size_t>(c.n)];
        if (!enum_count) std::cout << graph6::encode(c.to_graph()) << "\n";
        return true;
      });
      if (enum_count)
        for (std::size_t n = 0; n < counts.size(); ++n) std::cout << n << " " << counts[n] << "\n";
      return 0;
    }

    if (*sample) {
      q_cfg.gf = q_growth.build();
      q_cfg.mode = quantifier::prob_mode_from_string(q_mode);
      quantifier::QuantifierClass q(q_cfg);
      std::cout << quantifier::prefix_to_json(quantifier::sample_tbar_prefix(q, q_m)).dump(2) << "\n";
      return 0;
    }

    if (*eval) {
      ev_cfg.gf = ev_growth.build();
      ev_cfg.mode = quantifier::prob_mode_from_string(ev_mode);
      quantifier::QuantifierClass q(ev_cfg);
      auto registry = registry_with(ev_schemes);
      auto f = logic::elaborate(logic::parse(ev_formula), registry, KindSequence::graph());
      const auto free = logic::free_vars(*f);
      if (free.size() > 1) throw InvalidArgument("at most one free variable is supported");
      std::vector<Graph> graphs;
      if (ev_n > 0)
        graphs.push_back(draw_random_graph(ev_n, ev_q, ev_graph_seed).to_graph());
      else
        graphs = read_graphs(ev_in);
      for (const auto& g : graphs) {
        auto m = Structure::from_graph(g);
        logic::Evaluator ev(m, registry, &q);
        Json j = {{"graph6", graph6::encode(g)}};
        try {
          if (free.empty())
            j["value"] = ev.eval(*f, {});
          else
            j["defined_set"] = ev.defined_set(*f);
        } catch (const EvaluationAborted& e) {
          j["aborted"] = e.what();
        }
        std::cout << j.dump() << "\n";
      }
      return 0;
    }

    if (*exp) {
      Json cfg = ex_config.empty() ? Json::object() : read_json(ex_config);
      ex_flags.apply(cfg);
      if (!ex_sentences.empty()) cfg["sentences"] = ex_sentences;
      const auto registry = registry_with(ex_schemes);
      Json report;
      std::string csv;
      bool acceptable = true;
      if (ex_kind == "zero-one") {
        auto r = harness::run_zero_one_experiment(harness::ZeroOneConfig::from_json(cfg), registry);
        report = r.to_json();
        csv = r.to_csv();
        acceptable = r.max_abort_rate() <= 0.05;
      } else if (ex_kind == "ext-axioms") {
        auto r = harness::run_extension_axiom_experiment(harness::ExtensionConfig::from_json(cfg));
        report = r.to_json();
        csv = r.to_csv();
      } else if (ex_kind == "dichotomy") {
        report = harness::run_dichotomy_experiment(harness::DichotomyConfig::from_json(cfg), registry);
        for (const auto& p : report["high_rate"])
          if (p["aborts"].get<double>() > 0.05 * (p["aborts"].get<double>() + p["trials"].get<double>()))
            acceptable = false;
      } else if (ex_kind == "definability") {
        report = harness::run_definability_experiment(harness::DefinabilityConfig::from_json(cfg), registry);
        acceptable = report["abort_rate"].get<double>() <= 0.05;
      } else if (ex_kind == "compare") {
        report = harness::compare_distributions(harness::CompareConfig::from_json(cfg), registry);
        for (const auto& r : report["results"])
          if (r["abort_rate"].get<double>() > 0.05) acceptable = false;
      } else {
        report = harness::run_iterated_experiment(harness::IteratedConfig::from_json(cfg), registry);
      }
      report["acceptable"] = acceptable;
      write_text(ex_out, report.dump(2) + "\n");
      if (!ex_csv.empty()) {
        if (csv.empty()) throw InvalidArgument("--csv is only available for zero-one and ext-axioms");
        write_text(ex_csv, csv);
      }
      if (!acceptable) std::cerr << "abort rate above 5%; frequencies may be biased\n";
      return acceptable ? 0 : 2;
    }
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error at offset " << e.offset() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
