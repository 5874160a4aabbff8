#include <doctest.h>

#include <cmath>

#include "zol/core/draw.hpp"
#include "zol/core/error.hpp"
#include "zol/harness/experiments.hpp"
#include "zol/harness/iterated.hpp"
#include "zol/harness/parallel.hpp"
#include "zol/harness/stats.hpp"
#include "zol/logic/types.hpp"

using namespace zol;
using namespace zol::harness;

namespace {

SamplingConfig small(std::vector<int> sizes, int trials, Seed seed = 7) {
  SamplingConfig c;
  c.sizes = std::move(sizes);
  c.trials = trials;
  c.seed = seed;
  return c;
}

Estimate est(std::uint64_t s, std::uint64_t t) {
  Estimate e;
  e.successes = s;
  e.trials = t;
  return e;
}

}  // namespace

TEST_CASE("wilson interval") {
  auto i = wilson(50, 100);
  CHECK(i.lo == doctest::Approx(0.4038).epsilon(1e-3));
  CHECK(i.hi == doctest::Approx(0.5962).epsilon(1e-3));
  auto z = wilson(0, 200);
  CHECK(z.lo == 0.0);
  CHECK(z.hi > 0);
  CHECK(z.hi < 0.02);
  auto none = wilson(0, 0);
  CHECK(none.lo == 0.0);
  CHECK(none.hi == 1.0);
}

TEST_CASE("trend verdicts") {
  CHECK(classify_trend({est(100, 200), est(150, 200), est(195, 200)}) == Trend::ToOne);
  CHECK(classify_trend({est(100, 200), est(40, 200), est(2, 200)}) == Trend::ToZero);
  CHECK(classify_trend({est(0, 200), est(200, 200), est(0, 200)}) == Trend::Inconclusive);
  CHECK(classify_trend({est(100, 200), est(101, 200)}) == Trend::Inconclusive);
  CHECK(classify_trend({est(150, 200), est(160, 200)}) == Trend::ToOne);
  CHECK(classify_trend({est(99, 200), est(90, 200)}) == Trend::Inconclusive);
  CHECK(to_string(Trend::ToOne) == "->1");
}

TEST_CASE("parallel_map keeps index order") {
  auto seq = parallel_map(100, 1, [](std::size_t i) { return static_cast<int>(i * i); });
  auto par = parallel_map(100, 4, [](std::size_t i) { return static_cast<int>(i * i); });
  CHECK(seq == par);
  CHECK(par[9] == 81);
  CHECK_THROWS_AS(parallel_map(10, 3,
                               [](std::size_t i) -> int {
                                 if (i == 5) throw InvalidArgument("boom");
                                 return 0;
                               }),
                  InvalidArgument);
}

TEST_CASE("sampling config validation") {
  auto c = small({4, 8}, 3);
  CHECK_NOTHROW(c.validate());
  c.sizes = {8, 4};
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c.sizes = {};
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = small({4}, 0);
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = small({4}, 1);
  c.q = 1.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = small({4, 9}, 5);
  c.gf = GrowthFunctions::constant(0.3);
  c.drawing = Drawing::FixedTbar;
  auto back = SamplingConfig::from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());
}

TEST_CASE("zero-one on first-order sentences") {
  ZeroOneConfig cfg;
  cfg.sampling = small({2, 4, 8, 16, 32}, 200);
  cfg.sentences = {"exists x. exists y. R(x,y)"};
  auto r = run_zero_one_experiment(cfg);
  const auto& s = r.series[0];
  // One possible edge at n = 2.
  CHECK(s.estimates[0].frequency() == doctest::Approx(0.5).epsilon(0.2));
  CHECK(s.estimates.back().frequency() == 1.0);
  CHECK(s.trend == Trend::ToOne);
  CHECK(r.max_abort_rate() == 0.0);

  // Agrees exactly with a direct count over the same graph seeds.
  for (std::size_t k = 0; k < cfg.sampling.sizes.size(); ++k) {
    const int n = cfg.sampling.sizes[k];
    std::uint64_t hits = 0;
    for (int t = 0; t < cfg.sampling.trials; ++t)
      hits += draw_random_graph(n, 0.5, cfg.sampling.graph_seed(n, t)).to_graph().edge_count() > 0;
    CHECK(s.estimates[k].successes == hits);
  }
}

TEST_CASE("zero-one: neighbourhood sentence is false at default growth") {
  ZeroOneConfig cfg;
  cfg.sampling = small({8, 12, 17}, 30);
  cfg.sentences = {"exists z. Q[nbhd](z)"};
  auto r = run_zero_one_experiment(cfg);
  for (const auto& e : r.series[0].estimates) {
    CHECK(e.successes == 0);
    CHECK(e.aborts == 0);
  }
  CHECK(r.series[0].envelope.size() == 3);
  CHECK(r.series[0].trend == Trend::ToZero);
}

TEST_CASE("zero-one reports are reproducible and mode-aware") {
  ZeroOneConfig cfg;
  cfg.sampling = small({20, 24}, 20, 99);
  cfg.sampling.gf = GrowthFunctions::constant(0.3);
  cfg.sentences = {"exists z. Q[nbhd](z)", "forall x. exists y. R(x,y)"};
  auto a = run_zero_one_experiment(cfg).to_json().dump();
  auto b = run_zero_one_experiment(cfg).to_json().dump();
  CHECK(a == b);
  cfg.sampling.threads = 3;
  CHECK(run_zero_one_experiment(cfg).to_json().dump() == a);
  cfg.sampling.threads = 1;
  cfg.sampling.drawing = Drawing::FixedTbar;
  auto j = run_zero_one_experiment(cfg).to_json();
  CHECK(j["config"]["drawing"] == "fixed-tbar");
  CHECK(j["config_fingerprint"] != nlohmann::json::parse(a)["config_fingerprint"]);
  CHECK(j.contains("version"));
  CHECK(!j.contains("runtime"));
}

TEST_CASE("zero-one rejects non-sentences") {
  ZeroOneConfig cfg;
  cfg.sampling = small({4}, 2);
  cfg.sentences = {"R(x,y)"};
  CHECK_THROWS_AS(run_zero_one_experiment(cfg), InvalidArgument);
}

TEST_CASE("extension axioms") {
  ExtensionConfig cfg;
  cfg.sampling = small({5, 40}, 200);
  cfg.pairs = {{0, 0}, {1, 1}};
  auto r = run_extension_axiom_experiment(cfg);
  CHECK(r.find("E(0,0)").estimates[0].frequency() == 1.0);
  CHECK(r.find("E(1,1)").estimates[1].frequency() >= 0.95);
  CHECK(r.extra.contains("exact"));

  CHECK(exact_extension_probability(3, 0, 0, 0.5) == 1.0);
  // E(1,1) on two nodes has no room for a witness.
  CHECK(exact_extension_probability(2, 1, 1, 0.5) == 0.0);
  // On three nodes: the path with the shared neighbour z is the only
  // shape, and it fails for the pair (z, ·); the axiom never holds.
  CHECK(exact_extension_probability(3, 1, 1, 0.5) == 0.0);
  CHECK_THROWS_AS(exact_extension_probability(8, 1, 1, 0.5), OracleTooLarge);
}

TEST_CASE("exact extension probability matches brute force at n = 4") {
  // Independent recount over all 64 labelled graphs.
  int good = 0;
  for (int mask = 0; mask < 64; ++mask) {
    Graph g(4);
    int b = 0;
    for (int u = 0; u < 4; ++u)
      for (int v = u + 1; v < 4; ++v)
        if (mask >> b++ & 1) g.add_edge(u, v);
    bool all = true;
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) {
        if (x == y) continue;
        bool some = false;
        for (int z = 0; z < 4; ++z)
          if (z != x && z != y && g.adjacent(x, z) && !g.adjacent(y, z)) some = true;
        all = all && some;
      }
    good += all;
  }
  CHECK(exact_extension_probability(4, 1, 1, 0.5) == doctest::Approx(good / 64.0));
}

TEST_CASE("small subgraph counts") {
  auto k4 = count_small_subgraphs(Graph::complete(4));
  CHECK(k4.k3 == 4);
  CHECK(k4.p3 == 0);
  CHECK(k4.c4 == 0);
  auto c4 = count_small_subgraphs(Graph::cycle(4));
  CHECK(c4.k3 == 0);
  CHECK(c4.p3 == 4);
  CHECK(c4.c4 == 1);
  auto p = count_small_subgraphs(Graph::path(3));
  CHECK(p.p3 == 1);
}

namespace {

UDescriptor degree_unary(double q, std::string phi = "z = z") {
  UDescriptor u;
  u.q = q;
  NewKind nk;
  nk.kind.id = 1;
  nk.kind.arity = 1;
  nk.params = {"z"};
  nk.phi = logic::parse(phi);
  nk.counts.push_back({{"y"}, {}, logic::parse("R(y,z)")});
  nk.scheme = "nbhd";
  u.levels.push_back({{nk}});
  return u;
}

}  // namespace

TEST_CASE("iterated draw: level 0 is the random graph") {
  UDescriptor u;
  u.q = 0.4;
  for (Seed s = 0; s < 20; ++s) {
    CHECK(iterated_draw(u, 12, s) == draw_random_graph(12, 0.4, s));
    CHECK(iterated_draw_b17(u, 12, s, interp::SchemeRegistry::with_builtins()) == draw_random_graph(12, 0.4, s));
  }
}

TEST_CASE("iterated draw: unary kind follows h(degree)") {
  // q close to 1 forces the complete graph on 6 nodes: every degree is 5.
  auto u = degree_unary(0.999999);
  auto table = GrowthFunctions::table({{1, 0.9}, {5, 0.25}, {6, 0.9}});
  CHECK(table.h(5) == 0.25);
  int hits = 0, total = 0;
  for (Seed s = 0; s < 2000; ++s) {
    auto m = iterated_draw(u, 6, s, table);
    REQUIRE(m.to_graph() == Graph::complete(6));
    for (int v = 1; v <= 6; ++v) {
      ++total;
      hits += m.holds_id(1, std::vector<int>{v});
    }
  }
  CHECK(static_cast<double>(hits) / total == doctest::Approx(0.25).epsilon(0.08));
  CHECK(validate_structure(iterated_draw(u, 6, 3, table)).empty());
}

TEST_CASE("iterated draw: tuples failing phi never enter") {
  UDescriptor u;
  u.q = 0.5;
  NewKind nk;
  nk.kind.id = 3;
  nk.kind.arity = 2;
  nk.params = {"a", "b"};
  nk.phi = logic::parse("R(a,b)");
  nk.counts.push_back({{"y"}, {}, logic::parse("R(y,a) and not R(y,b)")});
  u.levels.push_back({{nk}});
  REQUIRE(u_violations(u).empty());
  std::size_t entered = 0;
  for (Seed s = 0; s < 60; ++s) {
    auto m = iterated_draw(u, 9, s, GrowthFunctions::constant(0.8));
    CHECK(validate_structure(m).empty());
    for (const auto& t : m.tuples(1)) CHECK(m.holds(0, t));
    entered += m.tuple_count(1);
  }
  CHECK(entered > 0);
}

TEST_CASE("descriptor checks and JSON") {
  auto u = degree_unary(0.5);
  CHECK(u_violations(u).empty());
  auto back = u_from_json(u_to_json(u));
  CHECK(u_to_json(back) == u_to_json(u));
  auto bad = u;
  bad.levels[0].kinds[0].kind.id = 0;
  CHECK(!u_violations(bad).empty());
  bad = u;
  bad.levels[0].kinds[0].counts[0].formula = logic::parse("R1(y)");
  CHECK(!u_violations(bad).empty());
  bad = u;
  bad.levels[0].kinds[0].phi = logic::parse("exists y. R(y,z)");
  CHECK(!u_violations(bad).empty());
  bad = u;
  bad.levels[0].kinds[0].counts[0].vars = {"y", "w"};
  bad.singleton_y = true;
  CHECK(!u_violations(bad).empty());
  CHECK_THROWS_AS(iterated_draw(bad, 5, 1), InvalidArgument);
  // A second level may use the first level's kind.
  auto two = u;
  NewKind next = u.levels[0].kinds[0];
  next.kind.id = 2;
  next.counts[0].formula = logic::parse("R1(y) and R(y,z)");
  two.levels.push_back({{next}});
  CHECK(u_violations(two).empty());
  auto m = iterated_draw(two, 8, 5, GrowthFunctions::constant(0.5));
  CHECK(m.signature().size() == 3);
}

TEST_CASE("b17 variant: probability 1/g(neighbourhood size)") {
  // Complete host on 9 nodes: every neighbourhood has 8 nodes.
  auto u = degree_unary(0.999999);
  auto gf = GrowthFunctions::constant(0.5);
  const double p = 1.0 / gf.g(8);
  int hits = 0, total = 0;
  B17Stats stats;
  for (Seed s = 0; s < 1000; ++s) {
    auto m = iterated_draw_b17(u, 9, s, interp::SchemeRegistry::with_builtins(), gf, &stats);
    CHECK(stats.clamped == 0);
    for (int v = 1; v <= 9; ++v) {
      ++total;
      hits += m.holds_id(1, std::vector<int>{v});
    }
  }
  CHECK(static_cast<double>(hits) / total == doctest::Approx(p).epsilon(0.08));

  // Empty graph: every neighbourhood is empty and is clamped to one node.
  u = degree_unary(0.000001);
  auto m = iterated_draw_b17(u, 6, 1, interp::SchemeRegistry::with_builtins(), gf, &stats);
  CHECK(stats.orbits == 6);
  CHECK(stats.clamped == 6);
  // 1/g(1) = 1, so every node is in.
  CHECK(m.tuple_count(1) == 6);
}

TEST_CASE("compare: no levels means identical samplers") {
  CompareConfig cfg;
  cfg.sampling = small({10, 14}, 30);
  cfg.sentences = {"exists x. exists y. exists z. (R(x,y) and R(y,z) and R(x,z))"};
  auto j = compare_distributions(cfg);
  CHECK(j["zero_divergence"] == true);
  for (const auto& r : j["results"]) {
    CHECK(r["max_abs_difference"] == 0.0);
    CHECK(r["identical_samples"] == true);
  }
}

TEST_CASE("compare: one Q-level") {
  CompareConfig cfg;
  cfg.sampling = small({16}, 20);
  cfg.sampling.gf = GrowthFunctions::constant(0.3);
  cfg.levels = {{1, "Q[nbhd](x)"}};
  cfg.sentences = {"exists x. R1(x)", "forall x. exists y. R(x,y)"};
  auto j = compare_distributions(cfg);
  const auto& r = j["results"][0];
  CHECK(r["identical_samples"] == false);
  CHECK(r["direct_probability"].get<double>() == doctest::Approx(0.5 / std::pow(16, 0.3)));
  bool saw_density = false;
  for (const auto& s : r["statistics"])
    if (s["statistic"] == "density_R1") {
      saw_density = true;
      CHECK(s["sampler_i"]["mean"].get<double>() > 0);
    }
  CHECK(saw_density);
  // The graph-only sentence is evaluated on the same graphs.
  CHECK(r["sentences"][1]["sampler_i"] == r["sentences"][1]["sampler_ii"]);
}

TEST_CASE("dichotomy directions") {
  DichotomyConfig cfg;
  cfg.sampling = small({20, 24}, 10);
  cfg.sampling.gf = GrowthFunctions::constant(0.3);
  cfg.weak_mc.sizes = {8};
  cfg.weak_mc.trials = 3;
  cfg.scheme = "nbhd_const";
  auto j = run_dichotomy_experiment(cfg);
  // A clique splits into a homogeneous pair, so the graphs are high.
  for (const auto& p : j["high_rate"]) CHECK(p["successes"] == p["trials"]);
  CHECK(j["observed_direction"] == "high");
  cfg.scheme = "nbhd";
  j = run_dichotomy_experiment(cfg);
  CHECK(j["high_rate"].size() == 2);
  CHECK(j.contains("one_weak"));
}

TEST_CASE("definability experiment") {
  DefinabilityConfig cfg;
  cfg.sampling = small({12}, 8);
  auto j = run_definability_experiment(cfg);
  // Default growth: every neighbourhood is low, the set is empty.
  CHECK(j["degenerate_regime"] == true);
  CHECK(j["results"][0]["non_definable"]["successes"] == 0);
  cfg.formula = "exists y. R(x,y)";
  cfg.sampling.sizes = {20};
  j = run_definability_experiment(cfg);
  CHECK(j["results"][0]["non_definable"]["successes"] == 0);
  cfg.formula = "exists y. R(x,y) and R(y,x)";
  CHECK_NOTHROW(run_definability_experiment(cfg));
  cfg.formula = "R(x,y)";
  CHECK_THROWS_AS(run_definability_experiment(cfg), InvalidArgument);
}

TEST_CASE("iterated experiment report") {
  IteratedConfig cfg;
  cfg.sampling = small({8, 10}, 10);
  cfg.sampling.gf = GrowthFunctions::constant(0.5);
  cfg.u = degree_unary(0.5);
  auto a = run_iterated_experiment(cfg);
  CHECK(a["results"].size() == 2);
  CHECK(a["results"][0]["densities"].size() == 2);
  CHECK(a.dump() == run_iterated_experiment(cfg).dump());
  cfg.b17 = true;
  auto b = run_iterated_experiment(cfg);
  CHECK(b.contains("b17"));
  auto back = IteratedConfig::from_json(cfg.to_json());
  CHECK(back.to_json() == cfg.to_json());
}
