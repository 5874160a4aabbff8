#include <doctest.h>

#include <cmath>
#include <sstream>

#include "zol/core/draw.hpp"
#include "zol/core/error.hpp"
#include "zol/core/graph6.hpp"
#include "zol/core/growth.hpp"
#include "zol/core/structure_io.hpp"

using namespace zol;

TEST_CASE("growth: paper default values") {
  auto gf = GrowthFunctions::paper_default();
  auto [h16, g16] = gf.eval(16);
  CHECK(h16 == 1.0);
  CHECK(g16 == 16.0);
  auto [h256, g256] = gf.eval(256);
  CHECK(h256 == doctest::Approx(1.0 / 3.0));
  CHECK(g256 == doctest::Approx(6.3496).epsilon(1e-4));
  auto [h32, g32] = gf.eval(std::uint64_t{1} << 32);
  CHECK(h32 == doctest::Approx(0.2));
  CHECK(g32 == doctest::Approx(84.4485).epsilon(1e-4));
}

TEST_CASE("growth: default monotonicity sweep") {
  // h never increases. g is non-decreasing on both sides of the switch at
  // 16 but drops from 16 to about 4.03 between n=16 and n=17.
  auto gf = GrowthFunctions::paper_default();
  std::vector<std::uint64_t> g_drops;
  double ph = gf.h(1), pg = gf.g(1);
  for (std::uint64_t n = 2; n <= 1000000; ++n) {
    double h = gf.h(n), g = gf.g(n);
    REQUIRE(h <= ph);
    if (g < pg) g_drops.push_back(n - 1);
    ph = h;
    pg = g;
  }
  REQUIRE(g_drops.size() == 1);
  CHECK(g_drops[0] == 16);
  CHECK(gf.g(17) == doctest::Approx(4.034).epsilon(1e-3));
}

TEST_CASE("growth: overrides") {
  auto c = GrowthFunctions::constant(0.3);
  CHECK(c.h(12) == 0.3);
  CHECK(c.g(10) == doctest::Approx(std::pow(10.0, 0.3)));
  auto t = GrowthFunctions::table({{10, 0.5}, {100, 0.25}});
  CHECK(t.h(9) == 1.0);
  CHECK(t.h(10) == 0.5);
  CHECK(t.h(99) == 0.5);
  CHECK(t.h(1000) == 0.25);
  CHECK_THROWS_AS(GrowthFunctions::constant(0.0), InvalidArgument);
  CHECK_THROWS_AS(GrowthFunctions::table({{3, 1.5}}), InvalidArgument);
  auto round = io::growth_from_json(io::growth_to_json(t));
  CHECK(round.h(50) == 0.5);
}

TEST_CASE("growth: integer threshold reading") {
  CHECK(required_size(6.3496) == 7);
  CHECK(required_size(2.0) == 2);
  CHECK(required_size(1.9999999999) == 2);
  CHECK(required_size(std::pow(8.0, 1.0 / 3.0)) == 2);
  CHECK(required_size(0.0) == 1);
  CHECK(required_size(1.995) == 2);
}

TEST_CASE("kinds: groups and orbits") {
  auto g = close_group(std::vector<Perm>{{1, 2, 0}}, 3);
  CHECK(g.size() == 3);
  auto s3 = close_group(std::vector<Perm>{{1, 0, 2}, {1, 2, 0}}, 3);
  CHECK(s3.size() == 6);
  CHECK(is_orbit_minimum(Tuple{1, 2, 3}, s3));
  CHECK_FALSE(is_orbit_minimum(Tuple{2, 1, 3}, s3));
  CHECK(orbit_minimum(Tuple{3, 1, 2}, g) == Tuple{1, 2, 3});
  CHECK(orbit_minimum(Tuple{3, 2, 1}, g) == Tuple{1, 3, 2});
  CHECK_THROWS_AS(close_group(std::vector<Perm>{{0, 0}}, 2), InvalidArgument);
  CHECK_THROWS_AS(KindSequence({Kind{0, 1, {}, {}}}), InvalidArgument);

  auto gr = KindSequence::graph();
  auto bigger = gr.with(Kind{1, 1, {}, {}});
  CHECK(gr.extended_by(bigger));
  CHECK_FALSE(bigger.extended_by(gr));
  auto other = KindSequence({KindSequence::graph_kind(), Kind{1, 2, {}, {}}});
  auto other2 = KindSequence({KindSequence::graph_kind(), Kind{1, 2, {{1, 0}}, {}}});
  CHECK_FALSE(other.extended_by(other2));
}

TEST_CASE("validate_structure examples") {
  Structure m(KindSequence::graph(), 3);
  m.set(0, Tuple{1, 2}, true);
  m.set(0, Tuple{2, 1}, true);
  CHECK(validate_structure(m).empty());

  Structure half(KindSequence::graph(), 3);
  half.set(0, Tuple{1, 2}, true);
  CHECK(validate_structure(half).size() == 1);

  Structure loop(KindSequence({Kind{1, 2, {}, {}}}), 3);
  loop.set(0, Tuple{1, 1}, true);
  CHECK(validate_structure(loop).size() == 1);
}

namespace {
KindSequence mixed_signature() {
  return KindSequence({KindSequence::graph_kind(), Kind{1, 1, {}, {}}, Kind{2, 3, {{1, 2, 0}}, {}},
                       Kind{3, 3, {{1, 0, 2}, {1, 2, 0}}, {}}, Kind{4, 0, {}, {}}, Kind{5, 2, {}, {}}});
}
}  // namespace

TEST_CASE("draw_structure: extreme probabilities") {
  auto sig = mixed_signature();
  std::map<int, double> ones, tiny;
  for (const auto& k : sig.kinds()) {
    ones[k.id] = 1.0;
    tiny[k.id] = 1e-12;
  }
  auto full = draw_structure(sig, ProbabilityProfile::p0(ones), 5, 7);
  CHECK(validate_structure(full).empty());
  for (std::size_t i = 0; i < sig.size(); ++i) {
    std::size_t expect = 1;
    for (int a = 0; a < sig[i].arity; ++a) expect *= static_cast<std::size_t>(5 - a);
    CHECK(full.tuple_count(i) == expect);
  }
  auto empty = draw_structure(sig, ProbabilityProfile::p0(tiny), 5, 7);
  for (std::size_t i = 0; i < sig.size(); ++i) CHECK(empty.tuple_count(i) == 0);
  CHECK(empty == draw_structure(sig, ProbabilityProfile::p0(tiny), 5, 7));
}

TEST_CASE("draw_structure: empty universe") {
  CHECK_THROWS_AS(draw_random_graph(0, 0.5, 1), EmptyUniverse);
  auto only0 = KindSequence({Kind{4, 0, {}, {}}});
  auto m = draw_structure(only0, ProbabilityProfile::p0({{4, 0.5}}), 0, 3);
  CHECK(m.size() == 0);
}

TEST_CASE("draw_structure: Bernoulli mean per orbit on s_gr, n=4") {
  // Oracle: the mean of an indicator with success probability 1/2.
  const int seeds = 10000;
  std::vector<int> hits(6, 0);
  for (int s = 0; s < seeds; ++s) {
    auto g = draw_random_graph(4, 0.5, static_cast<Seed>(s));
    int e = 0;
    for (int u = 1; u <= 4; ++u)
      for (int v = u + 1; v <= 4; ++v, ++e) hits[static_cast<std::size_t>(e)] += g.holds(0, Tuple{u, v});
  }
  for (int h : hits) CHECK(static_cast<double>(h) / seeds == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("draw_random_graph examples") {
  auto one = draw_random_graph(1, 0.5, 11);
  CHECK(one.size() == 1);
  CHECK(one.to_graph().edge_count() == 0);
  auto tri = draw_random_graph(3, 0.999999, 11);
  CHECK(tri.to_graph() == Graph::complete(3));
  double total = 0;
  for (int s = 0; s < 1000; ++s) total += static_cast<double>(draw_random_graph(10, 0.3, static_cast<Seed>(s)).to_graph().edge_count());
  CHECK(std::fabs(total / 1000 - 13.5) <= 1.0);
}

TEST_CASE("draw_structure invariants over a randomized corpus") {
  auto sig = mixed_signature();
  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    std::map<int, double> q;
    for (const auto& k : sig.kinds()) q[k.id] = 0.05 + 0.9 * rng.uniform();
    int n = 1 + static_cast<int>(rng.below(7));
    if (n < 3) n = 3;
    Seed seed = rng.next();
    auto profile = ProbabilityProfile::p0(q);
    auto m = draw_structure(sig, profile, n, seed);
    REQUIRE(validate_structure(m).empty());
    // orbit coherence
    for (std::size_t i = 0; i < sig.size(); ++i)
      for_each_injective_tuple(n, sig[i].arity, [&](const Tuple& t) {
        for (const auto& pi : sig[i].group) REQUIRE(m.holds(i, t) == m.holds(i, permute(t, pi)));
      });
    CHECK(m == draw_structure(sig, profile, n, seed));
    CHECK(m == draw_structure(sig, profile.as_p2(), n, seed));
    CHECK(m == draw_structure(sig, profile.as_p1(), n, seed));
  }
}

TEST_CASE("profile classes") {
  auto gf = GrowthFunctions::constant(0.5);
  auto p2 = ProbabilityProfile::p2({{0, 0.5}, {1, 0.4}}, {1}, gf);
  CHECK(p2.probability(0, 16) == 0.5);
  CHECK(p2.probability(1, 16) == doctest::Approx(0.1));
  CHECK(p2.strict());
  CHECK_FALSE(ProbabilityProfile::p0({{0, 1.0}}).strict());
  CHECK_THROWS_AS(ProbabilityProfile::p0({{0, 1.5}}), InvalidArgument);
  CHECK_FALSE(ProbabilityProfile::p0({{0, 0.5}}).covers(mixed_signature()));
}

TEST_CASE("graph6 encoding") {
  Graph pet(10);
  const int edges[][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7},
                          {3, 8}, {4, 9}, {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}};
  for (auto& e : edges) pet.add_edge(e[0], e[1]);
  CHECK(graph6::encode(pet) == "IheA@GUAo");
  CHECK(graph6::encode(Graph::cycle(5)) == "Dhc");
  CHECK(graph6::encode(Graph(0)) == "?");
  CHECK(graph6::encode(Graph::path(70)).substr(0, 12) == "~?@EhCGGC@?G");
  CHECK(graph6::decode(">>graph6<<IheA@GUAo\n") == pet);
  CHECK_THROWS_AS(graph6::decode("Dh"), InvalidArgument);

  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    int n = static_cast<int>(rng.below(80));
    Graph g = n ? draw_random_graph(n, 0.4, rng.next()).to_graph() : Graph(0);
    REQUIRE(graph6::decode(graph6::encode(g)) == g);
  }
  std::istringstream in("Dhc\n\nIheA@GUAo\n");
  CHECK(graph6::read_all(in).size() == 2);
}

TEST_CASE("structure json round trip") {
  auto m = draw_structure(mixed_signature(), ProbabilityProfile::p0({{0, .5}, {1, .5}, {2, .5}, {3, .5}, {4, .5}, {5, .5}}), 4, 3);
  auto j = io::structure_to_json(m);
  auto back = io::structure_from_json(j);
  CHECK(back == m);
  CHECK(Structure::from_graph(m.to_graph()).to_graph() == m.to_graph());
}
