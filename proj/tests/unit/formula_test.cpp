#include <doctest.h>

#include <random>

#include "zol/core/error.hpp"
#include "zol/logic/formula.hpp"

using namespace zol;
using namespace zol::logic;

TEST_CASE("formula: parser examples") {
  auto f = parse("exists x. R(x,y)");
  CHECK(f->op == Op::Exists);
  CHECK(free_vars(*f) == std::vector<std::string>{"y"});

  auto q = parse("Q[nbhd](z)");
  CHECK(q->op == Op::QApply);
  CHECK(q->scheme == "nbhd");
  CHECK(q->vars == std::vector<std::string>{"z"});

  try {
    parse("R(x");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 3);
  }
}

TEST_CASE("formula: sugar and precedence") {
  auto f = parse("forall x, y. R(x,y) | x = y & !R5(x,y,z)");
  CHECK(quantifier_rank(*f) == 2);
  CHECK(free_vars(*f) == std::vector<std::string>{"z"});
  // "and" binds tighter than "or".
  auto g = parse("a = b or b = c and c = d");
  REQUIRE(g->op == Op::Or);
  CHECK(g->kids[1]->op == Op::And);
  CHECK(equal(*parse("x != y"), *negate(eq("x", "y"))));
  CHECK(is_quantifier_free(*parse("R(x,y) and not x = y")));
  CHECK_FALSE(is_quantifier_free(*parse("Q[s](z)")));
  CHECK(has_qapply(*parse("exists z. Q[s](z)")));
  CHECK_THROWS_AS(parse("exists . R(x,y)"), SyntaxError);
  CHECK_THROWS_AS(parse("R(x,y) R(x,y)"), SyntaxError);
}

TEST_CASE("formula: rename respects binders") {
  auto f = parse("R(x,y) and exists x. R(x,y)");
  auto g = rename(f, {{"x", "u"}, {"y", "v"}});
  CHECK(equal(*g, *parse("R(u,v) and exists x. R(x,v)")));
  auto swap = rename(parse("R(x,y)"), {{"x", "y"}, {"y", "x"}});
  CHECK(equal(*swap, *parse("R(y,x)")));
}

namespace {

FormulaPtr random_formula(std::mt19937_64& rng, int depth) {
  static const std::vector<std::string> vars{"x", "y", "z", "x'", "w1"};
  auto var = [&] { return vars[rng() % vars.size()]; };
  int pick = depth <= 0 ? static_cast<int>(rng() % 5) : static_cast<int>(rng() % 11);
  switch (pick) {
    case 0:
      return make_true();
    case 1:
      return make_false();
    case 2:
      return atom(0, {var(), var()});
    case 3:
      return atom(3, {var(), var(), var()});
    case 4:
      return eq(var(), var());
    case 5:
      return negate(random_formula(rng, depth - 1));
    case 6:
      return conj(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 7:
      return disj(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 8:
      return exists(var(), random_formula(rng, depth - 1));
    case 9:
      return forall(var(), random_formula(rng, depth - 1));
    default:
      return qapply("nbhd", {var()});
  }
}

}  // namespace

TEST_CASE("formula: print then parse is the identity on a random corpus") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    auto f = random_formula(rng, 1 + i % 5);
    auto text = to_string(*f);
    auto g = parse(text);
    INFO(text);
    REQUIRE(equal(*f, *g));
    CHECK(to_string(*g) == text);
  }
}
