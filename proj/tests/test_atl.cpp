#include <doctest.h>

#include <random>

#include "atlir/atl.hpp"
#include "atlir/cgs.hpp"
#include "generators.hpp"

using namespace atlir;

namespace {

FormulaPtr random_formula(std::mt19937& rng, int depth) {
  return gen::random_formula(rng, depth, {"p", "q", "ok", "p1", "x_2", "s'"}, 4);
}

}  // namespace

TEST_CASE("parse examples") {
  auto f = parse_formula("<<1,2>> G ok");
  CHECK(equal(*f, *make_globally({1, 2}, make_atom("ok"))));
  CHECK(equal(*parse_formula("!(p & q)"), *make_not(make_and(make_atom("p"), make_atom("q")))));
  CHECK(equal(*parse_formula("<<1>> p U (q & r)"),
              *make_until({1}, make_atom("p"), make_and(make_atom("q"), make_atom("r")))));
  CHECK(equal(*parse_formula("<<2,1,2>> X p"), *make_next({1, 2}, make_atom("p"))));
  CHECK(equal(*parse_formula("p & q & r"),
              *make_and(make_atom("p"), make_and(make_atom("q"), make_atom("r")))));
  CHECK(equal(*parse_formula("!p & q"), *make_and(make_not(make_atom("p")), make_atom("q"))));
}

TEST_CASE("render examples") {
  CHECK(render_formula(*make_globally({1, 2}, make_atom("ok"))) == "<<1,2>> G ok");
  CHECK(render_formula(*make_atom("ok")) == "ok");
  CHECK(render_formula(*make_not(make_not(make_atom("p")))) == "!!p");
  CHECK(render_formula(*parse_formula("!(p & q)")) == "!(p & q)");
  CHECK(render_formula(*parse_formula("<<1>> p U (q & r)")) == "<<1>> p U (q & r)");
}

TEST_CASE("syntax errors") {
  CHECK_THROWS_AS(parse_formula("<<>> G p"), EmptyCoalition);
  CHECK_THROWS_AS(parse_formula(""), SyntaxError);
  CHECK_THROWS_AS(parse_formula("p &"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("(p"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("<<0>> G p"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("<<1>> p"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("G"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("p q"), SyntaxError);
  try {
    parse_formula("p & & q");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("round trip on random formulas") {
  std::mt19937 rng(2024);
  for (int k = 0; k < 1000; ++k) {
    auto f = random_formula(rng, 5);
    auto text = render_formula(*f);
    INFO(text);
    CHECK(equal(*parse_formula(text), *f));
  }
}

TEST_CASE("binding against a structure") {
  CgsBuilder b(2);
  b.add_state("s");
  b.add_prop("ok");
  auto g = b.build();
  CHECK_NOTHROW(bind_formula(*parse_formula("<<1,2>> G ok"), g));
  CHECK_THROWS_AS(bind_formula(*parse_formula("<<1>> G nope"), g), UnknownProp);
  CHECK_THROWS_AS(bind_formula(*parse_formula("<<3>> G ok"), g), UnknownAgent);
}
