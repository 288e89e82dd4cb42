#include <doctest.h>

#include <random>

#include "atlir/cgs.hpp"
#include "oracles.hpp"

using namespace atlir;

namespace {

bool has(const std::vector<Violation>& vs, ViolationKind k) {
  for (const auto& v : vs)
    if (v.kind == k) return true;
  return false;
}

// Two agents, two states, everything available and looping.
CgsBuilder two_state() {
  CgsBuilder b(2);
  b.add_state("s");
  b.add_state("t");
  b.add_action("a");
  b.add_action("b");
  b.add_prop("p");
  b.label("s", "p");
  for (int i = 1; i <= 2; ++i)
    for (const char* s : {"s", "t"}) b.avail(i, s, {"a", "b"});
  for (const char* s : {"s", "t"})
    for (const char* x : {"a", "b"})
      for (const char* y : {"a", "b"}) b.transition(s, {x, y}, "t");
  return b;
}

}  // namespace

TEST_CASE("a well-formed structure has no violations") {
  auto g = two_state().build();
  CHECK(validate_cgs(g).empty());
  CHECK(g.state_count() == 2);
  CHECK(available_tuples(g, g.state("s")).size() == 4);
}

TEST_CASE("missing transition on an available tuple") {
  CgsBuilder b(1);
  b.add_state("s");
  b.add_action("a");
  b.add_prop("p");
  b.avail(1, "s", {"a"});
  auto vs = validate_cgs(b.build());
  CHECK(has(vs, ViolationKind::PartialOnAvailableTuple));
}

TEST_CASE("availability must be uniform on observation blocks") {
  auto b = two_state();
  b.observation(1, std::vector<std::vector<std::string>>{{"s", "t"}});
  b.avail(1, "t", {"a"});
  auto vs = validate_cgs(b.build());
  CHECK(has(vs, ViolationKind::AvailNotUniform));
  CHECK(has(vs, ViolationKind::DefinedOnUnavailableTuple));
}

TEST_CASE("other violations") {
  CHECK(has(validate_cgs(CgsBuilder(0).build()), ViolationKind::NoAgents));
  CHECK(has(validate_cgs(CgsBuilder(1).build()), ViolationKind::NoStates));

  auto b = two_state();
  b.avail(2, "s", {});
  CHECK(has(validate_cgs(b.build()), ViolationKind::EmptyAvail));

  auto c = two_state();
  c.observation(1, std::vector<std::vector<std::string>>{{"s"}});
  CHECK(has(validate_cgs(c.build()), ViolationKind::ObsNotPartition));
}

TEST_CASE("successor respects availability") {
  auto b = two_state();
  b.avail(1, "s", {"a"});
  auto g = b.build();
  const auto s = g.state("s");
  CHECK(successor(g, s, JointAction{g.action("a"), g.action("b")}) == g.state("t"));
  CHECK_FALSE(successor(g, s, JointAction{g.action("b"), g.action("b")}).has_value());
  CHECK(g.raw_successor(s, JointAction{g.action("b"), g.action("b")}) == g.state("t"));
  CHECK_THROWS_AS(g.state("nope"), UnknownState);
  CHECK_THROWS_AS(g.action("nope"), UnknownAction);
  CHECK_THROWS_AS(g.agent(3), UnknownAgent);
  CHECK_THROWS_AS(successor(g, "nope", {"a", "a"}), UnknownState);
}

TEST_CASE("observation equivalence is an equivalence and a congruence") {
  std::mt19937 rng(7);
  for (int round = 0; round < 50; ++round) {
    auto g = oracle::random_cgs(rng, {});
    auto states = g.states();
    for (AgentId i : g.agents())
      for (StateId x : states) {
        CHECK(obs_equiv_states(g, i, x, x));
        for (StateId y : states) {
          CHECK(obs_equiv_states(g, i, x, y) == obs_equiv_states(g, i, y, x));
          for (StateId z : states)
            if (obs_equiv_states(g, i, x, y) && obs_equiv_states(g, i, y, z))
              CHECK(obs_equiv_states(g, i, x, z));
          if (obs_equiv_states(g, i, x, y)) {
            History a{x}, b{y};
            CHECK(obs_equiv_histories(g, i, a, b));
            for (StateId u : states)
              for (StateId v : states)
                if (obs_equiv_states(g, i, u, v)) {
                  History a2 = a, b2 = b;
                  a2.push_back(u);
                  b2.push_back(v);
                  CHECK(obs_equiv_histories(g, i, a2, b2));
                }
          }
        }
      }
  }
}

TEST_CASE("histories of different length are not equivalent") {
  auto g = two_state().build();
  History a{g.state("s")}, b{g.state("s"), g.state("s")};
  CHECK_FALSE(obs_equiv_histories(g, AgentId(1), a, b));
  CHECK(obs_equiv_histories(g, AgentId(1), a, a));
}

TEST_CASE("validated structures never leave available tuples undefined") {
  std::mt19937 rng(11);
  for (int round = 0; round < 100; ++round) {
    auto g = oracle::random_cgs(rng, {});
    REQUIRE(validate_cgs(g).empty());
    for (StateId s : g.states())
      for (const auto& a : available_tuples(g, s)) CHECK(successor(g, s, a).has_value());
  }
}
