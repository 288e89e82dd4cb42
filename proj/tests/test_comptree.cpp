#include <doctest.h>

#include <algorithm>
#include <random>

#include "atlir/comptree.hpp"
#include "atlir/reduction.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace atlir;

namespace {

JointAction joint(const Cgs& g, std::initializer_list<const char*> names) {
  JointAction a;
  for (const char* n : names) a.push_back(g.action(n));
  return a;
}

AgentStrategy first_action(const Cgs& g, AgentId i) {
  return AgentStrategy::from_procedure(i, [&g, i](std::span<const StateId> h) { return g.avail(i, h.back())[0]; });
}

// Extends every open (node, tuple) pair in a random order up to depth.
ComputationTree saturate_randomly(const Cgs& g, StateId s, const TeamStrategy& team, int depth,
                                  std::mt19937& rng) {
  ComputationTree t(s);
  for (;;) {
    std::vector<std::pair<NodeId, JointAction>> open;
    for (std::size_t k = 0; k < t.size(); ++k) {
      NodeId v = static_cast<NodeId>(k);
      if (t.depth(v) >= depth) continue;
      for (const auto& a : compatible_tuples(g, team, t.path_labels(v)))
        if (!t.has_edge(v, a) && successor(g, t.label(v), a)) open.emplace_back(v, a);
    }
    if (open.empty()) return t;
    auto& [v, a] = open[rng() % open.size()];
    t = t.extend(g, team, v, a);
  }
}

}  // namespace

TEST_CASE("extension steps") {
  auto r = build_cgs(test::machine("M5"));
  auto sigma = simulation_strategy(r);
  const auto& g = r.cgs;
  ComputationTree t(r.init);
  auto t2 = t.extend(g, sigma, t.root(), joint(g, {"idle", "idle", "br2"}));
  CHECK(t.size() == 1);  // persistent
  REQUIRE(t2.size() == 2);
  CHECK(t2.label(1) == r.gen);
  CHECK(t2.edge_label(1) == joint(g, {"idle", "idle", "br2"}));
  CHECK_THROWS_AS(t2.extend(g, sigma, 0, joint(g, {"idle", "idle", "br2"})), DuplicateAction);
  CHECK_THROWS_AS(t2.extend(g, sigma, 0, joint(g, {"(q0)", "idle", "br1"})), IncompatibleAction);

  // The head cell s_{q0,B} writes a and moves right.
  auto t3 = t2.extend(g, sigma, 1, joint(g, {"idle", "idle", "br1"}));
  auto t4 = t3.extend(g, sigma, 2, joint(g, {"idle", "(q0)", "idle"}));
  CHECK(g.state_name(t4.label(3)) == "s_{q0,B}");
  auto t5 = t4.extend(g, sigma, 3, joint(g, {"(q0,q1,R)", "idle", "idle"}));
  CHECK(g.state_name(t5.label(4)) == "s_{a}");
  CHECK(t5.path(4) == std::vector<NodeId>{0, 1, 2, 3, 4});
}

TEST_CASE("undefined successor") {
  CgsBuilder b(1);
  b.add_state("s");
  b.add_action("a");
  b.add_prop("p");
  b.avail(1, "s", {"a"});
  auto g = b.build();
  TeamStrategy none;
  ComputationTree t(g.state("s"));
  CHECK_THROWS_AS(t.extend(g, none, 0, JointAction{g.action("a")}), UndefinedSuccessor);
}

TEST_CASE("levels and completeness") {
  auto r = build_cgs(test::machine("M5"));
  auto t = saturate(r.cgs, r.init, simulation_strategy(r), 7);
  auto anchors = r.anchors();
  CHECK(level(t, 0, anchors) == std::vector<NodeId>{0});
  CHECK(level(t, 8, anchors).empty());
  CHECK(is_complete_level(t, 1));
  CHECK(is_complete_level(t, 3));
  CHECK_FALSE(is_complete_level(t, 8));
  CHECK(saturate(r.cgs, r.init, simulation_strategy(r), 0).size() == 1);

  CgsBuilder b(1);
  b.add_state("s");
  b.add_action("a");
  b.add_prop("p");
  b.avail(1, "s", {"a"});
  b.transition("s", {"a"}, "s");
  auto g = b.build();
  auto path = saturate(g, g.state("s"), TeamStrategy{}, 3);
  CHECK_FALSE(is_complete_level(path, 1));
}

TEST_CASE("ordering is rejected when not total") {
  // Free agents 1 and 2 branch into unordered err-free siblings.
  auto r = build_cgs(test::machine("M5"));
  TeamStrategy none;
  auto t = saturate(r.cgs, r.init, none, 2);
  auto anchors = r.anchors();
  CHECK_THROWS_AS(level(t, 2, anchors), OrderingNotTotal);
}

TEST_CASE("saturation is independent of the extension order") {
  std::mt19937 rng(17);
  for (int round = 0; round < 30; ++round) {
    auto g = oracle::random_cgs(rng, {});
    TeamStrategy team({first_action(g, AgentId(1))});
    auto reference = saturate(g, StateId(0), team, 3).canonical();
    for (int k = 0; k < 3; ++k) CHECK(saturate_randomly(g, StateId(0), team, 3, rng).canonical() == reference);
  }
  auto r = build_cgs(test::machine("M5"));
  auto sigma = simulation_strategy(r);
  CHECK(saturate_randomly(r.cgs, r.init, sigma, 5, rng).canonical() ==
        saturate(r.cgs, r.init, sigma, 5).canonical());
}

TEST_CASE("partial trees embed into the saturated tree") {
  std::mt19937 rng(23);
  auto r = build_cgs(test::machine("M5"));
  auto sigma = simulation_strategy(r);
  auto full = saturate(r.cgs, r.init, sigma, 5).canonical();
  ComputationTree t(r.init);
  for (int k = 0; k < 12; ++k) {
    std::vector<std::pair<NodeId, JointAction>> open;
    for (std::size_t v = 0; v < t.size(); ++v)
      if (t.depth(static_cast<NodeId>(v)) < 5)
        for (const auto& a : compatible_tuples(r.cgs, sigma, t.path_labels(static_cast<NodeId>(v))))
          if (!t.has_edge(static_cast<NodeId>(v), a)) open.emplace_back(static_cast<NodeId>(v), a);
    if (open.empty()) break;
    auto& [v, a] = open[rng() % open.size()];
    t = t.extend(r.cgs, sigma, v, a);
  }
  for (const auto& node : t.canonical()) CHECK(std::binary_search(full.begin(), full.end(), node));
}
