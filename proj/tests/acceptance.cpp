// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "atlir/atl.hpp"
#include "atlir/io.hpp"
#include "atlir/mc.hpp"
#include "atlir/reduction.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace atlir;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure; later ones are dropped.
void expect(Outcome& o, bool cond, const std::string& what) {
  if (!cond && o.pass) {
    o.pass = false;
    o.detail = what;
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string normalized(const ReductionCgs& r, const ComputationTree& t, int n) {
  auto c = as_configuration(r, decode_level(r, t, n));
  return c ? c->str() : "<not a configuration: " + decode_level(r, t, n).word() + ">";
}

Outcome decode_m5() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  auto r = build_cgs(test::machine("M5"));
  auto t = saturate(r.cgs, r.init, simulation_strategy(r), 7);
  const std::vector<std::pair<int, std::string>> want{{3, "q0B"}, {5, "aq1B"}, {7, "q2ab"}};
  for (const auto& [n, w] : want) {
    auto got = normalized(r, t, n);
    expect(o, got == w, "level " + std::to_string(n) + " decodes to " + got + ", expected " + w);
  }
  double dt = seconds_since(t0);
  expect(o, dt < 1.0, "took " + std::to_string(dt) + " s");
  if (o.pass) o.detail = "levels 3/5/7 = q0B, aq1B, q2ab";
  return o;
}

Outcome decode_follows_machine() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  int compared = 0;
  for (const char* name : {"M5", "M5_ext", "right_mover", "left_bouncer", "zigzag"}) {
    auto m = test::machine(name);
    auto r = build_cgs(m);
    auto t = saturate(r.cgs, r.init, simulation_strategy(r), 11);
    for (int n = 3; n + 2 <= 11; n += 2) {
      if (!is_complete_level(t, n) || !is_complete_level(t, n + 2)) continue;
      auto before = as_configuration(r, decode_level(r, t, n));
      auto after = as_configuration(r, decode_level(r, t, n + 2));
      if (!before || !after) continue;  // past the halting step the level carries s_err
      auto next = step(m, *before);
      const auto* c = std::get_if<Configuration>(&next);
      if (!c) continue;
      ++compared;
      expect(o, *c == *after,
             std::string(name) + " level " + std::to_string(n + 2) + ": " + after->str() + " != " + c->str());
    }
  }
  double dt = seconds_since(t0);
  expect(o, compared > 0, "no level pairs compared");
  expect(o, dt < 10.0, "took " + std::to_string(dt) + " s");
  if (o.pass) o.detail = std::to_string(compared) + " level pairs";
  return o;
}

Outcome claims_on_m5_ext() {
  Outcome o;
  auto report = verify_claims(test::machine("M5_ext"), 9);
  int rows = 0;
  for (const auto& row : report.rows) {
    if (row.claim != "2" && row.claim.rfind("3", 0) != 0) continue;
    ++rows;
    expect(o, row.pass, row.claim + "(" + row.subclaim + ") level " + std::to_string(row.level) + ": " + row.detail);
  }
  expect(o, rows > 0, "no rows for claims 2 and 3");
  if (o.pass) o.detail = std::to_string(rows) + " rows";
  return o;
}

Outcome sigma_uniform() {
  Outcome o;
  auto r = build_cgs(test::machine("M5_ext"));
  auto sigma = simulation_strategy(r);
  for (int i : {1, 2}) expect(o, is_uniform(r.cgs, sigma, AgentId(i), r.init, 9), "agent " + std::to_string(i));
  if (o.pass) o.detail = "agents 1 and 2 to depth 9";
  return o;
}

Outcome halting_refuted() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  auto r = build_cgs(test::machine("M_halt"));
  int minimal = -1;
  for (int k = 1; k <= 8 && minimal < 0; ++k) {
    oracle::TableEnumerator e(r.cgs, {1, 2}, r.ok, k);
    if (!e.survives(r.init)) minimal = k;
  }
  expect(o, minimal > 0, "oracle finds no refuting bound <= 8");
  expect(o, minimal == 6, "oracle bound " + std::to_string(minimal) + ", pinned 6");
  if (minimal > 0) {
    auto v = check(r.cgs, r.init, parse_formula("<<1,2>> G ok"), minimal);
    expect(o, v.value == Truth::False, "check returns " + std::string(to_string(v.value)));
    expect(o, v.path && v.path->back() == r.err, "counterexample does not end in s_err");
    if (minimal > 1)
      expect(o, check(r.cgs, r.init, parse_formula("<<1,2>> G ok"), minimal - 1).value == Truth::Unknown,
             "refuted below the minimal bound");
  }
  double dt = seconds_since(t0);
  expect(o, dt < 60.0, "took " + std::to_string(dt) + " s");
  if (o.pass) o.detail = "minimal bound 6";
  return o;
}

Outcome non_halting_unknown() {
  Outcome o;
  auto r = build_cgs(test::machine("M5_ext"));
  auto f = parse_formula("<<1,2>> G ok");
  for (int k = 4; k <= 8; ++k) {
    auto v = check(r.cgs, r.init, f, k);
    expect(o, v.value == Truth::Unknown, "bound " + std::to_string(k) + ": " + std::string(to_string(v.value)));
  }
  auto t = saturate(r.cgs, r.init, simulation_strategy(r), 8);
  for (std::size_t v = 0; v < t.size(); ++v) expect(o, t.label(static_cast<NodeId>(v)) != r.err, "s_err in tree");
  if (o.pass) o.detail = "bounds 4..8 unknown, no s_err to depth 8";
  return o;
}

Outcome random_agreement() {
  Outcome o;
  std::mt19937 rng(4242);
  int identity = 0;
  const int rounds = 300;
  for (int round = 0; round < rounds; ++round) {
    oracle::RandomCgsOptions opts;
    opts.identity_obs = round % 3 == 0;
    auto g = oracle::random_cgs(rng, opts);
    std::vector<int> team = round % 2 ? std::vector<int>{1} : std::vector<int>{1, 2};
    std::vector<AgentId> ids(team.begin(), team.end());
    const PropId p = g.prop("p");
    for (int k = 1; k <= 4; ++k) {
      auto a = check(g, StateId(0), make_globally(team, make_atom("p")), k).value;
      auto b = check_box_atomic(g, StateId(0), ids, p, k).value;
      const std::string where = "round " + std::to_string(round) + " bound " + std::to_string(k);
      expect(o, a == b, where + ": check and check_box_atomic disagree");
      oracle::TableEnumerator tables(g, team, p, k);
      expect(o, (a == Truth::False) == !tables.survives(StateId(0)), where + ": table enumeration disagrees");
      if (opts.identity_obs)
        expect(o, (a == Truth::False) == !oracle::safe_within(g, team, p, k)[0],
               where + ": backward induction disagrees");
    }
    identity += opts.identity_obs;
  }
  if (o.pass) o.detail = std::to_string(rounds) + " structures, " + std::to_string(identity) + " with perfect information";
  return o;
}

Outcome round_trips() {
  Outcome o;
  std::mt19937 rng(808);
  for (int k = 0; k < 1000; ++k) {
    auto f = gen::random_formula(rng, 5, {"p", "q", "ok", "p1"}, 3);
    auto text = render_formula(*f);
    expect(o, equal(*parse_formula(text), *f), "formula " + text);
  }
  auto stable = [&](const Cgs& g, const std::string& what) {
    auto text = dump_cgs(g);
    expect(o, dump_cgs(cgs_from_json(Json::parse(text))) == text, what);
  };
  for (int k = 0; k < 100; ++k) stable(oracle::random_cgs(rng, {}), "random structure " + std::to_string(k));
  for (const char* name : {"M5", "M5_ext", "M_halt", "right_mover", "left_bouncer", "zigzag"})
    stable(build_cgs(test::machine(name)).cgs, name);
  if (o.pass) o.detail = "1000 formulas, 106 structures";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 decode M5", decode_m5},
      {"2 decode follows the machine", decode_follows_machine},
      {"3 level invariants on M5_ext", claims_on_m5_ext},
      {"4 simulation strategy is uniform", sigma_uniform},
      {"5 halting machine refuted", halting_refuted},
      {"6 non-halting machine stays unknown", non_halting_unknown},
      {"7 searches agree on random structures", random_agreement},
      {"8 serialization round trips", round_trips},
  };
  int failed = 0;
  for (const auto& [name, run_criterion] : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run_criterion();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %-40s %7.3fs  %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), seconds_since(t0),
                o.detail.c_str());
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
