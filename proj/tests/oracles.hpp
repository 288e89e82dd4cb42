// Reference procedures the model checker is compared against. They share no
// code with src/mc*.cpp.
#pragma once

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "atlir/cgs.hpp"
#include "atlir/strategy.hpp"

namespace atlir::oracle {

// Team actions at s fixed per member, the rest free; calls f(successor).
template <class F>
void successors(const Cgs& g, StateId s, const std::map<int, ActionId>& fixed, F&& f) {
  for (const JointAction& a : available_tuples(g, s)) {
    bool match = true;
    for (const auto& [agent, act] : fixed)
      if (a[static_cast<std::size_t>(agent - 1)] != act) match = false;
    if (!match) continue;
    if (auto t = successor(g, s, a)) f(*t);
  }
}

// All member action choices at s.
inline std::vector<std::map<int, ActionId>> member_choices(const Cgs& g, StateId s,
                                                           const std::vector<int>& team) {
  std::vector<std::map<int, ActionId>> out{{}};
  for (int i : team) {
    std::vector<std::map<int, ActionId>> next;
    for (const auto& partial : out)
      for (ActionId a : g.avail(AgentId(i), s)) {
        auto m = partial;
        m[i] = a;
        next.push_back(std::move(m));
      }
    out = std::move(next);
  }
  return out;
}

/// Perfect-information safety game solved backwards: W_0 = [p], W_{j+1} =
/// [p] & CPre(W_j). <<team>> G p survives k steps from s iff s in W_k.
inline std::vector<bool> safe_within(const Cgs& g, const std::vector<int>& team, PropId p, int k) {
  const std::size_t n = g.state_count();
  std::vector<bool> w(n);
  for (StateId s : g.states()) w[s.index()] = g.holds(s, p);
  for (int j = 0; j < k; ++j) {
    std::vector<bool> next(n, false);
    for (StateId s : g.states()) {
      if (!g.holds(s, p)) continue;
      for (const auto& choice : member_choices(g, s, team)) {
        bool all = true;
        successors(g, s, choice, [&](StateId t) { all = all && w[t.index()]; });
        if (all) {
          next[s.index()] = true;
          break;
        }
      }
    }
    w = std::move(next);
  }
  return w;
}

/// Exhaustive enumeration of uniform tables, one full level at a time: every
/// combination of actions for the observation keys of a level is tried before
/// the level's successors are inspected. True when some table keeps p on all
/// nodes of depth <= bound.
class TableEnumerator {
 public:
  TableEnumerator(const Cgs& g, std::vector<int> team, PropId p, int bound)
      : g_(g), team_(std::move(team)), p_(p), bound_(bound) {}

  bool survives(StateId s) {
    if (!g_.holds(s, p_)) return false;
    return level({History{s}}, 0);
  }

  long tables_tried = 0;

 private:
  bool level(const std::vector<History>& nodes, int depth) {
    if (depth == bound_ || nodes.empty()) return true;
    std::map<std::pair<int, ObservationHistory>, StateId> keys;
    for (const auto& h : nodes)
      for (int i : team_) keys.emplace(std::make_pair(i, observe(g_, AgentId(i), h)), h.back());
    std::vector<std::pair<int, ObservationHistory>> order;
    std::vector<std::vector<ActionId>> options;
    for (const auto& [key, s] : keys) {
      order.push_back(key);
      auto av = g_.avail(AgentId(key.first), s);
      options.emplace_back(av.begin(), av.end());
    }
    std::vector<std::size_t> pos(order.size(), 0);
    for (;;) {
      ++tables_tried;
      std::map<std::pair<int, ObservationHistory>, ActionId> table;
      for (std::size_t k = 0; k < order.size(); ++k) table[order[k]] = options[k][pos[k]];
      std::vector<History> children;
      bool ok = true;
      for (const auto& h : nodes) {
        std::map<int, ActionId> fixed;
        for (int i : team_) fixed[i] = table.at({i, observe(g_, AgentId(i), h)});
        successors(g_, h.back(), fixed, [&](StateId t) {
          if (!g_.holds(t, p_)) ok = false;
          History c = h;
          c.push_back(t);
          children.push_back(std::move(c));
        });
      }
      if (ok && level(children, depth + 1)) return true;
      std::size_t k = order.size();
      for (;;) {
        if (k == 0) return false;
        --k;
        if (++pos[k] < options[k].size()) break;
        pos[k] = 0;
      }
    }
  }

  const Cgs& g_;
  std::vector<int> team_;
  PropId p_;
  int bound_;
};

struct RandomCgsOptions {
  int max_states = 5;
  int max_actions = 3;
  int agents = 2;
  bool identity_obs = false;
};

/// Well-formed random CGS with one proposition "p".
inline Cgs random_cgs(std::mt19937& rng, const RandomCgsOptions& o) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n = pick(1, o.max_states);
  const int m = pick(1, o.max_actions);
  CgsBuilder b(o.agents);
  for (int s = 0; s < n; ++s) b.add_state("s" + std::to_string(s));
  for (int a = 0; a < m; ++a) b.add_action("a" + std::to_string(a));
  PropId p = b.add_prop("p");
  for (int s = 0; s < n; ++s)
    if (pick(0, 9) < 7) b.label(StateId(s), p);

  for (int i = 1; i <= o.agents; ++i) {
    std::vector<int> block(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) block[static_cast<std::size_t>(s)] = o.identity_obs ? s : pick(0, n - 1);
    std::map<int, std::vector<StateId>> blocks;
    for (int s = 0; s < n; ++s) blocks[block[static_cast<std::size_t>(s)]].emplace_back(s);
    std::vector<std::vector<StateId>> partition;
    for (auto& [id, states] : blocks) {
      std::vector<ActionId> acts;
      for (int a = 0; a < m; ++a)
        if (pick(0, 1)) acts.emplace_back(a);
      if (acts.empty()) acts.emplace_back(pick(0, m - 1));
      for (StateId s : states) b.avail(i, s, acts);
      partition.push_back(states);
    }
    b.observation(i, partition);
  }
  Cgs shape = b.build();
  for (StateId s : shape.states())
    for (const JointAction& a : available_tuples(shape, s)) b.transition(s, a, StateId(pick(0, n - 1)));
  return b.build();
}

}  // namespace atlir::oracle
