#include "atlir/mc.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mc_search.hpp"

namespace atlir {

Truth flip(Truth t) {
  if (t == Truth::True) return Truth::False;
  if (t == Truth::False) return Truth::True;
  return Truth::Unknown;
}

std::string_view to_string(Truth t) {
  switch (t) {
    case Truth::True: return "true";
    case Truth::False: return "false";
    case Truth::Unknown: return "unknown";
  }
  return "?";
}

BoundTooSmall::BoundTooSmall(int bound)
    : std::invalid_argument("bound " + std::to_string(bound) + " is below the minimal horizon 1") {}

namespace {

std::vector<AgentId> team_of(const Formula& f) {
  std::vector<AgentId> out;
  for (int i : f.coalition) out.emplace_back(i);
  return out;
}

/// States reachable from s in at most `steps` transitions on any available tuple.
std::vector<StateId> reachable(const Cgs& g, StateId s, int steps) {
  std::vector<char> seen(g.state_count(), 0);
  std::vector<StateId> frontier{s}, out{s};
  seen[s.index()] = 1;
  for (int d = 0; d < steps && !frontier.empty(); ++d) {
    std::vector<StateId> next;
    for (StateId x : frontier)
      for (const JointAction& a : available_tuples(g, x))
        if (auto y = successor(g, x, a); y && !seen[y->index()]) {
          seen[y->index()] = 1;
          next.push_back(*y);
          out.push_back(*y);
        }
    frontier = std::move(next);
  }
  return out;
}

class Checker {
 public:
  Checker(const Cgs& g, int bound, CheckOptions options) : g_(g), bound_(bound), options_(options) {}

  Verdict eval(StateId s, const FormulaPtr& f) {
    auto key = std::make_pair(s.value, f.get());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Verdict v = compute(s, *f);
    v.bound_used = bound_;
    if (v.value == Truth::Unknown) {
      v.path.reset();
      v.strategy.reset();
    }
    memo_.emplace(key, v);
    return v;
  }

 private:
  Verdict compute(StateId s, const Formula& f) {
    switch (f.kind) {
      case FormulaKind::Atom: {
        Verdict v;
        v.value = g_.holds(s, g_.prop(f.atom)) ? Truth::True : Truth::False;
        v.path = History{s};
        return v;
      }
      case FormulaKind::Not: {
        Verdict v = eval(s, f.left);
        v.value = flip(v.value);
        return v;
      }
      case FormulaKind::And: {
        Verdict l = eval(s, f.left);
        if (l.value == Truth::False) return l;
        Verdict r = eval(s, f.right);
        if (r.value == Truth::False) return r;
        Verdict v;
        if (l.value == Truth::True && r.value == Truth::True) {
          v.value = Truth::True;
          v.path = History{s};
        }
        return v;
      }
      case FormulaKind::Next: return next(s, f);
      case FormulaKind::Globally:
      case FormulaKind::Until: return search(s, f);
    }
    return {};
  }

  // max over member actions at s of min over the resulting successors.
  Verdict next(StateId s, const Formula& f) {
    const auto team = team_of(f);
    std::vector<std::vector<ActionId>> member_choices;
    for (AgentId i : team) {
      auto av = g_.avail(i, s);
      member_choices.emplace_back(av.begin(), av.end());
    }
    Truth best = Truth::False;
    std::optional<History> refutation;
    std::optional<StrategyDump> witness;

    std::vector<std::size_t> pos(team.size(), 0);
    for (bool more = std::all_of(member_choices.begin(), member_choices.end(),
                                 [](const auto& c) { return !c.empty(); });
         more;) {
      Truth worst = Truth::True;
      std::optional<History> first_false;
      for (const JointAction& a : available_tuples(g_, s)) {
        bool matches = true;
        for (std::size_t k = 0; k < team.size(); ++k)
          if (a[team[k].index()] != member_choices[k][pos[k]]) matches = false;
        if (!matches) continue;
        auto t = successor(g_, s, a);
        if (!t) continue;
        Truth val = eval(*t, f.left).value;
        if (val < worst) worst = val;
        if (val == Truth::False && !first_false) first_false = History{s, *t};
      }
      if (worst == Truth::False && !refutation) refutation = first_false;
      if (worst > best) {
        best = worst;
        if (worst == Truth::True) {
          StrategyDump dump;
          for (std::size_t k = 0; k < team.size(); ++k)
            dump.push_back({team[k], {g_.block_of(team[k], s)}, member_choices[k][pos[k]]});
          witness = std::move(dump);
          break;
        }
      }
      std::size_t k = team.size();
      more = false;
      while (k > 0) {
        --k;
        if (++pos[k] < member_choices[k].size()) {
          more = true;
          break;
        }
        pos[k] = 0;
      }
    }
    Verdict v;
    v.value = best;
    if (best == Truth::True) {
      v.strategy = std::move(witness);
      v.path = History{s};
    } else if (best == Truth::False) {
      v.path = refutation ? *refutation : History{s};
    }
    return v;
  }

  Verdict search(StateId s, const Formula& f) {
    detail::SearchProblem p;
    p.g = &g_;
    p.team = team_of(f);
    p.root = s;
    p.bound = bound_;
    p.goal = f.kind == FormulaKind::Globally ? detail::Goal::Globally : detail::Goal::Until;
    p.phi.assign(g_.state_count(), Truth::Unknown);
    if (p.goal == detail::Goal::Until) p.psi.assign(g_.state_count(), Truth::Unknown);
    for (StateId t : reachable(g_, s, bound_)) {
      p.phi[t.index()] = eval(t, f.left).value;
      if (p.goal == detail::Goal::Until) p.psi[t.index()] = eval(t, f.right).value;
    }

    detail::SearchResult r = options_.jobs == 1 ? detail::search_serial(p)
                                                : detail::search_parallel(p, options_.jobs);
    Verdict v;
    if (p.goal == detail::Goal::Globally) {
      if (!r.found) {
        v.value = Truth::False;
        v.path = std::move(r.violation);
      }
    } else if (r.found) {
      v.value = Truth::True;
      v.path = History{s};
      v.strategy = std::move(r.strategy);
    }
    return v;
  }

  const Cgs& g_;
  int bound_;
  CheckOptions options_;
  std::map<std::pair<int, const Formula*>, Verdict> memo_;
};

// ---------------------------------------------------------------------------
// Level-synchronous search for <<A>> G p.

class LevelSearch {
 public:
  LevelSearch(const Cgs& g, std::vector<AgentId> team, PropId p, int bound)
      : g_(g), team_(std::move(team)), p_(p), bound_(bound) {}

  bool survives(const std::vector<History>& nodes) {
    const int depth = static_cast<int>(nodes.front().size()) - 1;
    // Keys of this level, ordered by (observation history, agent).
    std::map<std::pair<ObservationHistory, int>, std::size_t> index;
    std::vector<std::vector<std::size_t>> node_keys(nodes.size());
    for (std::size_t v = 0; v < nodes.size(); ++v)
      for (AgentId i : team_) index.emplace(std::make_pair(observe(g_, i, nodes[v]), i.value), 0);
    Level L;
    L.depth = depth;
    for (auto& [key, k] : index) {
      k = L.keys.size();
      L.keys.push_back(AgentId(key.second));
    }
    L.ready.resize(L.keys.size() + 1);
    for (std::size_t v = 0; v < nodes.size(); ++v) {
      std::size_t last = 0;
      std::vector<std::size_t> keys;
      for (AgentId i : team_) {
        std::size_t k = index.at({observe(g_, i, nodes[v]), i.value});
        keys.push_back(k);
        last = std::max(last, k + 1);
      }
      // Nodes without members (empty team) are expanded before any choice.
      L.ready[last].push_back(v);
      node_keys[v] = std::move(keys);
    }
    L.key_state.assign(L.keys.size(), StateId{});
    for (std::size_t v = 0; v < nodes.size(); ++v)
      for (std::size_t m = 0; m < team_.size(); ++m) L.key_state[node_keys[v][m]] = nodes[v].back();
    L.nodes = &nodes;
    L.node_keys = &node_keys;
    L.choice.assign(L.keys.size(), ActionId{});

    std::vector<History> children;
    if (!expand_ready(L, 0, children)) return false;
    return assign(L, 0, std::move(children));
  }

  int violation_depth = -1;
  History violation;

 private:
  struct Level {
    int depth = 0;
    std::vector<AgentId> keys;          // agent of each key
    std::vector<StateId> key_state;     // a state in the key's last block (avail is uniform)
    std::vector<std::vector<std::size_t>> ready;  // nodes whose keys are all < k
    std::vector<ActionId> choice;
    const std::vector<History>* nodes = nullptr;
    const std::vector<std::vector<std::size_t>>* node_keys = nullptr;
  };

  // Expands the nodes that became fully assigned once keys [0, k) were set.
  bool expand_ready(const Level& L, std::size_t k, std::vector<History>& children) {
    for (std::size_t v : L.ready[k]) {
      const History& h = (*L.nodes)[v];
      std::vector<std::vector<ActionId>> choices(static_cast<std::size_t>(g_.agent_count()));
      for (std::size_t a = 0; a < choices.size(); ++a) {
        auto av = g_.avail(AgentId(static_cast<int>(a) + 1), h.back());
        choices[a].assign(av.begin(), av.end());
      }
      for (std::size_t m = 0; m < team_.size(); ++m)
        choices[team_[m].index()] = {L.choice[(*L.node_keys)[v][m]]};
      bool ok = true;
      product(choices, [&](const JointAction& a) {
        if (!ok) return;
        auto t = successor(g_, h.back(), a);
        if (!t) return;
        History c = h;
        c.push_back(*t);
        if (!g_.holds(*t, p_)) {
          note_violation(c);
          ok = false;
          return;
        }
        children.push_back(std::move(c));
      });
      if (!ok) return false;
    }
    return true;
  }

  bool assign(Level& L, std::size_t k, std::vector<History> children) {
    if (k == L.keys.size()) {
      if (L.depth + 1 >= bound_ || children.empty()) return true;
      return survives(children);
    }
    auto av = g_.avail(L.keys[k], L.key_state[k]);
    for (ActionId a : av) {
      L.choice[k] = a;
      std::vector<History> next = children;
      if (!expand_ready(L, k + 1, next)) continue;
      if (assign(L, k + 1, std::move(next))) return true;
    }
    return false;
  }

  void note_violation(const History& h) {
    const int d = static_cast<int>(h.size()) - 1;
    if (d > violation_depth) {
      violation_depth = d;
      violation = h;
    }
  }

  template <class F>
  static void product(const std::vector<std::vector<ActionId>>& choices, F&& f) {
    for (const auto& c : choices)
      if (c.empty()) return;
    std::vector<std::size_t> pos(choices.size(), 0);
    JointAction a(choices.size());
    for (;;) {
      for (std::size_t k = 0; k < choices.size(); ++k) a[k] = choices[k][pos[k]];
      f(a);
      std::size_t k = choices.size();
      for (;;) {
        if (k == 0) return;
        --k;
        if (++pos[k] < choices[k].size()) break;
        pos[k] = 0;
      }
    }
  }

  const Cgs& g_;
  std::vector<AgentId> team_;
  PropId p_;
  int bound_;
};

void check_team(const Cgs& g, const std::vector<AgentId>& team) {
  for (AgentId i : team) g.agent(i.value);
}

}  // namespace

Verdict check(const Cgs& g, StateId s, const FormulaPtr& f, int bound, CheckOptions options) {
  if (bound < 1) throw BoundTooSmall(bound);
  if (!f) throw std::invalid_argument("check: null formula");
  g.state_name(s);
  bind_formula(*f, g);
  Checker c(g, bound, options);
  return c.eval(s, f);
}

Verdict check_box_atomic(const Cgs& g, StateId s, const std::vector<AgentId>& team, PropId p,
                         int bound) {
  if (bound < 1) throw BoundTooSmall(bound);
  g.state_name(s);
  g.prop_name(p);
  check_team(g, team);
  std::vector<AgentId> members = team;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());

  Verdict v;
  v.bound_used = bound;
  if (!g.holds(s, p)) {
    v.value = Truth::False;
    v.path = History{s};
    return v;
  }
  LevelSearch search(g, members, p, bound);
  if (!search.survives({History{s}})) {
    v.value = Truth::False;
    v.path = std::move(search.violation);
  }
  return v;
}

}  // namespace atlir
