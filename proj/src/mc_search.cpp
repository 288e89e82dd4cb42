#include "mc_search.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace atlir::detail {
namespace {

enum class NodeClass { Violated, Settled, Continue };

using Key = std::pair<int, ObservationHistory>;  // (agent, observation history)
using Assignment = std::map<Key, ActionId>;

struct SearchState {
  Assignment assignment;
  std::vector<History> pending;  // DFS stack; back() is processed next
};

NodeClass classify(const SearchProblem& p, const History& h) {
  const int depth = static_cast<int>(h.size()) - 1;
  const std::size_t s = h.back().index();
  if (p.goal == Goal::Globally) {
    if (p.phi[s] == Truth::False) return NodeClass::Violated;
    return depth >= p.bound ? NodeClass::Settled : NodeClass::Continue;
  }
  if (p.psi[s] == Truth::True) return NodeClass::Settled;
  if (p.phi[s] == Truth::True && depth < p.bound) return NodeClass::Continue;
  return NodeClass::Violated;
}

// Lexicographic product of per-agent choices.
template <class F>
void for_each_tuple(const std::vector<std::vector<ActionId>>& choices, F&& f) {
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

struct Step {
  enum Kind { Success, Fail, Branch } kind;
  History violation;  // Fail
  Key key;            // Branch
  std::vector<ActionId> actions;
};

// Runs the deterministic part of the search until it needs a choice.
Step advance(const SearchProblem& p, SearchState& st) {
  const Cgs& g = *p.g;
  while (!st.pending.empty()) {
    const History& h = st.pending.back();
    switch (classify(p, h)) {
      case NodeClass::Violated: return {Step::Fail, h, {}, {}};
      case NodeClass::Settled: st.pending.pop_back(); continue;
      case NodeClass::Continue: break;
    }
    const StateId last = h.back();
    std::vector<std::optional<ActionId>> fixed(static_cast<std::size_t>(g.agent_count()));
    for (AgentId i : p.team) {
      Key key{i.value, observe(g, i, h)};
      auto it = st.assignment.find(key);
      if (it == st.assignment.end()) {
        auto av = g.avail(i, last);
        return {Step::Branch, {}, std::move(key), {av.begin(), av.end()}};
      }
      fixed[i.index()] = it->second;
    }

    History node = std::move(st.pending.back());
    st.pending.pop_back();
    // Enumerate tuples: members fixed, others over avail.
    std::vector<std::vector<ActionId>> choices(fixed.size());
    for (std::size_t k = 0; k < fixed.size(); ++k) {
      if (fixed[k]) {
        choices[k] = {*fixed[k]};
      } else {
        auto av = g.avail(AgentId(static_cast<int>(k) + 1), last);
        choices[k].assign(av.begin(), av.end());
      }
    }
    std::vector<History> children;
    for_each_tuple(choices, [&](const JointAction& a) {
      if (auto next = successor(g, last, a)) {
        History c = node;
        c.push_back(*next);
        children.push_back(std::move(c));
      }
    });
    for (auto it = children.rbegin(); it != children.rend(); ++it) st.pending.push_back(std::move(*it));
  }
  return {Step::Success, {}, {}, {}};
}

StrategyDump to_dump(const Assignment& a) {
  StrategyDump out;
  for (const auto& [key, action] : a) out.push_back({AgentId(key.first), key.second, action});
  return out;
}

void record_failure(SearchResult& r, History h) {
  const int depth = static_cast<int>(h.size()) - 1;
  if (depth > r.violation_depth) {
    r.violation_depth = depth;
    r.violation = std::move(h);
  }
}

void dfs(const SearchProblem& p, SearchState st, SearchResult& r) {
  Step step = advance(p, st);
  switch (step.kind) {
    case Step::Success:
      r.found = true;
      r.strategy = to_dump(st.assignment);
      return;
    case Step::Fail:
      record_failure(r, std::move(step.violation));
      return;
    case Step::Branch:
      for (std::size_t k = 0; k < step.actions.size(); ++k) {
        SearchState child = (k + 1 == step.actions.size()) ? std::move(st) : st;
        child.assignment[step.key] = step.actions[k];
        dfs(p, std::move(child), r);
        if (r.found) return;
      }
      return;
  }
}

SearchState initial_state(const SearchProblem& p) {
  SearchState st;
  st.pending.push_back({p.root});
  return st;
}

}  // namespace

SearchResult search_serial(const SearchProblem& p) {
  SearchResult r;
  dfs(p, initial_state(p), r);
  return r;
}

SearchResult search_parallel(const SearchProblem& p, int jobs) {
#ifndef _OPENMP
  (void)jobs;
  return search_serial(p);
#else
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
  struct Item {
    std::optional<SearchState> open;
    SearchResult result;  // filled for closed items
  };

  // Expand breadth-first, keeping the left-to-right (enumeration) order of
  // the DFS leaves.
  std::vector<Item> items(1);
  items[0].open = initial_state(p);
  const std::size_t target = static_cast<std::size_t>(8 * threads);
  for (;;) {
    std::size_t open = 0;
    for (const auto& it : items) open += it.open.has_value();
    if (open == 0 || open >= target) break;
    std::vector<Item> next;
    bool branched = false;
    for (auto& it : items) {
      if (!it.open) {
        next.push_back(std::move(it));
        continue;
      }
      SearchState st = std::move(*it.open);
      Step step = advance(p, st);
      if (step.kind == Step::Success) {
        Item done;
        done.result.found = true;
        done.result.strategy = to_dump(st.assignment);
        next.push_back(std::move(done));
      } else if (step.kind == Step::Fail) {
        Item done;
        record_failure(done.result, std::move(step.violation));
        next.push_back(std::move(done));
      } else {
        branched = true;
        for (ActionId a : step.actions) {
          Item child;
          child.open = st;
          child.open->assignment[step.key] = a;
          next.push_back(std::move(child));
        }
      }
    }
    items = std::move(next);
    if (!branched) break;
  }

  // Items after a known success cannot change the result.
  std::atomic<long> first_found{std::numeric_limits<long>::max()};
  for (std::size_t k = 0; k < items.size(); ++k)
    if (!items[k].open && items[k].result.found) {
      first_found = static_cast<long>(k);
      break;
    }

  const long n = static_cast<long>(items.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long k = 0; k < n; ++k) {
    auto& it = items[static_cast<std::size_t>(k)];
    if (!it.open || k > first_found.load()) continue;
    dfs(p, std::move(*it.open), it.result);
    it.open.reset();
    if (it.result.found) {
      long cur = first_found.load();
      while (k < cur && !first_found.compare_exchange_weak(cur, k)) {
      }
    }
  }

  SearchResult out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    auto& r = items[k].result;
    if (items[k].open) continue;  // skipped after a success
    if (r.found) return std::move(r);
    if (r.violation_depth > out.violation_depth) {
      out.violation_depth = r.violation_depth;
      out.violation = std::move(r.violation);
    }
  }
  return out;
#endif
}

}  // namespace atlir::detail
