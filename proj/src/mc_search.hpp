// Depth-first search for a uniform strategy table under which every node of
// the bounded computation tree survives. Used by check() for G and U.
#pragma once

#include <optional>
#include <vector>

#include "atlir/cgs.hpp"
#include "atlir/mc.hpp"
#include "atlir/strategy.hpp"

namespace atlir::detail {

enum class Goal { Globally, Until };

struct SearchProblem {
  const Cgs* g = nullptr;
  std::vector<AgentId> team;
  StateId root;
  int bound = 1;
  Goal goal = Goal::Globally;
  /// Precomputed values of the operands, indexed by state. Only states
  /// reachable within the bound are read.
  std::vector<Truth> phi;
  std::vector<Truth> psi;  // Until only
};

struct SearchResult {
  bool found = false;
  StrategyDump strategy;  // when found
  /// Deepest violating node over all candidates (first in enumeration order
  /// among equally deep ones); meaningful when !found.
  int violation_depth = -1;
  History violation;
};

SearchResult search_serial(const SearchProblem& p);
/// Same result as search_serial; the candidate space is split into a
/// frontier of partial searches that run on OpenMP threads.
SearchResult search_parallel(const SearchProblem& p, int jobs);

}  // namespace atlir::detail
