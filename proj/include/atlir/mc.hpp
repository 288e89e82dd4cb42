// Bounded three-valued model checking of ATL under imperfect information and
// perfect recall.
//
// Exact checking is undecidable, so every coalition modality is evaluated on
// uniform strategy tables of bounded depth and only answers in its sound
// direction:
//   <<A>> G phi   False or Unknown  (refuted when every table reaches a phi-False node)
//   <<A>> phi U psi  True or Unknown (some table forces psi within the bound)
//   <<A>> X phi   exact (one step; the table is a single action per member)
// Negation swaps True and False; conjunction is Kleene.

#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "atlir/atl.hpp"
#include "atlir/cgs.hpp"
#include "atlir/strategy.hpp"

namespace atlir {

enum class Truth { False, Unknown, True };

Truth flip(Truth t);
std::string_view to_string(Truth t);

struct Verdict {
  Truth value = Truth::Unknown;
  /// Counterexample or witness path from the checked state.
  std::optional<History> path;
  /// Strategy table witnessing a True coalition verdict.
  std::optional<StrategyDump> strategy;
  int bound_used = 0;
};

class BoundTooSmall : public std::invalid_argument {
 public:
  explicit BoundTooSmall(int bound);
};

struct CheckOptions {
  /// 1: serial search. 0: OpenMP default thread count. n > 1: n threads.
  int jobs = 1;
};

/// Throws BoundTooSmall for bound < 1 and UnknownProp/UnknownAgent when f
/// does not fit g.
Verdict check(const Cgs& g, StateId s, const FormulaPtr& f, int bound, CheckOptions options = {});

/// <<team>> G p through a level-by-level search over computation trees.
/// Same contract as check on that formula; always serial.
Verdict check_box_atomic(const Cgs& g, StateId s, const std::vector<AgentId>& team, PropId p,
                         int bound);

}  // namespace atlir
