// Uniform perfect-recall strategies, the compatible tuple set and bounded
// outcome sets.

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "atlir/cgs.hpp"

namespace atlir {

/// Pointwise observation-block ids of a history, for one agent. Histories are
/// ~i-equivalent exactly when their observation histories are equal.
using ObservationHistory = std::vector<int>;

ObservationHistory observe(const Cgs& g, AgentId i, std::span<const StateId> h);

/// A table strategy lacks an entry for the queried observation history.
class StrategyUndefined : public std::runtime_error {
 public:
  StrategyUndefined(AgentId agent, ObservationHistory key);
  AgentId agent() const { return agent_; }
  const ObservationHistory& key() const { return key_; }

 private:
  AgentId agent_;
  ObservationHistory key_;
};

/// A strategy returned an action outside d(i, s).
class StrategyIncompatible : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class AgentStrategy {
 public:
  using Table = std::map<ObservationHistory, ActionId>;
  using Procedure = std::function<ActionId(std::span<const StateId>)>;

  static AgentStrategy from_table(AgentId agent, Table table);
  static AgentStrategy from_procedure(AgentId agent, Procedure procedure);

  AgentId agent() const { return agent_; }
  bool is_table() const { return table_ != nullptr; }
  /// Null for procedure strategies.
  const Table* table() const { return table_.get(); }

  /// The chosen action on h (h non-empty). Throws StrategyUndefined.
  ActionId action(const Cgs& g, std::span<const StateId> h) const;

 private:
  AgentStrategy(AgentId agent, std::shared_ptr<const Table> table,
                std::shared_ptr<const Procedure> procedure)
      : agent_(agent), table_(std::move(table)), procedure_(std::move(procedure)) {}

  AgentId agent_;
  std::shared_ptr<const Table> table_;
  std::shared_ptr<const Procedure> procedure_;
};

class TeamStrategy {
 public:
  TeamStrategy() = default;
  explicit TeamStrategy(std::vector<AgentStrategy> strategies);

  bool contains(AgentId i) const { return strategies_.count(i.value) != 0; }
  const AgentStrategy& at(AgentId i) const;
  std::vector<AgentId> members() const;
  bool empty() const { return strategies_.empty(); }

 private:
  std::map<int, AgentStrategy> strategies_;
};

/// The joint actions of sigma-bar_A(h): members play their strategy on h,
/// the others range over avail at the last state. Lexicographic order.
std::vector<JointAction> compatible_tuples(const Cgs& g, const TeamStrategy& team,
                                           std::span<const StateId> h);

/// Histories of length depth+1 from s in which every step follows a
/// compatible tuple. These are the length-(depth+1) prefixes of out_G(s, sigma).
std::set<History> outcomes(const Cgs& g, StateId s, const TeamStrategy& team, int depth);

struct UniformityViolation {
  History first;
  History second;
  ActionId first_action;
  ActionId second_action;
};

/// Searches the histories reachable from root under `team` (tree depth up to
/// `depth`) for two ~i-equivalent histories on which agent i's strategy in
/// `team` differs. Table strategies never violate uniformity.
std::optional<UniformityViolation> find_uniformity_violation(const Cgs& g,
                                                             const TeamStrategy& team,
                                                             AgentId i, StateId root,
                                                             int depth);

bool is_uniform(const Cgs& g, const TeamStrategy& team, AgentId i, StateId root, int depth);

/// Agent strategy checked alone: the other agents are unconstrained.
bool is_uniform(const Cgs& g, const AgentStrategy& strategy, StateId root, int depth);

/// One line of a strategy table dump.
struct StrategyEntry {
  AgentId agent;
  ObservationHistory obs_history;
  ActionId action;
  friend auto operator<=>(const StrategyEntry&, const StrategyEntry&) = default;
};

using StrategyDump = std::vector<StrategyEntry>;

StrategyDump dump_team(const TeamStrategy& team);
TeamStrategy team_from_dump(const StrategyDump& dump);

}  // namespace atlir
