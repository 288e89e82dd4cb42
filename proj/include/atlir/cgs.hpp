// Concurrent game structures under imperfect information.
//
// A Cgs is built once through CgsBuilder and is immutable afterwards. It may
// hold ill-formed data (the loader has an --allow-invalid mode); validate_cgs
// reports every broken well-formedness condition as data.

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace atlir {

/// Agents are numbered 1..k.
struct AgentId {
  int value = 1;
  constexpr AgentId() = default;
  constexpr explicit AgentId(int v) : value(v) {}
  constexpr std::size_t index() const { return static_cast<std::size_t>(value - 1); }
  friend constexpr auto operator<=>(AgentId, AgentId) = default;
};

struct StateId {
  int value = 0;
  constexpr StateId() = default;
  constexpr explicit StateId(int v) : value(v) {}
  constexpr std::size_t index() const { return static_cast<std::size_t>(value); }
  friend constexpr auto operator<=>(StateId, StateId) = default;
};

struct ActionId {
  int value = 0;
  constexpr ActionId() = default;
  constexpr explicit ActionId(int v) : value(v) {}
  constexpr std::size_t index() const { return static_cast<std::size_t>(value); }
  friend constexpr auto operator<=>(ActionId, ActionId) = default;
};

struct PropId {
  int value = 0;
  constexpr PropId() = default;
  constexpr explicit PropId(int v) : value(v) {}
  constexpr std::size_t index() const { return static_cast<std::size_t>(value); }
  friend constexpr auto operator<=>(PropId, PropId) = default;
};

/// One action per agent, in agent order.
using JointAction = std::vector<ActionId>;

/// A non-empty sequence of states. Not required to follow delta.
using History = std::vector<StateId>;

class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};
class UnknownState : public LookupError {
 public:
  explicit UnknownState(std::string_view name);
};
class UnknownAction : public LookupError {
 public:
  explicit UnknownAction(std::string_view name);
};
class UnknownAgent : public LookupError {
 public:
  explicit UnknownAgent(int agent);
};
class UnknownProp : public LookupError {
 public:
  explicit UnknownProp(std::string_view name);
};

class Cgs {
 public:
  int agent_count() const { return agent_count_; }
  std::size_t state_count() const { return state_names_.size(); }
  std::size_t action_count() const { return action_names_.size(); }
  std::size_t prop_count() const { return prop_names_.size(); }

  const std::string& state_name(StateId s) const;
  const std::string& action_name(ActionId a) const;
  const std::string& prop_name(PropId p) const;

  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<ActionId> find_action(std::string_view name) const;
  std::optional<PropId> find_prop(std::string_view name) const;
  /// Throwing lookups.
  StateId state(std::string_view name) const;
  ActionId action(std::string_view name) const;
  PropId prop(std::string_view name) const;
  AgentId agent(int number) const;

  std::vector<StateId> states() const;
  std::vector<AgentId> agents() const;

  bool holds(StateId s, PropId p) const;
  /// Sorted proposition ids true at s.
  std::span<const PropId> label(StateId s) const;

  /// d(i,s), sorted by action id.
  std::span<const ActionId> avail(AgentId i, StateId s) const;
  bool is_available(AgentId i, StateId s, ActionId a) const;

  /// Observation block of s for agent i; -1 when s is not covered by any block.
  int block_of(AgentId i, StateId s) const;
  const std::vector<std::vector<StateId>>& obs_blocks(AgentId i) const;

  /// The stored transition, without consulting avail.
  std::optional<StateId> raw_successor(StateId s, std::span<const ActionId> a) const;

  /// The full explicit transition map, ordered by (state, joint action).
  const std::map<std::pair<StateId, JointAction>, StateId>& transitions() const {
    return delta_;
  }

 private:
  friend class CgsBuilder;

  std::uint64_t encode(std::span<const ActionId> a) const;
  void check_state(StateId s) const;
  void check_agent(AgentId i) const;

  int agent_count_ = 0;
  std::vector<std::string> state_names_;
  std::vector<std::string> action_names_;
  std::vector<std::string> prop_names_;
  std::unordered_map<std::string, StateId> state_index_;
  std::unordered_map<std::string, ActionId> action_index_;
  std::unordered_map<std::string, PropId> prop_index_;
  std::vector<std::vector<PropId>> labels_;
  std::vector<std::vector<std::vector<StateId>>> obs_blocks_;  // [agent][block]
  std::vector<std::vector<int>> block_of_;                     // [agent][state]
  std::vector<std::vector<std::vector<ActionId>>> avail_;      // [agent][state]
  std::map<std::pair<StateId, JointAction>, StateId> delta_;
  std::unordered_map<std::uint64_t, StateId> delta_index_;  // state-major mixed radix key
};

/// Accumulates a Cgs. Names are interned on first use; build() canonicalizes
/// observation partitions (blocks sorted, ordered by their least state).
class CgsBuilder {
 public:
  explicit CgsBuilder(int agent_count);

  StateId add_state(std::string name);
  ActionId add_action(std::string name);
  PropId add_prop(std::string name);

  CgsBuilder& label(std::string_view state, std::string_view prop);
  /// Replaces the observation partition of `agent`.
  CgsBuilder& observation(int agent, std::vector<std::vector<std::string>> blocks);
  /// Identity observation for `agent`.
  CgsBuilder& identity_observation(int agent);
  CgsBuilder& avail(int agent, std::string_view state, const std::vector<std::string>& actions);
  CgsBuilder& transition(std::string_view from, const std::vector<std::string>& joint,
                         std::string_view to);

  // Index-based variants used by generators.
  CgsBuilder& label(StateId s, PropId p);
  CgsBuilder& observation(int agent, std::vector<std::vector<StateId>> blocks);
  CgsBuilder& avail(int agent, StateId s, std::vector<ActionId> actions);
  CgsBuilder& transition(StateId from, JointAction joint, StateId to);

  Cgs build() const;

 private:
  Cgs g_;
  std::vector<bool> obs_set_;
};

/// Broken well-formedness conditions of a Cgs.
enum class ViolationKind {
  NoAgents,
  NoStates,
  NoProps,
  NoActions,
  EmptyAvail,
  AvailNotUniform,
  ObsNotPartition,
  PartialOnAvailableTuple,
  DefinedOnUnavailableTuple,
  WrongArity,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

std::vector<Violation> validate_cgs(const Cgs& g);

/// delta(s,a) when every a_i is available at s; nullopt otherwise.
std::optional<StateId> successor(const Cgs& g, StateId s, std::span<const ActionId> a);
/// Name-based variant; throws UnknownState / UnknownAction.
std::optional<StateId> successor(const Cgs& g, std::string_view s,
                                 const std::vector<std::string>& a);

bool obs_equiv_states(const Cgs& g, AgentId i, StateId s, StateId t);
bool obs_equiv_histories(const Cgs& g, AgentId i, std::span<const StateId> a,
                         std::span<const StateId> b);

/// Every tuple in the product of avail(1,s) x ... x avail(k,s), in
/// lexicographic order of action ids.
std::vector<JointAction> available_tuples(const Cgs& g, StateId s);

/// "(a1,...,ak)" using action names.
std::string format_joint_action(const Cgs& g, std::span<const ActionId> a);

}  // namespace atlir
