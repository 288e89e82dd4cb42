// Compiler from a deterministic Turing machine M to the three-agent game
// structure G_M with (G_M, s_init) |= <<{1,2}>> G ok iff M does not halt on
// the empty word, together with the strategy sigma = (sigma_1, sigma_2) that
// simulates M, the level decoder h, and a checker for the structural claims
// behind the construction.
//
// State names:  s_init s_init' s_lb s_lb' s_gen s_tr s_tr' s_err
//               s_{a}        cell holding a
//               s_{q,a}      head in state q on a cell holding a
//               s_{q,q',X}   M moves from q to q' in direction X
// Action names: idle (q0) (q,q',X) br1 br2

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "atlir/cgs.hpp"
#include "atlir/comptree.hpp"
#include "atlir/strategy.hpp"
#include "atlir/turing.hpp"

namespace atlir {

/// (q, q', X) for a move realized by delta.
struct MoveKey {
  std::string from;
  std::string to;
  Move dir;
  friend auto operator<=>(const MoveKey&, const MoveKey&) = default;
};

std::string move_action_name(const MoveKey& m);

enum class ReductionStateKind { Init, Init2, Lb, Lb2, Gen, Tr, Tr2, Err, Cell, Head, MoveState };

struct ReductionStateInfo {
  ReductionStateKind kind;
  std::string state;   // Head: q; MoveState: q
  std::string symbol;  // Cell / Head: a
  std::optional<MoveKey> move;
};

struct ReductionCgs {
  TuringMachine machine;
  Cgs cgs;

  StateId init, init2, lb, lb2, gen, tr, tr2, err;
  std::map<std::string, StateId> cell;
  std::map<std::pair<std::string, std::string>, StateId> head;
  std::map<MoveKey, StateId> move_state;

  ActionId idle, start, br1, br2;
  std::map<MoveKey, ActionId> move_action;

  PropId p1, p2, ok;

  std::vector<ReductionStateInfo> info;  // indexed by StateId

  const ReductionStateInfo& describe(StateId s) const { return info.at(s.index()); }
  /// {s_gen, s_tr}: the anchors of the level ordering.
  std::vector<StateId> anchors() const { return {gen, tr}; }
};

/// Throws InvalidMachine for ill-formed machines.
ReductionCgs build_cgs(const TuringMachine& m);

enum class HistoryKind { Root, Type1, Type2Open, Type2Closed, Other };

/// Type 2(i)(i-1) is Type2Open with index i, type 2(i)(i) is Type2Closed
/// with index i.
struct HistoryType {
  HistoryKind kind = HistoryKind::Other;
  int index = 0;
  friend bool operator==(const HistoryType&, const HistoryType&) = default;
};

HistoryType classify_history(const ReductionCgs& r, std::span<const StateId> h);
/// Starts with s_init s_gen.
bool is_type2(const ReductionCgs& r, std::span<const StateId> h);
std::string to_string(const HistoryType& t);

/// sigma = (sigma_1, sigma_2) in procedure form.
TeamStrategy simulation_strategy(const ReductionCgs& r);

class IncompleteLevel : public std::runtime_error {
 public:
  explicit IncompleteLevel(int level);
};

struct DecodedLevel {
  /// h(v_1 ... v_{n+1}) symbol by symbol.
  std::vector<std::string> symbols;
  /// Raw concatenation of the symbols.
  std::string word() const;
};

/// h applied to the ordered complete level n.
DecodedLevel decode_level(const ReductionCgs& r, const ComputationTree& t, int n);

/// The decoded word read as a configuration (word in Sigma* Q Sigma Sigma*).
std::optional<Configuration> as_configuration(const ReductionCgs& r, const DecodedLevel& d);

/// TM steps that are certainly simulated by a sigma-tree of the given depth.
int horizon(int depth);

struct ClaimRow {
  std::string claim;
  std::string subclaim;
  int level = -1;
  bool pass = true;
  std::string detail;
};

struct ClaimReport {
  int depth = 0;
  std::vector<ClaimRow> rows;
  /// First level containing s_err, if any.
  std::optional<int> err_level;
  bool all_pass() const;
};

/// Saturates the sigma-tree to `depth` (>= 3) and checks the simulation invariants on every
/// level below the first s_err level.
ClaimReport verify_claims(const TuringMachine& m, int depth);

}  // namespace atlir
