// Computation trees T = (V, E, v0, l1, l2) grown by single extension steps
// under a team strategy.
//
// Trees are persistent: extend() returns a new tree that shares every
// existing node record with its source. A node is identified structurally by
// the sequence of joint actions on its root path; NodeId is the position in
// insertion order and is only meaningful within one tree lineage.

#pragma once

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "atlir/cgs.hpp"
#include "atlir/strategy.hpp"

namespace atlir {

using NodeId = int;

class DuplicateAction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class IncompatibleAction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class UndefinedSuccessor : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by level() when the ordering leaves two nodes of a level
/// incomparable or orders them both ways.
class OrderingNotTotal : public std::runtime_error {
 public:
  OrderingNotTotal(int level, NodeId a, NodeId b);
  int level() const { return level_; }

 private:
  int level_;
};

class ComputationTree {
 public:
  explicit ComputationTree(StateId root);

  NodeId root() const { return 0; }
  std::size_t size() const { return nodes_.size(); }
  StateId label(NodeId v) const { return record(v).state; }
  std::optional<NodeId> parent(NodeId v) const;
  /// l2 of the edge entering v. Empty for the root.
  const JointAction& edge_label(NodeId v) const { return record(v).action; }
  int depth(NodeId v) const { return record(v).depth; }
  /// Number of the deepest level.
  int height() const { return height_; }
  std::span<const NodeId> children(NodeId v) const;
  bool has_edge(NodeId v, std::span<const ActionId> a) const;

  /// path_T(v0, v).
  std::vector<NodeId> path(NodeId v) const;
  /// l1(path_T(v0, v)).
  History path_labels(NodeId v) const;
  /// level_T(n) in insertion order.
  std::vector<NodeId> level_nodes(int n) const;

  /// One extension step T =a=> T'.
  ComputationTree extend(const Cgs& g, const TeamStrategy& team, NodeId v,
                         const JointAction& a) const;

  /// Node id of the child reached from v by a, if any.
  std::optional<NodeId> child(NodeId v, std::span<const ActionId> a) const;

  /// Order-independent description: (action path, state) of every node, sorted.
  std::vector<std::pair<std::vector<JointAction>, StateId>> canonical() const;

 private:
  struct Record {
    StateId state;
    NodeId parent;
    JointAction action;
    int depth;
  };

  const Record& record(NodeId v) const;
  ComputationTree add_child(NodeId v, JointAction a, StateId s) const;

  friend ComputationTree saturate(const Cgs&, StateId, const TeamStrategy&, int);

  std::vector<std::shared_ptr<const Record>> nodes_;
  std::vector<std::vector<NodeId>> children_;
  int height_ = 0;
};

/// The maximal tree reachable by extension steps whose paths have at most
/// depth+1 nodes.
ComputationTree saturate(const Cgs& g, StateId s, const TeamStrategy& team, int depth);

/// level_T(n) sorted by the least strict order that (1) puts every node
/// labelled by an anchor state after the other nodes of its level and (2)
/// orders two nodes like some pair of ancestors on a common level.
/// Throws OrderingNotTotal when that order is not a strict total order.
std::vector<NodeId> level(const ComputationTree& t, int n, std::span<const StateId> anchors);

/// |level_T(n)| = n + 1.
bool is_complete_level(const ComputationTree& t, int n);

}  // namespace atlir
