#include "atlir/comptree.hpp"

#include <algorithm>
#include <string>

namespace atlir {

OrderingNotTotal::OrderingNotTotal(int level, NodeId a, NodeId b)
    : std::runtime_error("ordering is not total on level " + std::to_string(level) +
                         " (nodes " + std::to_string(a) + " and " + std::to_string(b) + ")"),
      level_(level) {}

ComputationTree::ComputationTree(StateId root) {
  nodes_.push_back(std::make_shared<const Record>(Record{root, -1, {}, 0}));
  children_.emplace_back();
}

const ComputationTree::Record& ComputationTree::record(NodeId v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= nodes_.size())
    throw std::out_of_range("no node " + std::to_string(v));
  return *nodes_[static_cast<std::size_t>(v)];
}

std::optional<NodeId> ComputationTree::parent(NodeId v) const {
  NodeId p = record(v).parent;
  if (p < 0) return std::nullopt;
  return p;
}

std::span<const NodeId> ComputationTree::children(NodeId v) const {
  record(v);
  return children_[static_cast<std::size_t>(v)];
}

std::optional<NodeId> ComputationTree::child(NodeId v, std::span<const ActionId> a) const {
  for (NodeId c : children(v)) {
    const auto& l = record(c).action;
    if (std::equal(l.begin(), l.end(), a.begin(), a.end())) return c;
  }
  return std::nullopt;
}

bool ComputationTree::has_edge(NodeId v, std::span<const ActionId> a) const {
  return child(v, a).has_value();
}

std::vector<NodeId> ComputationTree::path(NodeId v) const {
  std::vector<NodeId> out;
  for (NodeId x = v; x >= 0; x = record(x).parent) out.push_back(x);
  std::reverse(out.begin(), out.end());
  return out;
}

History ComputationTree::path_labels(NodeId v) const {
  History out;
  for (NodeId x : path(v)) out.push_back(label(x));
  return out;
}

std::vector<NodeId> ComputationTree::level_nodes(int n) const {
  std::vector<NodeId> out;
  for (std::size_t v = 0; v < nodes_.size(); ++v)
    if (nodes_[v]->depth == n) out.push_back(static_cast<NodeId>(v));
  return out;
}

ComputationTree ComputationTree::add_child(NodeId v, JointAction a, StateId s) const {
  ComputationTree t = *this;
  NodeId id = static_cast<NodeId>(t.nodes_.size());
  int d = record(v).depth + 1;
  t.nodes_.push_back(std::make_shared<const Record>(Record{s, v, std::move(a), d}));
  t.children_.emplace_back();
  t.children_[static_cast<std::size_t>(v)].push_back(id);
  t.height_ = std::max(t.height_, d);
  return t;
}

ComputationTree ComputationTree::extend(const Cgs& g, const TeamStrategy& team, NodeId v,
                                        const JointAction& a) const {
  if (has_edge(v, a))
    throw DuplicateAction("node " + std::to_string(v) + " already has an edge labelled " +
                          format_joint_action(g, a));
  auto allowed = compatible_tuples(g, team, path_labels(v));
  if (std::find(allowed.begin(), allowed.end(), a) == allowed.end())
    throw IncompatibleAction(format_joint_action(g, a) + " is not compatible with the strategy at node " +
                             std::to_string(v));
  auto next = successor(g, label(v), a);
  if (!next)
    throw UndefinedSuccessor("no transition from " + g.state_name(label(v)) + " on " +
                             format_joint_action(g, a));
  return add_child(v, a, *next);
}

std::vector<std::pair<std::vector<JointAction>, StateId>> ComputationTree::canonical() const {
  std::vector<std::pair<std::vector<JointAction>, StateId>> out;
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    std::vector<JointAction> actions;
    for (NodeId x : path(static_cast<NodeId>(v)))
      if (x != 0) actions.push_back(record(x).action);
    out.emplace_back(std::move(actions), nodes_[v]->state);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ComputationTree saturate(const Cgs& g, StateId s, const TeamStrategy& team, int depth) {
  if (depth < 0) throw std::invalid_argument("saturate: negative depth");
  // Built in place; extension steps at distinct (node, tuple) pairs commute,
  // so the breadth-first order yields the unique maximal tree.
  ComputationTree t(s);
  std::vector<NodeId> frontier{t.root()};
  for (int d = 0; d < depth; ++d) {
    std::vector<NodeId> next;
    for (NodeId v : frontier) {
      History h = t.path_labels(v);
      for (const JointAction& a : compatible_tuples(g, team, h)) {
        auto succ = successor(g, h.back(), a);
        if (!succ) continue;
        NodeId id = static_cast<NodeId>(t.nodes_.size());
        t.nodes_.push_back(std::make_shared<const ComputationTree::Record>(
            ComputationTree::Record{*succ, v, a, d + 1}));
        t.children_.emplace_back();
        t.children_[static_cast<std::size_t>(v)].push_back(id);
        t.height_ = d + 1;
        next.push_back(id);
      }
    }
    frontier = std::move(next);
  }
  return t;
}

std::vector<NodeId> level(const ComputationTree& t, int n, std::span<const StateId> anchors) {
  if (n < 0) throw std::invalid_argument("level: negative index");
  if (n > t.height()) return {};
  auto is_anchor = [&](NodeId v) {
    return std::find(anchors.begin(), anchors.end(), t.label(v)) != anchors.end();
  };

  std::vector<NodeId> nodes{t.root()};
  std::vector<std::vector<char>> less{{0}};
  for (int k = 1; k <= n; ++k) {
    std::vector<NodeId> next = t.level_nodes(k);
    std::vector<std::size_t> parent_pos(next.size());
    for (std::size_t x = 0; x < next.size(); ++x) {
      NodeId p = *t.parent(next[x]);
      parent_pos[x] = static_cast<std::size_t>(std::find(nodes.begin(), nodes.end(), p) - nodes.begin());
    }
    const std::size_t m = next.size();
    std::vector<std::vector<char>> rel(m, std::vector<char>(m, 0));
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y) {
        if (x == y) continue;
        if (is_anchor(next[y])) rel[x][y] = 1;
        if (parent_pos[x] != parent_pos[y] && less[parent_pos[x]][parent_pos[y]]) rel[x][y] = 1;
      }
    for (std::size_t z = 0; z < m; ++z)
      for (std::size_t x = 0; x < m; ++x)
        if (rel[x][z])
          for (std::size_t y = 0; y < m; ++y)
            if (rel[z][y]) rel[x][y] = 1;
    nodes = std::move(next);
    less = std::move(rel);
  }

  const std::size_t m = nodes.size();
  std::vector<std::size_t> rank(m, 0);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      if (x == y) continue;
      if (less[x][y] == less[y][x]) throw OrderingNotTotal(n, nodes[x], nodes[y]);
      if (less[y][x]) ++rank[x];
    }
  std::vector<NodeId> out(m);
  for (std::size_t x = 0; x < m; ++x) out[rank[x]] = nodes[x];
  return out;
}

bool is_complete_level(const ComputationTree& t, int n) {
  return n <= t.height() && t.level_nodes(n).size() == static_cast<std::size_t>(n) + 1;
}

}  // namespace atlir
