#include "atlir/strategy.hpp"

#include <algorithm>
#include <string>

namespace atlir {

ObservationHistory observe(const Cgs& g, AgentId i, std::span<const StateId> h) {
  ObservationHistory out;
  out.reserve(h.size());
  for (StateId s : h) out.push_back(g.block_of(i, s));
  return out;
}

namespace {

std::string key_text(const ObservationHistory& key) {
  std::string out = "[";
  for (std::size_t k = 0; k < key.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(key[k]);
  }
  return out + "]";
}

}  // namespace

StrategyUndefined::StrategyUndefined(AgentId agent, ObservationHistory key)
    : std::runtime_error("strategy of agent " + std::to_string(agent.value) +
                         " undefined on observation history " + key_text(key)),
      agent_(agent),
      key_(std::move(key)) {}

AgentStrategy AgentStrategy::from_table(AgentId agent, Table table) {
  return AgentStrategy(agent, std::make_shared<const Table>(std::move(table)), nullptr);
}

AgentStrategy AgentStrategy::from_procedure(AgentId agent, Procedure procedure) {
  return AgentStrategy(agent, nullptr, std::make_shared<const Procedure>(std::move(procedure)));
}

ActionId AgentStrategy::action(const Cgs& g, std::span<const StateId> h) const {
  if (h.empty()) throw std::invalid_argument("strategy queried on an empty history");
  if (table_) {
    ObservationHistory key = observe(g, agent_, h);
    auto it = table_->find(key);
    if (it == table_->end()) throw StrategyUndefined(agent_, std::move(key));
    return it->second;
  }
  return (*procedure_)(h);
}

TeamStrategy::TeamStrategy(std::vector<AgentStrategy> strategies) {
  for (auto& s : strategies) {
    int key = s.agent().value;
    if (!strategies_.emplace(key, std::move(s)).second)
      throw std::invalid_argument("two strategies for agent " + std::to_string(key));
  }
}

const AgentStrategy& TeamStrategy::at(AgentId i) const {
  auto it = strategies_.find(i.value);
  if (it == strategies_.end())
    throw std::out_of_range("agent " + std::to_string(i.value) + " is not in the team");
  return it->second;
}

std::vector<AgentId> TeamStrategy::members() const {
  std::vector<AgentId> out;
  for (const auto& [k, _] : strategies_) out.emplace_back(k);
  return out;
}

std::vector<JointAction> compatible_tuples(const Cgs& g, const TeamStrategy& team,
                                           std::span<const StateId> h) {
  if (h.empty()) throw std::invalid_argument("compatible_tuples on an empty history");
  const StateId last = h.back();
  std::vector<std::vector<ActionId>> choices;
  for (AgentId i : g.agents()) {
    if (team.contains(i)) {
      ActionId a = team.at(i).action(g, h);
      if (!g.is_available(i, last, a))
        throw StrategyIncompatible("agent " + std::to_string(i.value) + " plays " +
                                   g.action_name(a) + " which is unavailable at " +
                                   g.state_name(last));
      choices.push_back({a});
    } else {
      auto d = g.avail(i, last);
      choices.emplace_back(d.begin(), d.end());
    }
  }
  std::vector<JointAction> out{JointAction{}};
  for (const auto& c : choices) {
    std::vector<JointAction> next;
    next.reserve(out.size() * c.size());
    for (const auto& prefix : out)
      for (ActionId a : c) {
        JointAction t = prefix;
        t.push_back(a);
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

std::set<History> outcomes(const Cgs& g, StateId s, const TeamStrategy& team, int depth) {
  if (depth < 0) throw std::invalid_argument("outcomes: negative depth");
  std::set<History> frontier{History{s}};
  for (int d = 0; d < depth; ++d) {
    std::set<History> next;
    for (const History& h : frontier) {
      for (const JointAction& a : compatible_tuples(g, team, h)) {
        if (auto t = successor(g, h.back(), a)) {
          History e = h;
          e.push_back(*t);
          next.insert(std::move(e));
        }
      }
    }
    frontier = std::move(next);
  }
  return frontier;
}

namespace {

std::optional<UniformityViolation> scan_levels(const Cgs& g, const TeamStrategy& reach,
                                               const AgentStrategy& sigma, StateId root,
                                               int depth) {
  if (sigma.is_table()) return std::nullopt;
  std::set<History> frontier{History{root}};
  for (int d = 0; d <= depth; ++d) {
    std::map<ObservationHistory, std::pair<History, ActionId>> seen;
    for (const History& h : frontier) {
      ActionId a = sigma.action(g, h);
      auto [it, inserted] = seen.emplace(observe(g, sigma.agent(), h), std::make_pair(h, a));
      if (!inserted && it->second.second != a)
        return UniformityViolation{it->second.first, h, it->second.second, a};
    }
    if (d == depth) break;
    std::set<History> next;
    for (const History& h : frontier)
      for (const JointAction& a : compatible_tuples(g, reach, h))
        if (auto t = successor(g, h.back(), a)) {
          History e = h;
          e.push_back(*t);
          next.insert(std::move(e));
        }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

std::optional<UniformityViolation> find_uniformity_violation(const Cgs& g,
                                                             const TeamStrategy& team,
                                                             AgentId i, StateId root,
                                                             int depth) {
  if (depth < 0) throw std::invalid_argument("is_uniform: negative depth");
  return scan_levels(g, team, team.at(i), root, depth);
}

bool is_uniform(const Cgs& g, const TeamStrategy& team, AgentId i, StateId root, int depth) {
  return !find_uniformity_violation(g, team, i, root, depth).has_value();
}

bool is_uniform(const Cgs& g, const AgentStrategy& strategy, StateId root, int depth) {
  TeamStrategy alone({strategy});
  return !scan_levels(g, alone, strategy, root, depth).has_value();
}

StrategyDump dump_team(const TeamStrategy& team) {
  StrategyDump out;
  for (AgentId i : team.members()) {
    const auto* table = team.at(i).table();
    if (!table) continue;
    for (const auto& [key, action] : *table) out.push_back({i, key, action});
  }
  return out;
}

TeamStrategy team_from_dump(const StrategyDump& dump) {
  std::map<int, AgentStrategy::Table> tables;
  for (const auto& e : dump) tables[e.agent.value][e.obs_history] = e.action;
  std::vector<AgentStrategy> members;
  for (auto& [agent, table] : tables)
    members.push_back(AgentStrategy::from_table(AgentId(agent), std::move(table)));
  return TeamStrategy(std::move(members));
}

}  // namespace atlir
