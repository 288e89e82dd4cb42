#include "atlir/cgs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace atlir {

UnknownState::UnknownState(std::string_view name)
    : LookupError("unknown state '" + std::string(name) + "'") {}
UnknownAction::UnknownAction(std::string_view name)
    : LookupError("unknown action '" + std::string(name) + "'") {}
UnknownAgent::UnknownAgent(int agent)
    : LookupError("unknown agent " + std::to_string(agent)) {}
UnknownProp::UnknownProp(std::string_view name)
    : LookupError("unknown proposition '" + std::string(name) + "'") {}

namespace {

template <class Id>
std::optional<Id> find_in(const std::unordered_map<std::string, Id>& index,
                          std::string_view name) {
  auto it = index.find(std::string(name));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

}  // namespace

// ---------------------------------------------------------------------------
// Cgs accessors

void Cgs::check_state(StateId s) const {
  if (s.value < 0 || s.index() >= state_names_.size())
    throw UnknownState("#" + std::to_string(s.value));
}

void Cgs::check_agent(AgentId i) const {
  if (i.value < 1 || i.value > agent_count_) throw UnknownAgent(i.value);
}

const std::string& Cgs::state_name(StateId s) const {
  check_state(s);
  return state_names_[s.index()];
}

const std::string& Cgs::action_name(ActionId a) const {
  if (a.value < 0 || a.index() >= action_names_.size())
    throw UnknownAction("#" + std::to_string(a.value));
  return action_names_[a.index()];
}

const std::string& Cgs::prop_name(PropId p) const {
  if (p.value < 0 || p.index() >= prop_names_.size())
    throw UnknownProp("#" + std::to_string(p.value));
  return prop_names_[p.index()];
}

std::optional<StateId> Cgs::find_state(std::string_view name) const {
  return find_in(state_index_, name);
}
std::optional<ActionId> Cgs::find_action(std::string_view name) const {
  return find_in(action_index_, name);
}
std::optional<PropId> Cgs::find_prop(std::string_view name) const {
  return find_in(prop_index_, name);
}

StateId Cgs::state(std::string_view name) const {
  if (auto s = find_state(name)) return *s;
  throw UnknownState(name);
}
ActionId Cgs::action(std::string_view name) const {
  if (auto a = find_action(name)) return *a;
  throw UnknownAction(name);
}
PropId Cgs::prop(std::string_view name) const {
  if (auto p = find_prop(name)) return *p;
  throw UnknownProp(name);
}
AgentId Cgs::agent(int number) const {
  AgentId i(number);
  check_agent(i);
  return i;
}

std::vector<StateId> Cgs::states() const {
  std::vector<StateId> out;
  out.reserve(state_names_.size());
  for (std::size_t s = 0; s < state_names_.size(); ++s) out.emplace_back(static_cast<int>(s));
  return out;
}

std::vector<AgentId> Cgs::agents() const {
  std::vector<AgentId> out;
  for (int i = 1; i <= agent_count_; ++i) out.emplace_back(i);
  return out;
}

bool Cgs::holds(StateId s, PropId p) const {
  const auto& l = labels_[s.index()];
  return std::binary_search(l.begin(), l.end(), p);
}

std::span<const PropId> Cgs::label(StateId s) const {
  check_state(s);
  return labels_[s.index()];
}

std::span<const ActionId> Cgs::avail(AgentId i, StateId s) const {
  check_agent(i);
  check_state(s);
  return avail_[i.index()][s.index()];
}

bool Cgs::is_available(AgentId i, StateId s, ActionId a) const {
  auto d = avail(i, s);
  return std::binary_search(d.begin(), d.end(), a);
}

int Cgs::block_of(AgentId i, StateId s) const {
  check_agent(i);
  check_state(s);
  return block_of_[i.index()][s.index()];
}

const std::vector<std::vector<StateId>>& Cgs::obs_blocks(AgentId i) const {
  check_agent(i);
  return obs_blocks_[i.index()];
}

std::uint64_t Cgs::encode(std::span<const ActionId> a) const {
  std::uint64_t code = 0;
  for (ActionId x : a) code = code * action_names_.size() + x.index();
  return code;
}

std::optional<StateId> Cgs::raw_successor(StateId s, std::span<const ActionId> a) const {
  check_state(s);
  if (static_cast<int>(a.size()) != agent_count_) return std::nullopt;
  for (ActionId x : a)
    if (x.value < 0 || x.index() >= action_names_.size()) return std::nullopt;
  if (!delta_index_.empty() || delta_.empty()) {
    std::uint64_t key = s.index();
    for (std::size_t k = 0; k < a.size(); ++k) key *= action_names_.size();
    key += encode(a);
    auto it = delta_index_.find(key);
    if (it == delta_index_.end()) return std::nullopt;
    return it->second;
  }
  auto it = delta_.find({s, JointAction(a.begin(), a.end())});
  if (it == delta_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// CgsBuilder

CgsBuilder::CgsBuilder(int agent_count) {
  g_.agent_count_ = agent_count;
  if (agent_count > 0) {
    g_.obs_blocks_.resize(agent_count);
    g_.avail_.resize(agent_count);
    obs_set_.assign(agent_count, false);
  }
}

StateId CgsBuilder::add_state(std::string name) {
  if (auto s = g_.find_state(name)) return *s;
  StateId id(static_cast<int>(g_.state_names_.size()));
  g_.state_index_.emplace(name, id);
  g_.state_names_.push_back(std::move(name));
  g_.labels_.emplace_back();
  for (auto& per_agent : g_.avail_) per_agent.emplace_back();
  return id;
}

ActionId CgsBuilder::add_action(std::string name) {
  if (auto a = g_.find_action(name)) return *a;
  ActionId id(static_cast<int>(g_.action_names_.size()));
  g_.action_index_.emplace(name, id);
  g_.action_names_.push_back(std::move(name));
  return id;
}

PropId CgsBuilder::add_prop(std::string name) {
  if (auto p = g_.find_prop(name)) return *p;
  PropId id(static_cast<int>(g_.prop_names_.size()));
  g_.prop_index_.emplace(name, id);
  g_.prop_names_.push_back(std::move(name));
  return id;
}

CgsBuilder& CgsBuilder::label(std::string_view state, std::string_view prop) {
  return label(g_.state(state), g_.prop(prop));
}

CgsBuilder& CgsBuilder::label(StateId s, PropId p) {
  auto& l = g_.labels_.at(s.index());
  auto it = std::lower_bound(l.begin(), l.end(), p);
  if (it == l.end() || *it != p) l.insert(it, p);
  return *this;
}

CgsBuilder& CgsBuilder::observation(int agent, std::vector<std::vector<std::string>> blocks) {
  std::vector<std::vector<StateId>> ids;
  for (const auto& b : blocks) {
    auto& out = ids.emplace_back();
    for (const auto& name : b) out.push_back(g_.state(name));
  }
  return observation(agent, std::move(ids));
}

CgsBuilder& CgsBuilder::observation(int agent, std::vector<std::vector<StateId>> blocks) {
  g_.check_agent(AgentId(agent));
  g_.obs_blocks_[agent - 1] = std::move(blocks);
  obs_set_[agent - 1] = true;
  return *this;
}

CgsBuilder& CgsBuilder::identity_observation(int agent) {
  std::vector<std::vector<StateId>> blocks;
  for (StateId s : g_.states()) blocks.push_back({s});
  return observation(agent, std::move(blocks));
}

CgsBuilder& CgsBuilder::avail(int agent, std::string_view state,
                              const std::vector<std::string>& actions) {
  std::vector<ActionId> ids;
  for (const auto& a : actions) ids.push_back(g_.action(a));
  return avail(agent, g_.state(state), std::move(ids));
}

CgsBuilder& CgsBuilder::avail(int agent, StateId s, std::vector<ActionId> actions) {
  g_.check_agent(AgentId(agent));
  g_.check_state(s);
  std::sort(actions.begin(), actions.end());
  actions.erase(std::unique(actions.begin(), actions.end()), actions.end());
  g_.avail_[agent - 1][s.index()] = std::move(actions);
  return *this;
}

CgsBuilder& CgsBuilder::transition(std::string_view from, const std::vector<std::string>& joint,
                                   std::string_view to) {
  JointAction a;
  for (const auto& x : joint) a.push_back(g_.action(x));
  return transition(g_.state(from), std::move(a), g_.state(to));
}

CgsBuilder& CgsBuilder::transition(StateId from, JointAction joint, StateId to) {
  g_.check_state(from);
  g_.check_state(to);
  g_.delta_[{from, std::move(joint)}] = to;
  return *this;
}

Cgs CgsBuilder::build() const {
  Cgs g = g_;
  const std::size_t n = g.state_count();
  g.block_of_.assign(g.obs_blocks_.size(), std::vector<int>(n, -1));
  for (std::size_t i = 0; i < g.obs_blocks_.size(); ++i) {
    if (!obs_set_[i]) {
      // Unspecified observation defaults to identity.
      g.obs_blocks_[i].clear();
      for (StateId s : g.states()) g.obs_blocks_[i].push_back({s});
    }
    auto& blocks = g.obs_blocks_[i];
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                [](const auto& b) { return b.empty(); }),
                 blocks.end());
    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const auto& x, const auto& y) { return x.front() < y.front(); });
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (StateId s : blocks[b])
        if (g.block_of_[i][s.index()] < 0) g.block_of_[i][s.index()] = static_cast<int>(b);
  }

  // Flat transition index when the key space fits in 64 bits.
  const double bits = std::log2(static_cast<double>(std::max<std::size_t>(n, 1))) +
                      g.agent_count_ *
                          std::log2(static_cast<double>(std::max<std::size_t>(g.action_count(), 2)));
  g.delta_index_.clear();
  if (bits < 62.0 && g.action_count() > 0) {
    for (const auto& [key, to] : g.delta_) {
      const auto& [from, joint] = key;
      if (static_cast<int>(joint.size()) != g.agent_count_) continue;
      std::uint64_t code = from.index();
      for (std::size_t k = 0; k < joint.size(); ++k) code *= g.action_count();
      code += g.encode(joint);
      g.delta_index_.emplace(code, to);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Validation and queries

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NoAgents: return "NoAgents";
    case ViolationKind::NoStates: return "NoStates";
    case ViolationKind::NoProps: return "NoProps";
    case ViolationKind::NoActions: return "NoActions";
    case ViolationKind::EmptyAvail: return "EmptyAvail";
    case ViolationKind::AvailNotUniform: return "AvailNotUniform";
    case ViolationKind::ObsNotPartition: return "ObsNotPartition";
    case ViolationKind::PartialOnAvailableTuple: return "PartialOnAvailableTuple";
    case ViolationKind::DefinedOnUnavailableTuple: return "DefinedOnUnavailableTuple";
    case ViolationKind::WrongArity: return "WrongArity";
  }
  return "?";
}

std::vector<Violation> validate_cgs(const Cgs& g) {
  std::vector<Violation> out;
  auto add = [&](ViolationKind k, std::string detail) { out.push_back({k, std::move(detail)}); };

  if (g.agent_count() < 1) add(ViolationKind::NoAgents, "agent count must be positive");
  if (g.state_count() == 0) add(ViolationKind::NoStates, "no states declared");
  if (g.prop_count() == 0) add(ViolationKind::NoProps, "no propositions declared");
  if (g.action_count() == 0) add(ViolationKind::NoActions, "no actions declared");
  if (g.agent_count() < 1) return out;

  for (AgentId i : g.agents()) {
    const auto& blocks = g.obs_blocks(i);
    std::vector<int> seen(g.state_count(), 0);
    for (const auto& b : blocks)
      for (StateId s : b) ++seen[s.index()];
    for (StateId s : g.states()) {
      if (seen[s.index()] != 1) {
        add(ViolationKind::ObsNotPartition,
            "agent " + std::to_string(i.value) + ": state " + g.state_name(s) +
                (seen[s.index()] == 0 ? " is in no block" : " is in several blocks"));
      }
      if (g.avail(i, s).empty())
        add(ViolationKind::EmptyAvail,
            "agent " + std::to_string(i.value) + " has no action at " + g.state_name(s));
    }
    for (const auto& b : blocks) {
      for (StateId s : b) {
        auto d0 = g.avail(i, b.front());
        auto d1 = g.avail(i, s);
        if (!std::equal(d0.begin(), d0.end(), d1.begin(), d1.end()))
          add(ViolationKind::AvailNotUniform,
              "agent " + std::to_string(i.value) + ": d(" + g.state_name(b.front()) +
                  ") != d(" + g.state_name(s) + ") although the states are indistinguishable");
      }
    }
  }

  for (StateId s : g.states()) {
    for (const JointAction& a : available_tuples(g, s)) {
      if (!g.raw_successor(s, a))
        add(ViolationKind::PartialOnAvailableTuple,
            "no transition from " + g.state_name(s) + " on " + format_joint_action(g, a));
    }
  }
  for (const auto& [key, to] : g.transitions()) {
    const auto& [from, joint] = key;
    if (static_cast<int>(joint.size()) != g.agent_count()) {
      add(ViolationKind::WrongArity,
          "transition from " + g.state_name(from) + " has " + std::to_string(joint.size()) +
              " actions");
      continue;
    }
    for (AgentId i : g.agents()) {
      if (!g.is_available(i, from, joint[i.index()])) {
        add(ViolationKind::DefinedOnUnavailableTuple,
            "transition from " + g.state_name(from) + " on " + format_joint_action(g, joint) +
                " uses an action unavailable to agent " + std::to_string(i.value));
        break;
      }
    }
  }
  return out;
}

std::optional<StateId> successor(const Cgs& g, StateId s, std::span<const ActionId> a) {
  if (static_cast<int>(a.size()) != g.agent_count()) return std::nullopt;
  for (AgentId i : g.agents())
    if (!g.is_available(i, s, a[i.index()])) return std::nullopt;
  return g.raw_successor(s, a);
}

std::optional<StateId> successor(const Cgs& g, std::string_view s,
                                 const std::vector<std::string>& a) {
  StateId from = g.state(s);
  JointAction joint;
  for (const auto& x : a) joint.push_back(g.action(x));
  return successor(g, from, joint);
}

bool obs_equiv_states(const Cgs& g, AgentId i, StateId s, StateId t) {
  if (s == t) {
    g.block_of(i, s);  // validates identifiers
    return true;
  }
  int bs = g.block_of(i, s);
  return bs >= 0 && bs == g.block_of(i, t);
}

bool obs_equiv_histories(const Cgs& g, AgentId i, std::span<const StateId> a,
                         std::span<const StateId> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!obs_equiv_states(g, i, a[k], b[k])) return false;
  return true;
}

std::vector<JointAction> available_tuples(const Cgs& g, StateId s) {
  std::vector<JointAction> out;
  if (g.agent_count() < 1) return out;
  std::vector<std::span<const ActionId>> choices;
  for (AgentId i : g.agents()) {
    choices.push_back(g.avail(i, s));
    if (choices.back().empty()) return out;
  }
  std::vector<std::size_t> idx(choices.size(), 0);
  while (true) {
    JointAction a;
    for (std::size_t k = 0; k < choices.size(); ++k) a.push_back(choices[k][idx[k]]);
    out.push_back(std::move(a));
    std::size_t k = choices.size();
    while (k > 0) {
      --k;
      if (++idx[k] < choices[k].size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
  }
}

std::string format_joint_action(const Cgs& g, std::span<const ActionId> a) {
  std::string out = "(";
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k) out += ',';
    out += g.action_name(a[k]);
  }
  return out + ")";
}

}  // namespace atlir
