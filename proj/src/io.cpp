#include "atlir/io.hpp"

#include <fstream>
#include <sstream>

namespace atlir {

namespace {

std::string describe_violations(const std::vector<Violation>& vs) {
  std::string out = "invalid CGS:";
  for (const auto& v : vs) out += "\n  " + std::string(to_string(v.kind)) + ": " + v.detail;
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing key \"") + key + "\"");
  return *it;
}

template <class T>
T as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("wrong type for ") + what);
  }
}

}  // namespace

InvalidCgs::InvalidCgs(std::vector<Violation> violations)
    : std::runtime_error(describe_violations(violations)), violations_(std::move(violations)) {}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

// ---------------------------------------------------------------------------
// CGS

Json cgs_to_json(const Cgs& g) {
  Json j;
  j["agents"] = g.agent_count();
  Json states = Json::array();
  for (StateId s : g.states()) states.push_back(g.state_name(s));
  j["states"] = states;
  Json props = Json::array();
  for (std::size_t p = 0; p < g.prop_count(); ++p)
    props.push_back(g.prop_name(PropId(static_cast<int>(p))));
  j["props"] = props;
  Json label = Json::object();
  for (StateId s : g.states()) {
    Json l = Json::array();
    for (PropId p : g.label(s)) l.push_back(g.prop_name(p));
    label[g.state_name(s)] = l;
  }
  j["label"] = label;
  Json obs = Json::object();
  for (AgentId i : g.agents()) {
    Json blocks = Json::array();
    for (const auto& b : g.obs_blocks(i)) {
      Json block = Json::array();
      for (StateId s : b) block.push_back(g.state_name(s));
      blocks.push_back(block);
    }
    obs[std::to_string(i.value)] = blocks;
  }
  j["obs"] = obs;
  Json actions = Json::array();
  for (std::size_t a = 0; a < g.action_count(); ++a)
    actions.push_back(g.action_name(ActionId(static_cast<int>(a))));
  j["actions"] = actions;
  Json avail = Json::object();
  for (AgentId i : g.agents()) {
    Json per = Json::object();
    for (StateId s : g.states()) {
      Json l = Json::array();
      for (ActionId a : g.avail(i, s)) l.push_back(g.action_name(a));
      per[g.state_name(s)] = l;
    }
    avail[std::to_string(i.value)] = per;
  }
  j["avail"] = avail;
  Json delta = Json::array();
  for (const auto& [key, to] : g.transitions()) {
    Json joint = Json::array();
    for (ActionId a : key.second) joint.push_back(g.action_name(a));
    delta.push_back(Json::array({g.state_name(key.first), joint, g.state_name(to)}));
  }
  j["delta"] = delta;
  return j;
}

Cgs cgs_from_json(const Json& j, bool allow_invalid) {
  try {
    const int k = as<int>(field(j, "agents"), "agents");
    if (k < 0) throw ParseError("negative agent count");
    CgsBuilder b(k);
    for (const auto& s : as<std::vector<std::string>>(field(j, "states"), "states")) b.add_state(s);
    for (const auto& p : as<std::vector<std::string>>(field(j, "props"), "props")) b.add_prop(p);
    for (const auto& a : as<std::vector<std::string>>(field(j, "actions"), "actions")) b.add_action(a);

    if (auto it = j.find("label"); it != j.end())
      for (const auto& [state, props] : it->items())
        for (const auto& p : as<std::vector<std::string>>(props, "label")) b.label(state, p);

    if (auto it = j.find("obs"); it != j.end()) {
      for (const auto& [agent, blocks] : it->items()) {
        int i = 0;
        try {
          i = std::stoi(agent);
        } catch (const std::exception&) {
          throw ParseError("observation key '" + agent + "' is not an agent number");
        }
        if (i < 1 || i > k) throw ParseError("observation for unknown agent " + agent);
        b.observation(i, as<std::vector<std::vector<std::string>>>(blocks, "obs"));
      }
    }
    for (const auto& [agent, per] : field(j, "avail").items()) {
      int i = 0;
      try {
        i = std::stoi(agent);
      } catch (const std::exception&) {
        throw ParseError("avail key '" + agent + "' is not an agent number");
      }
      if (i < 1 || i > k) throw ParseError("avail for unknown agent " + agent);
      for (const auto& [state, acts] : per.items())
        b.avail(i, state, as<std::vector<std::string>>(acts, "avail"));
    }
    for (const auto& row : field(j, "delta")) {
      if (!row.is_array() || row.size() != 3) throw ParseError("delta rows are [state, [actions], state]");
      b.transition(as<std::string>(row[0], "delta"), as<std::vector<std::string>>(row[1], "delta"),
                   as<std::string>(row[2], "delta"));
    }
    Cgs g = b.build();
    if (!allow_invalid) {
      auto vs = validate_cgs(g);
      if (!vs.empty()) throw InvalidCgs(std::move(vs));
    }
    return g;
  } catch (const LookupError& e) {
    throw ParseError(e.what());
  }
}

std::string dump_cgs(const Cgs& g) { return cgs_to_json(g).dump(2) + "\n"; }

Cgs load_cgs(const std::filesystem::path& path, bool allow_invalid) {
  return cgs_from_json(read_json_file(path), allow_invalid);
}

void save_cgs(const Cgs& g, const std::filesystem::path& path) { write_text_file(path, dump_cgs(g)); }

// ---------------------------------------------------------------------------
// Turing machines and jobs

Json machine_to_json(const TuringMachine& m) {
  Json j;
  j["states"] = m.states;
  j["alphabet"] = m.alphabet;
  j["q0"] = m.initial;
  j["blank"] = m.blank;
  Json delta = Json::array();
  for (const auto& [key, act] : m.delta)
    delta.push_back(Json::array(
        {key.first, key.second, act.next, act.write, act.move == Move::L ? "L" : "R"}));
  j["delta"] = delta;
  return j;
}

TuringMachine machine_from_json(const Json& j) {
  TuringMachine m;
  m.states = as<std::vector<std::string>>(field(j, "states"), "states");
  m.alphabet = as<std::vector<std::string>>(field(j, "alphabet"), "alphabet");
  m.initial = as<std::string>(field(j, "q0"), "q0");
  m.blank = as<std::string>(field(j, "blank"), "blank");
  for (const auto& row : field(j, "delta")) {
    auto r = as<std::vector<std::string>>(row, "delta");
    if (r.size() != 5) throw ParseError("delta rows are [q, a, q', a', L|R]");
    if (r[4] != "L" && r[4] != "R") throw ParseError("move must be \"L\" or \"R\"");
    auto [it, inserted] =
        m.delta.emplace(std::make_pair(r[0], r[1]), TmAction{r[2], r[3], r[4] == "L" ? Move::L : Move::R});
    if (!inserted) throw ParseError("two transitions for (" + r[0] + "," + r[1] + ")");
  }
  return m;
}

TuringMachine load_machine(const std::filesystem::path& path) {
  return machine_from_json(read_json_file(path));
}

Job job_from_json(const Json& j) {
  Job job;
  job.cgs = as<std::string>(field(j, "cgs"), "cgs");
  job.state = as<std::string>(field(j, "state"), "state");
  job.formula = as<std::string>(field(j, "formula"), "formula");
  job.bound = as<int>(field(j, "bound"), "bound");
  return job;
}

// ---------------------------------------------------------------------------
// Results

Json dump_to_json(const Cgs& g, const StrategyDump& dump) {
  Json out = Json::array();
  for (const auto& e : dump) {
    Json row;
    row["agent"] = e.agent.value;
    row["obs_history"] = e.obs_history;
    row["action"] = g.action_name(e.action);
    out.push_back(row);
  }
  return out;
}

StrategyDump dump_from_json(const Cgs& g, const Json& j) {
  StrategyDump out;
  try {
    for (const auto& row : j)
      out.push_back({AgentId(as<int>(field(row, "agent"), "agent")),
                     as<ObservationHistory>(field(row, "obs_history"), "obs_history"),
                     g.action(as<std::string>(field(row, "action"), "action"))});
  } catch (const LookupError& e) {
    throw ParseError(e.what());
  }
  return out;
}

Json verdict_to_json(const Cgs& g, const Verdict& v) {
  Json j;
  j["value"] = std::string(to_string(v.value));
  j["bound_used"] = v.bound_used;
  if (v.path) {
    Json p = Json::array();
    for (StateId s : *v.path) p.push_back(g.state_name(s));
    j[v.value == Truth::True ? "witness_path" : "counterexample"] = p;
  }
  if (v.strategy) j["strategy"] = dump_to_json(g, *v.strategy);
  return j;
}

Json claim_report_to_json(const ClaimReport& r) {
  Json j;
  j["depth"] = r.depth;
  j["err_level"] = r.err_level ? Json(*r.err_level) : Json(nullptr);
  j["all_pass"] = r.all_pass();
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json x;
    x["claim"] = row.claim;
    x["subclaim"] = row.subclaim;
    x["level"] = row.level;
    x["pass"] = row.pass;
    x["detail"] = row.detail;
    rows.push_back(x);
  }
  j["rows"] = rows;
  return j;
}

// ---------------------------------------------------------------------------
// Tree exports

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string tree_to_dot(const Cgs& g, const ComputationTree& t,
                        const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const auto& c : comments) out << "// " << c << "\n";
  out << "digraph T {\n  node [shape=box];\n";
  for (std::size_t k = 0; k < t.size(); ++k) {
    NodeId v = static_cast<NodeId>(k);
    std::string props;
    for (PropId p : g.label(t.label(v))) props += (props.empty() ? "" : ",") + g.prop_name(p);
    out << "  n" << v << " [label=\"" << dot_escape(g.state_name(t.label(v)) + " | " + props) << "\"];\n";
  }
  for (std::size_t k = 1; k < t.size(); ++k) {
    NodeId v = static_cast<NodeId>(k);
    out << "  n" << *t.parent(v) << " -> n" << v << " [label=\""
        << dot_escape(format_joint_action(g, t.edge_label(v))) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

Json levels_to_json(const Cgs& g, const ComputationTree& t, std::span<const StateId> anchors) {
  Json j = Json::object();
  for (int n = 0; n <= t.height(); ++n) {
    std::vector<NodeId> nodes;
    try {
      nodes = level(t, n, anchors);
    } catch (const OrderingNotTotal&) {
      nodes = t.level_nodes(n);
    }
    Json l = Json::array();
    for (NodeId v : nodes) l.push_back(g.state_name(t.label(v)));
    j["level_" + std::to_string(n)] = l;
  }
  return j;
}

}  // namespace atlir
