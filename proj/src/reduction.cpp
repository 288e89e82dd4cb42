#include "atlir/reduction.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <sstream>

namespace atlir {

std::string move_action_name(const MoveKey& m) {
  return "(" + m.from + "," + m.to + "," + (m.dir == Move::L ? "L" : "R") + ")";
}

// ---------------------------------------------------------------------------
// build_cgs

namespace {

std::string cell_name(const std::string& a) { return "s_{" + a + "}"; }
std::string head_name(const std::string& q, const std::string& a) {
  return "s_{" + q + "," + a + "}";
}
std::string move_state_name(const MoveKey& m) {
  return "s_{" + m.from + "," + m.to + "," + (m.dir == Move::L ? "L" : "R") + "}";
}

}  // namespace

ReductionCgs build_cgs(const TuringMachine& m) {
  m.validate();
  ReductionCgs r;
  r.machine = m;

  std::set<MoveKey> moves;
  for (const auto& [key, act] : m.delta) moves.insert(MoveKey{key.first, act.next, act.move});

  CgsBuilder b(3);
  std::vector<ReductionStateInfo> info;
  auto fixed = [&](const char* name, ReductionStateKind kind) {
    info.push_back({kind, {}, {}, std::nullopt});
    return b.add_state(name);
  };
  r.init = fixed("s_init", ReductionStateKind::Init);
  r.init2 = fixed("s_init'", ReductionStateKind::Init2);
  r.lb = fixed("s_lb", ReductionStateKind::Lb);
  r.lb2 = fixed("s_lb'", ReductionStateKind::Lb2);
  r.gen = fixed("s_gen", ReductionStateKind::Gen);
  r.tr = fixed("s_tr", ReductionStateKind::Tr);
  r.tr2 = fixed("s_tr'", ReductionStateKind::Tr2);
  r.err = fixed("s_err", ReductionStateKind::Err);
  for (const auto& a : m.alphabet) {
    info.push_back({ReductionStateKind::Cell, {}, a, std::nullopt});
    r.cell[a] = b.add_state(cell_name(a));
  }
  for (const auto& q : m.states)
    for (const auto& a : m.alphabet) {
      info.push_back({ReductionStateKind::Head, q, a, std::nullopt});
      r.head[{q, a}] = b.add_state(head_name(q, a));
    }
  for (const auto& mv : moves) {
    info.push_back({ReductionStateKind::MoveState, mv.from, {}, mv});
    r.move_state[mv] = b.add_state(move_state_name(mv));
  }
  r.info = std::move(info);

  r.idle = b.add_action("idle");
  r.start = b.add_action("(" + m.initial + ")");
  for (const auto& mv : moves) r.move_action[mv] = b.add_action(move_action_name(mv));
  r.br1 = b.add_action("br1");
  r.br2 = b.add_action("br2");

  r.p1 = b.add_prop("p1");
  r.p2 = b.add_prop("p2");
  r.ok = b.add_prop("ok");

  // Build a throwaway snapshot to enumerate ids.
  const std::size_t n_states = r.info.size();
  for (std::size_t s = 0; s < n_states; ++s) {
    StateId id(static_cast<int>(s));
    if (id == r.err) continue;
    b.label(id, r.ok);
  }
  b.label(r.gen, r.p1);
  b.label(r.tr, r.p2);

  auto split_by = [&](StateId marked) {
    std::vector<StateId> in{marked}, out;
    for (std::size_t s = 0; s < n_states; ++s)
      if (StateId(static_cast<int>(s)) != marked) out.emplace_back(static_cast<int>(s));
    return std::vector<std::vector<StateId>>{in, out};
  };
  b.observation(1, split_by(r.gen));
  b.observation(2, split_by(r.tr));
  b.identity_observation(3);

  std::vector<ActionId> player_actions{r.idle, r.start};
  for (const auto& [mv, a] : r.move_action) player_actions.push_back(a);
  for (std::size_t s = 0; s < n_states; ++s) {
    StateId id(static_cast<int>(s));
    b.avail(1, id, player_actions);
    b.avail(2, id, player_actions);
    if (id == r.init || id == r.gen || id == r.tr)
      b.avail(3, id, {r.br1, r.br2});
    else
      b.avail(3, id, {r.idle});
  }

  const ActionId i = r.idle;
  auto rules_for = [&](StateId s) {
    std::map<JointAction, StateId> rules;
    const auto& d = r.info[s.index()];
    switch (d.kind) {
      case ReductionStateKind::Init:
        rules[{i, i, r.br1}] = r.init2;
        rules[{i, i, r.br2}] = r.gen;
        break;
      case ReductionStateKind::Init2:
        rules[{i, i, i}] = r.lb;
        break;
      case ReductionStateKind::Lb:
        rules[{i, r.start, i}] = r.lb2;
        break;
      case ReductionStateKind::Lb2:
        rules[{i, i, i}] = r.lb2;
        break;
      case ReductionStateKind::Gen:
        rules[{i, i, r.br1}] = r.cell.at(m.blank);
        rules[{i, i, r.br2}] = r.tr;
        break;
      case ReductionStateKind::Tr:
        rules[{i, i, r.br1}] = r.tr2;
        rules[{i, i, r.br2}] = r.gen;
        break;
      case ReductionStateKind::Tr2:
        rules[{i, i, i}] = r.tr2;
        for (const auto& [mv, act] : r.move_action) {
          if (mv.dir == Move::R)
            rules[{act, i, i}] = r.move_state.at(mv);
          else
            rules[{i, act, i}] = r.move_state.at(mv);
        }
        break;
      case ReductionStateKind::Err:
        break;
      case ReductionStateKind::Cell:
        rules[{i, i, i}] = s;
        if (d.symbol == m.blank) rules[{i, r.start, i}] = r.head.at({m.initial, m.blank});
        // The head enters the cell in the target state q' of the move.
        for (const auto& [mv, act] : r.move_action) {
          if (mv.dir == Move::R)
            rules[{i, act, i}] = r.head.at({mv.to, d.symbol});
          else
            rules[{act, i, i}] = r.head.at({mv.to, d.symbol});
        }
        break;
      case ReductionStateKind::Head:
        if (const TmAction* t = m.transition(d.state, d.symbol)) {
          ActionId act = r.move_action.at(MoveKey{d.state, t->next, t->move});
          if (t->move == Move::R)
            rules[{act, i, i}] = r.cell.at(t->write);
          else
            rules[{i, act, i}] = r.cell.at(t->write);
        }
        break;
      case ReductionStateKind::MoveState: {
        ActionId act = r.move_action.at(*d.move);
        if (d.move->dir == Move::R)
          rules[{i, act, i}] = r.tr2;
        else
          rules[{act, i, i}] = r.tr2;
        break;
      }
    }
    return rules;
  };

  // Every available tuple not covered by a rule leads to s_err; s_err is
  // absorbing.
  Cgs shape = b.build();
  for (StateId s : shape.states()) {
    auto rules = rules_for(s);
    for (const JointAction& a : available_tuples(shape, s)) {
      auto it = rules.find(a);
      b.transition(s, a, it == rules.end() ? r.err : it->second);
    }
  }
  r.cgs = b.build();
  return r;
}

// ---------------------------------------------------------------------------
// History types

namespace {

bool is_gen_or_tr(const ReductionCgs& r, StateId s) { return s == r.gen || s == r.tr; }

}  // namespace

bool is_type2(const ReductionCgs& r, std::span<const StateId> h) {
  return h.size() >= 2 && h[0] == r.init && h[1] == r.gen;
}

HistoryType classify_history(const ReductionCgs& r, std::span<const StateId> h) {
  if (h.empty()) return {};
  if (h.size() == 1 && h[0] == r.init) return {HistoryKind::Root, 0};
  if (h.size() >= 2 && h[0] == r.init && h[1] == r.init2) return {HistoryKind::Type1, 0};
  if (!is_type2(r, h)) return {};
  std::size_t p = 1;
  while (p < h.size() && h[p] == (p % 2 == 1 ? r.gen : r.tr)) ++p;
  for (std::size_t k = p; k < h.size(); ++k)
    if (is_gen_or_tr(r, h[k])) return {};
  const int matched = static_cast<int>(p) - 1;
  if (matched % 2 == 1) return {HistoryKind::Type2Open, (matched + 1) / 2};
  return {HistoryKind::Type2Closed, matched / 2};
}

std::string to_string(const HistoryType& t) {
  switch (t.kind) {
    case HistoryKind::Root: return "root";
    case HistoryKind::Type1: return "1";
    case HistoryKind::Type2Open:
      return "2(" + std::to_string(t.index) + ")(" + std::to_string(t.index - 1) + ")";
    case HistoryKind::Type2Closed:
      return "2(" + std::to_string(t.index) + ")(" + std::to_string(t.index) + ")";
    case HistoryKind::Other: return "other";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// sigma

namespace {

// The configuration sigma consults on a history of length 3+2j-1 or 3+2j is
// the one reached after j-1 steps; nullopt once the machine has halted.
std::optional<Configuration> simulated(const TuringMachine& m, int j) {
  if (j < 1) return std::nullopt;
  auto run_result = run(m, j - 1);
  if (run_result.halted_at) return std::nullopt;
  return run_result.config;
}

// (q, q', X) when the configuration has its head on `cell` (0-based) and
// delta moves in direction `dir` there.
std::optional<MoveKey> move_at(const TuringMachine& m, const Configuration& c, std::size_t cell,
                               Move dir) {
  if (c.head != cell) return std::nullopt;
  const TmAction* t = m.transition(c.state, c.tape[c.head]);
  if (!t || t->move != dir) return std::nullopt;
  return MoveKey{c.state, t->next, dir};
}

struct SigmaContext {
  ReductionCgs r;

  ActionId action_for(const std::optional<MoveKey>& mv) const {
    if (!mv) return r.idle;
    auto it = r.move_action.find(*mv);
    return it == r.move_action.end() ? r.idle : it->second;
  }

  ActionId agent1(std::span<const StateId> h) const {
    const HistoryType t = classify_history(r, h);
    const int len = static_cast<int>(h.size());
    const auto kind = r.describe(h.back()).kind;
    const auto& last = r.describe(h.back());

    // sigma_1(alpha s_{q,a}) = (q,q',R) = sigma_1(alpha' s_tr')
    if (((kind == ReductionStateKind::Head && t.kind == HistoryKind::Type2Open) ||
         (kind == ReductionStateKind::Tr2 && t.kind == HistoryKind::Type2Closed)) &&
        len >= 4 && len % 2 == 0) {
      if (auto c = simulated(r.machine, (len - 2) / 2))
        return action_for(move_at(r.machine, *c, static_cast<std::size_t>(t.index - 1), Move::R));
      return r.idle;
    }
    // sigma_1(alpha s_a) = (q,q',L) = sigma_1(alpha' s_{q,q',L})
    if (((kind == ReductionStateKind::Cell && t.kind == HistoryKind::Type2Open) ||
         (kind == ReductionStateKind::MoveState && last.move->dir == Move::L &&
          t.kind == HistoryKind::Type2Closed)) &&
        len >= 5 && len % 2 == 1) {
      if (auto c = simulated(r.machine, (len - 3) / 2))
        return action_for(move_at(r.machine, *c, static_cast<std::size_t>(t.index), Move::L));
      return r.idle;
    }
    return r.idle;
  }

  ActionId agent2(std::span<const StateId> h) const {
    const HistoryType t = classify_history(r, h);
    const int len = static_cast<int>(h.size());
    const auto& last = r.describe(h.back());
    const auto kind = last.kind;

    if (t.kind == HistoryKind::Type1)
      return (len == 3 && h[2] == r.lb) ? r.start : r.idle;
    if (len == 3 && t.kind == HistoryKind::Type2Open && t.index == 1 &&
        h[2] == r.cell.at(r.machine.blank))
      return r.start;

    // sigma_2(alpha s_{q,q',R}) = (q,q',R) = sigma_2(alpha' s_a), alpha' s_a of type 2(i+1)(i)
    {
      int i = 0;
      if (kind == ReductionStateKind::MoveState && last.move->dir == Move::R &&
          t.kind == HistoryKind::Type2Closed)
        i = t.index;
      else if (kind == ReductionStateKind::Cell && t.kind == HistoryKind::Type2Open && t.index >= 2)
        i = t.index - 1;
      if (i >= 1 && len >= 5 && len % 2 == 1) {
        if (auto c = simulated(r.machine, (len - 3) / 2))
          return action_for(move_at(r.machine, *c, static_cast<std::size_t>(i - 1), Move::R));
        return r.idle;
      }
    }
    // sigma_2(alpha s_tr') = (q,q',L) = sigma_2(alpha' s_{q,a}), alpha' s_{q,a} of type 2(i+1)(i)
    {
      int i = 0;
      if (kind == ReductionStateKind::Tr2 && t.kind == HistoryKind::Type2Closed)
        i = t.index;
      else if (kind == ReductionStateKind::Head && t.kind == HistoryKind::Type2Open && t.index >= 2)
        i = t.index - 1;
      if (i >= 1 && len >= 4 && len % 2 == 0) {
        if (auto c = simulated(r.machine, (len - 2) / 2))
          return action_for(move_at(r.machine, *c, static_cast<std::size_t>(i), Move::L));
        return r.idle;
      }
    }
    return r.idle;
  }
};

}  // namespace

TeamStrategy simulation_strategy(const ReductionCgs& r) {
  auto ctx = std::make_shared<const SigmaContext>(SigmaContext{r});
  return TeamStrategy({
      AgentStrategy::from_procedure(AgentId(1),
                                    [ctx](std::span<const StateId> h) { return ctx->agent1(h); }),
      AgentStrategy::from_procedure(AgentId(2),
                                    [ctx](std::span<const StateId> h) { return ctx->agent2(h); }),
  });
}

// ---------------------------------------------------------------------------
// Decoding

IncompleteLevel::IncompleteLevel(int level)
    : std::runtime_error("level " + std::to_string(level) + " is not complete") {}

std::string DecodedLevel::word() const {
  std::string out;
  for (const auto& s : symbols) out += s;
  return out;
}

DecodedLevel decode_level(const ReductionCgs& r, const ComputationTree& t, int n) {
  if (!is_complete_level(t, n)) throw IncompleteLevel(n);
  DecodedLevel out;
  const auto anchors = r.anchors();
  for (NodeId v : level(t, n, anchors)) {
    const auto& d = r.describe(t.label(v));
    if (d.kind == ReductionStateKind::Cell) out.symbols.push_back(d.symbol);
    if (d.kind == ReductionStateKind::Head) {
      out.symbols.push_back(d.state);
      out.symbols.push_back(d.symbol);
    }
  }
  return out;
}

std::optional<Configuration> as_configuration(const ReductionCgs& r, const DecodedLevel& d) {
  std::optional<std::size_t> q_pos;
  for (std::size_t k = 0; k < d.symbols.size(); ++k) {
    if (r.machine.has_state(d.symbols[k])) {
      if (q_pos) return std::nullopt;
      q_pos = k;
    } else if (!r.machine.has_symbol(d.symbols[k])) {
      return std::nullopt;
    }
  }
  if (!q_pos || *q_pos + 1 >= d.symbols.size()) return std::nullopt;
  std::vector<std::string> tape;
  for (std::size_t k = 0; k < d.symbols.size(); ++k)
    if (k != *q_pos) tape.push_back(d.symbols[k]);
  return Configuration::make(std::move(tape), *q_pos, d.symbols[*q_pos], r.machine.blank);
}

int horizon(int depth) { return depth <= 3 ? 1 : (depth - 3 + 1) / 2 + 1; }

// ---------------------------------------------------------------------------
// Claims

bool ClaimReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ClaimRow& row) { return row.pass; });
}

namespace {

enum class LevelForm { A, B, C, D, None };

std::pair<int, int> type_rank(const HistoryType& t) {
  switch (t.kind) {
    case HistoryKind::Type1: return {0, 0};
    case HistoryKind::Type2Open: return {t.index, t.index - 1};
    case HistoryKind::Type2Closed: return {t.index, t.index};
    default: return {-1, -1};
  }
}

LevelForm level_form(const ReductionCgs& r, const std::vector<StateId>& l, int n, std::string& why) {
  auto kind = [&](std::size_t pos) { return r.describe(l[pos - 1]).kind; };  // 1-based
  if (static_cast<int>(l.size()) != n + 1) {
    why = "level has " + std::to_string(l.size()) + " nodes";
    return LevelForm::None;
  }
  if (n == 1) {
    if (l[0] == r.init2 && l[1] == r.gen) return LevelForm::A;
    why = "expected s_init' s_gen";
    return LevelForm::None;
  }
  if (n == 2) {
    if (l[0] == r.lb && l[1] == r.cell.at(r.machine.blank) && l[2] == r.tr) return LevelForm::B;
    why = "expected s_lb s_B s_tr";
    return LevelForm::None;
  }
  if (l[0] != r.lb2) {
    why = "first node is not s_lb'";
    return LevelForm::None;
  }
  if (n % 2 == 1) {
    const int m = (n - 1) / 2;
    int heads = 0;
    for (int c = 1; c <= m; ++c) {
      auto k = kind(static_cast<std::size_t>(2 * c));
      if (k == ReductionStateKind::Head)
        ++heads;
      else if (k != ReductionStateKind::Cell) {
        why = "position " + std::to_string(2 * c) + " is not a cell";
        return LevelForm::None;
      }
      if (l[static_cast<std::size_t>(2 * c)] != r.tr2) {
        why = "position " + std::to_string(2 * c + 1) + " is not s_tr'";
        return LevelForm::None;
      }
    }
    if (l.back() != r.gen) {
      why = "last node is not s_gen";
      return LevelForm::None;
    }
    if (heads != 1) {
      why = std::to_string(heads) + " head cells";
      return LevelForm::None;
    }
    return LevelForm::C;
  }
  const int m = n / 2;
  int moves = 0;
  for (int c = 1; c <= m - 1; ++c) {
    if (kind(static_cast<std::size_t>(2 * c)) != ReductionStateKind::Cell) {
      why = "position " + std::to_string(2 * c) + " is not a plain cell";
      return LevelForm::None;
    }
    StateId sep = l[static_cast<std::size_t>(2 * c)];
    if (r.describe(sep).kind == ReductionStateKind::MoveState)
      ++moves;
    else if (sep != r.tr2) {
      why = "position " + std::to_string(2 * c + 1) + " is neither s_tr' nor a move state";
      return LevelForm::None;
    }
  }
  if (l[static_cast<std::size_t>(2 * m - 1)] != r.cell.at(r.machine.blank) || l.back() != r.tr) {
    why = "level does not end with s_B s_tr";
    return LevelForm::None;
  }
  if (moves != 1) {
    why = std::to_string(moves) + " move states";
    return LevelForm::None;
  }
  return LevelForm::D;
}

const char* form_name(LevelForm f) {
  switch (f) {
    case LevelForm::A: return "4a";
    case LevelForm::B: return "4b";
    case LevelForm::C: return "4c";
    case LevelForm::D: return "4d";
    case LevelForm::None: return "none";
  }
  return "?";
}

LevelForm next_form(LevelForm f) {
  switch (f) {
    case LevelForm::A: return LevelForm::B;
    case LevelForm::B: return LevelForm::C;
    case LevelForm::C: return LevelForm::D;
    case LevelForm::D: return LevelForm::C;
    case LevelForm::None: return LevelForm::None;
  }
  return LevelForm::None;
}

int count_of(const ReductionCgs& r, std::span<const StateId> h, StateId s) {
  (void)r;
  return static_cast<int>(std::count(h.begin(), h.end(), s));
}

}  // namespace

ClaimReport verify_claims(const TuringMachine& m, int depth) {
  if (depth < 3) throw std::invalid_argument("verify_claims needs depth >= 3");
  const ReductionCgs r = build_cgs(m);
  const TeamStrategy sigma = simulation_strategy(r);
  const ComputationTree t = saturate(r.cgs, r.init, sigma, depth);
  const auto anchors = r.anchors();

  ClaimReport report;
  report.depth = depth;
  for (std::size_t v = 0; v < t.size(); ++v) {
    if (t.label(static_cast<NodeId>(v)) == r.err) {
      int d = t.depth(static_cast<NodeId>(v));
      if (!report.err_level || d < *report.err_level) report.err_level = d;
    }
  }
  const int ok_limit = report.err_level ? *report.err_level - 1 : depth;

  auto add = [&](std::string claim, std::string sub, int level, bool pass, std::string detail = {}) {
    report.rows.push_back({std::move(claim), std::move(sub), level, pass, std::move(detail)});
  };

  struct LevelData {
    std::vector<NodeId> nodes;               // insertion order
    std::vector<History> paths;
    std::vector<HistoryType> types;
    std::optional<std::vector<NodeId>> ordered;
    std::vector<StateId> ordered_labels;
    bool complete = false;
    LevelForm form = LevelForm::None;
    std::string form_detail;
  };
  std::vector<LevelData> levels(static_cast<std::size_t>(ok_limit) + 1);
  for (int n = 1; n <= ok_limit; ++n) {
    auto& L = levels[static_cast<std::size_t>(n)];
    L.nodes = t.level_nodes(n);
    for (NodeId v : L.nodes) {
      L.paths.push_back(t.path_labels(v));
      L.types.push_back(classify_history(r, L.paths.back()));
    }
    L.complete = is_complete_level(t, n);
    try {
      L.ordered = level(t, n, anchors);
      for (NodeId v : *L.ordered) L.ordered_labels.push_back(t.label(v));
    } catch (const OrderingNotTotal&) {
    }
    if (L.complete && L.ordered) L.form = level_form(r, L.ordered_labels, n, L.form_detail);
  }

  auto position_of = [](const std::vector<NodeId>& nodes, NodeId v) {
    return static_cast<std::size_t>(std::find(nodes.begin(), nodes.end(), v) - nodes.begin());
  };

  for (int n = 1; n <= ok_limit; ++n) {
    const auto& L = levels[static_cast<std::size_t>(n)];
    const int ceil_half = (n + 1) / 2;

    // Level size, history types and ordering.
    {
      bool typed = std::all_of(L.types.begin(), L.types.end(), [](const HistoryType& h) {
        return h.kind == HistoryKind::Type1 || h.kind == HistoryKind::Type2Open ||
               h.kind == HistoryKind::Type2Closed;
      });
      bool small = static_cast<int>(L.nodes.size()) <= n + 1;
      add("2", "1", n, typed && small,
          std::to_string(L.nodes.size()) + " nodes" + (typed ? "" : ", untyped node"));

      int type1 = static_cast<int>(std::count_if(L.types.begin(), L.types.end(), [](const HistoryType& h) {
        return h.kind == HistoryKind::Type1;
      }));
      add("2", "2", n, type1 <= 1, std::to_string(type1) + " type-1 nodes");

      std::set<std::pair<int, int>> seen;
      bool unique = true;
      bool bounded = true;
      for (const auto& h : L.types) {
        if (h.kind != HistoryKind::Type2Open && h.kind != HistoryKind::Type2Closed) continue;
        if (!seen.insert(type_rank(h)).second) unique = false;
        if (h.index > ceil_half) bounded = false;
      }
      add("2", "3", n, unique && bounded,
          unique ? (bounded ? "" : "type index above ceil(n/2)") : "repeated type 2 subtype");

      add("2", "5", n, L.ordered.has_value(), L.ordered ? "" : "ordering not total");
      if (L.ordered) {
        bool agrees = true;
        for (std::size_t k = 1; k < L.ordered->size(); ++k) {
          auto a = type_rank(L.types[position_of(L.nodes, (*L.ordered)[k - 1])]);
          auto b = type_rank(L.types[position_of(L.nodes, (*L.ordered)[k])]);
          if (!(a < b)) agrees = false;
        }
        add("2", "4", n, agrees, agrees ? "" : "ordering disagrees with the type order");
      } else {
        add("2", "4", n, false, "ordering not total");
      }
    }

    if (!L.complete) continue;

    // Complete levels: positions, observation links, level forms.
    {
      bool earlier = true;
      for (int k = 1; k < n; ++k) earlier = earlier && levels[static_cast<std::size_t>(k)].complete;
      add("3", "1", n, earlier, earlier ? "" : "an earlier level is incomplete");
    }
    if (!L.ordered) continue;
    std::vector<History> P;  // P[k] = path to v_{k+1}
    std::vector<HistoryType> T;
    for (NodeId v : *L.ordered) {
      P.push_back(L.paths[position_of(L.nodes, v)]);
      T.push_back(L.types[position_of(L.nodes, v)]);
    }
    {
      bool ok = T[0].kind == HistoryKind::Type1;
      for (int i = 1; 2 * i <= n; ++i) {
        ok = ok && T[static_cast<std::size_t>(2 * i - 1)] == HistoryType{HistoryKind::Type2Open, i};
        ok = ok && T[static_cast<std::size_t>(2 * i)] == HistoryType{HistoryKind::Type2Closed, i};
      }
      add("3", "2", n, ok, ok ? "" : "position/type map violated");
    }
    {
      const AgentId a1(1), a2(2);
      bool ok = obs_equiv_histories(r.cgs, a2, P[0], P[1]);
      std::string detail = ok ? "" : "v1 !~2 v2";
      for (int i = 1; 2 * i <= n; ++i)
        if (!obs_equiv_histories(r.cgs, a1, P[static_cast<std::size_t>(2 * i - 1)],
                                 P[static_cast<std::size_t>(2 * i)])) {
          ok = false;
          detail = "v" + std::to_string(2 * i) + " !~1 v" + std::to_string(2 * i + 1);
        }
      for (int i = 1; 2 * i + 1 <= n; ++i)
        if (!obs_equiv_histories(r.cgs, a2, P[static_cast<std::size_t>(2 * i)],
                                 P[static_cast<std::size_t>(2 * i + 1)])) {
          ok = false;
          detail = "v" + std::to_string(2 * i + 1) + " !~2 v" + std::to_string(2 * i + 2);
        }
      add("3", "3", n, ok, detail);
    }
    add("3", "4", n, L.form != LevelForm::None,
        L.form != LevelForm::None ? form_name(L.form) : L.form_detail);
    if (n + 1 <= ok_limit) {
      const auto& N = levels[static_cast<std::size_t>(n + 1)];
      bool ok = N.complete && L.form != LevelForm::None && N.form == next_form(L.form);
      add("3", "5", n, ok,
          std::string(form_name(L.form)) + " -> " + (N.complete ? form_name(N.form) : "incomplete"));
    }

    // Decoded configurations follow the machine.
    if (n >= 3 && n % 2 == 1) {
      auto config = as_configuration(r, decode_level(r, t, n));
      add("4", "1", n, config.has_value(),
          config ? config->str() : decode_level(r, t, n).word() + " is not in Sigma*Q Sigma Sigma*");
      if (config && n + 2 <= depth) {
        auto next = step(m, *config);
        if (auto* halted = std::get_if<Halted>(&next)) {
          bool ok = report.err_level && *report.err_level == n + 1;
          add("4", "2", n, ok,
              config->str() + " halts (" + std::string(to_string(halted->reason)) +
                  (ok ? "), s_err at level " + std::to_string(n + 1) : "), but no s_err at the next level"));
        } else {
          const auto& expected = std::get<Configuration>(next);
          if (n + 2 > ok_limit) {
            add("4", "2", n, false, config->str() + " => " + expected.str() + " but s_err was reached");
          } else if (!is_complete_level(t, n + 2)) {
            add("4", "2", n, false, "level " + std::to_string(n + 2) + " incomplete");
          } else {
            auto decoded = as_configuration(r, decode_level(r, t, n + 2));
            bool ok = decoded && *decoded == expected;
            add("4", "2", n, ok,
                config->str() + " => " + expected.str() + (ok ? "" : ", decoded " + (decoded ? decoded->str() : std::string("?"))));
          }
        }
      }
    }
  }

  // Observation classes of typed histories, on every pair sharing a level.
  {
    const AgentId a1(1), a2(2);
    std::array<std::optional<int>, 4> failed{};
    for (int n = 1; n <= ok_limit; ++n) {
      const auto& L = levels[static_cast<std::size_t>(n)];
      for (std::size_t x = 0; x < L.paths.size(); ++x)
        for (std::size_t y = 0; y < L.paths.size(); ++y) {
          if (x == y) continue;
          const auto& hx = L.paths[x];
          const auto& hy = L.paths[y];
          const auto& tx = L.types[x];
          const auto& ty = L.types[y];
          const bool x1 = tx.kind == HistoryKind::Type1;
          const bool y2 = is_type2(r, hy);
          const bool x2 = is_type2(r, hx);
          if (x1 && y2) {
            if (obs_equiv_histories(r.cgs, a1, hx, hy) && !failed[0]) failed[0] = n;
            if (obs_equiv_histories(r.cgs, a2, hx, hy) &&
                !(ty == HistoryType{HistoryKind::Type2Open, 1}) && !failed[1])
              failed[1] = n;
          }
          if (x2 && y2 &&
              (count_of(r, hx, r.gen) != count_of(r, hy, r.gen) ||
               count_of(r, hx, r.tr) != count_of(r, hy, r.tr))) {
            auto is_pair = [](const HistoryType& a, const HistoryType& b, bool shifted) {
              if (a.kind == HistoryKind::Type2Open && b.kind == HistoryKind::Type2Closed)
                return shifted ? a.index == b.index + 1 : a.index == b.index;
              if (b.kind == HistoryKind::Type2Open && a.kind == HistoryKind::Type2Closed)
                return shifted ? b.index == a.index + 1 : a.index == b.index;
              return false;
            };
            if (obs_equiv_histories(r.cgs, a1, hx, hy) && !is_pair(tx, ty, false) && !failed[2])
              failed[2] = n;
            if (obs_equiv_histories(r.cgs, a2, hx, hy) && !is_pair(tx, ty, true) && !failed[3])
              failed[3] = n;
          }
        }
    }
    for (int k = 0; k < 4; ++k)
      add("1", std::to_string(k + 1), failed[static_cast<std::size_t>(k)].value_or(-1),
          !failed[static_cast<std::size_t>(k)].has_value());
  }

  // sigma_1 is ~1-uniform and sigma_2 is ~2-uniform on the tree.
  for (int agent = 1; agent <= 2; ++agent) {
    auto v = find_uniformity_violation(r.cgs, sigma, AgentId(agent), r.init, depth);
    add("sigma", "uniform" + std::to_string(agent), v ? static_cast<int>(v->first.size()) - 1 : -1,
        !v.has_value());
  }
  return report;
}

}  // namespace atlir
