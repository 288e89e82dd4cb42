#include "atlir/turing.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace atlir {

bool TuringMachine::has_state(const std::string& q) const {
  return std::find(states.begin(), states.end(), q) != states.end();
}

bool TuringMachine::has_symbol(const std::string& a) const {
  return std::find(alphabet.begin(), alphabet.end(), a) != alphabet.end();
}

const TmAction* TuringMachine::transition(const std::string& q, const std::string& a) const {
  auto it = delta.find({q, a});
  return it == delta.end() ? nullptr : &it->second;
}

namespace {

void check_name(const std::string& name, const char* what) {
  if (name.empty()) throw InvalidMachine(std::string("empty ") + what + " name");
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '(' || c == ')' ||
        c == '{' || c == '}' || c == '"')
      throw InvalidMachine(std::string(what) + " name '" + name + "' contains a reserved character");
  }
}

}  // namespace

void TuringMachine::validate() const {
  if (states.empty()) throw InvalidMachine("no states");
  if (alphabet.empty()) throw InvalidMachine("empty alphabet");
  std::set<std::string> q(states.begin(), states.end());
  std::set<std::string> sigma(alphabet.begin(), alphabet.end());
  if (q.size() != states.size()) throw InvalidMachine("duplicate state");
  if (sigma.size() != alphabet.size()) throw InvalidMachine("duplicate symbol");
  for (const auto& s : states) check_name(s, "state");
  for (const auto& a : alphabet) check_name(a, "symbol");
  for (const auto& s : states)
    if (sigma.count(s)) throw InvalidMachine("'" + s + "' is both a state and a symbol");
  if (!q.count(initial)) throw InvalidMachine("initial state '" + initial + "' not declared");
  if (!sigma.count(blank)) throw InvalidMachine("blank '" + blank + "' not in the alphabet");
  for (const auto& [key, act] : delta) {
    if (!q.count(key.first) || !q.count(act.next))
      throw InvalidMachine("transition uses an undeclared state");
    if (!sigma.count(key.second) || !sigma.count(act.write))
      throw InvalidMachine("transition uses an undeclared symbol");
  }
}

std::vector<std::string> TuringMachine::lint() const {
  std::vector<std::string> out;
  for (const auto& [key, act] : delta)
    if (act.next == initial)
      out.push_back("transition from (" + key.first + "," + key.second + ") re-enters the initial state " +
                    initial);
  return out;
}

Configuration Configuration::initial(const TuringMachine& m) {
  return make({m.blank}, 0, m.initial, m.blank);
}

Configuration Configuration::make(std::vector<std::string> tape, std::size_t head,
                                  std::string state, const std::string& blank) {
  if (head >= tape.size()) throw MalformedConfiguration("head outside the tape");
  while (tape.size() > head + 1 && tape.back() == blank) tape.pop_back();
  Configuration c;
  c.tape = std::move(tape);
  c.head = head;
  c.state = std::move(state);
  return c;
}

std::string Configuration::str() const {
  std::string out;
  for (std::size_t k = 0; k < tape.size(); ++k) {
    if (k == head) out += state;
    out += tape[k];
  }
  return out;
}

std::string Configuration::spaced() const {
  std::string out;
  for (std::size_t k = 0; k < tape.size(); ++k) {
    if (k == head) out += state + " ";
    out += tape[k];
    if (k + 1 < tape.size()) out += ' ';
  }
  return out;
}

std::variant<Configuration, Halted> step(const TuringMachine& m, const Configuration& c) {
  if (c.head >= c.tape.size()) throw MalformedConfiguration("head outside the tape");
  if (!m.has_state(c.state)) throw MalformedConfiguration("unknown state '" + c.state + "'");
  for (const auto& a : c.tape)
    if (!m.has_symbol(a)) throw MalformedConfiguration("unknown symbol '" + a + "'");

  const TmAction* act = m.transition(c.state, c.tape[c.head]);
  if (!act) return Halted{HaltReason::UndefinedTransition};
  if (act->move == Move::L && c.head == 0) return Halted{HaltReason::LeftFall};

  std::vector<std::string> tape = c.tape;
  tape[c.head] = act->write;
  std::size_t head = c.head;
  if (act->move == Move::R) {
    ++head;
    if (head == tape.size()) tape.push_back(m.blank);
  } else {
    --head;
  }
  return Configuration::make(std::move(tape), head, act->next, m.blank);
}

RunResult run(const TuringMachine& m, int n) {
  if (n < 0) throw std::invalid_argument("run: negative step count");
  RunResult r{Configuration::initial(m), std::nullopt, std::nullopt};
  for (int j = 1; j <= n; ++j) {
    auto next = step(m, r.config);
    if (auto* h = std::get_if<Halted>(&next)) {
      r.halted_at = j;
      r.reason = h->reason;
      return r;
    }
    r.config = std::get<Configuration>(std::move(next));
  }
  return r;
}

bool halts_within(const TuringMachine& m, int n) {
  auto r = run(m, n);
  return r.halted_at && *r.halted_at <= n;
}

std::string_view to_string(HaltReason r) {
  return r == HaltReason::LeftFall ? "left-fall" : "undefined-transition";
}

}  // namespace atlir
