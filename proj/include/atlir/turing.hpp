// Deterministic single-tape Turing machines started on the empty word.

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace atlir {

enum class Move { L, R };

struct TmAction {
  std::string next;
  std::string write;
  Move move;
  friend bool operator==(const TmAction&, const TmAction&) = default;
};

class InvalidMachine : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MalformedConfiguration : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TuringMachine {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::string initial;
  std::string blank;
  std::map<std::pair<std::string, std::string>, TmAction> delta;

  bool has_state(const std::string& q) const;
  bool has_symbol(const std::string& a) const;
  const TmAction* transition(const std::string& q, const std::string& a) const;

  /// Throws InvalidMachine when a component is inconsistent. Names must be
  /// non-empty and free of whitespace, ',', '(', ')', '{', '}'; states and
  /// symbols must be disjoint.
  void validate() const;

  /// Diagnostics that do not prevent compilation (e.g. a transition entering
  /// the initial state again).
  std::vector<std::string> lint() const;
};

/// a_1 ... a_{i-1} q a_i ... a_n with the head on cell i (0-based `head`).
/// Cells right of the head that hold the blank are trimmed, so two
/// configurations are equal exactly when they denote the same machine state.
struct Configuration {
  std::vector<std::string> tape;
  std::size_t head = 0;
  std::string state;

  static Configuration initial(const TuringMachine& m);
  /// Builds and normalizes; throws MalformedConfiguration if the head is
  /// outside the tape.
  static Configuration make(std::vector<std::string> tape, std::size_t head, std::string state,
                            const std::string& blank);

  /// Word over Q u Sigma with symbols concatenated: "aq1B".
  std::string str() const;
  /// Symbols separated by single spaces: "a q1 B".
  std::string spaced() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

enum class HaltReason { UndefinedTransition, LeftFall };

struct Halted {
  HaltReason reason;
};

std::variant<Configuration, Halted> step(const TuringMachine& m, const Configuration& c);

struct RunResult {
  /// The configuration reached: after n steps, or the halting one.
  Configuration config;
  /// Index of the first step that could not be taken.
  std::optional<int> halted_at;
  std::optional<HaltReason> reason;
};

RunResult run(const TuringMachine& m, int n);

bool halts_within(const TuringMachine& m, int n);

std::string_view to_string(HaltReason r);

}  // namespace atlir
