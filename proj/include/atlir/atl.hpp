// ATL formulas: abstract syntax, parser and printer.
//
// Concrete syntax (ASCII):
//   formula  := unary ('&' formula)?              right-associative conjunction
//   unary    := '!' unary
//             | '<<' agents '>>' 'X' unary
//             | '<<' agents '>>' 'G' unary
//             | '<<' agents '>>' unary 'U' unary
//             | atom | '(' formula ')'
//   agents   := number (',' number)*
// X, G and U are reserved and cannot be used as atom names.

#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace atlir {

class Cgs;

enum class FormulaKind { Atom, Not, And, Next, Globally, Until };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind;
  std::string atom;               // Atom only
  std::vector<int> coalition;     // sorted, duplicate-free; coalition operators only
  FormulaPtr left;                // operand (Not, Next, Globally), left of And/Until
  FormulaPtr right;               // right of And/Until

  bool is_coalition() const {
    return kind == FormulaKind::Next || kind == FormulaKind::Globally ||
           kind == FormulaKind::Until;
  }
};

FormulaPtr make_atom(std::string name);
FormulaPtr make_not(FormulaPtr f);
FormulaPtr make_and(FormulaPtr l, FormulaPtr r);
FormulaPtr make_next(std::vector<int> coalition, FormulaPtr f);
FormulaPtr make_globally(std::vector<int> coalition, FormulaPtr f);
FormulaPtr make_until(std::vector<int> coalition, FormulaPtr l, FormulaPtr r);

/// Structural equality.
bool equal(const Formula& a, const Formula& b);

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::string message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Raised for "<<>>".
class EmptyCoalition : public SyntaxError {
 public:
  explicit EmptyCoalition(std::size_t position);
};

FormulaPtr parse_formula(std::string_view text);
std::string render_formula(const Formula& f);

/// Checks that atoms are propositions of g and coalition members are agents
/// of g. Throws UnknownProp / UnknownAgent.
void bind_formula(const Formula& f, const Cgs& g);

}  // namespace atlir
