#include "atlir/atl.hpp"

#include <algorithm>
#include <cctype>

#include "atlir/cgs.hpp"

namespace atlir {

namespace {

std::vector<int> normalize_coalition(std::vector<int> c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

bool is_reserved(std::string_view word) { return word == "X" || word == "G" || word == "U"; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  FormulaPtr parse() {
    FormulaPtr f = formula();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool lookahead(std::string_view tok) {
    skip_ws();
    return text_.substr(pos_, tok.size()) == tok;
  }

  bool accept(std::string_view tok) {
    if (!lookahead(tok)) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  // Reads an identifier without consuming it when `peek` is set.
  std::string_view word(bool peek) {
    skip_ws();
    std::size_t end = pos_;
    if (end < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
      while (end < text_.size() && ident_char(text_[end])) ++end;
    }
    std::string_view w = text_.substr(pos_, end - pos_);
    if (!peek) pos_ = end;
    return w;
  }

  FormulaPtr formula() {
    FormulaPtr left = unary();
    if (accept("&")) return make_and(std::move(left), formula());
    return left;
  }

  FormulaPtr unary() {
    skip_ws();
    if (accept("!")) return make_not(unary());
    if (lookahead("<<")) return coalition();
    if (accept("(")) {
      FormulaPtr f = formula();
      expect(")");
      return f;
    }
    std::size_t start = pos_;
    std::string_view w = word(false);
    if (w.empty()) {
      pos_ = start;
      fail(pos_ < text_.size() ? "unexpected character" : "unexpected end of input");
    }
    if (is_reserved(w)) {
      pos_ = start;
      fail("temporal operator '" + std::string(w) + "' outside a coalition");
    }
    return make_atom(std::string(w));
  }

  FormulaPtr coalition() {
    skip_ws();
    std::size_t open = pos_;
    expect("<<");
    std::vector<int> agents;
    if (lookahead(">>")) {
      pos_ = open;
      throw EmptyCoalition(open);
    }
    do {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected agent number");
      int agent = std::stoi(std::string(text_.substr(start, pos_ - start)));
      if (agent < 1) {
        pos_ = start;
        fail("agent numbers start at 1");
      }
      agents.push_back(agent);
    } while (accept(","));
    expect(">>");

    std::string_view w = word(true);
    if (w == "X") {
      word(false);
      return make_next(std::move(agents), unary());
    }
    if (w == "G") {
      word(false);
      return make_globally(std::move(agents), unary());
    }
    FormulaPtr left = unary();
    if (word(true) != "U") fail("expected 'X', 'G' or '... U ...' after coalition");
    word(false);
    return make_until(std::move(agents), std::move(left), unary());
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string render_coalition(const std::vector<int>& c) {
  std::string out = "<<";
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(c[k]);
  }
  return out + ">>";
}

// Operands of unary operators and coalitions are at the `unary` level, so only
// conjunctions need parentheses there.
std::string render_unary(const Formula& f) {
  std::string s = render_formula(f);
  return f.kind == FormulaKind::And ? "(" + s + ")" : s;
}

}  // namespace

FormulaPtr make_atom(std::string name) {
  return std::make_shared<const Formula>(Formula{FormulaKind::Atom, std::move(name), {}, nullptr, nullptr});
}
FormulaPtr make_not(FormulaPtr f) {
  return std::make_shared<const Formula>(Formula{FormulaKind::Not, {}, {}, std::move(f), nullptr});
}
FormulaPtr make_and(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<const Formula>(Formula{FormulaKind::And, {}, {}, std::move(l), std::move(r)});
}
FormulaPtr make_next(std::vector<int> coalition, FormulaPtr f) {
  return std::make_shared<const Formula>(
      Formula{FormulaKind::Next, {}, normalize_coalition(std::move(coalition)), std::move(f), nullptr});
}
FormulaPtr make_globally(std::vector<int> coalition, FormulaPtr f) {
  return std::make_shared<const Formula>(Formula{
      FormulaKind::Globally, {}, normalize_coalition(std::move(coalition)), std::move(f), nullptr});
}
FormulaPtr make_until(std::vector<int> coalition, FormulaPtr l, FormulaPtr r) {
  return std::make_shared<const Formula>(Formula{
      FormulaKind::Until, {}, normalize_coalition(std::move(coalition)), std::move(l), std::move(r)});
}

bool equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind || a.atom != b.atom || a.coalition != b.coalition) return false;
  if (static_cast<bool>(a.left) != static_cast<bool>(b.left)) return false;
  if (static_cast<bool>(a.right) != static_cast<bool>(b.right)) return false;
  if (a.left && !equal(*a.left, *b.left)) return false;
  if (a.right && !equal(*a.right, *b.right)) return false;
  return true;
}

SyntaxError::SyntaxError(std::string message, std::size_t position)
    : std::runtime_error("syntax error at " + std::to_string(position) + ": " + message),
      position_(position) {}

EmptyCoalition::EmptyCoalition(std::size_t position)
    : SyntaxError("empty coalition", position) {}

FormulaPtr parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string render_formula(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Atom:
      return f.atom;
    case FormulaKind::Not:
      return "!" + render_unary(*f.left);
    case FormulaKind::And:
      return render_unary(*f.left) + " & " + render_formula(*f.right);
    case FormulaKind::Next:
      return render_coalition(f.coalition) + " X " + render_unary(*f.left);
    case FormulaKind::Globally:
      return render_coalition(f.coalition) + " G " + render_unary(*f.left);
    case FormulaKind::Until:
      return render_coalition(f.coalition) + " " + render_unary(*f.left) + " U " +
             render_unary(*f.right);
  }
  return {};
}

void bind_formula(const Formula& f, const Cgs& g) {
  if (f.kind == FormulaKind::Atom) {
    g.prop(f.atom);
    return;
  }
  for (int agent : f.coalition) g.agent(agent);
  if (f.left) bind_formula(*f.left, g);
  if (f.right) bind_formula(*f.right, g);
}

}  // namespace atlir
