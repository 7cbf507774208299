#pragma once
// Extended first-order-logic forms for factoid sentences: terms with quantity
// marks, optional specifications and copulae, property-annotated predicates,
// and the connective layer. Includes the canonical renderer and a companion
// parser used to check render/parse round-trips.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "senlog/common.hpp"

namespace senlog {

// ---------------------------------------------------------------- terms

enum class Quantity { SOME, ALL };

struct Term {
  enum class Kind { Var, Func };
  Kind kind = Kind::Func;
  bool negated = false;  // term-level negation ("NOT(classical)")
  Quantity quantity = Quantity::SOME;
  std::string name;
  std::optional<std::string> specification;
  std::shared_ptr<Term> cop;
  std::map<std::string, std::vector<Term>> properties;

  static Term var(std::string n) {
    Term t;
    t.kind = Kind::Var;
    t.name = std::move(n);
    return t;
  }
  static Term func(std::string n, std::optional<std::string> spec = std::nullopt,
                   Quantity q = Quantity::SOME) {
    Term t;
    t.kind = Kind::Func;
    t.name = std::move(n);
    t.specification = std::move(spec);
    t.quantity = q;
    return t;
  }
  bool is_var() const { return kind == Kind::Var; }
};

// ---------------------------------------------------------------- propositions

struct Proposition {
  std::string name;                     // verb / relation
  Term arg0;                            // subject
  std::optional<Term> arg1;             // object; absent => unary
  std::map<std::string, std::vector<Term>> properties;

  bool is_binary() const { return arg1.has_value(); }
};

// Signed proposition, used by the expansion engine (rewrite templates may
// produce negated consequences).
struct PropLit {
  bool negated = false;
  Proposition prop;
};

// ---------------------------------------------------------------- formulas

struct Formula {
  enum class Kind { Atom, Not, And, Or, Exists };
  Kind kind = Kind::Atom;
  std::shared_ptr<Proposition> atom;  // Kind::Atom
  std::vector<Formula> children;      // Not (1), And/Or (n), Exists (1)
  std::string var;                    // Exists binder

  static Formula mk_atom(Proposition p) {
    Formula f;
    f.kind = Kind::Atom;
    f.atom = std::make_shared<Proposition>(std::move(p));
    return f;
  }
  static Formula mk_not(Formula c) {
    Formula f;
    f.kind = Kind::Not;
    f.children.push_back(std::move(c));
    return f;
  }
  static Formula mk_and(std::vector<Formula> cs) {
    if (cs.size() == 1) return cs[0];
    Formula f;
    f.kind = Kind::And;
    f.children = std::move(cs);
    return f;
  }
  static Formula mk_or(std::vector<Formula> cs) {
    if (cs.size() == 1) return cs[0];
    Formula f;
    f.kind = Kind::Or;
    f.children = std::move(cs);
    return f;
  }
  static Formula mk_exists(std::string v, Formula body) {
    Formula f;
    f.kind = Kind::Exists;
    f.var = std::move(v);
    f.children.push_back(std::move(body));
    return f;
  }
};

// ---------------------------------------------------------------- rendering
//
// Canonical grammar (stable interchange format; see docs/formats.md):
//   formula  := atom | "¬" fatom | "(" formula (" ∧ " formula)+ ")"
//             | "(" formula (" ∨ " formula)+ ")" | "∃" VAR "." formula
//   atom     := NAME "(" term ("," " " term)? ")" props?
//   term     := "¬"? ( VAR | quant body cop? props? )
//   quant    := "◇" | "□"
//   body     := NAME | "[" NAME " [of] " SPEC "]"
//   cop      := "<cop=" term ">"
//   props    := "{" key ":" term ("," term)* (";" key ":" ...)* "}"
// VAR starts with '?'. NAME/SPEC/key never contain ()[]{}<>,;:¬◇□∧∨∃.

inline std::string render(const Term& t);

inline std::string render_props(const std::map<std::string, std::vector<Term>>& props) {
  if (props.empty()) return "";
  std::string out = "{";
  bool first_key = true;
  for (const auto& [k, vals] : props) {
    if (!first_key) out += ";";
    first_key = false;
    out += k + ":";
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (i) out += ",";
      out += render(vals[i]);
    }
  }
  out += "}";
  return out;
}

inline std::string render(const Term& t) {
  std::string out;
  if (t.negated) out += "¬";
  if (t.kind == Term::Kind::Var) {
    out += t.name;
    return out;
  }
  out += (t.quantity == Quantity::ALL) ? "□" : "◇";
  if (t.specification) {
    out += "[" + t.name + " [of] " + *t.specification + "]";
  } else {
    out += t.name;
  }
  if (t.cop) out += "<cop=" + render(*t.cop) + ">";
  out += render_props(t.properties);
  return out;
}

inline std::string render(const Proposition& p) {
  std::string out = p.name + "(" + render(p.arg0);
  if (p.arg1) out += ", " + render(*p.arg1);
  out += ")";
  out += render_props(p.properties);
  return out;
}

inline std::string render(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      return render(*f.atom);
    case Formula::Kind::Not: {
      const Formula& c = f.children[0];
      if (c.kind == Formula::Kind::Atom) return "¬" + render(c);
      return "¬" + std::string("(") + render(c) + ")";
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::string sep = (f.kind == Formula::Kind::And) ? " ∧ " : " ∨ ";
      std::string out = "(";
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i) out += sep;
        out += render(f.children[i]);
      }
      out += ")";
      return out;
    }
    case Formula::Kind::Exists:
      return "∃" + f.var + "." + render(f.children[0]);
  }
  return "";
}

// Structural equality goes through the canonical rendering: it is injective on
// well-formed values because the grammar is unambiguous.
inline bool operator==(const Term& a, const Term& b) { return render(a) == render(b); }
inline bool operator==(const Proposition& a, const Proposition& b) {
  return render(a) == render(b);
}
inline bool operator==(const Formula& a, const Formula& b) { return render(a) == render(b); }

// ---------------------------------------------------------------- atoms

inline void collect_atoms(const Formula& f, std::vector<Proposition>& out,
                          std::set<std::string>& seen) {
  if (f.kind == Formula::Kind::Atom) {
    std::string key = render(*f.atom);
    if (seen.insert(key).second) out.push_back(*f.atom);
    return;
  }
  for (const auto& c : f.children) collect_atoms(c, out, seen);
}

inline std::vector<Proposition> atoms_of(const Formula& f) {
  std::vector<Proposition> out;
  std::set<std::string> seen;
  collect_atoms(f, out, seen);
  return out;
}

// Classical Boolean valuation given truth values for each distinct atom
// (keyed by canonical rendering).
inline bool evaluate(const Formula& f, const std::map<std::string, bool>& env) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      return env.at(render(*f.atom));
    case Formula::Kind::Not:
      return !evaluate(f.children[0], env);
    case Formula::Kind::And:
      for (const auto& c : f.children)
        if (!evaluate(c, env)) return false;
      return true;
    case Formula::Kind::Or:
      for (const auto& c : f.children)
        if (evaluate(c, env)) return true;
      return false;
    case Formula::Kind::Exists:
      return evaluate(f.children[0], env);
  }
  return false;
}

// ---------------------------------------------------------------- parser

namespace detail {

class Cursor {
 public:
  explicit Cursor(const std::string& s) : s_(s) {}
  bool eat(const std::string& tok) {
    if (s_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  bool peek(const std::string& tok) const { return s_.compare(pos_, tok.size(), tok) == 0; }
  void expect(const std::string& tok) {
    if (!eat(tok))
      throw ParseError("formula parser: expected '" + tok + "' at offset " +
                       std::to_string(pos_) + " in: " + s_);
  }
  bool done() const { return pos_ >= s_.size(); }
  // Reads a bare name: everything until a structural delimiter.
  std::string name() {
    static const std::string stop = "()[]{}<>,;:.";
    std::size_t start = pos_;
    while (pos_ < s_.size() && stop.find(s_[pos_]) == std::string::npos &&
           !peek("¬") && !peek("∧") && !peek("∨") && !peek("∃") && !peek("◇") && !peek("□")) {
      ++pos_;
    }
    std::string out = s_.substr(start, pos_ - start);
    // Trim trailing spaces that belong to following separators.
    while (!out.empty() && out.back() == ' ') out.pop_back();
    if (out.empty())
      throw ParseError("formula parser: empty name at offset " + std::to_string(pos_));
    return out;
  }
  // Reads a name that may contain " [of] " — used inside "[name [of] spec]".
  std::size_t pos() const { return pos_; }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

inline Term parse_term(Cursor& c);

inline std::map<std::string, std::vector<Term>> parse_props(Cursor& c) {
  std::map<std::string, std::vector<Term>> props;
  if (!c.eat("{")) return props;
  while (true) {
    std::string key = c.name();
    c.expect(":");
    std::vector<Term> vals;
    vals.push_back(parse_term(c));
    while (c.eat(",")) vals.push_back(parse_term(c));
    props[key] = std::move(vals);
    if (c.eat(";")) continue;
    c.expect("}");
    break;
  }
  return props;
}

inline Term parse_term(Cursor& c) {
  Term t;
  if (c.eat("¬")) t.negated = true;
  if (c.peek("?")) {
    t.kind = Term::Kind::Var;
    t.name = c.name();
    return t;
  }
  t.kind = Term::Kind::Func;
  if (c.eat("□")) {
    t.quantity = Quantity::ALL;
  } else {
    c.expect("◇");
    t.quantity = Quantity::SOME;
  }
  if (c.eat("[")) {
    t.name = c.name();
    c.expect("[");
    c.expect("of]");
    c.eat(" ");
    t.specification = c.name();
    c.expect("]");
  } else {
    t.name = c.name();
  }
  if (c.eat("<")) {
    c.expect("cop=");
    t.cop = std::make_shared<Term>(parse_term(c));
    c.expect(">");
  }
  t.properties = parse_props(c);
  return t;
}

inline Proposition parse_atom(Cursor& c) {
  Proposition p;
  p.name = c.name();
  c.expect("(");
  p.arg0 = parse_term(c);
  if (c.eat(",")) {
    c.eat(" ");
    p.arg1 = parse_term(c);
  }
  c.expect(")");
  p.properties = parse_props(c);
  return p;
}

inline Formula parse_formula(Cursor& c) {
  if (c.eat("¬")) {
    if (c.eat("(")) {
      Formula inner = parse_formula(c);
      c.expect(")");
      return Formula::mk_not(std::move(inner));
    }
    return Formula::mk_not(Formula::mk_atom(parse_atom(c)));
  }
  if (c.eat("∃")) {
    std::string v = c.name();
    c.expect(".");
    Formula body = parse_formula(c);
    return Formula::mk_exists(v, std::move(body));
  }
  if (c.eat("(")) {
    std::vector<Formula> parts;
    parts.push_back(parse_formula(c));
    bool is_and = false, is_or = false;
    while (true) {
      if (c.eat(" ∧ ")) {
        is_and = true;
        parts.push_back(parse_formula(c));
      } else if (c.eat(" ∨ ")) {
        is_or = true;
        parts.push_back(parse_formula(c));
      } else {
        break;
      }
    }
    c.expect(")");
    if (is_and && is_or) throw ParseError("formula parser: mixed connectives without parens");
    if (is_or) return Formula::mk_or(std::move(parts));
    return Formula::mk_and(std::move(parts));
  }
  return Formula::mk_atom(parse_atom(c));
}

}  // namespace detail

inline Formula parse_formula(const std::string& s) {
  detail::Cursor c(s);
  Formula f = detail::parse_formula(c);
  if (!c.done()) throw ParseError("formula parser: trailing input in: " + s);
  return f;
}

inline Term parse_term_text(const std::string& s) {
  detail::Cursor c(s);
  Term t = detail::parse_term(c);
  if (!c.done()) throw ParseError("term parser: trailing input in: " + s);
  return t;
}

}  // namespace senlog
