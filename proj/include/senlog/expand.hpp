#pragma once
// Proposition expansion: equivalence closure T(p) and entailment closure E(p)
// over KB expansion rules plus name-level semantic relations. Entailment
// consequences are signed literals, since rewrite templates may be negated.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "senlog/common.hpp"
#include "senlog/fol.hpp"
#include "senlog/kb.hpp"

namespace senlog {

inline constexpr std::size_t kExpansionBound = 64;

namespace detail {

inline bool is_wildcard(const Term& t) {
  return !t.name.empty() && t.name[0] == '$';
}

using Bindings = std::map<std::string, Term>;

inline bool match_term(const Term& pat, const Term& t, Bindings& b) {
  if (is_wildcard(pat)) {
    auto it = b.find(pat.name);
    if (it != b.end()) return it->second == t;
    b[pat.name] = t;
    return true;
  }
  if (pat.kind != t.kind || pat.negated != t.negated) return false;
  if (pat.name != t.name) return false;
  if (pat.kind == Term::Kind::Func) {
    if (pat.quantity != t.quantity) return false;
    if (pat.specification != t.specification) return false;
    if (static_cast<bool>(pat.cop) != static_cast<bool>(t.cop)) return false;
    if (pat.cop && !match_term(*pat.cop, *t.cop, b)) return false;
    // Property keys must match exactly (set equality), values pairwise.
    if (pat.properties.size() != t.properties.size()) return false;
    auto pit = pat.properties.begin();
    auto tit = t.properties.begin();
    for (; pit != pat.properties.end(); ++pit, ++tit) {
      if (pit->first != tit->first) return false;
      if (pit->second.size() != tit->second.size()) return false;
      for (std::size_t i = 0; i < pit->second.size(); ++i)
        if (!match_term(pit->second[i], tit->second[i], b)) return false;
    }
  }
  return true;
}

inline bool match_prop(const Proposition& pat, const Proposition& p, Bindings& b) {
  if (pat.name != p.name) return false;
  if (pat.is_binary() != p.is_binary()) return false;
  if (!match_term(pat.arg0, p.arg0, b)) return false;
  if (pat.arg1 && !match_term(*pat.arg1, *p.arg1, b)) return false;
  if (pat.properties.size() != p.properties.size()) return false;
  auto pit = pat.properties.begin();
  auto tit = p.properties.begin();
  for (; pit != pat.properties.end(); ++pit, ++tit) {
    if (pit->first != tit->first) return false;
    if (pit->second.size() != tit->second.size()) return false;
    for (std::size_t i = 0; i < pit->second.size(); ++i)
      if (!match_term(pit->second[i], tit->second[i], b)) return false;
  }
  return true;
}

inline Term instantiate_term(const Term& tpl, const Bindings& b) {
  if (is_wildcard(tpl)) {
    auto it = b.find(tpl.name);
    if (it == b.end())
      throw ValidationError("expansion template variable unbound: " + tpl.name);
    Term t = it->second;
    // Template-level negation flips the bound term's polarity.
    if (tpl.negated) t.negated = !t.negated;
    return t;
  }
  Term t = tpl;
  if (t.cop) t.cop = std::make_shared<Term>(instantiate_term(*t.cop, b));
  for (auto& [k, vals] : t.properties)
    for (auto& v : vals) v = instantiate_term(v, b);
  return t;
}

inline Proposition instantiate_prop(const Proposition& tpl, const Bindings& b) {
  Proposition p;
  p.name = tpl.name;
  p.arg0 = instantiate_term(tpl.arg0, b);
  if (tpl.arg1) p.arg1 = instantiate_term(*tpl.arg1, b);
  for (const auto& [k, vals] : tpl.properties) {
    std::vector<Term> out;
    for (const auto& v : vals) out.push_back(instantiate_term(v, b));
    p.properties[k] = std::move(out);
  }
  return p;
}

// Name-level substitution: replace one occurrence of `from` by `to` anywhere a
// bare name appears. A multi-word replacement "verb noun" substituted into the
// object slot of a copular proposition lifts to verb(subject, noun).
inline void subst_in_term(const Term& t, const std::string& from, const std::string& to,
                          std::vector<Term>& out) {
  if (t.kind == Term::Kind::Func && t.name == from) {
    Term v = t;
    v.name = to;
    out.push_back(v);
  }
  if (t.specification && *t.specification == from) {
    Term v = t;
    v.specification = to;
    out.push_back(v);
  }
  if (t.cop) {
    std::vector<Term> cops;
    subst_in_term(*t.cop, from, to, cops);
    for (auto& c : cops) {
      Term v = t;
      v.cop = std::make_shared<Term>(std::move(c));
      out.push_back(v);
    }
  }
  for (const auto& [k, vals] : t.properties) {
    for (std::size_t i = 0; i < vals.size(); ++i) {
      std::vector<Term> repl;
      subst_in_term(vals[i], from, to, repl);
      for (auto& r : repl) {
        Term v = t;
        v.properties[k][i] = std::move(r);
        out.push_back(v);
      }
    }
  }
}

inline std::vector<Proposition> subst_in_prop(const Proposition& p, const std::string& from,
                                              const std::string& to,
                                              const KnowledgeBase& kb) {
  std::vector<Proposition> out;
  if (p.name == from) {
    Proposition v = p;
    v.name = to;
    out.push_back(std::move(v));
  }
  {
    std::vector<Term> repl;
    subst_in_term(p.arg0, from, to, repl);
    for (auto& r : repl) {
      Proposition v = p;
      v.arg0 = std::move(r);
      out.push_back(std::move(v));
    }
  }
  if (p.arg1) {
    // Predicate lift: object name replaced by "verb noun" turns the copular
    // proposition into verb(subject, noun).
    auto sp = to.find(' ');
    if (p.arg1->kind == Term::Kind::Func && p.arg1->name == from &&
        sp != std::string::npos) {
      std::string head = to.substr(0, sp), rest = to.substr(sp + 1);
      if (kb.is_verb(head)) {
        Proposition v;
        v.name = kb.lemmatize(head);
        v.arg0 = p.arg0;
        Term obj = *p.arg1;
        obj.name = rest;
        v.arg1 = std::move(obj);
        v.properties = p.properties;
        out.push_back(std::move(v));
      }
    }
    std::vector<Term> repl;
    subst_in_term(*p.arg1, from, to, repl);
    for (auto& r : repl) {
      Proposition v = p;
      v.arg1 = std::move(r);
      out.push_back(std::move(v));
    }
  }
  for (const auto& [k, vals] : p.properties) {
    for (std::size_t i = 0; i < vals.size(); ++i) {
      std::vector<Term> repl;
      subst_in_term(vals[i], from, to, repl);
      for (auto& r : repl) {
        Proposition v = p;
        v.properties[k][i] = std::move(r);
        out.push_back(std::move(v));
      }
    }
  }
  return out;
}

// One round of equivalence-preserving rewrites of p (rules both ways, EQUIV
// relations both ways).
inline std::vector<Proposition> equiv_step(const Proposition& p, const KnowledgeBase& kb) {
  std::vector<Proposition> out;
  for (const auto& r : kb.expansions) {
    if (r.mode != ExpansionMode::EQUIVALENT) continue;
    Bindings b;
    if (match_prop(r.pattern, p, b)) out.push_back(instantiate_prop(r.rewrite, b));
    Bindings b2;
    if (match_prop(r.rewrite, p, b2)) out.push_back(instantiate_prop(r.pattern, b2));
  }
  for (const auto& rel : kb.relations) {
    if (rel.kind != RelationKind::EQUIV) continue;
    for (auto& v : subst_in_prop(p, rel.left, rel.right, kb)) out.push_back(std::move(v));
    for (auto& v : subst_in_prop(p, rel.right, rel.left, kb)) out.push_back(std::move(v));
  }
  return out;
}

// One round of entailing rewrites of p; results are signed.
inline std::vector<PropLit> entail_step(const Proposition& p, const KnowledgeBase& kb) {
  std::vector<PropLit> out;
  for (const auto& r : kb.expansions) {
    if (r.mode != ExpansionMode::ENTAILING) continue;
    Bindings b;
    if (match_prop(r.pattern, p, b))
      out.push_back({r.rewrite_negated, instantiate_prop(r.rewrite, b)});
  }
  for (const auto& rel : kb.relations) {
    bool directed = rel.kind == RelationKind::IMPLIES || rel.kind == RelationKind::IS_A ||
                    rel.kind == RelationKind::PART_OF;
    if (!directed) continue;
    for (auto& v : subst_in_prop(p, rel.left, rel.right, kb)) out.push_back({false, std::move(v)});
  }
  return out;
}

}  // namespace detail

// Equivalence closure of p (includes p itself). Bounded fixpoint.
inline std::vector<Proposition> t_closure(const Proposition& p, const KnowledgeBase& kb) {
  std::vector<Proposition> out{p};
  std::set<std::string> seen{render(p)};
  for (std::size_t i = 0; i < out.size(); ++i) {
    // Copy: out may reallocate while we append.
    Proposition cur = out[i];
    for (auto& q : detail::equiv_step(cur, kb)) {
      if (seen.insert(render(q)).second) {
        out.push_back(std::move(q));
        if (out.size() > kExpansionBound)
          throw ExpansionBudgetExceeded("equivalence closure exceeded " +
                                        std::to_string(kExpansionBound) +
                                        " propositions for " + render(p));
      }
    }
  }
  return out;
}

// Entailment closure of p: every signed consequence, itself closed under
// equivalence. Excludes the positive literal p.
inline std::vector<PropLit> e_closure(const Proposition& p, const KnowledgeBase& kb) {
  auto lit_key = [](const PropLit& l) {
    return (l.negated ? std::string("!") : std::string("")) + render(l.prop);
  };
  std::vector<PropLit> work;
  std::set<std::string> seen;
  auto push = [&](PropLit l) {
    if (seen.insert(lit_key(l)).second) {
      work.push_back(std::move(l));
      if (work.size() > kExpansionBound)
        throw ExpansionBudgetExceeded("entailment closure exceeded " +
                                      std::to_string(kExpansionBound) +
                                      " literals for " + render(p));
    }
  };
  for (const auto& q : t_closure(p, kb)) push({false, q});
  for (std::size_t i = 0; i < work.size(); ++i) {
    PropLit cur = work[i];
    // Close each member under equivalence, preserving its sign.
    for (const auto& q : t_closure(cur.prop, kb)) push({cur.negated, q});
    // Entailing steps only chain through positive literals.
    if (!cur.negated) {
      for (auto& l : detail::entail_step(cur.prop, kb)) push(std::move(l));
    }
  }
  std::vector<PropLit> out;
  std::string self = render(p);
  for (auto& l : work) {
    if (!l.negated && render(l.prop) == self) continue;
    out.push_back(std::move(l));
  }
  return out;
}

// Spec-facing expansion: positive derived propositions of the given mode,
// excluding p itself.
inline std::vector<Proposition> expand(const Proposition& p, ExpansionMode mode,
                                       const KnowledgeBase& kb) {
  std::vector<Proposition> out;
  if (mode == ExpansionMode::EQUIVALENT) {
    std::string self = render(p);
    for (auto& q : t_closure(p, kb))
      if (render(q) != self) out.push_back(std::move(q));
  } else {
    for (auto& l : e_closure(p, kb))
      if (!l.negated) out.push_back(std::move(l.prop));
  }
  return out;
}

}  // namespace senlog
