#pragma once
// Ad-hoc phase, step 4: kernels to logic. Finalized, logically-rewritten
// kernels become formulas: groups distribute over connectives, negated group
// properties lift into conjoined negated atoms, nested SENTENCE clauses
// conjoin with variable unification, and free placeholder variables close
// under a top-level existential. Parser bookkeeping (determiners, construct
// type tags, leftover preposition markers) is dropped here.

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "senlog/fol.hpp"
#include "senlog/logifun.hpp"

namespace senlog {

namespace detail {

inline bool is_var_entity(const Entity& e) {
  return e.is_singleton() && (e.type == "VAR" || (!e.name.empty() && e.name[0] == '?'));
}

inline bool universal_det(const std::string& v) {
  std::string w = to_lower(v);
  return w == "all" || w == "every" || w == "each";
}

}  // namespace detail

// A singleton entity as a term. Determiners become quantities (universal
// determiners yield a boxed term, everything else is existential and
// dropped), `extra` becomes the specification, `cop` the copula, and the
// remaining non-bookkeeping properties ride along (amod normalizes to JJ).
inline Term term_of_entity(const Entity& e, const KnowledgeBase& kb) {
  Term t = Term::func(kb.lemmatize(e.name));
  if (const auto* det = [&]() -> const std::vector<std::string>* {
        auto it = e.properties.find("det");
        return it == e.properties.end() ? nullptr : &it->second;
      }()) {
    for (const auto& v : *det)
      if (detail::universal_det(v)) t.quantity = Quantity::ALL;
  }
  for (const auto& [key, vals] : e.properties) {
    if (key == "det" || key == "type" || key == "root" || detail::prep_key(key)) continue;
    if (key == "extra") {
      // Spelling variants normalize token-by-token through the lexicon so
      // e.g. "city center" and "city centre" yield the same specification.
      std::vector<std::string> toks;
      for (const auto& v : vals)
        for (const auto& w : split_tokens(v)) toks.push_back(kb.lemmatize(w));
      t.specification = join(toks, " ");
      continue;
    }
    if (key == "cop") {
      if (!vals.empty()) t.cop = std::make_shared<Term>(Term::func(vals.front()));
      continue;
    }
    std::string out_key = key == "amod" ? "JJ" : key;
    for (const auto& v : vals) t.properties[out_key].push_back(Term::func(v));
  }
  return t;
}

namespace detail {

// Argument expansion: a singleton is one positive term; NOT negates the term
// itself; coordinations list their member terms under a connective.
struct ArgTerms {
  std::vector<Term> terms;
  Formula::Kind conn = Formula::Kind::And;
  bool negate_all = false;  // NEITHER: negate the whole disjunction
};

inline ArgTerms arg_terms(const Entity& e, const KnowledgeBase& kb) {
  ArgTerms out;
  if (e.is_singleton()) {
    out.terms.push_back(term_of_entity(e, kb));
    return out;
  }
  if (e.group == GroupType::NOT) {
    Term t = term_of_entity(e.children.front(), kb);
    t.negated = true;
    out.terms.push_back(t);
    return out;
  }
  for (const auto& c : e.children) {
    const Entity& m = c.group == GroupType::NOT ? c.children.front() : c;
    Term t = term_of_entity(m, kb);
    t.negated = c.group == GroupType::NOT;
    out.terms.push_back(t);
  }
  if (e.group == GroupType::OR) out.conn = Formula::Kind::Or;
  if (e.group == GroupType::NEITHER) {
    out.conn = Formula::Kind::Or;
    out.negate_all = true;
  }
  return out;
}

inline void walk_atom_terms(Formula& f, const std::function<void(Term&)>& fn) {
  if (f.kind == Formula::Kind::Atom) {
    fn(f.atom->arg0);
    if (f.atom->arg1) fn(*f.atom->arg1);
    for (auto& [k, vals] : f.atom->properties) {
      (void)k;
      for (auto& t : vals) fn(t);
    }
    return;
  }
  for (auto& c : f.children) walk_atom_terms(c, fn);
}

inline void collect_vars(const Formula& f, std::set<std::string>& out) {
  auto& mf = const_cast<Formula&>(f);
  walk_atom_terms(mf, [&](Term& t) {
    if (!t.name.empty() && t.name[0] == '?') out.insert(t.name);
  });
}

}  // namespace detail

// The formula for one kernel, ignoring SENTENCE nesting (handled by the
// caller). Group-valued construct properties lift: the base atom without the
// property conjoins with one atom per member, negated for NOT members.
inline Formula kernel_atom_formula(const Relationship& k, const KnowledgeBase& kb) {
  Proposition tmpl;
  tmpl.name = k.label;
  const Entity* group_prop = nullptr;
  std::string group_key;
  for (const auto& [key, v] : k.properties) {
    if (key == "SENTENCE" || key == "extra") continue;
    if (v.kernel) continue;  // unrewritten dependency bookkeeping
    if (v.node) {
      if (!v.node->is_singleton()) {
        if (!group_prop) {
          group_prop = &*v.node;
          group_key = key;
        }
        continue;
      }
      tmpl.properties[key].push_back(term_of_entity(*v.node, kb));
      continue;
    }
    tmpl.properties[key].push_back(Term::func(v.text));
  }

  bool unary = !k.target ||
               (detail::is_var_entity(*k.target) && k.target->properties.empty());

  detail::ArgTerms src = detail::arg_terms(k.source, kb);
  std::optional<detail::ArgTerms> tgt;
  if (!unary) tgt = detail::arg_terms(*k.target, kb);

  std::vector<Formula> src_parts;
  for (const Term& s : src.terms) {
    if (!tgt) {
      Proposition p = tmpl;
      p.arg0 = s;
      src_parts.push_back(Formula::mk_atom(std::move(p)));
      continue;
    }
    std::vector<Formula> tgt_parts;
    for (const Term& t : tgt->terms) {
      Proposition p = tmpl;
      p.arg0 = s;
      p.arg1 = t;
      tgt_parts.push_back(Formula::mk_atom(std::move(p)));
    }
    Formula inner = tgt->conn == Formula::Kind::Or ? Formula::mk_or(std::move(tgt_parts))
                                                   : Formula::mk_and(std::move(tgt_parts));
    if (tgt->negate_all) inner = Formula::mk_not(std::move(inner));
    src_parts.push_back(std::move(inner));
  }
  Formula f = src.conn == Formula::Kind::Or ? Formula::mk_or(std::move(src_parts))
                                            : Formula::mk_and(std::move(src_parts));
  if (src.negate_all) f = Formula::mk_not(std::move(f));

  if (group_prop && f.kind == Formula::Kind::Atom) {
    Proposition base = *f.atom;
    std::vector<Formula> parts;
    parts.push_back(Formula::mk_atom(base));
    for (const auto& c : group_prop->children) {
      bool neg = c.group == GroupType::NOT;
      const Entity& m = neg ? c.children.front() : c;
      Proposition p = base;
      p.properties[group_key] = {term_of_entity(m, kb)};
      Formula part = Formula::mk_atom(std::move(p));
      if (neg) part = Formula::mk_not(std::move(part));
      parts.push_back(std::move(part));
    }
    f = Formula::mk_and(std::move(parts));
  }

  if (k.negated) f = Formula::mk_not(std::move(f));
  return f;
}

namespace detail {

inline Formula formula_of(const Relationship& k, const KnowledgeBase& kb) {
  Formula self = kernel_atom_formula(k, kb);
  std::vector<Formula> parts;
  std::optional<std::string> inner_var;
  for (const auto& [key, v] : k.properties) {
    if (key != "SENTENCE" || !v.kernel) continue;
    if (!inner_var && is_var_entity(v.kernel->source)) inner_var = v.kernel->source.name;
    parts.push_back(formula_of(*v.kernel, kb));
  }
  if (parts.empty()) return self;

  // Unify the outer placeholder subject with the inner clause's subject and
  // lift its copula onto every occurrence of the unified variable.
  if (is_var_entity(k.source) && inner_var) {
    std::string from = k.source.name, to = *inner_var;
    std::vector<std::string> jj;
    if (auto it = k.source.properties.find("cop"); it != k.source.properties.end())
      jj.insert(jj.end(), it->second.begin(), it->second.end());
    if (auto it = k.source.properties.find("JJ"); it != k.source.properties.end())
      jj.insert(jj.end(), it->second.begin(), it->second.end());
    walk_atom_terms(self, [&](Term& t) {
      if (t.name == from) t.name = to;
    });
    parts.push_back(std::move(self));
    if (!jj.empty()) {
      for (auto& p : parts)
        walk_atom_terms(p, [&](Term& t) {
          if (t.name != to) return;
          t.cop.reset();
          t.properties.erase("cop");
          for (const auto& a : jj) t.properties["JJ"].push_back(Term::func(a));
        });
    }
    return Formula::mk_and(std::move(parts));
  }
  parts.push_back(std::move(self));
  return Formula::mk_and(std::move(parts));
}

}  // namespace detail

// Full conversion: nested formula construction plus existential closure over
// the remaining placeholder variables.
inline Formula sentence_to_formula(const Relationship& k, const KnowledgeBase& kb) {
  Formula f = detail::formula_of(k, kb);
  std::set<std::string> vars;
  detail::collect_vars(f, vars);
  std::vector<std::string> ordered(vars.begin(), vars.end());
  std::sort(ordered.begin(), ordered.end(), std::greater<>());
  for (const auto& v : ordered) f = Formula::mk_exists(v, std::move(f));
  return f;
}

}  // namespace senlog
