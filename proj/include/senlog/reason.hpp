#pragma once
// Ex-post engine: multi-valued KB-driven comparison of terms and propositions,
// tabular possible-world semantics, paraconsistent natural joins, exact
// rational confidence, and three-way pair classification.
//
// The term/proposition comparison case tables are evaluated strictly
// top-to-bottom, first match wins; each row carries an id surfaced in
// explanations.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "senlog/common.hpp"
#include "senlog/expand.hpp"
#include "senlog/fol.hpp"
#include "senlog/kb.hpp"

namespace senlog {

// ---------------------------------------------------------------- outcomes

enum class Cmp { EQ, NEQ, IMPL_NSPEC, IMPL_NONE, IMPL_DOWN, IMPL_GEN, OMEGA };

inline bool is_impl(Cmp v) {
  return v == Cmp::IMPL_NSPEC || v == Cmp::IMPL_NONE || v == Cmp::IMPL_DOWN ||
         v == Cmp::IMPL_GEN;
}

inline std::string to_string(Cmp v) {
  switch (v) {
    case Cmp::EQ: return "Eq";
    case Cmp::NEQ: return "NEq";
    case Cmp::IMPL_NSPEC: return "⇒nspec";
    case Cmp::IMPL_NONE: return "⇒None";
    case Cmp::IMPL_DOWN: return "⇒↓";
    case Cmp::IMPL_GEN: return "↠";
    case Cmp::OMEGA: return "ω";
  }
  return "?";
}

// Transform-when-negated: Eq and NEq swap; everything else loses information.
inline Cmp eta(Cmp v) {
  if (v == Cmp::EQ) return Cmp::NEQ;
  if (v == Cmp::NEQ) return Cmp::EQ;
  return Cmp::OMEGA;
}

// ---------------------------------------------------------------- values

// KB-driven comparison of optional name/specification strings.
inline Cmp cmp_value(const std::optional<std::string>& a, const std::optional<std::string>& b,
                     const KnowledgeBase& kb) {
  if (!a && !b) return Cmp::EQ;
  if (!a) return Cmp::IMPL_NONE;  // missing information entails any value
  if (!b) return Cmp::OMEGA;
  if (*a == *b) return Cmp::EQ;
  switch (kb_relation(*a, *b, kb)) {
    case KbRel::EQUIV: return Cmp::EQ;
    case KbRel::INCONSISTENT: return Cmp::NEQ;
    case KbRel::IMPLIES: return Cmp::IMPL_GEN;
    case KbRel::NONE: break;
  }
  return Cmp::OMEGA;
}

// ---------------------------------------------------------------- terms

inline Cmp cmp_term(const std::optional<Term>& a, const std::optional<Term>& b,
                    const KnowledgeBase& kb, int* row = nullptr);

namespace detail {

inline Term strip_neg(Term t) {
  t.negated = false;
  return t;
}

// Copula comparison: missing-vs-missing is equivalence, missing first argument
// entails anything, a copula on the first side only cannot be matched.
inline Cmp cmp_cop(const std::shared_ptr<Term>& a, const std::shared_ptr<Term>& b,
                   const KnowledgeBase& kb) {
  std::optional<Term> oa, ob;
  if (a) oa = *a;
  if (b) ob = *b;
  return cmp_term(oa, ob, kb);
}

}  // namespace detail

// Multi-valued term equivalence. Rows follow the KB-driven case table; two
// repair rows (13a/13b) cover specification loss/gain between otherwise equal
// names, which the bare "copula comparison when names are equal" fallthrough
// would wrongly collapse.
inline Cmp cmp_term(const std::optional<Term>& a, const std::optional<Term>& b,
                    const KnowledgeBase& kb, int* row) {
  auto R = [&](int r, Cmp v) {
    if (row) *row = r;
    return v;
  };
  if (!a && !b) return R(1, Cmp::EQ);             // a ≡ b (both missing)
  if (!a) return R(5, Cmp::IMPL_NONE);            // a ≡ None
  if (!b) return R(6, Cmp::OMEGA);                // b ≡ None
  if (render(*a) == render(*b)) return R(1, Cmp::EQ);
  // Row 2: one side is the explicit negation of the other.
  if (a->negated != b->negated &&
      render(detail::strip_neg(*a)) == render(detail::strip_neg(*b)))
    return R(2, Cmp::NEQ);
  if (a->negated) return R(3, eta(cmp_term(detail::strip_neg(*a), b, kb)));
  if (b->negated) return R(4, eta(cmp_term(a, detail::strip_neg(*b), kb)));
  if (a->is_var() || b->is_var()) return R(6, Cmp::OMEGA);  // non-term operand

  auto opt = [](const std::string& s) { return std::optional<std::string>(s); };
  Cmp n = cmp_value(opt(a->name), opt(b->name), kb);
  Cmp nf = cmp_value(opt(b->name), opt(a->name), kb);  // flipped n
  Cmp s = cmp_value(b->specification, a->specification, kb);
  Cmp c = detail::cmp_cop(b->cop, a->cop, kb);
  Cmp ncf = cmp_value(opt(b->name), a->specification, kb);  // flipped nc
  bool a_all = a->quantity == Quantity::ALL;
  bool b_all = b->quantity == Quantity::ALL;

  // Row 1 (second disjunct): equal by components.
  if (n == Cmp::EQ && s == Cmp::EQ && c == Cmp::EQ) return R(1, Cmp::EQ);
  // Rows 7-8: the second term is a universal whose specification names the
  // first term — the first is a specific instance of the second.
  if (n == Cmp::OMEGA && b_all && ncf == Cmp::EQ && b->specification)
    return R(a_all ? 7 : 8, Cmp::IMPL_DOWN);
  // Row 9: universal vs existential with an implied flipped name.
  if (n == Cmp::OMEGA && b_all && !a_all && is_impl(nf)) return R(9, nf);
  // Row 10: both existential, flipped names equivalent.
  if (n == Cmp::OMEGA && !b_all && !a_all && nf == Cmp::EQ) return R(10, Cmp::IMPL_DOWN);
  // Row 11: equal names, specification verdict agrees with the copula one.
  if (n == Cmp::EQ && s == c && (b_all == a_all || b_all)) return R(11, s);
  // Row 12: equal names and specifications, copula present on one side only.
  if (n == Cmp::EQ && s == Cmp::EQ && c == Cmp::IMPL_NONE) return R(12, Cmp::IMPL_NSPEC);
  // Row 13a (repair): specification loss — a carries a specification b lacks.
  if (n == Cmp::EQ && c == Cmp::EQ && s == Cmp::IMPL_NONE) return R(131, Cmp::IMPL_NSPEC);
  // Row 13b (repair): specification or copula gain must not collapse to the
  // bare copula fallthrough below.
  if (n == Cmp::EQ && (s == Cmp::OMEGA || c == Cmp::OMEGA)) return R(132, Cmp::OMEGA);
  // Row 13: equal names — the copula verdict decides.
  if (n == Cmp::EQ) return R(13, c);
  // Row 14: implied names, equal rest, universal implying existential.
  if (is_impl(n) && s == Cmp::EQ && c == Cmp::EQ && !b_all && a_all) return R(14, n);
  // Row 15: implied names with inconsistent copulae.
  if (is_impl(n) && s == Cmp::EQ && c == Cmp::NEQ) return R(15, Cmp::NEQ);
  // Row 16: implied name matching the other's universal without specification.
  if (is_impl(n) && ncf == Cmp::EQ && !b->specification && b_all)
    return R(16, Cmp::IMPL_DOWN);
  // Row 17: inconsistent names with otherwise equal structure.
  if (n == Cmp::NEQ && s == Cmp::EQ && c == Cmp::EQ) return R(17, Cmp::NEQ);
  return R(18, Cmp::OMEGA);
}

// ---------------------------------------------------------------- sigma

// Prioritised summary of comparison outcomes for one property key.
inline Cmp sigma(const std::vector<Cmp>& S) {
  if (S.empty()) return Cmp::OMEGA;
  auto has = [&](Cmp v) { return std::find(S.begin(), S.end(), v) != S.end(); };
  if (has(Cmp::NEQ)) return Cmp::NEQ;
  if (has(Cmp::EQ)) return Cmp::EQ;
  bool nspec = has(Cmp::IMPL_NSPEC), none = has(Cmp::IMPL_NONE), down = has(Cmp::IMPL_DOWN),
       gen = has(Cmp::IMPL_GEN);
  if (nspec && !none && !down && !gen) return Cmp::IMPL_NSPEC;
  if (!nspec && none && !down && !gen) return Cmp::IMPL_NONE;
  if (!nspec && !none && down && !gen) return Cmp::IMPL_DOWN;
  if (nspec || none || down || gen) return Cmp::IMPL_GEN;
  return Cmp::OMEGA;  // e.g. S = {ω}: the table is otherwise partial
}

// Summary across key verdicts of a whole property map.
inline Cmp sigma_prime(const std::vector<Cmp>& S) {
  if (S.empty()) return Cmp::EQ;
  auto has = [&](Cmp v) { return std::find(S.begin(), S.end(), v) != S.end(); };
  if (has(Cmp::OMEGA)) return Cmp::OMEGA;
  if (has(Cmp::NEQ)) return Cmp::NEQ;
  bool impl = has(Cmp::IMPL_NSPEC) || has(Cmp::IMPL_NONE) || has(Cmp::IMPL_DOWN) ||
              has(Cmp::IMPL_GEN);
  if (!has(Cmp::EQ) && impl) return sigma(S);
  if (has(Cmp::EQ)) return Cmp::EQ;
  return Cmp::OMEGA;
}

// ---------------------------------------------------------------- kappa

using PropMap = std::map<std::string, std::vector<Term>>;

// Per-key verdicts comparing the first proposition's properties against the
// second's; keys owned by only one side default per the direction of the
// implication being probed.
inline std::map<std::string, Cmp> kappa_r(const PropMap& p, const PropMap& q,
                                          const KnowledgeBase& kb) {
  std::map<std::string, Cmp> out;
  for (const auto& [k, vals] : p) {
    auto it = q.find(k);
    if (it == q.end()) {
      out[k] = Cmp::OMEGA;
      continue;
    }
    std::vector<Cmp> S;
    for (const auto& a : vals)
      for (const auto& b : it->second) S.push_back(cmp_term(a, b, kb));
    out[k] = sigma(S);
  }
  for (const auto& [k, vals] : q)
    if (!p.count(k)) out[k] = Cmp::IMPL_GEN;
  return out;
}

inline std::map<std::string, Cmp> kappa_i(const PropMap& p, const PropMap& q,
                                          const KnowledgeBase& kb) {
  std::map<std::string, Cmp> out = kappa_r(p, q, kb);
  for (const auto& [k, vals] : p)
    if (!q.count(k)) out[k] = Cmp::IMPL_GEN;
  for (const auto& [k, vals] : q)
    if (!p.count(k)) out[k] = Cmp::OMEGA;
  return out;
}

// ---------------------------------------------------------------- propositions

// Arity-level comparison γ (ignores the property maps).
inline Cmp cmp_unary(const Proposition& a, const Proposition& b, const KnowledgeBase& kb) {
  if (a.name != b.name) return Cmp::OMEGA;
  return cmp_term(a.arg0, b.arg0, kb);
}

inline Cmp cmp_binary(const Proposition& a, const Proposition& b, const KnowledgeBase& kb) {
  if (a.name != b.name) return Cmp::OMEGA;
  Cmp sc = cmp_term(a.arg0, b.arg0, kb);
  Cmp tc = cmp_term(a.arg1, b.arg1, kb);
  if (sc == Cmp::OMEGA || tc == Cmp::OMEGA) return Cmp::OMEGA;
  // Listed before the conjunctive NEq rows; first match wins.
  if (sc == Cmp::NEQ || tc == Cmp::NEQ) return Cmp::OMEGA;
  if (sc == Cmp::NEQ && tc != Cmp::OMEGA) return Cmp::NEQ;
  if (tc == Cmp::NEQ && sc != Cmp::OMEGA) return Cmp::NEQ;
  if (tc == Cmp::EQ) return sc;
  if (sc == Cmp::EQ) return tc;
  return sigma({sc, tc});
}

// Structural (single-step) proposition equivalence, the γ/κ/κ' case table.
// `row` reports the matched row id for explanations.
inline Cmp propequiv(const Proposition& a, const Proposition& b, const KnowledgeBase& kb,
                     int* row = nullptr) {
  auto R = [&](int r, Cmp v) {
    if (row) *row = r;
    return v;
  };
  if (render(a) == render(b)) return R(1, Cmp::EQ);
  if (a.is_binary() != b.is_binary()) return R(9, Cmp::OMEGA);
  if (!a.is_binary() && render(a.arg0) != render(b.arg0)) return R(10, Cmp::OMEGA);

  Cmp gamma = a.is_binary() ? cmp_binary(a, b, kb) : cmp_unary(a, b, kb);
  if (gamma == Cmp::OMEGA) return R(11, Cmp::OMEGA);

  Cmp f = cmp_term(a.arg0, b.arg0, kb);
  Cmp c = detail::cmp_cop(a.arg0.cop, b.arg0.cop, kb);
  std::map<std::string, Cmp> kr = kappa_r(a.properties, b.properties, kb);
  std::map<std::string, Cmp> kr_flip = kappa_r(b.properties, a.properties, kb);
  std::vector<Cmp> cod, cod_flip;
  for (const auto& [k, v] : kr) cod.push_back(v);
  for (const auto& [k, v] : kr_flip) cod_flip.push_back(v);
  Cmp kap = sigma_prime(cod);
  Cmp kap_p = sigma_prime(cod_flip);
  auto in_cod = [&](Cmp v) { return std::find(cod.begin(), cod.end(), v) != cod.end(); };

  if (gamma == Cmp::EQ && f == Cmp::EQ) {
    if (is_impl(kap) && c != Cmp::EQ) return R(12, kap);
    if (is_impl(kap) && c == Cmp::EQ && in_cod(Cmp::OMEGA)) return R(13, Cmp::OMEGA);
    if (is_impl(kap) && c == Cmp::EQ && in_cod(Cmp::IMPL_NSPEC)) return R(14, Cmp::OMEGA);
    if (kap == Cmp::IMPL_DOWN || in_cod(Cmp::IMPL_DOWN)) return R(15, kap);
    if (is_impl(kap)) return R(16, Cmp::OMEGA);
    if (kap_p == Cmp::IMPL_NSPEC) return R(17, Cmp::IMPL_DOWN);
    if (kap_p != Cmp::IMPL_NSPEC && !is_impl(kap)) return R(18, kap);
  }
  if (is_impl(gamma) && kap != Cmp::EQ) {
    if (in_cod(Cmp::OMEGA)) return R(19, Cmp::OMEGA);
    if (kap_p == Cmp::IMPL_NSPEC) return R(20, Cmp::IMPL_DOWN);
    return R(21, kap);
  }
  if (gamma == Cmp::NEQ && (kap == Cmp::OMEGA || kap == Cmp::NEQ)) return R(22, Cmp::OMEGA);
  return R(23, gamma);
}

// ---------------------------------------------------------------- cmp_prop

// Full proposition comparison: priority preamble (equivalence, inconsistency,
// implication through the expansions), then the structural case table, then
// the σ-summary over the equivalence-class cross product.
struct CmpExplained {
  Cmp value = Cmp::OMEGA;
  std::string rule;  // human-readable trigger, e.g. "expansion implication"
};

inline CmpExplained cmp_prop_explained(const Proposition& p1, const Proposition& p2,
                                       const KnowledgeBase& kb) {
  std::set<std::string> t1;
  std::vector<Proposition> t1v = t_closure(p1, kb);
  for (const auto& q : t1v) t1.insert(render(q));
  std::set<std::string> t2;
  std::vector<Proposition> t2v = t_closure(p2, kb);
  for (const auto& q : t2v) t2.insert(render(q));

  // Priority 1: equivalence.
  if (t1.count(render(p2))) return {Cmp::EQ, "equivalence (within T-closure)"};

  std::vector<PropLit> e1 = e_closure(p1, kb);
  // Priority 2: inconsistency — the negation of (an equivalent of) p2 is
  // entailed by p1.
  for (const auto& l : e1)
    if (l.negated && t2.count(render(l.prop)))
      return {Cmp::NEQ, "inconsistency (negation within E-closure)"};
  // Priority 3: implication — (an equivalent of) p2 is entailed by p1.
  for (const auto& l : e1)
    if (!l.negated && t2.count(render(l.prop)))
      return {Cmp::IMPL_GEN, "implication (within E-closure)"};

  // Priority 4: direct structural comparison.
  int r = 0;
  Cmp direct = propequiv(p1, p2, kb, &r);
  if (direct != Cmp::OMEGA)
    return {direct, "structural (row " + std::to_string(r) + ")"};

  // Priority 5: σ-summary over the equivalence-class cross product.
  std::vector<Cmp> S;
  int best_row = 0;
  for (const auto& q1 : t1v)
    for (const auto& q2 : t2v) {
      int rr = 0;
      Cmp v = propequiv(q1, q2, kb, &rr);
      if (v != Cmp::OMEGA) best_row = rr;
      S.push_back(v);
    }
  Cmp fb = sigma(S);
  if (fb != Cmp::OMEGA)
    return {fb, "expanded structural (σ over T×T, row " + std::to_string(best_row) + ")"};
  return {Cmp::OMEGA, "indifference"};
}

inline Cmp cmp_prop(const Proposition& p1, const Proposition& p2, const KnowledgeBase& kb) {
  return cmp_prop_explained(p1, p2, kb).value;
}

// Signed-literal wrapper (negation rows of the proposition table).
inline Cmp cmp_prop_lit(const PropLit& a, const PropLit& b, const KnowledgeBase& kb) {
  if (a.negated && b.negated) {
    Cmp inner = cmp_prop(a.prop, b.prop, kb);
    if (is_impl(inner)) return Cmp::OMEGA;
    return inner;
  }
  if (a.negated != b.negated && render(a.prop) == render(b.prop)) return Cmp::NEQ;
  if (a.negated) return eta(cmp_prop(a.prop, b.prop, kb));
  if (b.negated) return eta(cmp_prop(a.prop, b.prop, kb));
  return cmp_prop(a.prop, b.prop, kb);
}

// ---------------------------------------------------------------- world tables

inline constexpr std::size_t kAtomCap = 20;

struct WorldTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::uint8_t>> rows;

  std::size_t col(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    throw ValidationError("world table has no column: " + name);
  }
  bool has_col(const std::string& name) const {
    return std::find(columns.begin(), columns.end(), name) != columns.end();
  }
};

// One row per assignment to the distinct atoms; sentence column holds the
// classical valuation.
inline WorldTable tabular_semantics(const Formula& f, const std::string& sentence_col = "s") {
  std::vector<Proposition> atoms = atoms_of(f);
  if (atoms.size() > kAtomCap)
    throw AtomBudgetExceeded("formula has " + std::to_string(atoms.size()) +
                             " atoms, cap is " + std::to_string(kAtomCap));
  WorldTable t;
  for (const auto& a : atoms) t.columns.push_back(render(a));
  t.columns.push_back(sentence_col);
  std::size_t n = atoms.size();
  for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
    std::vector<std::uint8_t> row(n + 1);
    std::map<std::string, bool> env;
    for (std::size_t i = 0; i < n; ++i) {
      row[i] = (bits >> i) & 1u;
      env[t.columns[i]] = row[i] != 0;
    }
    row[n] = evaluate(f, env) ? 1 : 0;
    t.rows.push_back(std::move(row));
  }
  return t;
}

// Compatibility table for one cross-formula atom pair.
inline WorldTable pair_table(Cmp o, const std::string& a, const std::string& b) {
  WorldTable t;
  t.columns = {a, b};
  auto add = [&](std::uint8_t x, std::uint8_t y) { t.rows.push_back({x, y}); };
  if (o == Cmp::EQ) {
    add(1, 1);
    add(0, 0);
  } else if (o == Cmp::NEQ) {
    add(0, 1);
    add(1, 0);
  } else if (is_impl(o)) {
    add(0, 0);
    add(0, 1);
    add(1, 1);
  } else {
    add(0, 0);
    add(0, 1);
    add(1, 0);
    add(1, 1);
  }
  return t;
}

// Natural equi-join over shared column names.
inline WorldTable natural_join(const WorldTable& A, const WorldTable& B) {
  std::vector<std::size_t> shared_a, shared_b, b_only;
  for (std::size_t j = 0; j < B.columns.size(); ++j) {
    if (A.has_col(B.columns[j])) {
      shared_a.push_back(A.col(B.columns[j]));
      shared_b.push_back(j);
    } else {
      b_only.push_back(j);
    }
  }
  WorldTable out;
  out.columns = A.columns;
  for (std::size_t j : b_only) out.columns.push_back(B.columns[j]);

  std::map<std::vector<std::uint8_t>, std::vector<std::size_t>> index;
  for (std::size_t r = 0; r < B.rows.size(); ++r) {
    std::vector<std::uint8_t> key;
    for (std::size_t j : shared_b) key.push_back(B.rows[r][j]);
    index[key].push_back(r);
  }
  for (const auto& arow : A.rows) {
    std::vector<std::uint8_t> key;
    for (std::size_t j : shared_a) key.push_back(arow[j]);
    auto it = index.find(key);
    if (it == index.end()) continue;
    for (std::size_t r : it->second) {
      std::vector<std::uint8_t> row = arow;
      for (std::size_t j : b_only) row.push_back(B.rows[r][j]);
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

inline WorldTable join_all(const WorldTable& tA, const WorldTable& tB,
                           const std::vector<WorldTable>& pair_tables) {
  WorldTable t = natural_join(tA, tB);
  for (const auto& p : pair_tables) t = natural_join(t, p);
  return t;
}

// |rows with s=1 and t=1| / |rows with s=1|, exactly; 0 when W(s) is empty.
inline Rational confidence(const std::string& s_col, const std::string& t_col,
                           const WorldTable& T) {
  std::size_t si = T.col(s_col), ti = T.col(t_col);
  std::int64_t both = 0, prem = 0;
  for (const auto& row : T.rows) {
    if (row[si]) {
      ++prem;
      if (row[ti]) ++both;
    }
  }
  if (prem == 0) return Rational(0);
  return Rational(both, prem);
}

// ---------------------------------------------------------------- verdicts

enum class PairClass { IMPLICATION, INCONSISTENCY, INDIFFERENCE };

inline std::string to_string(PairClass c) {
  switch (c) {
    case PairClass::IMPLICATION: return "IMPLICATION";
    case PairClass::INCONSISTENCY: return "INCONSISTENCY";
    case PairClass::INDIFFERENCE: return "INDIFFERENCE";
  }
  return "?";
}

inline PairClass class_of(const Rational& conf) {
  if (conf == Rational(1)) return PairClass::IMPLICATION;
  if (conf == Rational(0)) return PairClass::INCONSISTENCY;
  return PairClass::INDIFFERENCE;
}

struct AtomMotivation {
  std::string a, b;
  Cmp outcome = Cmp::OMEGA;
  std::string rule;
};

struct PairVerdict {
  Rational confidence_ab, confidence_ba;
  PairClass class_ab = PairClass::INDIFFERENCE;
  PairClass class_ba = PairClass::INDIFFERENCE;
  std::vector<AtomMotivation> motivations;  // premise→conclusion direction
  WorldTable world_table;                   // premise→conclusion join
};

namespace detail {

// Directed join for confidence(A→B): constraints come from comparing premise
// atoms against conclusion atoms only.
inline WorldTable directed_join(const Formula& fa, const Formula& fb, const KnowledgeBase& kb,
                                std::vector<AtomMotivation>* motivations = nullptr) {
  WorldTable tA = tabular_semantics(fa, "s");
  WorldTable tB = tabular_semantics(fb, "t");
  std::vector<WorldTable> pairs;
  for (const auto& pa : atoms_of(fa)) {
    for (const auto& pb : atoms_of(fb)) {
      std::string ra = render(pa), rb = render(pb);
      if (ra == rb) continue;  // same column, naturally joined
      CmpExplained o = cmp_prop_explained(pa, pb, kb);
      if (motivations) motivations->push_back({ra, rb, o.value, o.rule});
      if (o.value != Cmp::OMEGA) pairs.push_back(pair_table(o.value, ra, rb));
    }
  }
  return join_all(tA, tB, pairs);
}

}  // namespace detail

inline PairVerdict classify_pair(const Formula& fa, const Formula& fb,
                                 const KnowledgeBase& kb) {
  PairVerdict v;
  WorldTable fwd = detail::directed_join(fa, fb, kb, &v.motivations);
  v.confidence_ab = confidence("s", "t", fwd);
  WorldTable bwd = detail::directed_join(fb, fa, kb);
  v.confidence_ba = confidence("s", "t", bwd);
  v.class_ab = class_of(v.confidence_ab);
  v.class_ba = class_of(v.confidence_ba);
  v.world_table = std::move(fwd);
  return v;
}

}  // namespace senlog
