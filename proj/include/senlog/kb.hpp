#pragma once
// Miniature knowledge base: entity lexicon, logical-rewrite rules, logical
// function definitions, semantic relations, and proposition expansion rules.
// Serialized as a single JSON document (schema in docs/formats.md).

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "senlog/common.hpp"
#include "senlog/fol.hpp"

namespace senlog {

enum class EntityClass { VERB, GPE, LOC, ORG, NOUN, ENTITY, ADJECTIVE, PRONOUN };

inline EntityClass entity_class_from(const std::string& s) {
  if (s == "VERB") return EntityClass::VERB;
  if (s == "GPE") return EntityClass::GPE;
  if (s == "LOC") return EntityClass::LOC;
  if (s == "ORG") return EntityClass::ORG;
  if (s == "NOUN") return EntityClass::NOUN;
  if (s == "ENTITY") return EntityClass::ENTITY;
  if (s == "ADJECTIVE") return EntityClass::ADJECTIVE;
  if (s == "PRONOUN") return EntityClass::PRONOUN;
  throw ValidationError("unknown entity_class: " + s);
}

struct KbLexEntry {
  std::string lemma;
  std::vector<std::string> surface_forms;
  EntityClass entity_class = EntityClass::NOUN;
  bool abstract_entity = false;
  std::optional<bool> transitive;  // verbs only
  bool semi_modal = false;         // verbs only
};

struct LogicalRewriteRule {
  int rule_order = 0;
  std::set<std::string> prepositions;
  std::optional<std::string> matched_by_source;  // e.g. a temporal tagger tag
  std::optional<bool> requires_abstract_entity;
  std::optional<std::string> requires_verb_class;  // causative | movement | any
  std::string construct_name;                      // e.g. "space"
  std::string construct_property;                  // e.g. "stay in place"
};

enum class AttachTo { Kernel, Singleton };

struct LogicalFunctionDef {
  std::string construct_name;      // e.g. "SPACE"
  std::string construct_property;  // e.g. "stay in place"
  AttachTo attach_to = AttachTo::Kernel;
  std::string argument;  // property key carrying the annotation, e.g. "type"
};

enum class RelationKind { EQUIV, IMPLIES, INCONSISTENT, PART_OF, IS_A };

inline RelationKind relation_kind_from(const std::string& s) {
  if (s == "EQUIV") return RelationKind::EQUIV;
  if (s == "IMPLIES") return RelationKind::IMPLIES;
  if (s == "INCONSISTENT") return RelationKind::INCONSISTENT;
  if (s == "PART_OF") return RelationKind::PART_OF;
  if (s == "IS_A") return RelationKind::IS_A;
  throw ValidationError("unknown relation kind: " + s);
}

struct SemanticRelation {
  RelationKind kind = RelationKind::EQUIV;
  std::string left, right;
};

enum class ExpansionMode { ENTAILING, EQUIVALENT };

// Proposition pattern. Terms whose name starts with '$' are wildcards binding
// a whole term; property keys must match exactly (set equality).
struct ExpansionRule {
  ExpansionMode mode = ExpansionMode::ENTAILING;
  Proposition pattern;
  Proposition rewrite;
  bool rewrite_negated = false;
};

struct KnowledgeBase {
  std::vector<KbLexEntry> lexicon;
  std::vector<LogicalRewriteRule> rewrite_rules;  // sorted by rule_order
  std::vector<LogicalFunctionDef> functions;
  std::vector<SemanticRelation> relations;
  std::vector<ExpansionRule> expansions;
  std::vector<std::string> prototypical_prepositions;
  std::vector<std::string> pronouns;

  std::map<std::string, std::string> surface_to_lemma;  // lowercase surface -> lemma
  std::map<std::string, const KbLexEntry*> by_lemma;

  // Unknown words lemmatize to themselves.
  std::string lemmatize(const std::string& word) const {
    auto it = surface_to_lemma.find(to_lower(word));
    if (it != surface_to_lemma.end()) return it->second;
    return word;
  }

  const KbLexEntry* lookup(const std::string& word) const {
    auto it = by_lemma.find(lemmatize(word));
    if (it != by_lemma.end()) return it->second;
    return nullptr;
  }

  bool is_verb(const std::string& word) const {
    const KbLexEntry* e = lookup(word);
    return e && e->entity_class == EntityClass::VERB;
  }
  bool is_pronoun(const std::string& word) const {
    if (std::find(pronouns.begin(), pronouns.end(), to_lower(word)) != pronouns.end())
      return true;
    const KbLexEntry* e = lookup(word);
    return e && e->entity_class == EntityClass::PRONOUN;
  }
  bool is_prototypical_preposition(const std::string& word) const {
    return std::find(prototypical_prepositions.begin(), prototypical_prepositions.end(),
                     to_lower(word)) != prototypical_prepositions.end();
  }
  bool is_semi_modal(const std::string& word) const {
    const KbLexEntry* e = lookup(word);
    return e && e->semi_modal;
  }
  // A phrasal verb is a multi-word verb lemma recorded in the lexicon.
  bool is_phrasal_verb(const std::string& verb, const std::string& adverb) const {
    const KbLexEntry* e = lookup(verb + " " + adverb);
    return e && e->entity_class == EntityClass::VERB;
  }
  bool is_abstract(const std::string& word) const {
    const KbLexEntry* e = lookup(word);
    return e && e->abstract_entity;
  }
};

// ---------------------------------------------------------------- JSON load

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& known,
                                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key()))
      throw ValidationError("unknown key '" + it.key() + "' in " + where);
  }
}

inline Term term_from_json(const nlohmann::json& j);

inline std::map<std::string, std::vector<Term>> props_from_json(const nlohmann::json& j) {
  std::map<std::string, std::vector<Term>> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::vector<Term> vals;
    for (const auto& v : it.value()) vals.push_back(term_from_json(v));
    out[it.key()] = std::move(vals);
  }
  return out;
}

inline Term term_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (!s.empty() && s[0] == '?') return Term::var(s);
    return Term::func(s);
  }
  reject_unknown_keys(j, {"var", "name", "negated", "quantity", "specification", "cop",
                          "properties"},
                      "term");
  if (j.contains("var")) return Term::var(j.at("var").get<std::string>());
  Term t = Term::func(j.at("name").get<std::string>());
  if (j.contains("negated")) t.negated = j.at("negated").get<bool>();
  if (j.contains("quantity"))
    t.quantity = j.at("quantity").get<std::string>() == "ALL" ? Quantity::ALL : Quantity::SOME;
  if (j.contains("specification") && !j.at("specification").is_null())
    t.specification = j.at("specification").get<std::string>();
  if (j.contains("cop") && !j.at("cop").is_null())
    t.cop = std::make_shared<Term>(term_from_json(j.at("cop")));
  if (j.contains("properties")) t.properties = props_from_json(j.at("properties"));
  return t;
}

inline Proposition prop_from_json(const nlohmann::json& j) {
  reject_unknown_keys(j, {"name", "args", "properties"}, "proposition");
  Proposition p;
  p.name = j.at("name").get<std::string>();
  const auto& args = j.at("args");
  if (args.empty() || args.size() > 2)
    throw ValidationError("proposition must have 1 or 2 args: " + p.name);
  p.arg0 = term_from_json(args[0]);
  if (args.size() == 2 && !args[1].is_null()) p.arg1 = term_from_json(args[1]);
  if (j.contains("properties")) p.properties = props_from_json(j.at("properties"));
  return p;
}

}  // namespace detail

inline KnowledgeBase load_kb(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open KB file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError(std::string("malformed KB JSON: ") + e.what());
  }
  detail::reject_unknown_keys(
      j,
      {"lexicon", "rewrite_rules", "functions", "relations", "expansions",
       "prototypical_prepositions", "pronouns"},
      "KB document");

  KnowledgeBase kb;
  for (const auto& e : j.value("lexicon", nlohmann::json::array())) {
    detail::reject_unknown_keys(
        e, {"lemma", "surface_forms", "entity_class", "abstract_entity", "transitive",
            "semi_modal"},
        "lexicon entry");
    KbLexEntry le;
    le.lemma = e.at("lemma").get<std::string>();
    if (le.lemma.empty()) throw ValidationError("lexicon entry with empty lemma");
    for (const auto& s : e.value("surface_forms", nlohmann::json::array()))
      le.surface_forms.push_back(s.get<std::string>());
    le.entity_class = entity_class_from(e.value("entity_class", std::string("NOUN")));
    le.abstract_entity = e.value("abstract_entity", false);
    if (e.contains("transitive")) le.transitive = e.at("transitive").get<bool>();
    le.semi_modal = e.value("semi_modal", false);
    if (le.entity_class != EntityClass::VERB && (le.transitive || le.semi_modal))
      throw ValidationError("transitive/semi_modal on non-verb lexicon entry: " + le.lemma);
    kb.lexicon.push_back(std::move(le));
  }

  std::set<int> seen_orders;
  for (const auto& e : j.value("rewrite_rules", nlohmann::json::array())) {
    detail::reject_unknown_keys(
        e, {"rule_order", "prepositions", "matched_by_source", "requires_abstract_entity",
            "requires_verb_class", "construct_name", "construct_property"},
        "rewrite rule");
    LogicalRewriteRule r;
    r.rule_order = e.at("rule_order").get<int>();
    if (r.rule_order <= 0) throw ValidationError("rule_order must be positive");
    if (!seen_orders.insert(r.rule_order).second)
      throw ValidationError("duplicate rule_order " + std::to_string(r.rule_order));
    for (const auto& p : e.value("prepositions", nlohmann::json::array()))
      r.prepositions.insert(p.get<std::string>());
    if (e.contains("matched_by_source") && !e.at("matched_by_source").is_null())
      r.matched_by_source = e.at("matched_by_source").get<std::string>();
    if (r.prepositions.empty() && !r.matched_by_source)
      throw ValidationError("rule " + std::to_string(r.rule_order) +
                            ": prepositions may be empty only when matched_by_source is set");
    if (e.contains("requires_abstract_entity") && !e.at("requires_abstract_entity").is_null())
      r.requires_abstract_entity = e.at("requires_abstract_entity").get<bool>();
    if (e.contains("requires_verb_class") && !e.at("requires_verb_class").is_null())
      r.requires_verb_class = e.at("requires_verb_class").get<std::string>();
    r.construct_name = e.at("construct_name").get<std::string>();
    r.construct_property = e.at("construct_property").get<std::string>();
    kb.rewrite_rules.push_back(std::move(r));
  }
  std::sort(kb.rewrite_rules.begin(), kb.rewrite_rules.end(),
            [](const auto& a, const auto& b) { return a.rule_order < b.rule_order; });

  std::set<std::pair<std::string, std::string>> fn_keys;
  for (const auto& e : j.value("functions", nlohmann::json::array())) {
    detail::reject_unknown_keys(
        e, {"construct_name", "construct_property", "attach_to", "argument"}, "function def");
    LogicalFunctionDef f;
    f.construct_name = e.at("construct_name").get<std::string>();
    f.construct_property = e.at("construct_property").get<std::string>();
    if (!fn_keys.insert({f.construct_name, f.construct_property}).second)
      throw ValidationError("duplicate function def " + f.construct_name + "/" +
                            f.construct_property);
    std::string at = e.at("attach_to").get<std::string>();
    if (at == "Kernel")
      f.attach_to = AttachTo::Kernel;
    else if (at == "Singleton")
      f.attach_to = AttachTo::Singleton;
    else
      throw ValidationError("attach_to must be Kernel or Singleton, got " + at);
    f.argument = e.at("argument").get<std::string>();
    kb.functions.push_back(std::move(f));
  }

  for (const auto& e : j.value("relations", nlohmann::json::array())) {
    detail::reject_unknown_keys(e, {"kind", "left", "right"}, "relation");
    SemanticRelation r;
    r.kind = relation_kind_from(e.at("kind").get<std::string>());
    r.left = e.at("left").get<std::string>();
    r.right = e.at("right").get<std::string>();
    if (r.kind == RelationKind::INCONSISTENT && r.left == r.right)
      throw ValidationError("INCONSISTENT self-loop on " + r.left);
    kb.relations.push_back(std::move(r));
  }

  for (const auto& e : j.value("expansions", nlohmann::json::array())) {
    detail::reject_unknown_keys(e, {"mode", "pattern", "rewrite", "rewrite_negated"},
                                "expansion rule");
    ExpansionRule r;
    std::string mode = e.at("mode").get<std::string>();
    if (mode == "ENTAILING")
      r.mode = ExpansionMode::ENTAILING;
    else if (mode == "EQUIVALENT")
      r.mode = ExpansionMode::EQUIVALENT;
    else
      throw ValidationError("expansion mode must be ENTAILING or EQUIVALENT");
    r.pattern = detail::prop_from_json(e.at("pattern"));
    r.rewrite = detail::prop_from_json(e.at("rewrite"));
    r.rewrite_negated = e.value("rewrite_negated", false);
    if (r.mode == ExpansionMode::EQUIVALENT && r.rewrite_negated)
      throw ValidationError("EQUIVALENT expansion rules cannot produce negations");
    kb.expansions.push_back(std::move(r));
  }

  for (const auto& s : j.value("prototypical_prepositions", nlohmann::json::array()))
    kb.prototypical_prepositions.push_back(s.get<std::string>());
  for (const auto& s : j.value("pronouns", nlohmann::json::array()))
    kb.pronouns.push_back(s.get<std::string>());

  for (const auto& le : kb.lexicon) {
    kb.by_lemma[le.lemma] = &le;
    kb.surface_to_lemma[to_lower(le.lemma)] = le.lemma;
    for (const auto& sf : le.surface_forms) kb.surface_to_lemma[to_lower(sf)] = le.lemma;
  }
  return kb;
}

// ---------------------------------------------------------------- kb_relation

enum class KbRel { EQUIV, IMPLIES, INCONSISTENT, NONE };

namespace detail {

// Symmetric-transitive closure membership over EQUIV edges.
inline std::set<std::string> equiv_class(const std::string& a, const KnowledgeBase& kb) {
  std::set<std::string> cls{a};
  bool grown = true;
  while (grown) {
    grown = false;
    for (const auto& r : kb.relations) {
      if (r.kind != RelationKind::EQUIV) continue;
      if (cls.count(r.left) && cls.insert(r.right).second) grown = true;
      if (cls.count(r.right) && cls.insert(r.left).second) grown = true;
    }
  }
  return cls;
}

// Directed closure over IMPLIES / IS_A / PART_OF edges, with EQUIV classes
// collapsed at every step.
inline std::set<std::string> directed_closure(const std::string& a, const KnowledgeBase& kb) {
  std::set<std::string> reach = equiv_class(a, kb);
  bool grown = true;
  while (grown) {
    grown = false;
    for (const auto& r : kb.relations) {
      bool directed = r.kind == RelationKind::IMPLIES || r.kind == RelationKind::IS_A ||
                      r.kind == RelationKind::PART_OF;
      if (!directed) continue;
      if (!reach.count(r.left)) continue;
      for (const auto& member : equiv_class(r.right, kb)) {
        if (reach.insert(member).second) grown = true;
      }
    }
  }
  return reach;
}

}  // namespace detail

inline KbRel kb_relation(const std::string& a, const std::string& b, const KnowledgeBase& kb) {
  if (a == b) return KbRel::EQUIV;
  std::set<std::string> ea = detail::equiv_class(a, kb);
  if (ea.count(b)) return KbRel::EQUIV;
  // Inconsistency: the directed closure of either side reaches an
  // INCONSISTENT edge touching the other side's closure.
  std::set<std::string> ra = detail::directed_closure(a, kb);
  std::set<std::string> rb = detail::directed_closure(b, kb);
  for (const auto& r : kb.relations) {
    if (r.kind != RelationKind::INCONSISTENT) continue;
    if ((ra.count(r.left) && rb.count(r.right)) || (ra.count(r.right) && rb.count(r.left)))
      return KbRel::INCONSISTENT;
  }
  if (ra.count(b)) return KbRel::IMPLIES;
  return KbRel::NONE;
}

// ---------------------------------------------------------------- rule match

struct KernelContext {
  std::string verb_lemma;
  bool causative = false;
  bool movement = false;
};

struct NodeContext {
  std::vector<std::string> prepositions;  // from positional `case` properties
  std::string meu_source;                 // MEU source tag, e.g. "SUTime"
  bool abstract_entity = false;
};

// First rule in ascending rule_order whose premises all hold.
inline const LogicalRewriteRule* match_logical_rule(const KernelContext& kctx,
                                                    const NodeContext& nctx,
                                                    const KnowledgeBase& kb) {
  for (const auto& r : kb.rewrite_rules) {
    bool ok = true;
    if (!r.prepositions.empty()) {
      bool any = false;
      for (const auto& p : nctx.prepositions)
        if (r.prepositions.count(to_lower(p))) any = true;
      if (!any) ok = false;
    }
    if (ok && r.matched_by_source && nctx.meu_source != *r.matched_by_source) ok = false;
    if (ok && r.requires_abstract_entity &&
        nctx.abstract_entity != *r.requires_abstract_entity)
      ok = false;
    if (ok && r.requires_verb_class && *r.requires_verb_class != "any") {
      if (*r.requires_verb_class == "causative" && !kctx.causative) ok = false;
      if (*r.requires_verb_class == "movement" && !kctx.movement) ok = false;
    }
    if (ok && r.prepositions.empty() && !r.matched_by_source) ok = false;
    if (ok) return &r;
  }
  return nullptr;
}

inline const LogicalFunctionDef* find_function(const std::string& construct_name,
                                               const std::string& construct_property,
                                               const KnowledgeBase& kb) {
  for (const auto& f : kb.functions) {
    if (to_lower(f.construct_name) == to_lower(construct_name) &&
        f.construct_property == construct_property)
      return &f;
  }
  return nullptr;
}

}  // namespace senlog
