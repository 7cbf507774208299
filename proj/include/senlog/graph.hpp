#pragma once
// A-priori phase: dependency-parse graph ingestion, multi-word entity (MEU)
// resolution, and coalescing of coordination / grouping structures into
// SetOfSingletons. Input schemas are documented in docs/formats.md.

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "senlog/common.hpp"
#include "senlog/kb.hpp"

namespace senlog {

// ---------------------------------------------------------------- dep graph

struct DepNode {
  int id = -1;
  std::string name;
  std::string lemma;  // empty -> name is its own lemma
  std::string pos;
  std::string type;  // entity type tag (e.g. GPE, NOUN, verb), may be empty
  std::map<std::string, std::vector<std::string>> properties;

  const std::vector<std::string>* prop(const std::string& key) const {
    auto it = properties.find(key);
    return it == properties.end() ? nullptr : &it->second;
  }
  bool has_prop(const std::string& key) const { return properties.count(key) > 0; }
};

struct DepEdge {
  int source = -1;
  int target = -1;
  std::string label;
  std::string label_type;  // e.g. "verb" when the label is a verb
  bool negated = false;
};

struct DepGraph {
  std::vector<DepNode> nodes;
  std::vector<DepEdge> edges;

  const DepNode* node(int id) const {
    for (const auto& n : nodes)
      if (n.id == id) return &n;
    return nullptr;
  }
  DepNode* node(int id) {
    for (auto& n : nodes)
      if (n.id == id) return &n;
    return nullptr;
  }
};

namespace detail {

// Depth-first cycle check over the directed edge set.
inline void require_acyclic(const std::vector<int>& ids,
                            const std::vector<std::pair<int, int>>& arcs) {
  std::map<int, int> state;  // 0 unseen, 1 on stack, 2 done
  std::map<int, std::vector<int>> adj;
  for (const auto& [s, t] : arcs) adj[s].push_back(t);
  struct Walker {
    std::map<int, int>& state;
    std::map<int, std::vector<int>>& adj;
    void walk(int v) {
      state[v] = 1;
      for (int w : adj[v]) {
        if (state[w] == 1) throw CyclicGraphError("cycle through node " + std::to_string(w));
        if (state[w] == 0) walk(w);
      }
      state[v] = 2;
    }
  } walker{state, adj};
  for (int id : ids)
    if (state[id] == 0) walker.walk(id);
}

}  // namespace detail

inline DepGraph load_dep_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dependency graph file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError(std::string("malformed dependency graph JSON: ") + e.what());
  }
  detail::reject_unknown_keys(j, {"nodes", "edges"}, "dependency graph");
  DepGraph g;
  std::set<int> ids;
  for (const auto& n : j.value("nodes", nlohmann::json::array())) {
    detail::reject_unknown_keys(n, {"id", "name", "lemma", "pos", "type", "properties"},
                                "dependency node");
    DepNode d;
    d.id = n.at("id").get<int>();
    if (!ids.insert(d.id).second)
      throw ParseError("duplicate node id " + std::to_string(d.id));
    d.name = n.at("name").get<std::string>();
    d.lemma = n.value("lemma", std::string());
    d.pos = n.value("pos", std::string());
    d.type = n.value("type", std::string());
    const nlohmann::json props = n.value("properties", nlohmann::json::object());
    for (auto it = props.begin(); it != props.end(); ++it) {
      std::vector<std::string> vals;
      for (const auto& v : it.value()) vals.push_back(v.get<std::string>());
      d.properties[it.key()] = std::move(vals);
    }
    g.nodes.push_back(std::move(d));
  }
  std::vector<std::pair<int, int>> arcs;
  for (const auto& e : j.value("edges", nlohmann::json::array())) {
    detail::reject_unknown_keys(e, {"source", "target", "label", "label_type", "negated"},
                                "dependency edge");
    DepEdge d;
    d.source = e.at("source").get<int>();
    d.target = e.at("target").get<int>();
    if (!ids.count(d.source) || !ids.count(d.target))
      throw ParseError("edge references missing node " +
                       std::to_string(ids.count(d.source) ? d.target : d.source));
    d.label = e.at("label").get<std::string>();
    d.label_type = e.value("label_type", std::string());
    d.negated = e.value("negated", false);
    arcs.emplace_back(d.source, d.target);
    g.edges.push_back(std::move(d));
  }
  detail::require_acyclic(std::vector<int>(ids.begin(), ids.end()), arcs);
  return g;
}

// ---------------------------------------------------------------- MEU db

struct MeuEntry {
  int start = 0;
  int end = 0;
  std::string text;
  std::string monad;
  std::string type;
  std::string source;  // GeoNames | SUTime | Stanza | Parmenides | ConceptNet
  double confidence = 1.0;
};

inline std::vector<MeuEntry> load_meu_db(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open MEU db file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError(std::string("malformed MEU db JSON: ") + e.what());
  }
  std::vector<MeuEntry> db;
  for (const auto& e : j) {
    detail::reject_unknown_keys(e, {"start", "end", "text", "monad", "type", "source",
                                    "confidence"},
                                "MEU entry");
    MeuEntry m;
    m.start = e.at("start").get<int>();
    m.end = e.at("end").get<int>();
    if (m.start >= m.end) throw ParseError("MEU entry with start >= end: " + std::to_string(m.start));
    m.text = e.at("text").get<std::string>();
    m.monad = e.value("monad", m.text);
    m.type = e.value("type", std::string("ENTITY"));
    m.source = e.value("source", std::string("Parmenides"));
    m.confidence = e.value("confidence", 1.0);
    if (m.confidence < 0.0 || m.confidence > 1.0)
      throw ParseError("MEU confidence out of [0,1]");
    db.push_back(std::move(m));
  }
  return db;
}

// The gazetteer source is noisy; its matches are discounted.
inline double meu_effective_confidence(const MeuEntry& e) {
  return e.source == "GeoNames" ? e.confidence * 0.8 : e.confidence;
}

// ---------------------------------------------------------------- types

// Specificity order, most specific first. Types outside this list are ignored.
inline int type_rank(const std::string& t) {
  static const std::vector<std::string> order{"VERB",  "GPE",    "LOC",      "ORG",
                                              "NOUN",  "ENTITY", "ADJECTIVE"};
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] == t) return static_cast<int>(i);
  return -1;
}

inline std::string most_specific_type(const std::vector<std::string>& types) {
  int best = -1;
  std::string out = "None";
  for (const auto& t : types) {
    int r = type_rank(t);
    if (r < 0) continue;
    if (best < 0 || r < best) {
      best = r;
      out = t;
    }
  }
  return out;
}

struct MeuResolution {
  double confidence = 0.0;
  std::string type = "None";
};

// Highest-confidence entry overlapping [min,max] whose type is compatible with
// required_type (empty required_type accepts anything; ENTITY is compatible
// with every listed type).
inline MeuResolution meu_resolution(int min, int max, const std::string& required_type,
                                    const std::vector<MeuEntry>& db) {
  MeuResolution out;
  for (const auto& e : db) {
    if (e.end < min || e.start > max) continue;
    if (!required_type.empty() && required_type != "None" && e.type != required_type &&
        e.type != "ENTITY" && required_type != "ENTITY")
      continue;
    double c = meu_effective_confidence(e);
    if (c > out.confidence) {
      out.confidence = c;
      out.type = e.type;
    }
  }
  return out;
}

// ---------------------------------------------------------------- entities

enum class GroupType { NONE, AND, OR, NEITHER, NOT, GROUPING, MULTIINDIRECT };

inline std::string to_string(GroupType g) {
  switch (g) {
    case GroupType::NONE: return "NONE";
    case GroupType::AND: return "AND";
    case GroupType::OR: return "OR";
    case GroupType::NEITHER: return "NEITHER";
    case GroupType::NOT: return "NOT";
    case GroupType::GROUPING: return "GROUPING";
    case GroupType::MULTIINDIRECT: return "MULTIINDIRECT";
  }
  return "NONE";
}

struct Relationship;  // defined in kernel.hpp

// A Singleton (group == NONE) or a SetOfSingletons (children non-empty).
struct Entity {
  int id = -1;
  GroupType group = GroupType::NONE;
  std::string name;
  std::map<std::string, std::vector<std::string>> properties;
  int min = 0, max = 0;
  std::string type = "ENTITY";
  std::string meu_source;  // annotation source of the resolved entity, if any
  double confidence = 1.0;
  std::vector<Entity> children;                // group members, in position order
  std::shared_ptr<Relationship> kernel;        // set when the entity wraps a clause

  bool is_singleton() const { return group == GroupType::NONE; }

  static Entity singleton(int id, std::string name, std::string type = "ENTITY") {
    Entity e;
    e.id = id;
    e.name = std::move(name);
    e.type = std::move(type);
    return e;
  }
  static Entity set_of(int id, GroupType g, std::vector<Entity> members) {
    if (members.empty()) throw EmptyGroupError("SetOfSingletons with no members");
    if (g == GroupType::NOT && members.size() != 1)
      throw ValidationError("NOT group must have exactly one child");
    Entity e;
    e.id = id;
    e.group = g;
    e.children = std::move(members);
    e.min = e.children.front().min;
    e.max = e.children.back().max;
    double c = 1.0;
    for (const auto& m : e.children) c *= m.confidence;
    e.confidence = c;
    return e;
  }
};

// All leaf names of an entity tree, used by the invariance tests.
inline void leaf_names(const Entity& e, std::vector<std::string>& out) {
  if (e.is_singleton()) {
    out.push_back(e.name);
    for (const auto& [k, vals] : e.properties)
      if (k == "extra")
        for (const auto& v : vals) out.push_back(v);
    return;
  }
  for (const auto& c : e.children) leaf_names(c, out);
}

// ---------------------------------------------------------------- multiword

namespace detail {

inline std::string entity_lemma_text(const std::vector<Entity>& members, std::size_t from,
                                     std::size_t len, const KnowledgeBase& kb) {
  std::vector<std::string> parts;
  for (std::size_t i = from; i < from + len; ++i) parts.push_back(kb.lemmatize(members[i].name));
  return join(parts, " ");
}

// Fuzzy lemma-level match against the MEU db: best effective confidence among
// entries whose text is at least 0.8 edit-similar to the candidate.
inline MeuResolution fuzzy_meu_match(const std::string& text, const std::vector<MeuEntry>& db,
                                     const KnowledgeBase& kb) {
  MeuResolution out;
  for (const auto& e : db) {
    std::vector<std::string> entry_parts;
    for (const auto& w : split_tokens(e.text)) entry_parts.push_back(kb.lemmatize(w));
    if (edit_similarity(to_lower(text), to_lower(join(entry_parts, " "))) < 0.8) continue;
    double c = meu_effective_confidence(e);
    if (c > out.confidence) {
      out.confidence = c;
      out.type = e.type;
    }
  }
  return out;
}

}  // namespace detail

// Resolves a GROUPING into one Singleton: evaluates every contiguous
// sub-sequence of length >= 2 as a candidate multi-word entity, picks the one
// with the highest MEU confidence (ties broken by greatest entity count, then
// first in position order). When the winner spans the whole group it becomes a
// single merged Singleton; otherwise the most specifically typed remaining
// member becomes the core and everything else concatenates into `extra`.
inline Entity resolve_multiword(const Entity& node, const std::vector<MeuEntry>& meu_db,
                                const KnowledgeBase& kb) {
  if (node.group != GroupType::GROUPING)
    throw ValidationError("resolve_multiword expects a GROUPING node");
  if (node.children.empty()) throw EmptyGroupError("empty GROUPING");
  std::vector<Entity> members = node.children;
  std::sort(members.begin(), members.end(),
            [](const Entity& a, const Entity& b) { return a.min < b.min; });

  struct Alternative {
    std::size_t from = 0, len = 0;
    MeuResolution match;
  };
  std::optional<Alternative> best;
  for (std::size_t len = 2; len <= members.size(); ++len) {
    for (std::size_t from = 0; from + len <= members.size(); ++from) {
      MeuResolution m =
          detail::fuzzy_meu_match(detail::entity_lemma_text(members, from, len, kb), meu_db, kb);
      if (m.confidence <= 0.0) continue;
      bool better = !best || m.confidence > best->match.confidence ||
                    (m.confidence == best->match.confidence && len > best->len);
      if (better) best = Alternative{from, len, m};
    }
  }

  double member_product = 1.0;
  for (const auto& m : members) member_product *= m.confidence;
  int span_min = members.front().min, span_max = members.back().max;

  auto joined_names = [&](std::size_t from, std::size_t len) {
    std::vector<std::string> parts;
    for (std::size_t i = from; i < from + len; ++i) parts.push_back(members[i].name);
    return join(parts, " ");
  };

  if (best && best->len == members.size()) {
    // The whole group is one known entity: merge with no extra. Member
    // properties (determiners, case markers) ride along.
    Entity out = Entity::singleton(members.front().id, joined_names(0, members.size()),
                                   best->match.type);
    for (const auto& m : members)
      for (const auto& [k, vals] : m.properties)
        for (const auto& v : vals) out.properties[k].push_back(v);
    out.min = span_min;
    out.max = span_max;
    out.confidence = member_product * best->match.confidence;
    return out;
  }

  // Core = most specific type among members outside the chosen alternative
  // (or among all members when nothing matched).
  std::vector<std::size_t> outside;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (best && i >= best->from && i < best->from + best->len) continue;
    outside.push_back(i);
  }
  if (outside.empty())
    for (std::size_t i = 0; i < members.size(); ++i) outside.push_back(i);

  std::size_t core = outside.front();
  for (std::size_t i : outside) {
    int r = type_rank(members[i].type), rb = type_rank(members[core].type);
    if (rb < 0 || (r >= 0 && r < rb)) core = i;
  }

  Entity out = members[core];
  std::vector<std::string> extra;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i == core) continue;
    extra.push_back(members[i].name);
    // Non-core member properties (e.g. positional case markers) ride along.
    for (const auto& [k, vals] : members[i].properties)
      for (const auto& v : vals) out.properties[k].push_back(v);
  }
  if (!extra.empty()) out.properties["extra"].push_back(join(extra, " "));
  out.min = span_min;
  out.max = span_max;
  out.confidence = member_product * (best ? best->match.confidence : 1.0);
  return out;
}

// ---------------------------------------------------------------- type fixes

// A verb type proposed by the MEU db is only accepted when syntactic evidence
// supports it: no determiner, no "on" case marker, and the node either heads a
// case-marked phrase with an incoming edge, or closes the sentence under a
// root (directly or through a compound parent).
inline bool verb_type_acceptable(const DepGraph& g, const DepNode& n) {
  if (n.has_prop("det")) return false;
  for (const auto& [key, vals] : n.properties) {
    bool positional = !key.empty() && (std::isdigit(static_cast<unsigned char>(key[0])) != 0);
    if (!positional && key != "case") continue;
    for (const auto& v : vals)
      if (to_lower(v) == "on") return false;
  }
  bool has_case = false;
  for (const auto& [key, vals] : n.properties) {
    if (key == "case" || (!key.empty() && std::isdigit(static_cast<unsigned char>(key[0]))))
      has_case = true;
  }
  bool incoming = false;
  for (const auto& e : g.edges)
    if (e.target == n.id) incoming = true;
  if (incoming && has_case) return true;
  bool last = true;
  for (const auto& m : g.nodes)
    if (m.id > n.id) last = false;
  if (last && n.has_prop("root")) return true;
  if (last) {
    for (const auto& e : g.edges) {
      if (e.label != "compound") continue;
      int parent = e.source == n.id ? e.target : (e.target == n.id ? e.source : -1);
      if (parent < 0) continue;
      const DepNode* p = g.node(parent);
      if (p && p->has_prop("root")) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------- coalesce

struct EntityGraph {
  std::vector<Entity> nodes;
  std::vector<DepEdge> edges;  // endpoints refer to entity ids

  const Entity* node(int id) const {
    for (const auto& n : nodes)
      if (n.id == id) return &n;
    return nullptr;
  }
  Entity* node(int id) {
    for (auto& n : nodes)
      if (n.id == id) return &n;
    return nullptr;
  }
};

namespace detail {

// Union-find over node ids.
struct Components {
  std::map<int, int> parent;
  int find(int x) {
    if (!parent.count(x)) parent[x] = x;
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace detail

// Coalesces grouping structure: compound chains become GROUPING (resolved to
// Singletons via resolve_multiword), compound_prt merges the particle into the
// verb name, conj fans become AND/OR/NEITHER per the cc companion word, neg
// markers wrap their target in NOT, and multipleindobj fans reify as
// MULTIINDIRECT. Nodes are visited in ascending id (lexicographical) order.
inline EntityGraph coalesce_groups(const DepGraph& g, const std::vector<MeuEntry>& meu_db,
                                   const KnowledgeBase& kb) {
  // Seed one entity per node (skipping pure marker words consumed below).
  std::map<int, Entity> ents;
  std::vector<int> file_order;  // node-list order from the fixture, kept in the output
  for (const auto& n : g.nodes) {
    Entity e = Entity::singleton(n.id, n.name, n.type.empty() ? "ENTITY" : n.type);
    e.min = n.id;
    e.max = n.id;
    e.properties = n.properties;
    if (const auto* src = n.prop("meu_source")) {
      if (!src->empty()) e.meu_source = src->front();
      e.properties.erase("meu_source");
    }
    ents[n.id] = std::move(e);
    file_order.push_back(n.id);
  }
  std::vector<int> order = file_order;  // visiting order: ascending (lexicographical)
  std::sort(order.begin(), order.end());

  std::set<int> consumed;             // nodes folded into another entity
  std::map<int, int> representative;  // node id -> surviving entity id
  for (int id : order) representative[id] = id;
  auto rep = [&](int id) {
    while (representative[id] != id) id = representative[id];
    return id;
  };

  // 1. compound_prt: particle folds into the verb name ("shut down").
  for (const auto& e : g.edges) {
    if (e.label != "compound_prt") continue;
    Entity& head = ents[rep(e.source)];
    Entity& part = ents[rep(e.target)];
    head.name += " " + part.name;
    head.max = std::max(head.max, part.max);
    consumed.insert(rep(e.target));
    representative[rep(e.target)] = rep(e.source);
  }

  // 2. compound components -> GROUPING -> resolved Singleton.
  detail::Components comp;
  for (const auto& e : g.edges)
    if (e.label == "compound") comp.unite(rep(e.source), rep(e.target));
  std::map<int, std::vector<int>> groups;
  for (const auto& e : g.edges) {
    if (e.label != "compound") continue;
    int root = comp.find(rep(e.source));
    for (int side : {rep(e.source), rep(e.target)}) {
      auto& v = groups[root];
      if (std::find(v.begin(), v.end(), side) == v.end()) v.push_back(side);
    }
  }
  for (auto& [root, member_ids] : groups) {
    std::sort(member_ids.begin(), member_ids.end());
    std::vector<Entity> members;
    for (int id : member_ids)
      if (!consumed.count(id)) members.push_back(ents[id]);
    if (members.size() < 2) continue;
    Entity grouping = Entity::set_of(members.front().id, GroupType::GROUPING, members);
    Entity resolved = resolve_multiword(grouping, meu_db, kb);
    for (int id : member_ids) {
      consumed.insert(id);
      representative[id] = resolved.id;
    }
    consumed.erase(resolved.id);
    representative[resolved.id] = resolved.id;
    ents[resolved.id] = std::move(resolved);
  }

  // 3. negation markers wrap their target in NOT. This runs before the conj
  // pass so a negated conjunct enters its coordination group already wrapped.
  for (const auto& e : g.edges) {
    bool neg_marker = e.label == "neg" ||
                      (e.label == "advmod" && to_lower(g.node(e.target)->name) == "not");
    if (!neg_marker) continue;
    int holder = rep(e.source);
    Entity wrapped = Entity::set_of(holder, GroupType::NOT, {ents[holder]});
    consumed.insert(rep(e.target));
    representative[rep(e.target)] = holder;
    ents[holder] = std::move(wrapped);
  }

  // A member carrying a preposition marker ("in", "on", ...) as a case or
  // positional property; for NOT groups the wrapped child is inspected.
  auto prep_marked = [](const Entity& m) {
    const Entity& e = m.group == GroupType::NOT ? m.children.front() : m;
    for (const auto& [key, vals] : e.properties) {
      (void)vals;
      if (key == "case") return true;
      if (!key.empty() && std::isdigit(static_cast<unsigned char>(key[0])) != 0) return true;
    }
    return false;
  };
  std::vector<DepEdge> extra_edges;

  // 4. conj fans -> AND / OR / NEITHER, typed via the cc companion (BFS:
  // check the head, then the conjuncts). When only some members carry a
  // preposition marker ("traffic, but not in the city centre"), the marked
  // members form the group on their own and hang off the plain head as an
  // adverbial edge instead of replacing it.
  std::map<int, std::vector<int>> conj_children;
  std::map<int, std::string> cc_word;  // node id -> coordinating word
  std::set<int> cc_nodes;
  for (const auto& e : g.edges) {
    if (e.label == "conj") conj_children[rep(e.source)].push_back(rep(e.target));
    if (e.label == "cc") {
      cc_word[rep(e.source)] = to_lower(g.node(e.target)->name);
      cc_nodes.insert(rep(e.target));
    }
  }
  for (int id : cc_nodes) {
    consumed.insert(id);
  }
  for (auto& [head, kids] : conj_children) {
    std::string word;
    if (cc_word.count(head)) word = cc_word[head];
    for (int k : kids)
      if (word.empty() && cc_word.count(k)) word = cc_word[k];
    GroupType gt = GroupType::AND;
    if (word == "or") gt = GroupType::OR;
    if (word == "nor" || word == "neither") gt = GroupType::NEITHER;
    std::vector<int> member_ids{head};
    for (int k : kids) member_ids.push_back(k);
    std::sort(member_ids.begin(), member_ids.end());

    std::vector<int> marked;
    for (int id : member_ids)
      if (prep_marked(ents[rep(id)])) marked.push_back(id);
    if (!marked.empty() && marked.size() < member_ids.size()) {
      // Split: the prepositional members become a group attached to the head.
      int group_id = rep(marked.front());
      std::vector<Entity> members;
      for (int id : marked) members.push_back(ents[rep(id)]);
      Entity set = Entity::set_of(group_id, gt, std::move(members));
      for (int id : marked) {
        consumed.insert(rep(id));
        representative[rep(id)] = group_id;
      }
      consumed.erase(group_id);
      representative[group_id] = group_id;
      ents[group_id] = std::move(set);
      extra_edges.push_back({head, group_id, "adv", "", false});
      continue;
    }

    std::vector<Entity> members;
    for (int id : member_ids) members.push_back(ents[rep(id)]);
    Entity set = Entity::set_of(head, gt, std::move(members));
    for (int id : member_ids) {
      consumed.insert(rep(id));
      representative[rep(id)] = head;
    }
    consumed.erase(head);
    representative[head] = head;
    ents[head] = std::move(set);
  }

  // 5. multipleindobj fans reify as MULTIINDIRECT on the holder node.
  std::map<int, std::vector<int>> indirect;
  for (const auto& e : g.edges)
    if (e.label == "multipleindobj") indirect[rep(e.source)].push_back(rep(e.target));
  for (auto& [holder, targets] : indirect) {
    std::sort(targets.begin(), targets.end());
    std::vector<Entity> members;
    for (int t : targets) members.push_back(ents[rep(t)]);
    Entity set = Entity::set_of(holder, GroupType::MULTIINDIRECT, std::move(members));
    for (int t : targets) {
      consumed.insert(rep(t));
      representative[rep(t)] = holder;
    }
    consumed.erase(holder);
    representative[holder] = holder;
    ents[holder] = std::move(set);
  }

  EntityGraph out;
  for (int id : file_order)
    if (!consumed.count(id) && rep(id) == id) out.nodes.push_back(ents[id]);
  static const std::set<std::string> structural{"compound", "compound_prt", "conj", "cc",
                                                "neg", "multipleindobj"};
  for (const auto& e : g.edges) {
    if (structural.count(e.label)) continue;
    if (e.label == "advmod" && to_lower(g.node(e.target)->name) == "not") continue;
    DepEdge mapped = e;
    mapped.source = rep(e.source);
    mapped.target = rep(e.target);
    if (mapped.source == mapped.target) continue;
    out.edges.push_back(mapped);
  }
  for (const auto& e : extra_edges) out.edges.push_back(e);
  return out;
}

}  // namespace senlog
