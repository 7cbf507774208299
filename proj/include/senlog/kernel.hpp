#pragma once
// Ad-hoc phase, step 2: kernel construction. The filtered intermediate graph
// is folded, deepest clauses first, into nested binary relationships
// ("kernels") carrying ordered property lists. A canonical plain-text
// rendering of kernels backs the golden-string tests.

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "senlog/rewrite.hpp"

namespace senlog {

struct Relationship;

// A kernel property value: exactly one of an entity, a nested kernel, or a
// plain text value.
struct PropVal {
  std::optional<Entity> node;
  std::shared_ptr<Relationship> kernel;
  std::string text;

  static PropVal of_node(Entity e) {
    PropVal v;
    v.node = std::move(e);
    return v;
  }
  static PropVal of_kernel(std::shared_ptr<Relationship> k) {
    PropVal v;
    v.kernel = std::move(k);
    return v;
  }
  static PropVal of_text(std::string t) {
    PropVal v;
    v.text = std::move(t);
    return v;
  }
};

// A binary relationship: label(source, target) plus an ordered property list.
// The target is absent for intransitive kernels ("None" when rendered).
struct Relationship {
  std::string label;
  Entity source;
  std::optional<Entity> target;
  bool negated = false;
  std::vector<std::pair<std::string, PropVal>> properties;  // insertion order
};

// ---------------------------------------------------------------- rendering

inline std::string render_kernel(const Relationship& k);

// Entities render as `name[(key:value), ...]` with alphabetic property keys
// first (map order) and positional keys last in numeric order; groups render
// as `TYPE(member, ...)` (NOT with a single member); an anonymous entity
// wrapping a kernel renders as the kernel itself.
inline std::string render_entity(const Entity& e) {
  if (!e.is_singleton()) {
    if (e.group == GroupType::NOT) return "NOT(" + render_entity(e.children.front()) + ")";
    std::vector<std::string> parts;
    for (const auto& c : e.children) parts.push_back(render_entity(c));
    return to_string(e.group) + "(" + join(parts, ", ") + ")";
  }
  if (e.kernel && e.name.empty()) return render_kernel(*e.kernel);
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::pair<int, std::pair<std::string, std::string>>> positional;
  for (const auto& [key, vals] : e.properties) {
    bool pos = !key.empty() && std::isdigit(static_cast<unsigned char>(key[0])) != 0;
    for (const auto& v : vals) {
      if (pos)
        positional.push_back({std::atoi(key.c_str()), {key, v}});
      else
        pairs.push_back({key, v});
    }
  }
  std::stable_sort(positional.begin(), positional.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [_, kv] : positional) pairs.push_back(kv);
  if (pairs.empty()) return e.name;
  std::vector<std::string> parts;
  for (const auto& [k, v] : pairs) parts.push_back("(" + k + ":" + v + ")");
  return e.name + "[" + join(parts, ", ") + "]";
}

inline std::string render_propval(const PropVal& v) {
  if (v.kernel) return render_kernel(*v.kernel);
  if (v.node) return render_entity(*v.node);
  return v.text;
}

inline std::string render_kernel(const Relationship& k) {
  std::string s = k.label + "(" + render_entity(k.source) + ", " +
                  (k.target ? render_entity(*k.target) : std::string("None")) + ")";
  if (k.negated) s = "NOT " + s;
  if (k.properties.empty()) return s;
  std::vector<std::string> parts;
  for (const auto& [key, v] : k.properties) {
    // A dependency kernel stored under its own label renders bare.
    if (v.kernel && v.kernel->label == key && key != "SENTENCE")
      parts.push_back("(" + render_kernel(*v.kernel) + ")");
    else if (v.node && !v.node->is_singleton() && key == to_string(v.node->group)) {
      // A group stored under its own type key renders as its members.
      std::vector<std::string> members;
      for (const auto& c : v.node->children) members.push_back(render_entity(c));
      parts.push_back("(" + key + ":" + join(members, ", ") + ")");
    } else
      parts.push_back("(" + key + ":" + render_propval(v) + ")");
  }
  return s + "[" + join(parts, ", ") + "]";
}

// ---------------------------------------------------------------- building

namespace detail {

// A preposition marker (case or positional key) on the entity (for NOT
// groups, on the wrapped child) routes the node into the property list.
inline bool case_bearing(const Entity& e) {
  const Entity& s = e.group == GroupType::NOT ? e.children.front() : e;
  if (!s.is_singleton()) return false;
  for (const auto& [key, vals] : s.properties) {
    (void)vals;
    if (key == "case") return true;
    if (!key.empty() && std::isdigit(static_cast<unsigned char>(key[0])) != 0) return true;
  }
  return false;
}

inline std::string prop_key_for(const Entity& e) {
  if (!e.is_singleton()) return to_string(e.group);
  return e.type.empty() ? "ENTITY" : e.type;
}

}  // namespace detail

struct KernelResult {
  std::shared_ptr<Relationship> root;
  // Inner-clause subject id -> the outer entity a relative clause refers to.
  std::map<int, Entity> acl_map;
};

// Builds one kernel per clause root, visiting nodes children-first so nested
// clauses are complete when their parents consume them. Roots are nodes with
// outgoing edges, or standalone verb lexemes. Placeholder nodes named "?"
// become numbered existentials (?1, ?2, ...) in discovery order.
inline KernelResult build_kernels(IntermediateGraph& g, const std::vector<int>& order,
                                  const KnowledgeBase& kb) {
  KernelResult res;
  int next_var = 1;
  auto fresh_name = [&]() { return "?" + std::to_string(next_var++); };
  auto fresh_var = [&]() {
    int id = -next_var;  // synthetic ids are negative to avoid node clashes
    return Entity::singleton(id, fresh_name(), "VAR");
  };

  std::shared_ptr<Relationship> last;
  for (int v : order) {
    Entity* src = g.node(v);
    if (!src) continue;
    std::vector<const DepEdge*> verbs, others;
    for (const auto& e : g.edges) {
      if (e.source != v) continue;
      (e.label_type == "verb" ? verbs : others).push_back(&e);
    }
    bool verb_name = src->is_singleton() && !src->kernel && kb.is_verb(src->name);
    if (verbs.empty() && others.empty() && !verb_name) continue;

    auto k = std::make_shared<Relationship>();
    Entity se = *src;
    se.kernel = nullptr;
    if (se.is_singleton() && se.name == "?") {
      se.name = fresh_name();
      se.type = "VAR";
    }

    if (!verbs.empty()) {
      k->label = verbs.front()->label;  // already lemmatized
      for (const auto* e : verbs) {
        if (e->negated) k->negated = true;
        const Entity* t = g.node(e->target);
        if (!t) continue;
        Entity te = *t;
        if (te.is_singleton() && te.name == "?") {
          te.name = fresh_name();
          te.type = "VAR";
        }
        if (detail::case_bearing(te) || k->target)
          k->properties.emplace_back(detail::prop_key_for(te), PropVal::of_node(te));
        else
          k->target = te;
      }
      // Copular kernels always get an (existential) target.
      if (!k->target && k->label == "be") k->target = fresh_var();
    } else if (verb_name) {
      // A standalone verb lexeme: its node becomes the label, the subject an
      // existential carrying the node's properties (e.g. a copular adjective).
      k->label = kb.lemmatize(se.name);
      Entity subject = Entity::singleton(se.id, fresh_name(), "VAR");
      subject.properties = se.properties;
      se = subject;
    } else {
      // Verbless clause: default copular kernel.
      k->label = "be";
      k->target = fresh_var();
    }
    k->source = se;

    for (const auto* e : others) {
      const Entity* t = g.node(e->target);
      if (!t) continue;
      if (t->kernel) {
        // A nested clause joins as a SENTENCE; relative clauses additionally
        // record which entity the inner subject refers to.
        k->properties.emplace_back("SENTENCE", PropVal::of_kernel(t->kernel));
        if (e->label == "acl_relcl") {
          res.acl_map[t->kernel->source.id] = k->source;
          auto synth = std::make_shared<Relationship>();
          synth->label = "acl_relcl";
          synth->source = k->source;
          Entity wrap;
          wrap.id = t->id;
          wrap.kernel = t->kernel;
          synth->target = wrap;
          k->properties.emplace_back("acl_relcl", PropVal::of_kernel(synth));
        }
      } else if (!t->is_singleton()) {
        k->properties.emplace_back(to_string(t->group), PropVal::of_node(*t));
      } else {
        auto synth = std::make_shared<Relationship>();
        synth->label = e->label;
        synth->source = k->source;
        synth->target = *t;
        k->properties.emplace_back(e->label, PropVal::of_kernel(synth));
      }
    }

    src->kernel = k;
    last = k;
  }
  if (!last) throw NoKernelConstructible("no kernel could be built from the sentence graph");
  res.root = last;
  return res;
}

// ---------------------------------------------------------------- finalizing

// Post-construction normalization: relative-clause subjects are replaced by
// their referent (and the bookkeeping acl_relcl property dropped), an
// adjectival target swaps with a pronominal property ("making you angry"),
// and properties duplicating the source or target entity are removed.
inline void finalize_kernel(Relationship& k, const std::map<int, Entity>& acl_map) {
  for (auto& [key, v] : k.properties) {
    if (key == "SENTENCE" && v.kernel) {
      auto it = acl_map.find(v.kernel->source.id);
      if (it != acl_map.end()) v.kernel->source = it->second;
    }
  }
  k.properties.erase(std::remove_if(k.properties.begin(), k.properties.end(),
                                    [](const auto& p) { return p.first == "acl_relcl"; }),
                     k.properties.end());

  if (k.target && k.target->is_singleton() && k.target->type == "ADJECTIVE") {
    auto it = std::find_if(k.properties.begin(), k.properties.end(), [](const auto& p) {
      return p.first == "PRONOUN" && p.second.node.has_value();
    });
    if (it != k.properties.end()) {
      std::string adjective = k.target->name;
      k.target = *it->second.node;
      k.properties.erase(it);
      k.properties.emplace_back("JJ", PropVal::of_text(adjective));
    }
  }

  k.properties.erase(std::remove_if(k.properties.begin(), k.properties.end(),
                                    [&](const auto& p) {
                                      if (!p.second.node) return false;
                                      if (p.second.node->id == k.source.id) return true;
                                      return k.target && p.second.node->id == k.target->id;
                                    }),
                     k.properties.end());

  for (auto& [key, v] : k.properties) {
    (void)key;
    if (v.kernel) finalize_kernel(*v.kernel, acl_map);
  }
}

}  // namespace senlog
