#pragma once
// Ad-hoc phase, step 3: logical-function rewriting. Positional preposition
// markers left on entities by the parser are matched against the KB's rewrite
// rules and replaced by semantic constructs: spatial/temporal annotations
// re-key the property and tag the entity, specifications fold into the
// governing entity's `extra` property. The rewrite is idempotent.

#include <string>
#include <utility>
#include <vector>

#include "senlog/kernel.hpp"

namespace senlog {

namespace detail {

inline bool prep_key(const std::string& key) {
  if (key == "case") return true;
  return !key.empty() && std::isdigit(static_cast<unsigned char>(key[0])) != 0;
}

inline std::vector<std::string> prep_values(const Entity& e) {
  std::vector<std::string> out;
  for (const auto& [k, vals] : e.properties)
    if (prep_key(k))
      for (const auto& v : vals) out.push_back(v);
  return out;
}

inline void strip_prep_keys(Entity& e) {
  for (auto it = e.properties.begin(); it != e.properties.end();) {
    if (prep_key(it->first))
      it = e.properties.erase(it);
    else
      ++it;
  }
}

// The logical function (if any) triggered by the entity's preposition markers
// and annotation source in the context of the enclosing kernel.
inline const LogicalFunctionDef* match_entity_function(const Relationship& k, const Entity& e,
                                                       const KnowledgeBase& kb) {
  NodeContext nctx;
  nctx.prepositions = prep_values(e);
  nctx.meu_source = e.meu_source;
  nctx.abstract_entity = kb.is_abstract(e.name);
  if (nctx.prepositions.empty() && nctx.meu_source.empty()) return nullptr;
  KernelContext kctx;
  kctx.verb_lemma = k.label;
  const LogicalRewriteRule* r = match_logical_rule(kctx, nctx, kb);
  if (!r) return nullptr;
  return find_function(r->construct_name, r->construct_property, kb);
}

// Consumes the preposition markers and tags the entity with the construct
// property (when the function defines one).
inline Entity apply_function(Entity e, const LogicalFunctionDef& fn) {
  strip_prep_keys(e);
  if (!fn.construct_property.empty()) e.properties[fn.argument].push_back(fn.construct_property);
  return e;
}

}  // namespace detail

inline void rewrite_properties_logically(Relationship& k, const KnowledgeBase& kb) {
  std::vector<std::pair<std::string, PropVal>> out;
  for (auto& [key, v] : k.properties) {
    if (key == "extra") {
      out.emplace_back(key, v);
      continue;
    }

    if (v.kernel) {
      if (key == "SENTENCE") {
        rewrite_properties_logically(*v.kernel, kb);
        out.emplace_back(key, v);
        continue;
      }
      bool modifier = (v.kernel->label == "nmod" || v.kernel->label == "nmod_poss") &&
                      v.kernel->target.has_value();
      if (modifier) {
        Entity t = *v.kernel->target;
        const LogicalFunctionDef* fn = detail::match_entity_function(k, t, kb);
        if (fn && fn->attach_to == AttachTo::Singleton) {
          // Specification: the modifier folds into the matching endpoint of
          // this kernel and the dependency property disappears.
          detail::strip_prep_keys(t);
          Entity* host = nullptr;
          if (k.source.id == v.kernel->source.id) host = &k.source;
          else if (k.target && k.target->id == v.kernel->source.id) host = &*k.target;
          if (host) {
            host->properties[fn->argument].push_back(t.name);
            continue;
          }
        } else if (fn) {
          out.emplace_back(fn->construct_name, PropVal::of_node(detail::apply_function(t, *fn)));
          continue;
        }
      }
      out.emplace_back(key, v);
      continue;
    }

    if (v.node) {
      if (v.node->is_singleton()) {
        const LogicalFunctionDef* fn = detail::match_entity_function(k, *v.node, kb);
        if (fn && fn->attach_to == AttachTo::Kernel) {
          out.emplace_back(fn->construct_name,
                           PropVal::of_node(detail::apply_function(*v.node, *fn)));
          continue;
        }
        out.emplace_back(key, v);
        continue;
      }
      // Group values: rewrite each member (through NOT wrappers) and re-key
      // the property after the first matching member's construct.
      Entity g = *v.node;
      std::string new_key = key;
      for (auto& m : g.children) {
        Entity& target = m.group == GroupType::NOT ? m.children.front() : m;
        const LogicalFunctionDef* fn = detail::match_entity_function(k, target, kb);
        if (fn && fn->attach_to == AttachTo::Kernel) {
          target = detail::apply_function(target, *fn);
          if (new_key == key) new_key = fn->construct_name;
        }
      }
      out.emplace_back(new_key, PropVal::of_node(std::move(g)));
      continue;
    }

    out.emplace_back(key, v);
  }
  k.properties = std::move(out);
}

}  // namespace senlog
