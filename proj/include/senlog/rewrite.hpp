#pragma once
// Ad-hoc phase, step 1: intermediate graph construction (verbs as edges,
// passive normalization, label lemmatization) and the filtered DFS
// topological visit order that drives recursive kernel construction.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "senlog/graph.hpp"
#include "senlog/kb.hpp"

namespace senlog {

struct IntermediateGraph {
  std::vector<Entity> nodes;
  std::vector<DepEdge> edges;

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

// A `by` marker on a singleton: either a positional case key or a plain
// `case` property whose value is "by".
inline bool strip_by_marker(Entity& e) {
  if (!e.is_singleton()) {
    bool any = false;
    for (auto& c : e.children) any = strip_by_marker(c) || any;
    return any;
  }
  for (auto it = e.properties.begin(); it != e.properties.end(); ++it) {
    const std::string& key = it->first;
    bool positional = !key.empty() && std::isdigit(static_cast<unsigned char>(key[0])) != 0;
    if (!positional && key != "case") continue;
    auto& vals = it->second;
    auto v = std::find_if(vals.begin(), vals.end(),
                          [](const std::string& s) { return to_lower(s) == "by"; });
    if (v == vals.end()) continue;
    vals.erase(v);
    if (vals.empty()) e.properties.erase(it);
    return true;
  }
  return false;
}

}  // namespace detail

// Normalizes verb edges: auxiliary-carrying surface labels collapse to their
// lemma, and passive constructions (a by-marked agent in target position) are
// swapped so the source is always the acting entity.
inline IntermediateGraph build_intermediate(const EntityGraph& g, const KnowledgeBase& kb) {
  IntermediateGraph out;
  out.nodes = g.nodes;
  for (DepEdge e : g.edges) {
    if (e.label_type == "verb") {
      e.label = kb.lemmatize(e.label);
      Entity* tgt = out.node(e.target);
      if (tgt && detail::strip_by_marker(*tgt)) std::swap(e.source, e.target);
    }
    out.edges.push_back(e);
  }
  return out;
}

namespace detail {

// Marker edges whose word has already been folded into a verb label.
inline bool is_marker_edge(const DepEdge& e) {
  return e.label == "mark" || e.label == "aux" || e.label == "aux_pass";
}

inline bool label_contains_token(const std::vector<DepEdge>& edges, const std::string& word) {
  std::string w = to_lower(word);
  for (const auto& e : edges)
    for (const auto& tok : split_tokens(to_lower(e.label)))
      if (tok == w) return true;
  return false;
}

}  // namespace detail

// DFS topological sort, deepest nodes first (postorder: children are emitted
// before their parents; roots are taken in node-list order, and children in
// edge-list order). Then three pruning passes: inherit_edge targets merge
// their properties into the source and disappear; information-free nodes
// (empty name, no properties) disappear with their edges; words already
// folded into an edge label disappear once marker edges are dropped. The
// graph is updated in place and the surviving order returned.
inline std::vector<int> topo_sort_filter(IntermediateGraph& g) {
  std::map<int, std::vector<int>> adj;
  for (const auto& e : g.edges) adj[e.source].push_back(e.target);

  std::map<int, int> state;  // 0 unseen, 1 on stack, 2 done
  std::vector<int> order;
  struct Walker {
    std::map<int, int>& state;
    std::map<int, std::vector<int>>& adj;
    std::vector<int>& order;
    void walk(int v) {
      state[v] = 1;
      for (int w : adj[v]) {
        if (state[w] == 1) throw CyclicGraphError("cycle through node " + std::to_string(w));
        if (state[w] == 0) walk(w);
      }
      state[v] = 2;
      order.push_back(v);
    }
  } walker{state, adj, order};
  for (const auto& n : g.nodes)
    if (state[n.id] == 0) walker.walk(n.id);

  std::set<int> removed;

  // Pass 1: inherit_edge property merge.
  std::vector<DepEdge> kept_edges;
  for (const auto& e : g.edges) {
    if (e.label != "inherit_edge") {
      kept_edges.push_back(e);
      continue;
    }
    Entity* src = g.node(e.source);
    Entity* tgt = g.node(e.target);
    if (src && tgt) {
      for (const auto& [k, vals] : tgt->properties)
        for (const auto& v : vals) src->properties[k].push_back(v);
      removed.insert(e.target);
    }
  }

  // Pass 2: information-free nodes.
  for (const auto& n : g.nodes)
    if (n.is_singleton() && n.name.empty() && n.properties.empty() && !n.kernel)
      removed.insert(n.id);
  kept_edges.erase(std::remove_if(kept_edges.begin(), kept_edges.end(),
                                  [&](const DepEdge& e) {
                                    return removed.count(e.source) || removed.count(e.target);
                                  }),
                   kept_edges.end());

  // Pass 3: words folded into an edge label. Marker edges (mark/aux) go
  // first; their former target is redundant once it is isolated and its word
  // already occurs inside some edge label.
  std::set<int> marker_targets;
  for (const auto& e : kept_edges)
    if (detail::is_marker_edge(e)) marker_targets.insert(e.target);
  kept_edges.erase(std::remove_if(kept_edges.begin(), kept_edges.end(), detail::is_marker_edge),
                   kept_edges.end());
  for (const auto& n : g.nodes) {
    if (removed.count(n.id) || !n.is_singleton() || !marker_targets.count(n.id)) continue;
    bool isolated = std::none_of(kept_edges.begin(), kept_edges.end(), [&](const DepEdge& e) {
      return e.source == n.id || e.target == n.id;
    });
    if (isolated && detail::label_contains_token(kept_edges, n.name)) removed.insert(n.id);
  }

  g.edges = std::move(kept_edges);
  g.nodes.erase(std::remove_if(g.nodes.begin(), g.nodes.end(),
                               [&](const Entity& n) { return removed.count(n.id) > 0; }),
                g.nodes.end());
  order.erase(std::remove_if(order.begin(), order.end(),
                             [&](int id) { return removed.count(id) > 0; }),
              order.end());
  return order;
}

}  // namespace senlog
