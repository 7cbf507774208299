#pragma once
// Symmetric baseline similarities (rectified token cosine, simple and
// logical graph alignment), threshold derivation, clustering (complete-link
// AHC and seeded k-medoids) and the classification / clustering metrics used
// by the evaluation harness.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "senlog/kernel.hpp"

namespace senlog {

// ------------------------------------------------------------- token cosine

// Rectified cosine over term-frequency vectors of lowercased tokens:
// max{cos, 0}. Purely bag-of-words, so word order and negation are invisible.
inline double token_cosine(const std::string& a, const std::string& b) {
  auto tf = [](const std::string& s) {
    std::map<std::string, double> m;
    for (const auto& t : split_tokens(to_lower(s))) m[t] += 1.0;
    return m;
  };
  std::map<std::string, double> ta = tf(a), tb = tf(b);
  double dot = 0, na = 0, nb = 0;
  for (const auto& [k, v] : ta) {
    na += v * v;
    auto it = tb.find(k);
    if (it != tb.end()) dot += v * it->second;
  }
  for (const auto& [k, v] : tb) {
    (void)k;
    nb += v * v;
  }
  if (na == 0 || nb == 0) return 0;
  double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::max(c, 0.0);
}

// --------------------------------------------------------- graph alignment

// One labelled edge of the graph view of a (nested) kernel: the kernel
// itself plus one edge per entity-valued property.
struct AlignEdge {
  std::string label;
  bool negated = false;
  Entity source;
  std::optional<Entity> target;
};

inline void collect_align_edges(const Relationship& k, std::vector<AlignEdge>& out) {
  out.push_back({k.label, k.negated, k.source, k.target});
  for (const auto& [key, v] : k.properties) {
    if (v.kernel) {
      collect_align_edges(*v.kernel, out);
      continue;
    }
    if (v.node) {
      out.push_back({key, false, k.source, *v.node});
    } else if (!v.text.empty()) {
      Entity e;
      e.name = v.text;
      out.push_back({key, false, k.source, e});
    }
  }
}

namespace detail {

inline void entity_tokens(const Entity& e, std::set<std::string>& out) {
  if (!e.is_singleton()) {
    for (const auto& c : e.children) entity_tokens(c, out);
    return;
  }
  for (const auto& t : split_tokens(to_lower(e.name))) out.insert(t);
  if (auto it = e.properties.find("extra"); it != e.properties.end())
    for (const auto& v : it->second)
      for (const auto& t : split_tokens(to_lower(v))) out.insert(t);
}

// Normalized token overlap |A∩B| / |A∪B|; the pluggable node/edge
// similarity standing in for embedding cosine.
inline double token_overlap(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  for (const auto& t : a) inter += b.count(t);
  std::size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

inline double name_sim(const std::string& a, const std::string& b) {
  std::set<std::string> ta, tb;
  for (const auto& t : split_tokens(to_lower(a))) ta.insert(t);
  for (const auto& t : split_tokens(to_lower(b))) tb.insert(t);
  return token_overlap(ta, tb);
}

// Simple-graph node similarity: groups flattened to their token bags.
inline double nu_flat(const Entity& a, const Entity& b) {
  std::set<std::string> ta, tb;
  entity_tokens(a, ta);
  entity_tokens(b, tb);
  return token_overlap(ta, tb);
}

// Logical-graph node distance: the recursive case table over the logical
// structure of groups. Unlisted operator combinations get the maximum
// distance 1.
inline double delta_nu(const Entity& u, const Entity& v);

inline double best_member_delta(const Entity& grp, const Entity& other, bool grp_is_u) {
  double best = 1.0;
  for (const auto& m : grp.children)
    best = std::min(best, grp_is_u ? delta_nu(m, other) : delta_nu(other, m));
  return best;
}

inline double delta_nu(const Entity& u, const Entity& v) {
  bool su = u.is_singleton(), sv = v.is_singleton();
  auto is_and = [](const Entity& e) {
    return e.group == GroupType::AND || e.group == GroupType::GROUPING;
  };
  if (su && sv) return 1.0 - nu_flat(u, v);
  if (u.group == GroupType::NOT && v.group == GroupType::NOT)
    return delta_nu(u.children.front(), v.children.front());
  if (u.group == GroupType::NOT && sv) return 1.0 - delta_nu(u.children.front(), v);
  if (su && v.group == GroupType::NOT) return 1.0 - delta_nu(u, v.children.front());
  if (is_and(u) && sv) return best_member_delta(u, v, true);
  if (su && v.group == GroupType::OR) return best_member_delta(v, u, false);
  if (is_and(u) && (is_and(v) || v.group == GroupType::OR)) {
    // avg over the best match of every member of u.
    double sum = 0;
    for (const auto& m : u.children) {
      double best = 1.0;
      for (const auto& n : v.children) best = std::min(best, delta_nu(m, n));
      sum += best;
    }
    return u.children.empty() ? 1.0 : sum / static_cast<double>(u.children.size());
  }
  if (u.group == GroupType::OR && v.group == GroupType::OR) {
    double sum = 0;
    for (const auto& m : u.children) {
      double best = 1.0;
      for (const auto& n : v.children) best = std::min(best, delta_nu(m, n));
      sum += best;
    }
    return u.children.empty() ? 1.0 : sum / static_cast<double>(u.children.size());
  }
  return 1.0;
}

// d|_N = d/(d+1); s = 1 - d|_N.
inline double norm_sim(double d) { return 1.0 - d / (d + 1.0); }

}  // namespace detail

enum class GraphAlignMode { SIMPLE, LOGICAL };

// Edge similarity ε_ν: node-sim(source) · node-sim(target) · label-sim,
// annihilated on negation mismatch.
inline double edge_similarity(const AlignEdge& a, const AlignEdge& b, GraphAlignMode mode) {
  if (a.negated != b.negated) return 0.0;
  auto nu = [&](const Entity& x, const Entity& y) {
    if (mode == GraphAlignMode::SIMPLE) return detail::nu_flat(x, y);
    return detail::norm_sim(detail::delta_nu(x, y));
  };
  double s = nu(a.source, b.source);
  if (a.target && b.target)
    s *= nu(*a.target, *b.target);
  else if (a.target.has_value() != b.target.has_value())
    s = 0.0;
  return s * detail::name_sim(a.label, b.label);
}

// Best-match edge alignment: every edge of A matches its closest edge of B;
// the score combines the matched distances with a penalty for the edges of B
// left unmatched (D|_N^s = 1/(D+1)).
inline double graph_alignment(const std::vector<AlignEdge>& A, const std::vector<AlignEdge>& B,
                              GraphAlignMode mode) {
  if (A.empty() || B.empty()) return A.empty() && B.empty() ? 1.0 : 0.0;
  std::vector<bool> used(B.size(), false);
  double dist_sum = 0;
  for (const auto& e : A) {
    double best = 1.0;
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < B.size(); ++j) {
      double d = 1.0 - edge_similarity(e, B[j], mode);
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    dist_sum += best;
    used[best_j] = true;
  }
  std::size_t unmatched = 0;
  for (bool u : used)
    if (!u) ++unmatched;
  double s = 1.0 - dist_sum / static_cast<double>(A.size());
  return std::max(s, 0.0) / static_cast<double>(unmatched + 1);
}

// ------------------------------------------------------------ matrix utils

using Matrix = std::vector<std::vector<double>>;

// d̄(a,b) = (d(a,b) + d(b,a)) / 2, applied entrywise.
inline Matrix symmetrize(const Matrix& m) {
  Matrix out = m;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = (m[i][j] + m[j][i]) / 2.0;
  return out;
}

// ---------------------------------------------------------------- clustering

// Complete-link agglomerative clustering down to k clusters: repeatedly
// merge the two clusters with the smallest maximum pairwise distance.
inline std::vector<std::vector<int>> ahc_complete(const Matrix& dist, std::size_t k) {
  std::size_t n = dist.size();
  if (k > n) throw ValidationError("ahc: k exceeds the number of points");
  std::vector<std::vector<int>> clusters;
  for (std::size_t i = 0; i < n; ++i) clusters.push_back({static_cast<int>(i)});
  auto complete_link = [&](const std::vector<int>& a, const std::vector<int>& b) {
    double worst = 0;
    for (int i : a)
      for (int j : b) worst = std::max(worst, dist[i][j]);
    return worst;
  };
  while (clusters.size() > k) {
    std::size_t bi = 0, bj = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < clusters.size(); ++i)
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        double d = complete_link(clusters[i], clusters[j]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    clusters[bi].insert(clusters[bi].end(), clusters[bj].begin(), clusters[bj].end());
    std::sort(clusters[bi].begin(), clusters[bi].end());
    clusters.erase(clusters.begin() + static_cast<long>(bj));
  }
  std::sort(clusters.begin(), clusters.end());
  return clusters;
}

// Seeded k-medoids: inertia-weighted initialization (k-means++ style over
// the distance matrix), then alternate assignment and per-cluster medoid
// swaps until convergence or 300 iterations.
inline std::vector<std::vector<int>> k_medoids(const Matrix& dist, std::size_t k,
                                               std::uint64_t seed) {
  std::size_t n = dist.size();
  if (k == 0 || k > n) throw ValidationError("k-medoids: invalid k");
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> medoids;
  medoids.push_back(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
  while (medoids.size() < k) {
    std::vector<double> w(n, 0.0);
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double d = std::numeric_limits<double>::infinity();
      for (std::size_t m : medoids) d = std::min(d, dist[i][m]);
      w[i] = d * d;
      total += w[i];
    }
    if (total == 0) {
      // All points coincide with a medoid; fill with unused indices.
      for (std::size_t i = 0; i < n && medoids.size() < k; ++i)
        if (std::find(medoids.begin(), medoids.end(), i) == medoids.end()) medoids.push_back(i);
      break;
    }
    double r = std::uniform_real_distribution<double>(0, total)(rng);
    std::size_t pick = 0;
    for (std::size_t i = 0; i < n; ++i) {
      r -= w[i];
      if (r <= 0) {
        pick = i;
        break;
      }
    }
    medoids.push_back(pick);
  }

  std::vector<int> assign(n, 0);
  for (int iter = 0; iter < 300; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double bd = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < medoids.size(); ++c)
        if (dist[i][medoids[c]] < bd) {
          bd = dist[i][medoids[c]];
          best = c;
        }
      if (assign[i] != static_cast<int>(best)) {
        assign[i] = static_cast<int>(best);
        changed = true;
      }
    }
    for (std::size_t c = 0; c < medoids.size(); ++c) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < n; ++i)
        if (assign[i] == static_cast<int>(c)) members.push_back(i);
      if (members.empty()) continue;
      std::size_t best = medoids[c];
      double bd = std::numeric_limits<double>::infinity();
      for (std::size_t cand : members) {
        double s = 0;
        for (std::size_t m : members) s += dist[cand][m];
        if (s < bd) {
          bd = s;
          best = cand;
        }
      }
      if (best != medoids[c]) {
        medoids[c] = best;
        changed = true;
      }
    }
    if (!changed) break;
  }
  std::vector<std::vector<int>> clusters(medoids.size());
  for (std::size_t i = 0; i < n; ++i) clusters[assign[i]].push_back(static_cast<int>(i));
  clusters.erase(std::remove_if(clusters.begin(), clusters.end(),
                                [](const auto& c) { return c.empty(); }),
                 clusters.end());
  std::sort(clusters.begin(), clusters.end());
  return clusters;
}

// ---------------------------------------------------------------- thresholds

struct Thresholds {
  double theta = 1.0;     // entailment cut: min intra-cluster similarity
  double vartheta = 0.0;  // conflict cut: max similarity over conflict pairs
};

// θ = minimum similarity inside any expected cluster (1 when every cluster
// is a singleton); ϑ = maximum similarity over the annotated contradictory
// pairs, capped at θ.
inline Thresholds derive_thresholds(const Matrix& sim,
                                    const std::vector<std::vector<int>>& clusters,
                                    const std::vector<std::pair<int, int>>& conflict_pairs) {
  Thresholds th;
  th.theta = 1.0;
  for (const auto& c : clusters)
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j)
        th.theta = std::min(th.theta, sim[c[i]][c[j]]);
  th.vartheta = 0.0;
  for (const auto& [a, b] : conflict_pairs) th.vartheta = std::max(th.vartheta, sim[a][b]);
  if (th.vartheta > th.theta) th.vartheta = th.theta;
  return th;
}

enum class ThreeWay { IMPLICATION, INCONSISTENCY, INDIFFERENCE };

// Strictly above θ is entailment, strictly below ϑ conflict, else neutral.
inline ThreeWay three_way_from_score(double s, const Thresholds& th) {
  if (s > th.theta) return ThreeWay::IMPLICATION;
  if (s < th.vartheta) return ThreeWay::INCONSISTENCY;
  return ThreeWay::INDIFFERENCE;
}

// ------------------------------------------------------------------ metrics

struct ClassificationReport {
  double accuracy = 0;
  // per-label precision / recall / f1 keyed by label name
  std::map<std::string, double> precision, recall, f1;
  std::map<std::string, std::size_t> support;
  double macro_precision = 0, macro_recall = 0, macro_f1 = 0;
  double weighted_precision = 0, weighted_recall = 0, weighted_f1 = 0;
};

inline ClassificationReport classification_metrics(const std::vector<std::string>& pred,
                                                   const std::vector<std::string>& gold) {
  if (pred.size() != gold.size())
    throw ValidationError("classification_metrics: prediction/gold length mismatch");
  ClassificationReport r;
  std::set<std::string> labels(gold.begin(), gold.end());
  for (const auto& p : pred) labels.insert(p);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < pred.size(); ++i)
    if (pred[i] == gold[i]) ++correct;
  r.accuracy = pred.empty() ? 0 : static_cast<double>(correct) / pred.size();
  double total = static_cast<double>(gold.size());
  for (const auto& lab : labels) {
    std::size_t tp = 0, fp = 0, fn = 0, sup = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
      if (gold[i] == lab) ++sup;
      if (pred[i] == lab && gold[i] == lab) ++tp;
      if (pred[i] == lab && gold[i] != lab) ++fp;
      if (pred[i] != lab && gold[i] == lab) ++fn;
    }
    double p = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp);
    double rec = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / (tp + fn);
    double f = p + rec == 0 ? 0.0 : 2 * p * rec / (p + rec);
    r.precision[lab] = p;
    r.recall[lab] = rec;
    r.f1[lab] = f;
    r.support[lab] = sup;
    r.macro_precision += p;
    r.macro_recall += rec;
    r.macro_f1 += f;
    r.weighted_precision += p * sup / total;
    r.weighted_recall += rec * sup / total;
    r.weighted_f1 += f * sup / total;
  }
  if (!labels.empty()) {
    r.macro_precision /= labels.size();
    r.macro_recall /= labels.size();
    r.macro_f1 /= labels.size();
  }
  return r;
}

namespace detail {

inline std::vector<int> labels_of(const std::vector<std::vector<int>>& clusters) {
  int n = 0;
  for (const auto& c : clusters)
    for (int i : c) n = std::max(n, i + 1);
  std::vector<int> lab(n, -1);
  for (std::size_t c = 0; c < clusters.size(); ++c)
    for (int i : clusters[c]) lab[i] = static_cast<int>(c);
  return lab;
}

}  // namespace detail

struct ClusteringReport {
  double alignment = 0;
  double purity = 0;
  double ari = 0;
  std::optional<double> silhouette;  // absent when label-count constraints fail
};

inline ClusteringReport clustering_metrics(const std::vector<std::vector<int>>& pred,
                                           const std::vector<std::vector<int>>& gold,
                                           const Matrix& dist) {
  std::vector<int> pl = detail::labels_of(pred), gl = detail::labels_of(gold);
  if (pl.size() != gl.size())
    throw ValidationError("clustering_metrics: partitions cover different point sets");
  std::size_t n = pl.size();
  ClusteringReport r;

  // Alignment: greedy best-overlap matching between predicted and expected
  // clusters; the fraction of points inside a matched pair's intersection.
  {
    std::vector<std::vector<int>> p = pred, g = gold;
    std::size_t matched = 0;
    while (!p.empty() && !g.empty()) {
      std::size_t bi = 0, bj = 0, best = 0;
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) {
          std::size_t inter = 0;
          for (int x : p[i])
            inter += std::count(g[j].begin(), g[j].end(), x) > 0 ? 1 : 0;
          if (inter > best) {
            best = inter;
            bi = i;
            bj = j;
          }
        }
      if (best == 0) break;
      matched += best;
      p.erase(p.begin() + static_cast<long>(bi));
      g.erase(g.begin() + static_cast<long>(bj));
    }
    r.alignment = n == 0 ? 0 : static_cast<double>(matched) / n;
  }

  // Purity: every predicted cluster votes for its dominant expected cluster.
  {
    std::size_t sum = 0;
    for (const auto& c : pred) {
      std::map<int, std::size_t> votes;
      for (int i : c) ++votes[gl[i]];
      std::size_t best = 0;
      for (const auto& [lab, cnt] : votes) {
        (void)lab;
        best = std::max(best, cnt);
      }
      sum += best;
    }
    r.purity = n == 0 ? 0 : static_cast<double>(sum) / n;
  }

  // Adjusted Rand Index via the pair-counting contingency table.
  {
    auto comb2 = [](double x) { return x * (x - 1) / 2.0; };
    std::map<std::pair<int, int>, double> cont;
    std::map<int, double> rows, cols;
    for (std::size_t i = 0; i < n; ++i) {
      cont[{pl[i], gl[i]}] += 1;
      rows[pl[i]] += 1;
      cols[gl[i]] += 1;
    }
    double idx = 0, rsum = 0, csum = 0;
    for (const auto& [k, v] : cont) {
      (void)k;
      idx += comb2(v);
    }
    for (const auto& [k, v] : rows) {
      (void)k;
      rsum += comb2(v);
    }
    for (const auto& [k, v] : cols) {
      (void)k;
      csum += comb2(v);
    }
    double total = comb2(static_cast<double>(n));
    double expected = total == 0 ? 0 : rsum * csum / total;
    double maxidx = (rsum + csum) / 2.0;
    r.ari = maxidx - expected == 0 ? 1.0 : (idx - expected) / (maxidx - expected);
  }

  // Silhouette (mean over points) requires 2 <= #clusters <= n-1.
  if (pred.size() >= 2 && pred.size() <= n - 1 && !dist.empty()) {
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::vector<int>& own = pred[static_cast<std::size_t>(pl[i])];
      double a = 0;
      if (own.size() > 1) {
        for (int j : own)
          if (static_cast<std::size_t>(j) != i) a += dist[i][static_cast<std::size_t>(j)];
        a /= static_cast<double>(own.size() - 1);
      }
      double b = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < pred.size(); ++c) {
        if (static_cast<int>(c) == pl[i]) continue;
        double m = 0;
        for (int j : pred[c]) m += dist[i][static_cast<std::size_t>(j)];
        m /= static_cast<double>(pred[c].size());
        b = std::min(b, m);
      }
      double denom = std::max(a, b);
      sum += denom == 0 ? 0 : (b - a) / denom;
    }
    r.silhouette = sum / static_cast<double>(n);
  }
  return r;
}

}  // namespace senlog
