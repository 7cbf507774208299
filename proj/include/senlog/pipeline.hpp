#pragma once
// Dataset runner: loads YAML dataset descriptions, drives the full
// sentence-to-logic chain with per-stage traces and timings, evaluates
// pairwise classification and clustering with either the logical engine or
// the symmetric baselines, and emits machine-readable explanations.

#include <yaml-cpp/yaml.h>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "senlog/baselines.hpp"
#include "senlog/reason.hpp"
#include "senlog/tofol.hpp"

namespace senlog {

// ------------------------------------------------------------------ dataset

struct DatasetSentence {
  std::string text;
  std::string graph_path;  // resolved to an absolute path at load time
};

struct Dataset {
  std::vector<DatasetSentence> sentences;
  std::vector<std::vector<int>> expected_clusters;
  // gold class per ordered pair, indexed [premise][hypothesis]
  std::vector<std::vector<PairClass>> expected_pairs;
  KnowledgeBase kb;
  std::vector<MeuEntry> meu;
};

inline PairClass pair_class_from(const std::string& s) {
  std::string w = to_lower(s);
  if (w == "implication") return PairClass::IMPLICATION;
  if (w == "inconsistency") return PairClass::INCONSISTENCY;
  if (w == "indifference") return PairClass::INDIFFERENCE;
  throw ValidationError("unknown pair class: " + s);
}

inline Dataset load_dataset(const std::string& path) {
  namespace fs = std::filesystem;
  YAML::Node doc;
  try {
    doc = YAML::LoadFile(path);
  } catch (const std::exception& e) {
    throw ParseError(std::string("cannot load dataset file: ") + e.what());
  }
  fs::path base = fs::path(path).parent_path();
  Dataset ds;
  if (!doc["sentences"]) throw ValidationError("dataset file has no `sentences` key");
  for (const auto& s : doc["sentences"]) {
    DatasetSentence d;
    d.text = s["text"].as<std::string>();
    d.graph_path = (base / s["graph"].as<std::string>()).string();
    ds.sentences.push_back(std::move(d));
  }
  int n = static_cast<int>(ds.sentences.size());
  if (doc["expected_clusters"]) {
    for (const auto& c : doc["expected_clusters"]) {
      std::vector<int> cl;
      for (const auto& i : c) {
        int v = i.as<int>();
        if (v < 0 || v >= n) throw ValidationError("cluster member out of range");
        cl.push_back(v);
      }
      ds.expected_clusters.push_back(std::move(cl));
    }
  }
  ds.expected_pairs.assign(n, std::vector<PairClass>(n, PairClass::INDIFFERENCE));
  std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
  if (doc["expected_pairs"]) {
    for (const auto& p : doc["expected_pairs"]) {
      int i = p["premise"].as<int>(), j = p["hypothesis"].as<int>();
      if (i < 0 || i >= n || j < 0 || j >= n)
        throw ValidationError("expected pair index out of range");
      ds.expected_pairs[i][j] = pair_class_from(p["class"].as<std::string>());
      seen[i][j] = true;
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!seen[i][j])
          throw ValidationError("expected_pairs does not cover every ordered pair");
  }
  if (doc["kb"])
    ds.kb = load_kb((base / doc["kb"].as<std::string>()).string());
  if (doc["meu"])
    ds.meu = load_meu_db((base / doc["meu"].as<std::string>()).string());
  return ds;
}

// ------------------------------------------------------------------ parsing

// One full run of the sentence-to-logic chain with the canonical rendering
// of every intermediate stage and per-stage wall-clock timings.
struct ParseTrace {
  std::string constructed;  // kernel as built
  std::string finalized;    // after post-construction normalization
  std::string logical;      // after logical-function rewriting
  std::string fol;          // final formula rendering
  Formula formula;
  std::shared_ptr<Relationship> kernel;
  // stage name -> elapsed milliseconds, in pipeline order
  std::vector<std::pair<std::string, double>> timings;
};

inline ParseTrace parse_sentence(const std::string& graph_path, const KnowledgeBase& kb,
                                 const std::vector<MeuEntry>& meu, bool apriori = true) {
  using clock = std::chrono::steady_clock;
  auto ms_since = [](clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  };
  ParseTrace tr;
  std::vector<MeuEntry> no_meu;

  auto t0 = clock::now();
  DepGraph dg = load_dep_graph(graph_path);
  EntityGraph eg = coalesce_groups(dg, apriori ? meu : no_meu, kb);
  tr.timings.emplace_back("apriori", ms_since(t0));

  t0 = clock::now();
  IntermediateGraph ig = build_intermediate(eg, kb);
  std::vector<int> order = topo_sort_filter(ig);
  tr.timings.emplace_back("rewrite", ms_since(t0));

  t0 = clock::now();
  KernelResult kr = build_kernels(ig, order, kb);
  tr.constructed = render_kernel(*kr.root);
  finalize_kernel(*kr.root, kr.acl_map);
  tr.finalized = render_kernel(*kr.root);
  tr.timings.emplace_back("kernel", ms_since(t0));

  t0 = clock::now();
  rewrite_properties_logically(*kr.root, kb);
  tr.logical = render_kernel(*kr.root);
  tr.timings.emplace_back("logifun", ms_since(t0));

  t0 = clock::now();
  tr.formula = sentence_to_formula(*kr.root, kb);
  tr.fol = render(tr.formula);
  tr.timings.emplace_back("fol", ms_since(t0));

  tr.kernel = kr.root;
  return tr;
}

// --------------------------------------------------------------- evaluation

enum class Method { LOGICAL, SG, LG, COSINE };

inline Method method_from(const std::string& s) {
  std::string w = to_lower(s);
  if (w == "logical") return Method::LOGICAL;
  if (w == "sg") return Method::SG;
  if (w == "lg") return Method::LG;
  if (w == "cosine") return Method::COSINE;
  throw ValidationError("unknown method: " + s);
}

enum class Clustering { AHC, KMEDOIDS };

struct EvalOptions {
  Method method = Method::LOGICAL;
  Clustering clustering = Clustering::AHC;
  std::size_t k = 0;  // 0 = number of expected clusters
  std::uint64_t seed = 1;
  bool apriori = true;
  unsigned workers = 0;  // 0 = hardware concurrency
};

struct EvalResult {
  std::vector<ParseTrace> traces;
  // logical method: exact confidences; baselines: similarity scores
  std::vector<std::vector<Rational>> confidence;  // logical only
  Matrix similarity;                              // baselines only (symmetrized)
  Thresholds thresholds;                          // baselines only
  std::vector<std::vector<PairClass>> predicted;
  ClassificationReport classification;
  Matrix distance;  // clustering input
  std::vector<std::vector<int>> clusters;
  ClusteringReport clustering;
};

namespace detail {

inline std::string class_label(PairClass c) { return to_string(c); }

// Bounded worker pool over the ordered-pair index space; every task is a
// pure function of (i, j).
template <typename Fn>
inline void parallel_pairs(std::size_t n, unsigned workers, Fn&& fn) {
  unsigned hw = workers ? workers : std::max(1u, std::thread::hardware_concurrency());
  hw = std::min<unsigned>(hw, 8);
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto work = [&]() {
    for (;;) {
      std::size_t idx = next.fetch_add(1);
      if (idx >= n * n) return;
      try {
        fn(idx / n, idx % n);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < hw; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace detail

inline EvalResult evaluate_dataset(const Dataset& ds, const EvalOptions& opt) {
  EvalResult res;
  std::size_t n = ds.sentences.size();
  for (std::size_t i = 0; i < n; ++i)
    res.traces.push_back(parse_sentence(ds.sentences[i].graph_path, ds.kb, ds.meu, opt.apriori));

  res.predicted.assign(n, std::vector<PairClass>(n, PairClass::INDIFFERENCE));
  res.distance.assign(n, std::vector<double>(n, 0.0));

  if (opt.method == Method::LOGICAL) {
    res.confidence.assign(n, std::vector<Rational>(n, Rational(0)));
    detail::parallel_pairs(n, opt.workers, [&](std::size_t i, std::size_t j) {
      if (j < i) return;  // classify_pair yields both directions
      PairVerdict v = classify_pair(res.traces[i].formula, res.traces[j].formula, ds.kb);
      res.confidence[i][j] = v.confidence_ab;
      res.confidence[j][i] = v.confidence_ba;
      res.predicted[i][j] = v.class_ab;
      res.predicted[j][i] = v.class_ba;
    });
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        // Distance from the mean of the two directed confidences.
        double s = (res.confidence[i][j].to_double() + res.confidence[j][i].to_double()) / 2.0;
        res.distance[i][j] = 1.0 - s;
      }
  } else {
    Matrix sim(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<AlignEdge>> edges(n);
    if (opt.method != Method::COSINE)
      for (std::size_t i = 0; i < n; ++i) collect_align_edges(*res.traces[i].kernel, edges[i]);
    detail::parallel_pairs(n, opt.workers, [&](std::size_t i, std::size_t j) {
      if (opt.method == Method::COSINE)
        sim[i][j] = token_cosine(ds.sentences[i].text, ds.sentences[j].text);
      else
        sim[i][j] = graph_alignment(edges[i], edges[j],
                                    opt.method == Method::SG ? GraphAlignMode::SIMPLE
                                                             : GraphAlignMode::LOGICAL);
    });
    res.similarity = symmetrize(sim);
    for (std::size_t i = 0; i < n; ++i) res.similarity[i][i] = 1.0;
    std::vector<std::pair<int, int>> conflicts;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (ds.expected_pairs[i][j] == PairClass::INCONSISTENCY)
          conflicts.emplace_back(static_cast<int>(i), static_cast<int>(j));
    res.thresholds = derive_thresholds(res.similarity, ds.expected_clusters, conflicts);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        switch (three_way_from_score(res.similarity[i][j], res.thresholds)) {
          case ThreeWay::IMPLICATION: res.predicted[i][j] = PairClass::IMPLICATION; break;
          case ThreeWay::INCONSISTENCY: res.predicted[i][j] = PairClass::INCONSISTENCY; break;
          case ThreeWay::INDIFFERENCE: res.predicted[i][j] = PairClass::INDIFFERENCE; break;
        }
        res.distance[i][j] = 1.0 - res.similarity[i][j];
      }
  }

  std::vector<std::string> pred, gold;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      pred.push_back(detail::class_label(res.predicted[i][j]));
      gold.push_back(detail::class_label(ds.expected_pairs[i][j]));
    }
  res.classification = classification_metrics(pred, gold);

  std::size_t k = opt.k ? opt.k : std::max<std::size_t>(1, ds.expected_clusters.size());
  res.clusters = opt.clustering == Clustering::AHC ? ahc_complete(res.distance, k)
                                                   : k_medoids(res.distance, k, opt.seed);
  if (!ds.expected_clusters.empty())
    res.clustering = clustering_metrics(res.clusters, ds.expected_clusters, res.distance);
  return res;
}

// ------------------------------------------------------------- explanations

// The confidence printed must equal the average of the `t` column over rows
// where `s` = 1 in the emitted world table; run on every emission.
inline void check_explanation_consistency(const PairVerdict& v) {
  const WorldTable& t = v.world_table;
  std::size_t si = t.col("s"), ti = t.col("t");
  std::int64_t sa = 0, sab = 0;
  for (const auto& row : t.rows) {
    if (row[si] != 1) continue;
    ++sa;
    if (row[ti] == 1) ++sab;
  }
  Rational conf = sa == 0 ? Rational(0) : Rational(sab, sa);
  if (!(conf == v.confidence_ab))
    throw ValidationError("explanation self-check failed: table average " + conf.str() +
                          " != confidence " + v.confidence_ab.str());
}

inline nlohmann::json explanation_json(const std::string& text_a, const std::string& text_b,
                                       const ParseTrace& a, const ParseTrace& b,
                                       const PairVerdict& v) {
  check_explanation_consistency(v);
  nlohmann::json j;
  j["premise"] = {{"text", text_a}, {"formula", a.fol}};
  j["hypothesis"] = {{"text", text_b}, {"formula", b.fol}};
  auto atom_names = [](const Formula& f) {
    std::vector<std::string> out;
    for (const auto& p : atoms_of(f)) out.push_back(render(p));
    return out;
  };
  j["atoms"] = {{"premise", atom_names(a.formula)}, {"hypothesis", atom_names(b.formula)}};
  nlohmann::json mots = nlohmann::json::array();
  for (const auto& m : v.motivations)
    mots.push_back({{"premise_atom", m.a},
                    {"hypothesis_atom", m.b},
                    {"outcome", to_string(m.outcome)},
                    {"rule", m.rule}});
  j["atom_motivations"] = mots;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : v.world_table.rows) rows.push_back(r);
  j["world_table"] = {{"columns", v.world_table.columns}, {"rows", rows}};
  j["confidence"] = {{"forward", v.confidence_ab.str()}, {"backward", v.confidence_ba.str()}};
  j["class"] = {{"forward", to_string(v.class_ab)}, {"backward", to_string(v.class_ba)}};
  return j;
}

inline std::string explanation_html(const nlohmann::json& j) {
  auto esc = [](std::string s) {
    std::string o;
    for (char c : s) {
      if (c == '&') o += "&amp;";
      else if (c == '<') o += "&lt;";
      else if (c == '>') o += "&gt;";
      else o += c;
    }
    return o;
  };
  std::ostringstream h;
  h << "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">"
    << "<title>Entailment explanation</title><style>"
    << "body{font-family:sans-serif;margin:2em}table{border-collapse:collapse}"
    << "td,th{border:1px solid #999;padding:0.3em 0.6em}th{background:#eee}"
    << ".t1{background:#fff7c0}</style></head><body>\n";
  h << "<h1>Entailment explanation</h1>\n<h2>Sentences</h2>\n<table>"
    << "<tr><th></th><th>text</th><th>formula</th></tr>"
    << "<tr><td>premise</td><td>" << esc(j["premise"]["text"]) << "</td><td>"
    << esc(j["premise"]["formula"]) << "</td></tr>"
    << "<tr><td>hypothesis</td><td>" << esc(j["hypothesis"]["text"]) << "</td><td>"
    << esc(j["hypothesis"]["formula"]) << "</td></tr></table>\n";
  h << "<h2>Atom motivations</h2>\n<table><tr><th>premise atom</th>"
    << "<th>hypothesis atom</th><th>outcome</th><th>rule</th></tr>";
  for (const auto& m : j["atom_motivations"])
    h << "<tr><td>" << esc(m["premise_atom"]) << "</td><td>" << esc(m["hypothesis_atom"])
      << "</td><td>" << esc(m["outcome"]) << "</td><td>" << esc(m["rule"]) << "</td></tr>";
  h << "</table>\n<h2>Possible-world combinations</h2>\n<table><tr>";
  for (const auto& c : j["world_table"]["columns"]) h << "<th>" << esc(c) << "</th>";
  h << "</tr>";
  for (const auto& r : j["world_table"]["rows"]) {
    h << "<tr>";
    for (const auto& v : r) h << "<td class=\"" << (v.get<int>() ? "t1" : "") << "\">"
                              << v.get<int>() << "</td>";
    h << "</tr>";
  }
  h << "</table>\n<h2>Verdict</h2>\n<p>forward confidence "
    << esc(j["confidence"]["forward"]) << " (" << esc(j["class"]["forward"])
    << "), backward confidence " << esc(j["confidence"]["backward"]) << " ("
    << esc(j["class"]["backward"]) << ")</p>\n</body></html>\n";
  return h.str();
}

// ------------------------------------------------------------------- bench

struct BenchRow {
  int sentence = 0;
  std::size_t tokens = 0;
  std::string stage;
  double median_ms = 0;
};

inline std::vector<BenchRow> bench_dataset(const Dataset& ds, int repetitions) {
  std::vector<BenchRow> rows;
  for (std::size_t i = 0; i < ds.sentences.size(); ++i) {
    std::map<std::string, std::vector<double>> samples;
    std::vector<std::string> stage_order;
    for (int r = 0; r < std::max(1, repetitions); ++r) {
      ParseTrace tr = parse_sentence(ds.sentences[i].graph_path, ds.kb, ds.meu);
      if (stage_order.empty())
        for (const auto& [st, v] : tr.timings) {
          (void)v;
          stage_order.push_back(st);
        }
      for (const auto& [st, v] : tr.timings) samples[st].push_back(v);
    }
    std::size_t tokens = split_tokens(ds.sentences[i].text).size();
    for (const auto& st : stage_order) {
      std::vector<double>& v = samples[st];
      std::sort(v.begin(), v.end());
      rows.push_back({static_cast<int>(i), tokens, st, v[v.size() / 2]});
    }
  }
  return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "sentence,tokens,stage,median_ms\n";
  for (const auto& r : rows)
    out << r.sentence << "," << r.tokens << "," << r.stage << "," << r.median_ms << "\n";
  return out.str();
}

}  // namespace senlog
