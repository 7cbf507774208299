// Command-line front end: parse sentences to logic, compare and classify
// sentence pairs with explanations, run dataset evaluations, and benchmark
// the pipeline stages. Exit codes: 0 success, 1 validation error, 2 budget
// exceeded.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "senlog/pipeline.hpp"

using namespace senlog;
namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& p, const std::string& content) {
  fs::create_directories(p.parent_path().empty() ? fs::path(".") : p.parent_path());
  std::ofstream out(p);
  if (!out) throw ValidationError("cannot write file: " + p.string());
  out << content;
}

nlohmann::json classification_json(const ClassificationReport& r) {
  nlohmann::json j;
  j["accuracy"] = r.accuracy;
  j["macro"] = {{"precision", r.macro_precision},
                {"recall", r.macro_recall},
                {"f1", r.macro_f1}};
  j["weighted"] = {{"precision", r.weighted_precision},
                   {"recall", r.weighted_recall},
                   {"f1", r.weighted_f1}};
  for (const auto& [lab, p] : r.precision)
    j["per_class"][lab] = {{"precision", p},
                           {"recall", r.recall.at(lab)},
                           {"f1", r.f1.at(lab)},
                           {"support", r.support.at(lab)}};
  return j;
}

nlohmann::json clustering_json(const ClusteringReport& r,
                               const std::vector<std::vector<int>>& clusters) {
  nlohmann::json j;
  j["clusters"] = clusters;
  j["alignment"] = r.alignment;
  j["purity"] = r.purity;
  j["ari"] = r.ari;
  if (r.silhouette)
    j["silhouette"] = *r.silhouette;
  else
    j["silhouette"] = nullptr;
  return j;
}

// Aligned-column text table for the metric report.
std::string metrics_table(const ClassificationReport& r) {
  std::ostringstream out;
  out << "class            precision  recall     f1         support\n";
  auto row = [&](const std::string& name, double p, double rec, double f,
                 const std::string& sup) {
    out << name;
    for (std::size_t i = name.size(); i < 17; ++i) out << ' ';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-10.2f %-10.2f %-10.2f %s\n", p, rec, f, sup.c_str());
    out << buf;
  };
  for (const auto& [lab, p] : r.precision)
    row(lab, p, r.recall.at(lab), r.f1.at(lab), std::to_string(r.support.at(lab)));
  row("macro avg", r.macro_precision, r.macro_recall, r.macro_f1, "-");
  row("weighted avg", r.weighted_precision, r.weighted_recall, r.weighted_f1, "-");
  char buf[64];
  std::snprintf(buf, sizeof buf, "accuracy         %.2f\n", r.accuracy);
  out << buf;
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sentence-to-logic compiler and paraconsistent entailment engine"};
  app.require_subcommand(1);

  std::string kb_path, meu_path, dataset_path, html_dir;
  std::string method = "logical", clustering = "ahc";
  std::size_t k = 0;
  std::uint64_t seed = 1;
  bool trace = false, no_apriori = false;
  int repetitions = 3;
  std::vector<std::string> inputs;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--kb", kb_path, "knowledge base JSON file");
    cmd->add_option("--meu", meu_path, "multi-word entity database JSON file");
    cmd->add_flag("--no-apriori", no_apriori, "skip multi-word entity resolution");
  };

  CLI::App* parse = app.add_subcommand("parse", "compile a dependency graph to logic");
  add_common(parse);
  parse->add_flag("--trace", trace, "print every intermediate stage");
  parse->add_option("graph", inputs, "dependency graph JSON file(s)")->required();

  CLI::App* compare = app.add_subcommand("compare", "explain the entailment of a pair");
  add_common(compare);
  compare->add_option("--html", html_dir, "also write a static HTML report here");
  compare->add_option("graph", inputs, "two dependency graph JSON files")
      ->expected(2)
      ->required();

  CLI::App* classify = app.add_subcommand("classify", "three-way classify a pair");
  add_common(classify);
  classify->add_option("graph", inputs, "two dependency graph JSON files")
      ->expected(2)
      ->required();

  CLI::App* evaluate = app.add_subcommand("evaluate", "run a dataset evaluation");
  add_common(evaluate);
  evaluate->add_option("--dataset", dataset_path, "dataset YAML file")->required();
  evaluate->add_option("--method", method, "logical | sg | lg | cosine");
  evaluate->add_option("--clustering", clustering, "ahc | kmedoids");
  evaluate->add_option("--k", k, "cluster count (default: gold cluster count)");
  evaluate->add_option("--seed", seed, "random seed for k-medoids");

  CLI::App* bench = app.add_subcommand("bench", "per-stage pipeline timings as CSV");
  add_common(bench);
  bench->add_option("--dataset", dataset_path, "dataset YAML file")->required();
  bench->add_option("--repetitions", repetitions, "repetitions per sentence");

  CLI11_PARSE(app, argc, argv);

  try {
    KnowledgeBase kb;
    if (!kb_path.empty()) kb = load_kb(kb_path);
    std::vector<MeuEntry> meu;
    if (!meu_path.empty()) meu = load_meu_db(meu_path);

    if (parse->parsed()) {
      for (const auto& g : inputs) {
        ParseTrace tr = parse_sentence(g, kb, meu, !no_apriori);
        if (trace) {
          std::cout << "constructed: " << tr.constructed << "\n"
                    << "finalized: " << tr.finalized << "\n"
                    << "logical: " << tr.logical << "\n"
                    << "fol: " << tr.fol << "\n";
        } else {
          std::cout << tr.fol << "\n";
        }
      }
      return 0;
    }

    if (compare->parsed() || classify->parsed()) {
      ParseTrace a = parse_sentence(inputs[0], kb, meu, !no_apriori);
      ParseTrace b = parse_sentence(inputs[1], kb, meu, !no_apriori);
      PairVerdict v = classify_pair(a.formula, b.formula, kb);
      if (classify->parsed()) {
        std::cout << to_string(v.class_ab) << " " << v.confidence_ab.str() << "\n"
                  << to_string(v.class_ba) << " " << v.confidence_ba.str() << "\n";
        return 0;
      }
      nlohmann::json j = explanation_json(inputs[0], inputs[1], a, b, v);
      std::cout << j.dump(2) << "\n";
      if (!html_dir.empty())
        write_file(fs::path(html_dir) / "explanation.html", explanation_html(j));
      return 0;
    }

    if (evaluate->parsed()) {
      Dataset ds = load_dataset(dataset_path);
      if (!kb_path.empty()) ds.kb = kb;
      if (!meu_path.empty()) ds.meu = meu;
      EvalOptions opt;
      opt.method = method_from(method);
      if (clustering == "ahc")
        opt.clustering = Clustering::AHC;
      else if (clustering == "kmedoids")
        opt.clustering = Clustering::KMEDOIDS;
      else
        throw ValidationError("unknown clustering: " + clustering);
      opt.k = k;
      opt.seed = seed;
      opt.apriori = !no_apriori;
      EvalResult r = evaluate_dataset(ds, opt);

      nlohmann::json j;
      j["method"] = method;
      j["clustering"] = clustering;
      if (opt.method == Method::LOGICAL) {
        nlohmann::json conf = nlohmann::json::array();
        for (const auto& row : r.confidence) {
          nlohmann::json jr = nlohmann::json::array();
          for (const auto& c : row) jr.push_back(c.str());
          conf.push_back(jr);
        }
        j["confidence"] = conf;
      } else {
        j["similarity"] = r.similarity;
        j["thresholds"] = {{"theta", r.thresholds.theta},
                           {"vartheta", r.thresholds.vartheta}};
      }
      nlohmann::json classes = nlohmann::json::array();
      for (const auto& row : r.predicted) {
        nlohmann::json jr = nlohmann::json::array();
        for (PairClass c : row) jr.push_back(to_string(c));
        classes.push_back(jr);
      }
      j["pairwise_classes"] = classes;
      j["classification"] = classification_json(r.classification);
      j["clustering_report"] = clustering_json(r.clustering, r.clusters);
      std::cout << j.dump(2) << "\n";
      std::cerr << metrics_table(r.classification);
      return 0;
    }

    if (bench->parsed()) {
      Dataset ds = load_dataset(dataset_path);
      if (!kb_path.empty()) ds.kb = kb;
      if (!meu_path.empty()) ds.meu = meu;
      std::cout << bench_csv(bench_dataset(ds, repetitions));
      return 0;
    }
  } catch (const AtomBudgetExceeded& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 2;
  } catch (const ExpansionBudgetExceeded& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
