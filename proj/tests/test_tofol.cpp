#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "senlog/tofol.hpp"

using namespace senlog;

namespace {

KnowledgeBase fol_kb() {
  return load_kb(write_temp("kb_tofol.json", R"({
    "lexicon": [
      {"lemma": "be", "surface_forms": ["is", "are"], "entity_class": "VERB",
       "transitive": true},
      {"lemma": "become", "entity_class": "VERB", "transitive": false},
      {"lemma": "attempt", "entity_class": "VERB", "transitive": false},
      {"lemma": "close", "surface_forms": ["is closed"], "entity_class": "VERB",
       "transitive": false},
      {"lemma": "flow", "surface_forms": ["is flowing"], "entity_class": "VERB",
       "transitive": false},
      {"lemma": "play", "surface_forms": ["plays"], "entity_class": "VERB",
       "transitive": true},
      {"lemma": "traffic", "surface_forms": ["traffic"]}
    ],
    "rewrite_rules": [
      {"rule_order": 1, "prepositions": ["as soon as", "at", "in", "on"],
       "matched_by_source": "SUTime",
       "construct_name": "time", "construct_property": "defined"},
      {"rule_order": 12, "prepositions": ["in", "into"],
       "requires_abstract_entity": false,
       "construct_name": "space", "construct_property": "stay in place"},
      {"rule_order": 20, "prepositions": ["of"],
       "construct_name": "specification", "construct_property": "none"},
      {"rule_order": 25, "prepositions": ["for"],
       "construct_name": "aim_objective", "construct_property": ""}
    ],
    "functions": [
      {"construct_name": "SPACE", "construct_property": "stay in place",
       "attach_to": "Kernel", "argument": "type"},
      {"construct_name": "TIME", "construct_property": "defined",
       "attach_to": "Kernel", "argument": "type"},
      {"construct_name": "SPECIFICATION", "construct_property": "none",
       "attach_to": "Singleton", "argument": "extra"},
      {"construct_name": "AIM_OBJECTIVE", "construct_property": "",
       "attach_to": "Kernel", "argument": "type"}
    ]})"));
}

std::vector<MeuEntry> newcastle_meu() {
  return load_meu_db(write_temp("meu_tofol.json", R"([
    {"start": 0, "end": 11, "text": "city centre", "type": "NOUN",
     "source": "Parmenides", "confidence": 1.0},
    {"start": 0, "end": 21, "text": "Newcastle city centre", "type": "GPE",
     "source": "GeoNames", "confidence": 1.0}
  ])"));
}

std::string to_fol(const std::string& fname, const std::string& doc, const KnowledgeBase& kb,
                   const std::vector<MeuEntry>& meu = {}) {
  DepGraph dg = load_dep_graph(write_temp(fname, doc));
  EntityGraph eg = coalesce_groups(dg, meu, kb);
  IntermediateGraph ig = build_intermediate(eg, kb);
  std::vector<int> order = topo_sort_filter(ig);
  KernelResult kr = build_kernels(ig, order, kb);
  finalize_kernel(*kr.root, kr.acl_map);
  rewrite_properties_logically(*kr.root, kb);
  return render(sentence_to_formula(*kr.root, kb));
}

}  // namespace

TEST_CASE("nested clause conjoins under an existential with copula lifting") {
  // "become able to answer more questions"
  std::string f = to_fol("tf_become.json", R"({
    "nodes": [{"id": 5, "name": "questions", "properties": {"amod": ["more"]}},
              {"id": 10, "name": "?"},
              {"id": 1, "name": "become", "properties": {"cop": ["able"]}}],
    "edges": [{"source": 10, "target": 5, "label": "to answer", "label_type": "verb"},
              {"source": 1, "target": 10, "label": "xcomp"}]})",
                         fol_kb());
  CHECK(f ==
        "∃?1.(to answer(◇?1{JJ:◇able}, ◇questions{JJ:◇more}) ∧ become(◇?1{JJ:◇able}))");
}

TEST_CASE("subject variables unify without copulas too") {
  // "attempt to steal someone's husband"
  std::string f = to_fol("tf_attempt.json", R"({
    "nodes": [{"id": 3, "name": "someone"},
              {"id": 4, "name": "husband", "type": "NOUN"},
              {"id": 10, "name": "?"},
              {"id": 1, "name": "attempt"}],
    "edges": [{"source": 4, "target": 3, "label": "compound"},
              {"source": 10, "target": 4, "label": "to steal", "label_type": "verb"},
              {"source": 1, "target": 10, "label": "xcomp"}]})",
                         fol_kb());
  CHECK(f == "∃?1.(to steal(◇?1, ◇[husband [of] someone]) ∧ attempt(◇?1))");
}

TEST_CASE("relative clause: referent replaces the pronoun, target negation is term-level") {
  // "Music that is not classical"
  std::string f = to_fol("tf_music.json", R"({
    "nodes": [{"id": 0, "name": "Music"},
              {"id": 1, "name": "that"},
              {"id": 2, "name": "classical"},
              {"id": 3, "name": "not"}],
    "edges": [{"source": 2, "target": 3, "label": "advmod"},
              {"source": 1, "target": 2, "label": "is", "label_type": "verb"},
              {"source": 0, "target": 1, "label": "acl_relcl"}]})",
                         fol_kb());
  CHECK(f == "(be(◇Music, ¬◇classical) ∧ be(◇Music))");
}

TEST_CASE("coordinated subjects distribute over the proposition") {
  const char* tmpl = R"({
    "nodes": [{"id": 0, "name": "Alice"},
              {"id": 1, "name": "Bob"},
              {"id": 2, "name": "%s"},
              {"id": 3, "name": "football"}],
    "edges": [{"source": 0, "target": 1, "label": "conj"},
              {"source": 0, "target": 2, "label": "cc"},
              {"source": 0, "target": 3, "label": "plays", "label_type": "verb"}]})";
  char buf[1024];
  std::snprintf(buf, sizeof buf, tmpl, "and");
  CHECK(to_fol("tf_and.json", buf, fol_kb()) ==
        "(play(◇Alice, ◇football) ∧ play(◇Bob, ◇football))");
  std::snprintf(buf, sizeof buf, tmpl, "or");
  CHECK(to_fol("tf_or.json", buf, fol_kb()) ==
        "(play(◇Alice, ◇football) ∨ play(◇Bob, ◇football))");
  std::snprintf(buf, sizeof buf, tmpl, "nor");
  CHECK(to_fol("tf_nor.json", buf, fol_kb()) ==
        "¬((play(◇Alice, ◇football) ∨ play(◇Bob, ◇football)))");
}

TEST_CASE("negated verb yields a negated proposition") {
  std::string f = to_fol("tf_neg.json", R"({
    "nodes": [{"id": 0, "name": "Alice"}, {"id": 1, "name": "football"}],
    "edges": [{"source": 0, "target": 1, "label": "plays", "label_type": "verb",
               "negated": true}]})",
                         fol_kb());
  CHECK(f == "¬play(◇Alice, ◇football)");
}

TEST_CASE("negated group property lifts into a conjoined negated atom") {
  // "There is traffic but not in the Newcastle city centre"
  std::string f = to_fol("tf_butnot.json", R"({
    "nodes": [{"id": 0, "name": "traffic"},
              {"id": 1, "name": "not"},
              {"id": 2, "name": "Newcastle", "type": "GPE",
               "properties": {"det": ["the"], "6": ["in"]}},
              {"id": 3, "name": "city"},
              {"id": 4, "name": "centre"},
              {"id": 5, "name": "but"}],
    "edges": [{"source": 2, "target": 3, "label": "compound"},
              {"source": 2, "target": 4, "label": "compound"},
              {"source": 2, "target": 1, "label": "advmod"},
              {"source": 0, "target": 2, "label": "conj"},
              {"source": 0, "target": 5, "label": "cc"}]})",
                         fol_kb(), newcastle_meu());
  CHECK(f == "(be(◇traffic) ∧ ¬be(◇traffic){SPACE:◇[Newcastle [of] city centre]})");
}

TEST_CASE("constructs carry over as proposition properties, bookkeeping drops") {
  // "Traffic is flowing in Newcastle city centre, on Saturdays"
  std::string f = to_fol("tf_flow.json", R"({
    "nodes": [{"id": 0, "name": "Traffic"},
              {"id": 2, "name": "Newcastle", "type": "GPE", "properties": {"4": ["in"]}},
              {"id": 3, "name": "city"},
              {"id": 4, "name": "centre"},
              {"id": 5, "name": "Saturdays", "type": "DATE",
               "properties": {"9": ["on"], "meu_source": ["SUTime"]}}],
    "edges": [{"source": 2, "target": 3, "label": "compound"},
              {"source": 2, "target": 4, "label": "compound"},
              {"source": 0, "target": 2, "label": "is flowing", "label_type": "verb"},
              {"source": 0, "target": 5, "label": "is flowing", "label_type": "verb"}]})",
                         fol_kb(), newcastle_meu());
  CHECK(f == "flow(◇traffic){SPACE:◇[Newcastle [of] city centre];TIME:◇Saturdays}");

  // "The busy Newcastle city centre is closed for traffic"
  std::string g = to_fol("tf_close.json", R"({
    "nodes": [{"id": 2, "name": "Newcastle", "type": "GPE",
               "properties": {"det": ["The"], "JJ": ["busy"]}},
              {"id": 3, "name": "city"},
              {"id": 4, "name": "centre"},
              {"id": 6, "name": "traffic", "properties": {"8": ["for"]}}],
    "edges": [{"source": 2, "target": 3, "label": "compound"},
              {"source": 2, "target": 4, "label": "compound"},
              {"source": 2, "target": 6, "label": "is closed", "label_type": "verb"}]})",
                         fol_kb(), newcastle_meu());
  CHECK(g ==
        "close(◇[Newcastle [of] city centre]{JJ:◇busy}){AIM_OBJECTIVE:◇traffic}");
}

TEST_CASE("universal determiners box the term") {
  std::string f = to_fol("tf_every.json", R"({
    "nodes": [{"id": 0, "name": "cat", "properties": {"det": ["Every"]}},
              {"id": 1, "name": "mouse", "properties": {"det": ["a"]}}],
    "edges": [{"source": 0, "target": 1, "label": "hunts", "label_type": "verb"}]})",
                         fol_kb());
  CHECK(f == "hunts(□cat, ◇mouse)");
}
