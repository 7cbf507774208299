#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "senlog/kernel.hpp"

using namespace senlog;

namespace {

KnowledgeBase kernel_kb() {
  return load_kb(write_temp("kb_kernel.json", R"({
    "lexicon": [
      {"lemma": "be", "surface_forms": ["is", "are"], "entity_class": "VERB",
       "transitive": true},
      {"lemma": "become", "entity_class": "VERB", "transitive": false},
      {"lemma": "attempt", "entity_class": "VERB", "transitive": false},
      {"lemma": "make", "surface_forms": ["making"], "entity_class": "VERB",
       "transitive": true},
      {"lemma": "flow", "surface_forms": ["is flowing"], "entity_class": "VERB",
       "transitive": false}
    ]})"));
}

std::vector<MeuEntry> newcastle_meu() {
  return load_meu_db(write_temp("meu_kernel.json", R"([
    {"start": 0, "end": 11, "text": "city centre", "type": "NOUN",
     "source": "Parmenides", "confidence": 1.0},
    {"start": 0, "end": 21, "text": "Newcastle city centre", "type": "GPE",
     "source": "GeoNames", "confidence": 1.0}
  ])"));
}

struct Built {
  IntermediateGraph ig;
  KernelResult kr;
};

Built build(const std::string& fname, const std::string& doc, const KnowledgeBase& kb,
            const std::vector<MeuEntry>& meu = {}) {
  DepGraph dg = load_dep_graph(write_temp(fname, doc));
  EntityGraph eg = coalesce_groups(dg, meu, kb);
  Built b;
  b.ig = build_intermediate(eg, kb);
  std::vector<int> order = topo_sort_filter(b.ig);
  b.kr = build_kernels(b.ig, order, kb);
  return b;
}

}  // namespace

TEST_CASE("prepositional modifier on a verbless clause: default copular kernel") {
  Built b = build("kn_characters.json", R"({
    "nodes": [{"id": 0, "name": "characters"},
              {"id": 1, "name": "movies", "properties": {"2": ["in"]}}],
    "edges": [{"source": 0, "target": 1, "label": "nmod"}]})",
                  kernel_kb());
  CHECK(render_kernel(*b.kr.root) ==
        "be(characters, ?1)[(nmod(characters, movies[(2:in)]))]");
}

TEST_CASE("genitive modifier keeps its preposition until the logical rewrite") {
  Built b = build("kn_group.json", R"({
    "nodes": [{"id": 0, "name": "group"},
              {"id": 1, "name": "reindeer", "properties": {"2": ["of"]}}],
    "edges": [{"source": 0, "target": 1, "label": "nmod"}]})",
                  kernel_kb());
  CHECK(render_kernel(*b.kr.root) == "be(group, ?1)[(nmod(group, reindeer[(2:of)]))]");
}

TEST_CASE("negated coordinated modifier becomes an AND group property") {
  // "There is traffic but not in the Newcastle city centre"
  Built b = build("kn_butnot.json", R"({
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
                  kernel_kb(), newcastle_meu());
  CHECK(render_kernel(*b.kr.root) ==
        "be(traffic, ?1)[(AND:NOT(Newcastle[(det:the), (extra:city centre), (6:in)]))]");
}

TEST_CASE("case-bearing verb arguments route into the property list") {
  // "Traffic is flowing in Newcastle city centre, on Saturdays"
  Built b = build("kn_flow.json", R"({
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
                  kernel_kb(), newcastle_meu());
  CHECK(render_kernel(*b.kr.root) ==
        "flow(Traffic, None)"
        "[(GPE:Newcastle[(extra:city centre), (4:in)]), (DATE:Saturdays[(9:on)])]");
  // The annotation source lives on the entity, not in the rendered properties.
  const PropVal& sat = b.kr.root->properties.back().second;
  REQUIRE(sat.node.has_value());
  CHECK(sat.node->meu_source == "SUTime");
}

TEST_CASE("relative clause: SENTENCE nesting, referent substitution") {
  // "Music that is not classical"
  Built b = build("kn_music.json", R"({
    "nodes": [{"id": 0, "name": "Music"},
              {"id": 1, "name": "that"},
              {"id": 2, "name": "classical"},
              {"id": 3, "name": "not"}],
    "edges": [{"source": 2, "target": 3, "label": "advmod"},
              {"source": 1, "target": 2, "label": "is", "label_type": "verb"},
              {"source": 0, "target": 1, "label": "acl_relcl"}]})",
                  kernel_kb());
  CHECK(render_kernel(*b.kr.root) ==
        "be(Music, ?1)[(SENTENCE:be(that, NOT(classical))), "
        "(acl_relcl(Music, be(that, NOT(classical))))]");
  REQUIRE(b.kr.acl_map.count(1) == 1);
  CHECK(b.kr.acl_map.at(1).name == "Music");
  finalize_kernel(*b.kr.root, b.kr.acl_map);
  CHECK(render_kernel(*b.kr.root) == "be(Music, ?1)[(SENTENCE:be(Music, NOT(classical)))]");
}

TEST_CASE("standalone verb lexeme heads an existential-subject kernel") {
  // "become able to answer more questions"
  Built b = build("kn_become.json", R"({
    "nodes": [{"id": 5, "name": "questions", "properties": {"amod": ["more"]}},
              {"id": 10, "name": "?"},
              {"id": 1, "name": "become", "properties": {"cop": ["able"]}}],
    "edges": [{"source": 10, "target": 5, "label": "to answer", "label_type": "verb"},
              {"source": 1, "target": 10, "label": "xcomp"}]})",
                  kernel_kb());
  CHECK(render_kernel(*b.kr.root) ==
        "become(?2[(cop:able)], None)[(SENTENCE:to answer(?1, questions[(amod:more)]))]");
}

TEST_CASE("possessive compound resolves before the clause is consumed") {
  // "attempt to steal someone's husband"
  Built b = build("kn_attempt.json", R"({
    "nodes": [{"id": 3, "name": "someone"},
              {"id": 4, "name": "husband", "type": "NOUN"},
              {"id": 10, "name": "?"},
              {"id": 1, "name": "attempt"}],
    "edges": [{"source": 4, "target": 3, "label": "compound"},
              {"source": 10, "target": 4, "label": "to steal", "label_type": "verb"},
              {"source": 1, "target": 10, "label": "xcomp"}]})",
                  kernel_kb());
  CHECK(render_kernel(*b.kr.root) ==
        "attempt(?2, None)[(SENTENCE:to steal(?1, husband[(extra:someone)]))]");
}

TEST_CASE("adjectival target swaps with a pronominal property") {
  // "making you angry"
  Built b = build("kn_angry.json", R"({
    "nodes": [{"id": 0, "name": "?"},
              {"id": 1, "name": "angry", "type": "ADJECTIVE"},
              {"id": 2, "name": "you", "type": "PRONOUN"}],
    "edges": [{"source": 0, "target": 1, "label": "making", "label_type": "verb"},
              {"source": 0, "target": 2, "label": "making", "label_type": "verb"}]})",
                  kernel_kb());
  CHECK(render_kernel(*b.kr.root) == "make(?1, angry)[(PRONOUN:you)]");
  finalize_kernel(*b.kr.root, b.kr.acl_map);
  CHECK(render_kernel(*b.kr.root) == "make(?1, you)[(JJ:angry)]");
  // Finalizing is idempotent.
  finalize_kernel(*b.kr.root, b.kr.acl_map);
  CHECK(render_kernel(*b.kr.root) == "make(?1, you)[(JJ:angry)]");
}

TEST_CASE("negated verb edges negate the kernel") {
  Built b = build("kn_negk.json", R"({
    "nodes": [{"id": 0, "name": "cat"}, {"id": 1, "name": "mouse"}],
    "edges": [{"source": 0, "target": 1, "label": "eats", "label_type": "verb",
               "negated": true}]})",
                  kernel_kb());
  CHECK(b.kr.root->negated);
  CHECK(render_kernel(*b.kr.root) == "NOT eats(cat, mouse)");
}

TEST_CASE("a graph with no clause at all is rejected") {
  KnowledgeBase kb = kernel_kb();
  DepGraph dg = load_dep_graph(write_temp("kn_none.json", R"({
    "nodes": [{"id": 0, "name": ""}]})"));
  EntityGraph eg = coalesce_groups(dg, {}, kb);
  IntermediateGraph ig = build_intermediate(eg, kb);
  std::vector<int> order = topo_sort_filter(ig);
  CHECK_THROWS_AS(build_kernels(ig, order, kb), NoKernelConstructible);
}
