#include <doctest.h>

#include <numeric>

#include "oracle.hpp"
#include "random_corpus.hpp"
#include "toy_data.hpp"

using namespace selpref;
using selpref::testing::close;

namespace {

PreferenceScore val(double v) { return {v, std::nullopt}; }

struct ToyModel {
  selpref::testing::ToyData toy;
  PreferenceModel model = PreferenceModel::train(toy.taxonomy, toy.triples);
  Disambiguator wsd{toy.inventory, model};
};

WsdInstance inst(std::string noun, Relation rel, std::string verb,
                 std::optional<std::size_t> gold = std::nullopt) {
  return {std::move(noun), rel, std::move(verb), gold, ""};
}

}  // namespace

TEST_CASE("choose_sense") {
  CHECK(choose_sense(std::vector<PreferenceScore>{}) == std::nullopt);
  CHECK(choose_sense(std::vector{val(0), PreferenceScore{}}) == std::nullopt);
  CHECK(choose_sense(std::vector{val(0.1), val(0.3), val(0.2)}) == 2u);
  // Ties go to the lower sense number.
  CHECK(choose_sense(std::vector{val(0), val(0.3), val(0.3)}) == 2u);
  CHECK(choose_sense(std::vector{PreferenceScore{}, val(1e-12)}) == 2u);
}

TEST_CASE("church-style generalization: unseen verb resolved through its verb class") {
  ToyModel m;
  const auto q = inst("church", Relation::object, "rebuild", 2);
  CHECK(m.wsd.disambiguate(q, ModelKind::word2word).answer == std::nullopt);
  CHECK(m.wsd.disambiguate(q, ModelKind::word2class).answer == std::nullopt);

  const auto d = m.wsd.disambiguate(q, ModelKind::class2class);
  REQUIRE(d.answer == 2u);
  // Frozen from the naive-enumeration oracle.
  CHECK(close(*d.scores[0].value, 0.002632126182331977));
  CHECK(close(*d.scores[1].value, 0.01236741022337258));
  CHECK(close(*d.scores[2].value, 0.00052449050844090577));
  CHECK(m.toy.taxonomy.id(*d.scores[1].best_verb_sense) == "rebuild_v");

  const auto ex = m.wsd.explain(q, ModelKind::class2class);
  REQUIRE(ex.senses.size() == 3);
  const auto& top = ex.senses[1].terms.front();
  CHECK(m.toy.taxonomy.id(top.noun_class) == "church_building");
  CHECK(m.toy.taxonomy.id(*top.verb_class) == "make_v");
  CHECK(close(top.value, 1.0 / 630));
}

TEST_CASE("word2word with a verb absent from training gives no answer") {
  ToyModel m;
  auto d = m.wsd.disambiguate(inst("chicken", Relation::object, "rebuild"), ModelKind::word2word);
  CHECK_FALSE(d.answer);
  for (const auto& s : d.scores) CHECK(s.abstained());
}

TEST_CASE("verb outside the inventory makes class2class abstain") {
  ToyModel m;
  auto d = m.wsd.disambiguate(inst("church", Relation::object, "vanish"), ModelKind::class2class);
  CHECK_FALSE(d.answer);
  CHECK(d.scores.size() == 3);
  CHECK_THROWS_AS(m.wsd.disambiguate(inst("spoon", Relation::object, "eat"), ModelKind::word2word),
                  UnknownLemmaError);
}

TEST_CASE("monosemous noun") {
  ToyModel m;
  for (auto kind : kModelKinds) {
    auto yes = m.wsd.disambiguate(inst("poulet", Relation::object, "eat"), kind);
    CHECK(yes.answer == 1u);
  }
  auto no = m.wsd.disambiguate(inst("poulet", Relation::object, "vanish"), ModelKind::word2class);
  CHECK_FALSE(no.answer);
}

TEST_CASE("baselines") {
  ToyModel m;
  auto mfs = baseline_mfs(inst("head", Relation::object, "nod", 3), m.toy.inventory);
  CHECK(mfs.answer == 1u);
  CHECK(mfs.scores.size() == 4);
  CHECK_FALSE(mfs.model);
  CHECK(baseline_mfs(inst("poulet", Relation::object, "x", 1), m.toy.inventory).answer == 1u);
  CHECK_THROWS_AS(baseline_mfs(inst("spoon", Relation::object, "x"), m.toy.inventory),
                  UnknownLemmaError);

  const std::vector mono{inst("poulet", Relation::object, "a"), inst("bread", Relation::subject, "b")};
  CHECK(baseline_random_expectation(mono, m.toy.inventory) == 1.0);
  // chicken has 2 senses, head 4.
  const std::vector mixed{inst("chicken", Relation::object, "a"), inst("head", Relation::object, "b")};
  CHECK(baseline_random_expectation(mixed, m.toy.inventory) == 0.375);
}

TEST_CASE("explanations decompose the scores") {
  ToyModel m;
  const selpref::testing::Oracle oracle(m.toy.taxonomy, m.toy.triples);
  std::vector<WsdInstance> queries;
  for (const auto& t : m.toy.triples) queries.push_back(inst(t.noun_lemma, t.rel, t.verb_lemma));
  queries.push_back(inst("church", Relation::object, "rebuild"));

  for (const auto& q : queries) {
    for (auto kind : kModelKinds) {
      const auto d = m.wsd.disambiguate(q, kind);
      const auto ex = m.wsd.explain(q, kind);
      REQUIRE(ex.senses.size() == d.scores.size());
      for (std::size_t i = 0; i < ex.senses.size(); ++i) {
        const auto& se = ex.senses[i];
        double sum = 0.0;
        for (std::size_t j = 0; j < se.terms.size(); ++j) {
          sum += se.terms[j].value;
          if (j) CHECK(se.terms[j - 1].value >= se.terms[j].value);
        }
        const double score = d.scores[i].value_or_zero();
        CHECK((score == 0.0 ? sum == 0.0 : close(sum, score)));
        if (d.scores[i].value_or_zero() == 0.0) CHECK(se.terms.empty());
        if (kind == ModelKind::word2word) CHECK(se.terms.size() <= 1);
      }
    }
  }

  // Word-to-class terms match the per-ancestor expansion.
  const auto q = inst("church", Relation::object, "demolish");
  const auto ex = m.wsd.explain(q, ModelKind::word2class);
  for (const auto& se : ex.senses) {
    for (const auto& term : se.terms) {
      const double expected = oracle.class_freq(se.concept_index) /
                              oracle.class_freq(term.noun_class) *
                              oracle.class_rel_verb(term.noun_class, q.rel, q.verb_lemma) /
                              oracle.rel_verb(q.rel, q.verb_lemma);
      CHECK(close(term.value, expected));
      CHECK(m.toy.taxonomy.subsumes(term.noun_class, se.concept_index));
    }
  }
}

TEST_CASE("decisions: soundness, abstention and coverage nesting") {
  for (std::uint64_t seed = 600; seed < 640; ++seed) {
    auto rc = selpref::testing::make_random_corpus(seed);
    const auto half = rc.triples.size() / 2;
    std::vector<Triple> train(rc.triples.begin(), rc.triples.begin() + static_cast<long>(half));
    const auto model = PreferenceModel::train(rc.taxonomy, train);
    const Disambiguator wsd(rc.inventory, model);
    for (std::size_t i = half; i < rc.triples.size(); ++i) {
      const auto& t = rc.triples[i];
      const auto q = inst(t.noun_lemma, t.rel, t.verb_lemma);
      std::array<bool, 3> answered{};
      for (auto kind : kModelKinds) {
        const auto d = wsd.disambiguate(q, kind);
        const bool all_zero = std::all_of(d.scores.begin(), d.scores.end(),
                                          [](const auto& s) { return s.value_or_zero() == 0.0; });
        CHECK(all_zero == !d.answer.has_value());
        if (d.answer) {
          const double best = d.scores[*d.answer - 1].value_or_zero();
          for (std::size_t j = 0; j < d.scores.size(); ++j) {
            if (j + 1 < *d.answer) CHECK(d.scores[j].value_or_zero() < best);
            else CHECK(d.scores[j].value_or_zero() <= best);
          }
        }
        CHECK(wsd.disambiguate(q, kind).answer == d.answer);
        answered[static_cast<std::size_t>(kind)] = d.answer.has_value();
      }
      if (answered[0]) CHECK(answered[1]);
      if (answered[1]) CHECK(answered[2]);
    }
  }
}
