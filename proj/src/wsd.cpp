#include "selpref/wsd.hpp"

#include <algorithm>

#include "selpref/error.hpp"

namespace selpref {

std::optional<std::size_t> choose_sense(std::span<const PreferenceScore> scores) {
  std::optional<std::size_t> best;
  double best_value = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double v = scores[i].value_or_zero();
    if (v > best_value) {
      best_value = v;
      best = i + 1;
    }
  }
  return best;
}

std::span<const ConceptIndex> Disambiguator::noun_senses(const WsdInstance& inst) const {
  auto senses = inventory_->senses(inst.noun_lemma, PartOfSpeech::noun);
  if (senses.empty()) throw UnknownLemmaError(inst.noun_lemma);
  return senses;
}

PreferenceScore Disambiguator::score(ConceptIndex noun_sense, const WsdInstance& inst,
                                     ModelKind kind, std::vector<PreferenceTerm>* terms) const {
  switch (kind) {
    case ModelKind::word2word:
      return model_->word2word(noun_sense, inst.rel, inst.verb_lemma, terms);
    case ModelKind::word2class:
      return model_->word2class(noun_sense, inst.rel, inst.verb_lemma, terms);
    case ModelKind::class2class: {
      auto verb_senses = inventory_->senses(inst.verb_lemma, PartOfSpeech::verb);
      if (verb_senses.empty()) return {};
      return model_->class2class(noun_sense, inst.rel, verb_senses, terms);
    }
  }
  return {};
}

WsdDecision Disambiguator::disambiguate(const WsdInstance& inst, ModelKind kind) const {
  WsdDecision d;
  d.model = kind;
  for (auto c : noun_senses(inst)) d.scores.push_back(score(c, inst, kind));
  d.answer = choose_sense(d.scores);
  return d;
}

Explanation Disambiguator::explain(const WsdInstance& inst, ModelKind kind) const {
  Explanation ex;
  ex.model = kind;
  const auto senses = noun_senses(inst);
  for (std::size_t i = 0; i < senses.size(); ++i) {
    SenseExplanation se;
    se.sense = i + 1;
    se.concept_index = senses[i];
    se.score = score(senses[i], inst, kind, &se.terms);
    std::stable_sort(se.terms.begin(), se.terms.end(),
                     [](const PreferenceTerm& a, const PreferenceTerm& b) {
                       return a.value > b.value;
                     });
    ex.senses.push_back(std::move(se));
  }
  return ex;
}

WsdDecision baseline_mfs(const WsdInstance& inst, const SenseInventory& inventory) {
  auto senses = inventory.senses(inst.noun_lemma, PartOfSpeech::noun);
  if (senses.empty()) throw UnknownLemmaError(inst.noun_lemma);
  WsdDecision d;
  d.answer = 1;
  d.scores.assign(senses.size(), PreferenceScore{0.0, std::nullopt});
  d.scores.front().value = 1.0;
  return d;
}

double baseline_random_expectation(std::span<const WsdInstance> instances,
                                   const SenseInventory& inventory) {
  if (instances.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& inst : instances) {
    auto senses = inventory.senses(inst.noun_lemma, PartOfSpeech::noun);
    if (senses.empty()) throw UnknownLemmaError(inst.noun_lemma);
    sum += 1.0 / static_cast<double>(senses.size());
  }
  return sum / static_cast<double>(instances.size());
}

}  // namespace selpref
