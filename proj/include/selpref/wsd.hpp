#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "selpref/corpus.hpp"
#include "selpref/prefmodel.hpp"

namespace selpref {

// One noun token attached to a verb by a single relation.
struct WsdInstance {
  std::string noun_lemma;
  Relation rel = Relation::object;
  std::string verb_lemma;
  std::optional<std::size_t> gold_sense;  // 1-based
  std::string doc_id;
};

struct WsdDecision {
  std::optional<std::size_t> answer;  // 1-based sense number; empty = no answer
  std::vector<PreferenceScore> scores;  // scores[i] belongs to sense i + 1
  std::optional<ModelKind> model;       // empty for baselines
};

struct SenseExplanation {
  std::size_t sense = 0;  // 1-based
  ConceptIndex concept_index = 0;
  PreferenceScore score;
  std::vector<PreferenceTerm> terms;  // descending by value
};

struct Explanation {
  std::optional<ModelKind> model;
  std::vector<SenseExplanation> senses;
};

/// Noun sense disambiguation on top of a trained preference model. The
/// inventory and model must outlive the disambiguator.
class Disambiguator {
 public:
  Disambiguator(const SenseInventory& inventory, const PreferenceModel& model)
      : inventory_(&inventory), model_(&model) {}

  // Throws UnknownLemmaError for nouns absent from the inventory. A verb
  // absent from the inventory makes class2class abstain.
  WsdDecision disambiguate(const WsdInstance& inst, ModelKind kind) const;
  Explanation explain(const WsdInstance& inst, ModelKind kind) const;

  PreferenceScore score(ConceptIndex noun_sense, const WsdInstance& inst, ModelKind kind,
                        std::vector<PreferenceTerm>* terms = nullptr) const;

  const SenseInventory& inventory() const noexcept { return *inventory_; }
  const PreferenceModel& model() const noexcept { return *model_; }

 private:
  std::span<const ConceptIndex> noun_senses(const WsdInstance& inst) const;

  const SenseInventory* inventory_;
  const PreferenceModel* model_;
};

// Argmax over scores; ties go to the lowest sense number, and nothing is
// chosen unless the best score is strictly positive.
std::optional<std::size_t> choose_sense(std::span<const PreferenceScore> scores);

// Always sense 1.
WsdDecision baseline_mfs(const WsdInstance& inst, const SenseInventory& inventory);

// Expected accuracy of a uniform random sense choice: mean of 1/#senses.
double baseline_random_expectation(std::span<const WsdInstance> instances,
                                   const SenseInventory& inventory);

}  // namespace selpref
