#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "selpref/corpus.hpp"
#include "selpref/taxonomy.hpp"

namespace selpref {

enum class ModelKind : std::uint8_t { word2word, word2class, class2class };

inline constexpr ModelKind kModelKinds[] = {ModelKind::word2word, ModelKind::word2class,
                                            ModelKind::class2class};

// Short tokens "w2w", "w2c", "c2c"; parse also accepts the long names.
std::string_view to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view token);

/// Class-frequency estimates propagated through the taxonomy, plus the
/// direct counts the word-level models still need. Every observation with
/// weight count/classes(c) is credited once to each ancestor of c, so
/// summing an estimate over a whole hierarchy recovers the direct total.
///
/// Zero entries are omitted from the maps.
struct ClassEstimates {
  using RelVerb = FrequencyTables::RelVerb;
  using RelClass = FrequencyTables::RelClass;
  using ByConcept = std::map<ConceptIndex, double>;

  // Estimated class frequency of every concept; noun concepts from noun
  // occurrences, verb concepts from verb occurrences. Indexed by concept.
  std::vector<double> class_freq;
  // fr(rel v): direct triples per (relation, verb lemma).
  std::map<RelVerb, double> rel_verb;
  // fr(cn rel v): direct counts, (rel, v) -> cn -> count.
  std::map<RelVerb, ByConcept> noun_rel_verb;
  // Estimated (cn rel v) frequency, (rel, v) -> cn -> value.
  std::map<RelVerb, ByConcept> class_rel_verb;
  // Estimated (cn rel cv) frequency, (rel, cv) -> cn -> value.
  std::map<RelClass, ByConcept> class_rel_class;
  // Estimated (rel cv) frequency: the normalizer for class_rel_class.
  std::map<RelClass, double> rel_class;

  friend bool operator==(const ClassEstimates&, const ClassEstimates&) = default;
};

ClassEstimates build_estimates(const FrequencyTables& tables, const Taxonomy& taxonomy);

/// P(cn_i | rel v) for one candidate noun concept. An absent value means the
/// model abstains (no training evidence for the verb and relation); a present
/// zero is an answerable zero.
struct PreferenceScore {
  std::optional<double> value;
  // Argmax verb sense for class2class.
  std::optional<ConceptIndex> best_verb_sense;

  bool abstained() const noexcept { return !value.has_value(); }
  double value_or_zero() const noexcept { return value.value_or(0.0); }
};

/// One summand of a score. `verb_class` is empty for models keyed on the
/// verb lemma.
struct PreferenceTerm {
  ConceptIndex noun_class = 0;
  std::optional<ConceptIndex> verb_class;
  double value = 0.0;
};

/// Scores noun concepts as subjects/objects of verbs under the word-to-word,
/// word-to-class and class-to-class models. Holds a reference to the
/// taxonomy, which must outlive the model.
class PreferenceModel {
 public:
  PreferenceModel(const Taxonomy& taxonomy, ClassEstimates estimates);

  static PreferenceModel train(const Taxonomy& taxonomy, std::span<const Triple> triples);

  const Taxonomy& taxonomy() const noexcept { return *taxonomy_; }
  const ClassEstimates& estimates() const noexcept { return estimates_; }

  double est_class_freq(ConceptIndex c) const;
  // est_class_freq(cn_i) when cn subsumes cn_i, else 0.
  double est_class_pair_freq(ConceptIndex cn_i, ConceptIndex cn) const;
  double est_class_rel_verb_freq(ConceptIndex cn, Relation rel, std::string_view verb) const;
  // Throws ValidationError if cn is not a noun concept or cv not a verb concept.
  double est_class_rel_class_freq(ConceptIndex cn, Relation rel, ConceptIndex cv) const;
  double est_rel_class_freq(Relation rel, ConceptIndex cv) const;
  double rel_verb_freq(Relation rel, std::string_view verb) const;
  double noun_rel_verb_freq(ConceptIndex cn, Relation rel, std::string_view verb) const;

  // When `terms` is non-null it receives the nonzero summands of the score
  // (for class2class: of the winning verb sense).
  PreferenceScore word2word(ConceptIndex cn_i, Relation rel, std::string_view verb,
                            std::vector<PreferenceTerm>* terms = nullptr) const;
  PreferenceScore word2class(ConceptIndex cn_i, Relation rel, std::string_view verb,
                             std::vector<PreferenceTerm>* terms = nullptr) const;
  // Max over the given verb senses; ties keep the earlier sense.
  PreferenceScore class2class(ConceptIndex cn_i, Relation rel,
                              std::span<const ConceptIndex> verb_senses,
                              std::vector<PreferenceTerm>* terms = nullptr) const;
  // Throws UnknownLemmaError when the verb has no senses in `inventory`.
  PreferenceScore class2class(ConceptIndex cn_i, Relation rel, std::string_view verb,
                              const SenseInventory& inventory,
                              std::vector<PreferenceTerm>* terms = nullptr) const;

  // Sum for one fixed verb sense cv_j.
  double class2class_sense(ConceptIndex cn_i, Relation rel, ConceptIndex cv_j,
                           std::vector<PreferenceTerm>* terms = nullptr) const;

 private:
  void require_noun(ConceptIndex c) const;

  const Taxonomy* taxonomy_;
  ClassEstimates estimates_;
};

}  // namespace selpref
