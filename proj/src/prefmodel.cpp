#include "selpref/prefmodel.hpp"

#include "selpref/error.hpp"

namespace selpref {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::word2word: return "w2w";
    case ModelKind::word2class: return "w2c";
    case ModelKind::class2class: return "c2c";
  }
  return "?";
}

std::optional<ModelKind> parse_model_kind(std::string_view token) {
  if (token == "w2w" || token == "word2word") return ModelKind::word2word;
  if (token == "w2c" || token == "word2class") return ModelKind::word2class;
  if (token == "c2c" || token == "class2class") return ModelKind::class2class;
  return std::nullopt;
}

ClassEstimates build_estimates(const FrequencyTables& tables, const Taxonomy& taxonomy) {
  ClassEstimates est;
  est.class_freq.assign(taxonomy.size(), 0.0);

  auto weight = [&](ConceptIndex c) { return 1.0 / static_cast<double>(taxonomy.classes_count(c)); };

  auto spread = [&](const std::map<ConceptIndex, std::size_t>& counts) {
    for (const auto& [c, n] : counts) {
      const double w = static_cast<double>(n) * weight(c);
      for (auto a : taxonomy.ancestors(c)) est.class_freq[a] += w;
    }
  };
  spread(tables.noun_concept);
  spread(tables.verb_concept);

  for (const auto& [key, n] : tables.rel_verb) est.rel_verb[key] = static_cast<double>(n);

  for (const auto& [key, n] : tables.noun_rel_verb) {
    const auto& [cn, rel, verb] = key;
    ClassEstimates::RelVerb rv{rel, verb};
    est.noun_rel_verb[rv][cn] += static_cast<double>(n);
    auto& row = est.class_rel_verb[rv];
    const double w = static_cast<double>(n) * weight(cn);
    for (auto a : taxonomy.ancestors(cn)) row[a] += w;
  }

  for (const auto& [key, n] : tables.noun_rel_class) {
    const auto& [cn, rel, cv] = key;
    const double w = static_cast<double>(n) * weight(cn) * weight(cv);
    const auto noun_anc = taxonomy.ancestors(cn);
    for (auto av : taxonomy.ancestors(cv)) {
      auto& row = est.class_rel_class[{rel, av}];
      for (auto an : noun_anc) row[an] += w;
    }
  }

  for (const auto& [key, n] : tables.rel_class) {
    const auto& [rel, cv] = key;
    const double w = static_cast<double>(n) * weight(cv);
    for (auto av : taxonomy.ancestors(cv)) est.rel_class[{rel, av}] += w;
  }
  return est;
}

namespace {

template <class Map, class Key>
double lookup(const Map& m, const Key& k) {
  auto it = m.find(k);
  return it == m.end() ? 0.0 : it->second;
}

double lookup_in(const ClassEstimates::ByConcept* row, ConceptIndex c) {
  return row ? lookup(*row, c) : 0.0;
}

template <class Map, class Key>
const ClassEstimates::ByConcept* find_row(const Map& m, const Key& k) {
  auto it = m.find(k);
  return it == m.end() ? nullptr : &it->second;
}

}  // namespace

PreferenceModel::PreferenceModel(const Taxonomy& taxonomy, ClassEstimates estimates)
    : taxonomy_(&taxonomy), estimates_(std::move(estimates)) {
  if (estimates_.class_freq.empty()) estimates_.class_freq.assign(taxonomy.size(), 0.0);
  if (estimates_.class_freq.size() != taxonomy.size())
    throw ValidationError("class estimates do not match the taxonomy size");
}

PreferenceModel PreferenceModel::train(const Taxonomy& taxonomy, std::span<const Triple> triples) {
  return PreferenceModel(taxonomy, build_estimates(count_frequencies(triples), taxonomy));
}

void PreferenceModel::require_noun(ConceptIndex c) const {
  if (c >= taxonomy_->size()) throw UnknownConceptError("#" + std::to_string(c));
  if (taxonomy_->pos(c) != PartOfSpeech::noun)
    throw ValidationError("concept '" + taxonomy_->id(c) + "' is not a noun concept");
}

double PreferenceModel::est_class_freq(ConceptIndex c) const {
  if (c >= taxonomy_->size()) throw UnknownConceptError("#" + std::to_string(c));
  return estimates_.class_freq[c];
}

double PreferenceModel::est_class_pair_freq(ConceptIndex cn_i, ConceptIndex cn) const {
  return taxonomy_->subsumes(cn, cn_i) ? est_class_freq(cn_i) : 0.0;
}

double PreferenceModel::est_class_rel_verb_freq(ConceptIndex cn, Relation rel,
                                                std::string_view verb) const {
  if (cn >= taxonomy_->size()) throw UnknownConceptError("#" + std::to_string(cn));
  return lookup_in(find_row(estimates_.class_rel_verb, ClassEstimates::RelVerb{rel, std::string(verb)}),
                   cn);
}

double PreferenceModel::est_class_rel_class_freq(ConceptIndex cn, Relation rel,
                                                 ConceptIndex cv) const {
  require_noun(cn);
  if (cv >= taxonomy_->size()) throw UnknownConceptError("#" + std::to_string(cv));
  if (taxonomy_->pos(cv) != PartOfSpeech::verb)
    throw ValidationError("concept '" + taxonomy_->id(cv) + "' is not a verb concept");
  return lookup_in(find_row(estimates_.class_rel_class, ClassEstimates::RelClass{rel, cv}), cn);
}

double PreferenceModel::est_rel_class_freq(Relation rel, ConceptIndex cv) const {
  return lookup(estimates_.rel_class, ClassEstimates::RelClass{rel, cv});
}

double PreferenceModel::rel_verb_freq(Relation rel, std::string_view verb) const {
  return lookup(estimates_.rel_verb, ClassEstimates::RelVerb{rel, std::string(verb)});
}

double PreferenceModel::noun_rel_verb_freq(ConceptIndex cn, Relation rel,
                                           std::string_view verb) const {
  return lookup_in(find_row(estimates_.noun_rel_verb, ClassEstimates::RelVerb{rel, std::string(verb)}),
                   cn);
}

PreferenceScore PreferenceModel::word2word(ConceptIndex cn_i, Relation rel, std::string_view verb,
                                           std::vector<PreferenceTerm>* terms) const {
  require_noun(cn_i);
  const double total = rel_verb_freq(rel, verb);
  if (total <= 0.0) return {};
  const double value = noun_rel_verb_freq(cn_i, rel, verb) / total;
  if (terms && value > 0.0) terms->push_back({cn_i, std::nullopt, value});
  return {value, std::nullopt};
}

PreferenceScore PreferenceModel::word2class(ConceptIndex cn_i, Relation rel, std::string_view verb,
                                            std::vector<PreferenceTerm>* terms) const {
  require_noun(cn_i);
  const double total = rel_verb_freq(rel, verb);
  if (total <= 0.0) return {};
  const auto* row =
      find_row(estimates_.class_rel_verb, ClassEstimates::RelVerb{rel, std::string(verb)});
  const double own = estimates_.class_freq[cn_i];
  double sum = 0.0;
  if (row && own > 0.0) {
    for (auto cn : taxonomy_->ancestors(cn_i)) {
      const double cls = estimates_.class_freq[cn];
      const double joint = lookup(*row, cn);
      if (cls <= 0.0 || joint <= 0.0) continue;
      const double term = (own / cls) * (joint / total);
      sum += term;
      if (terms) terms->push_back({cn, std::nullopt, term});
    }
  }
  return {sum, std::nullopt};
}

double PreferenceModel::class2class_sense(ConceptIndex cn_i, Relation rel, ConceptIndex cv_j,
                                          std::vector<PreferenceTerm>* terms) const {
  require_noun(cn_i);
  if (cv_j >= taxonomy_->size()) throw UnknownConceptError("#" + std::to_string(cv_j));
  const double own_noun = estimates_.class_freq[cn_i];
  const double own_verb = estimates_.class_freq[cv_j];
  if (own_noun <= 0.0 || own_verb <= 0.0) return 0.0;
  const auto noun_anc = taxonomy_->ancestors(cn_i);
  double sum = 0.0;
  for (auto cv : taxonomy_->ancestors(cv_j)) {
    const double verb_cls = estimates_.class_freq[cv];
    const double norm = est_rel_class_freq(rel, cv);
    if (verb_cls <= 0.0 || norm <= 0.0) continue;
    const auto* row = find_row(estimates_.class_rel_class, ClassEstimates::RelClass{rel, cv});
    if (!row) continue;
    const double verb_factor = own_verb / verb_cls;
    for (auto cn : noun_anc) {
      const double noun_cls = estimates_.class_freq[cn];
      const double joint = lookup(*row, cn);
      if (noun_cls <= 0.0 || joint <= 0.0) continue;
      const double term = (own_noun / noun_cls) * verb_factor * (joint / norm);
      sum += term;
      if (terms) terms->push_back({cn, cv, term});
    }
  }
  return sum;
}

PreferenceScore PreferenceModel::class2class(ConceptIndex cn_i, Relation rel,
                                             std::span<const ConceptIndex> verb_senses,
                                             std::vector<PreferenceTerm>* terms) const {
  require_noun(cn_i);
  // Abstain when no verb class above any sense was ever seen with `rel`.
  bool evidence = false;
  for (auto cv_j : verb_senses) {
    for (auto cv : taxonomy_->ancestors(cv_j))
      if (est_rel_class_freq(rel, cv) > 0.0) evidence = true;
  }
  if (!evidence) return {};

  PreferenceScore best{0.0, std::nullopt};
  std::vector<PreferenceTerm> best_terms;
  std::vector<PreferenceTerm> scratch;
  for (auto cv_j : verb_senses) {
    scratch.clear();
    const double value = class2class_sense(cn_i, rel, cv_j, terms ? &scratch : nullptr);
    if (!best.best_verb_sense || value > *best.value) {
      best = {value, cv_j};
      if (terms) best_terms.swap(scratch);
    }
  }
  if (terms) terms->insert(terms->end(), best_terms.begin(), best_terms.end());
  return best;
}

PreferenceScore PreferenceModel::class2class(ConceptIndex cn_i, Relation rel,
                                             std::string_view verb,
                                             const SenseInventory& inventory,
                                             std::vector<PreferenceTerm>* terms) const {
  auto senses = inventory.senses(verb, PartOfSpeech::verb);
  if (senses.empty()) throw UnknownLemmaError(std::string(verb));
  return class2class(cn_i, rel, senses, terms);
}

}  // namespace selpref
