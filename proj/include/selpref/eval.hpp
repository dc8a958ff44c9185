#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "selpref/corpus.hpp"
#include "selpref/prefmodel.hpp"
#include "selpref/wsd.hpp"

namespace selpref {

/// Precision/coverage/recall counts. `correct` is integral except for the
/// analytic random baseline, where it is an expected count.
struct Metrics {
  std::size_t answered = 0;
  double correct = 0.0;
  std::size_t total = 0;

  bool precision_defined() const noexcept { return answered > 0; }
  // 0 when nothing was answered; check precision_defined().
  double precision() const noexcept;
  double coverage() const noexcept;
  double recall() const noexcept;

  Metrics& operator+=(const Metrics& other);
};

struct ScoredDecision {
  std::optional<std::size_t> answer;
  std::size_t gold = 0;
};

Metrics compute_metrics(std::span<const ScoredDecision> decisions);

// Every row of a report belongs to one of these.
enum class Method : std::uint8_t { random, mfs, word2word, word2class, class2class };
inline constexpr Method kMethods[] = {Method::random, Method::mfs, Method::word2word,
                                      Method::word2class, Method::class2class};
std::string_view to_string(Method m);
Method method_for(ModelKind kind);

enum class RelationFilter : std::uint8_t { subject, object, both };
std::optional<RelationFilter> parse_relation_filter(std::string_view token);
std::string_view to_string(RelationFilter f);
bool accepts(RelationFilter f, Relation rel);

struct EvalOptions {
  std::size_t k = 10;
  std::uint64_t seed = 0;
  RelationFilter relations = RelationFilter::both;
  // Draw the random baseline's answers instead of reporting the expectation.
  bool sampled_random = false;
};

// Decisions of every method for one evaluated triple.
struct InstanceOutcome {
  std::size_t triple_index = 0;
  std::size_t group = 0;  // fold number, or position of the held-out document
  std::string noun_lemma;
  Relation rel = Relation::object;
  std::string verb_lemma;
  std::string doc_id;
  std::size_t gold = 0;
  std::size_t sense_count = 0;
  // Indexed by Method; the random entry is only filled in sampled mode.
  std::array<std::optional<std::size_t>, 5> answers{};

  const std::optional<std::size_t>& answer(Method m) const {
    return answers[static_cast<std::size_t>(m)];
  }
};

struct ReportRow {
  Method method = Method::mfs;
  Relation rel = Relation::object;
  std::string scope;  // "overall", "noun:<lemma>" or "doc:<id>"
  Metrics metrics;
};

struct EvalReport {
  std::string mode;  // "xval" or "docs"
  EvalOptions options;
  std::vector<InstanceOutcome> outcomes;
  std::vector<ReportRow> rows;

  const Metrics* find(Method m, Relation rel, std::string_view scope) const;
  std::string to_tsv() const;
};

/// Per-target stratified fold assignment: each target's matching triples are
/// shuffled with `seed` and cut into k contiguous near-equal chunks. Returns
/// triple indices per fold.
std::vector<std::vector<std::size_t>> assign_folds(std::span<const Triple> triples,
                                                   const std::set<std::string>& targets,
                                                   std::size_t k, std::uint64_t seed,
                                                   RelationFilter relations = RelationFilter::both);

/// Lexical-sample k-fold cross-validation over the triples whose noun lemma is
/// a target. Each fold trains on every other triple.
EvalReport crossvalidate(const Taxonomy& taxonomy, const SenseInventory& inventory,
                         std::span<const Triple> triples, const std::set<std::string>& targets,
                         const EvalOptions& options = {});

/// Whole-document holdout: each listed document is withdrawn from training in
/// turn and all of its noun attachments are disambiguated.
EvalReport holdout_documents(const Taxonomy& taxonomy, const SenseInventory& inventory,
                             std::span<const Triple> triples,
                             std::span<const std::string> eval_docs,
                             const EvalOptions& options = {});

}  // namespace selpref
