#include "selpref/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include <fmt/format.h>

#include "selpref/error.hpp"

namespace selpref {

double Metrics::precision() const noexcept {
  return answered == 0 ? 0.0 : correct / static_cast<double>(answered);
}

double Metrics::coverage() const noexcept {
  return total == 0 ? 0.0 : static_cast<double>(answered) / static_cast<double>(total);
}

double Metrics::recall() const noexcept {
  return total == 0 ? 0.0 : correct / static_cast<double>(total);
}

Metrics& Metrics::operator+=(const Metrics& other) {
  answered += other.answered;
  correct += other.correct;
  total += other.total;
  return *this;
}

Metrics compute_metrics(std::span<const ScoredDecision> decisions) {
  Metrics m;
  for (const auto& d : decisions) {
    ++m.total;
    if (!d.answer) continue;
    ++m.answered;
    if (*d.answer == d.gold) m.correct += 1.0;
  }
  return m;
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::random: return "random";
    case Method::mfs: return "mfs";
    case Method::word2word: return "w2w";
    case Method::word2class: return "w2c";
    case Method::class2class: return "c2c";
  }
  return "?";
}

Method method_for(ModelKind kind) {
  switch (kind) {
    case ModelKind::word2word: return Method::word2word;
    case ModelKind::word2class: return Method::word2class;
    case ModelKind::class2class: return Method::class2class;
  }
  return Method::mfs;
}

std::optional<RelationFilter> parse_relation_filter(std::string_view token) {
  if (token == "subj") return RelationFilter::subject;
  if (token == "obj") return RelationFilter::object;
  if (token == "both") return RelationFilter::both;
  return std::nullopt;
}

std::string_view to_string(RelationFilter f) {
  switch (f) {
    case RelationFilter::subject: return "subj";
    case RelationFilter::object: return "obj";
    case RelationFilter::both: return "both";
  }
  return "?";
}

bool accepts(RelationFilter f, Relation rel) {
  return f == RelationFilter::both || (f == RelationFilter::subject) == (rel == Relation::subject);
}

namespace {

// Unbiased draw in [0, bound); independent of the standard library's
// distribution implementations so fold assignment is portable.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  const auto limit = kMax - kMax % bound;
  for (;;) {
    const auto x = rng();
    if (x < limit) return x % bound;
  }
}

template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[draw_below(rng, i)]);
}

// Trains on everything outside `held_out` and decides each held-out triple.
void evaluate_group(const Taxonomy& taxonomy, const SenseInventory& inventory,
                    std::span<const Triple> triples, const std::vector<std::size_t>& held_out,
                    std::size_t group, std::vector<InstanceOutcome>& out) {
  std::vector<char> excluded(triples.size(), 0);
  for (auto i : held_out) excluded[i] = 1;
  std::vector<Triple> training;
  training.reserve(triples.size() - held_out.size());
  for (std::size_t i = 0; i < triples.size(); ++i)
    if (!excluded[i]) training.push_back(triples[i]);

  const auto model = PreferenceModel::train(taxonomy, training);
  const Disambiguator wsd(inventory, model);

  for (auto i : held_out) {
    const auto& t = triples[i];
    InstanceOutcome o;
    o.triple_index = i;
    o.group = group;
    o.noun_lemma = t.noun_lemma;
    o.rel = t.rel;
    o.verb_lemma = t.verb_lemma;
    o.doc_id = t.doc_id;
    o.gold = *inventory.sense_number(t.noun_lemma, PartOfSpeech::noun, t.noun_concept);
    o.sense_count = inventory.senses(t.noun_lemma, PartOfSpeech::noun).size();
    WsdInstance inst{t.noun_lemma, t.rel, t.verb_lemma, o.gold, t.doc_id};
    o.answers[static_cast<std::size_t>(Method::mfs)] = baseline_mfs(inst, inventory).answer;
    for (auto kind : kModelKinds)
      o.answers[static_cast<std::size_t>(method_for(kind))] = wsd.disambiguate(inst, kind).answer;
    out.push_back(std::move(o));
  }
}

void sample_random_answers(std::vector<InstanceOutcome>& outcomes, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (auto& o : outcomes)
    o.answers[static_cast<std::size_t>(Method::random)] = draw_below(rng, o.sense_count) + 1;
}

template <class Pred>
Metrics metrics_for(const EvalReport& report, Method method, Relation rel, Pred&& in_scope) {
  Metrics m;
  for (const auto& o : report.outcomes) {
    if (o.rel != rel || !in_scope(o)) continue;
    ++m.total;
    if (method == Method::random && !report.options.sampled_random) {
      ++m.answered;
      m.correct += 1.0 / static_cast<double>(o.sense_count);
      continue;
    }
    const auto& a = o.answer(method);
    if (!a) continue;
    ++m.answered;
    if (*a == o.gold) m.correct += 1.0;
  }
  return m;
}

void build_rows(EvalReport& report, std::span<const std::string> docs) {
  std::sort(report.outcomes.begin(), report.outcomes.end(),
            [](const InstanceOutcome& a, const InstanceOutcome& b) {
              return a.triple_index < b.triple_index;
            });
  if (report.options.sampled_random) sample_random_answers(report.outcomes, report.options.seed);

  for (auto method : kMethods) {
    for (auto rel : kRelations) {
      if (!accepts(report.options.relations, rel)) continue;
      report.rows.push_back({method, rel, "overall",
                             metrics_for(report, method, rel, [](const auto&) { return true; })});
      std::set<std::string> nouns;
      for (const auto& o : report.outcomes)
        if (o.rel == rel) nouns.insert(o.noun_lemma);
      for (const auto& noun : nouns)
        report.rows.push_back({method, rel, "noun:" + noun,
                               metrics_for(report, method, rel,
                                           [&](const auto& o) { return o.noun_lemma == noun; })});
      for (const auto& doc : docs)
        report.rows.push_back({method, rel, "doc:" + doc,
                               metrics_for(report, method, rel,
                                           [&](const auto& o) { return o.doc_id == doc; })});
    }
  }
}

std::string format_correct(double correct) {
  if (correct == std::floor(correct)) return fmt::format("{:.0f}", correct);
  return fmt::format("{:.3f}", correct);
}

}  // namespace

const Metrics* EvalReport::find(Method m, Relation rel, std::string_view scope) const {
  for (const auto& r : rows)
    if (r.method == m && r.rel == rel && r.scope == scope) return &r.metrics;
  return nullptr;
}

std::string EvalReport::to_tsv() const {
  std::string out;
  out += fmt::format("# selpref eval\tmode={}\tk={}\tseed={}\trel={}\trandom={}\tfolds=per-target\n",
                     mode, options.k, options.seed, to_string(options.relations),
                     options.sampled_random ? "sampled" : "analytic");
  out += "model\trelation\tscope\tprecision\tcoverage\trecall\tanswered\tcorrect\ttotal\n";
  for (const auto& r : rows) {
    const auto& m = r.metrics;
    out += fmt::format("{}\t{}\t{}\t{}\t{:.3f}\t{:.3f}\t{}\t{}\t{}\n", to_string(r.method),
                       to_string(r.rel), r.scope,
                       m.precision_defined() ? fmt::format("{:.3f}", m.precision()) : "-",
                       m.coverage(), m.recall(), m.answered, format_correct(m.correct), m.total);
  }
  return out;
}

std::vector<std::vector<std::size_t>> assign_folds(std::span<const Triple> triples,
                                                   const std::set<std::string>& targets,
                                                   std::size_t k, std::uint64_t seed,
                                                   RelationFilter relations) {
  if (k < 2) throw Error("fold count must be at least 2");
  std::map<std::string, std::vector<std::size_t>> by_target;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto& t = triples[i];
    if (targets.count(t.noun_lemma) && accepts(relations, t.rel))
      by_target[t.noun_lemma].push_back(i);
  }
  std::vector<std::vector<std::size_t>> folds(k);
  std::mt19937_64 rng(seed);
  for (auto& [target, indices] : by_target) {
    shuffle(indices, rng);
    const auto n = indices.size();
    for (std::size_t f = 0; f < k; ++f)
      for (auto j = f * n / k; j < (f + 1) * n / k; ++j) folds[f].push_back(indices[j]);
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

EvalReport crossvalidate(const Taxonomy& taxonomy, const SenseInventory& inventory,
                         std::span<const Triple> triples, const std::set<std::string>& targets,
                         const EvalOptions& options) {
  if (targets.empty()) throw Error("no target lemmas given");
  for (const auto& target : targets)
    if (!inventory.contains(target, PartOfSpeech::noun)) throw UnknownLemmaError(target);
  const auto folds = assign_folds(triples, targets, options.k, options.seed, options.relations);
  if (std::all_of(folds.begin(), folds.end(), [](const auto& f) { return f.empty(); }))
    throw Error("no instances of the target lemmas");

  EvalReport report;
  report.mode = "xval";
  report.options = options;
  for (std::size_t f = 0; f < folds.size(); ++f)
    if (!folds[f].empty()) evaluate_group(taxonomy, inventory, triples, folds[f], f, report.outcomes);
  build_rows(report, {});
  return report;
}

EvalReport holdout_documents(const Taxonomy& taxonomy, const SenseInventory& inventory,
                             std::span<const Triple> triples,
                             std::span<const std::string> eval_docs, const EvalOptions& options) {
  EvalReport report;
  report.mode = "docs";
  report.options = options;
  for (std::size_t d = 0; d < eval_docs.size(); ++d) {
    std::vector<std::size_t> held_out;
    bool seen = false;
    for (std::size_t i = 0; i < triples.size(); ++i) {
      if (triples[i].doc_id != eval_docs[d]) continue;
      seen = true;
      if (accepts(options.relations, triples[i].rel)) held_out.push_back(i);
    }
    if (!seen) throw Error("unknown document id '" + eval_docs[d] + "'");
    evaluate_group(taxonomy, inventory, triples, held_out, d, report.outcomes);
  }
  build_rows(report, eval_docs);
  return report;
}

}  // namespace selpref
