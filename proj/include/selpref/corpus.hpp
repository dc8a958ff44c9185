#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "selpref/taxonomy.hpp"

namespace selpref {

enum class Relation : std::uint8_t { subject, object };

inline constexpr Relation kRelations[] = {Relation::subject, Relation::object};

// File tokens are "subj" / "obj".
std::string_view to_string(Relation rel);
std::optional<Relation> parse_relation(std::string_view token);

/// Ordered mapping (lemma, pos) -> concepts. Position 0 holds sense 1.
class SenseInventory {
 public:
  SenseInventory() = default;

  // `<lemma>\t<pos>\t<comma-separated concept ids in sense order>`
  static SenseInventory load(std::istream& in, const Taxonomy& taxonomy);

  // Validates and inserts one entry; throws ValidationError on duplicates,
  // unknown concepts or part-of-speech mismatches.
  void add(const Taxonomy& taxonomy, std::string lemma, PartOfSpeech pos,
           std::vector<ConceptIndex> senses);

  // Empty span when the lemma is unknown.
  std::span<const ConceptIndex> senses(std::string_view lemma, PartOfSpeech pos) const;
  bool contains(std::string_view lemma, PartOfSpeech pos) const;
  // 1-based sense number of `concept` for `lemma`, if it is one of its senses.
  std::optional<std::size_t> sense_number(std::string_view lemma, PartOfSpeech pos,
                                          ConceptIndex concept_index) const;

  std::size_t size() const noexcept { return senses_.size(); }
  std::size_t lemma_count(PartOfSpeech pos) const;

 private:
  std::map<std::pair<std::string, PartOfSpeech>, std::vector<ConceptIndex>> senses_;
};

// One observed verb/noun attachment with both words sense-tagged.
struct Triple {
  std::string verb_lemma;
  ConceptIndex verb_concept = 0;
  Relation rel = Relation::object;
  std::string noun_lemma;
  ConceptIndex noun_concept = 0;
  std::string doc_id;

  friend bool operator==(const Triple&, const Triple&) = default;
};

struct TripleLoadOptions {
  // Report bad lines as warnings instead of throwing.
  bool skip_bad_lines = false;
};

/// Reads `<verb_lemma>\t<verb_concept>\t<rel>\t<noun_lemma>\t<noun_concept>\t<doc_id>`
/// lines. Errors carry the line number. With `skip_bad_lines`, rejected lines
/// are described in `warnings` (when non-null) and dropped.
std::vector<Triple> load_triples(std::istream& in, const Taxonomy& taxonomy,
                                 const SenseInventory& inventory,
                                 const TripleLoadOptions& options = {},
                                 std::vector<std::string>* warnings = nullptr);

/// Direct corpus counts. Every table is keyed on concept indices of the
/// taxonomy the triples were validated against.
struct FrequencyTables {
  using NounRelVerb = std::tuple<ConceptIndex, Relation, std::string>;
  using NounRelClass = std::tuple<ConceptIndex, Relation, ConceptIndex>;
  using RelVerb = std::pair<Relation, std::string>;
  using RelClass = std::pair<Relation, ConceptIndex>;

  // fr(cn): noun-concept occurrences, pooled over both relations.
  std::map<ConceptIndex, std::size_t> noun_concept;
  // Verb-concept occurrences, pooled over both relations.
  std::map<ConceptIndex, std::size_t> verb_concept;
  // fr(cn rel v), keyed by verb lemma.
  std::map<NounRelVerb, std::size_t> noun_rel_verb;
  // fr(cn rel cv), keyed by verb concept.
  std::map<NounRelClass, std::size_t> noun_rel_class;
  // fr(rel v)
  std::map<RelVerb, std::size_t> rel_verb;
  // Number of triples with relation rel and verb concept cv.
  std::map<RelClass, std::size_t> rel_class;
  std::size_t triples = 0;

  void add(const Triple& t, std::size_t times = 1);
  FrequencyTables& operator+=(const FrequencyTables& other);

  std::size_t noun_count(ConceptIndex cn) const;
  std::size_t rel_verb_count(Relation rel, std::string_view verb) const;
  std::size_t noun_rel_verb_count(ConceptIndex cn, Relation rel, std::string_view verb) const;

  friend bool operator==(const FrequencyTables&, const FrequencyTables&) = default;
};

FrequencyTables count_frequencies(std::span<const Triple> triples);

}  // namespace selpref
