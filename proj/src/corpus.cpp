#include "selpref/corpus.hpp"

#include <algorithm>
#include <istream>

#include "selpref/error.hpp"
#include "text_util.hpp"

namespace selpref {

std::string_view to_string(Relation rel) {
  return rel == Relation::subject ? "subj" : "obj";
}

std::optional<Relation> parse_relation(std::string_view token) {
  if (token == "subj") return Relation::subject;
  if (token == "obj") return Relation::object;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// SenseInventory

SenseInventory SenseInventory::load(std::istream& in, const Taxonomy& taxonomy) {
  SenseInventory inv;
  detail::for_each_record(in, [&](std::size_t lineno, std::string_view line) {
    auto fields = detail::split(line, '\t');
    if (fields.size() != 3)
      throw ParseError(lineno, "expected 3 tab-separated fields, got " +
                                   std::to_string(fields.size()));
    auto lemma = detail::trim(fields[0]);
    if (lemma.empty() || detail::has_space(lemma))
      throw ParseError(lineno, "lemma must be a non-empty token");
    auto pos = parse_pos(detail::trim(fields[1]));
    if (!pos) throw ParseError(lineno, "part of speech must be 'n' or 'v'");
    std::vector<ConceptIndex> senses;
    for (auto id : detail::split(detail::trim(fields[2]), ',')) {
      id = detail::trim(id);
      if (id.empty()) throw ParseError(lineno, "malformed concept list");
      auto c = taxonomy.find(id);
      if (!c) throw ParseError(lineno, "unknown concept '" + std::string(id) + "'");
      senses.push_back(*c);
    }
    try {
      inv.add(taxonomy, std::string(lemma), *pos, std::move(senses));
    } catch (const ValidationError& e) {
      throw ParseError(lineno, e.what());
    }
  });
  return inv;
}

void SenseInventory::add(const Taxonomy& taxonomy, std::string lemma, PartOfSpeech pos,
                         std::vector<ConceptIndex> senses) {
  if (senses.empty()) throw ValidationError("lemma '" + lemma + "' has no senses");
  for (std::size_t i = 0; i < senses.size(); ++i) {
    auto c = senses[i];
    if (c >= taxonomy.size()) throw ValidationError("sense index out of range");
    if (taxonomy.pos(c) != pos)
      throw ValidationError("concept '" + taxonomy.id(c) + "' is not a " +
                            std::string(pos == PartOfSpeech::noun ? "noun" : "verb") +
                            " concept (lemma '" + lemma + "')");
    if (std::find(senses.begin(), senses.begin() + static_cast<std::ptrdiff_t>(i), c) !=
        senses.begin() + static_cast<std::ptrdiff_t>(i))
      throw ValidationError("duplicate sense '" + taxonomy.id(c) + "' for lemma '" + lemma + "'");
  }
  auto key = std::make_pair(lemma, pos);
  if (senses_.count(key))
    throw ValidationError("duplicate entry for lemma '" + lemma + "' (" +
                          std::string(to_string(pos)) + ")");
  senses_.emplace(std::move(key), std::move(senses));
}

std::span<const ConceptIndex> SenseInventory::senses(std::string_view lemma,
                                                     PartOfSpeech pos) const {
  auto it = senses_.find(std::make_pair(std::string(lemma), pos));
  if (it == senses_.end()) return {};
  return it->second;
}

bool SenseInventory::contains(std::string_view lemma, PartOfSpeech pos) const {
  return !senses(lemma, pos).empty();
}

std::optional<std::size_t> SenseInventory::sense_number(std::string_view lemma, PartOfSpeech pos,
                                                        ConceptIndex concept_index) const {
  auto s = senses(lemma, pos);
  auto it = std::find(s.begin(), s.end(), concept_index);
  if (it == s.end()) return std::nullopt;
  return static_cast<std::size_t>(it - s.begin()) + 1;
}

std::size_t SenseInventory::lemma_count(PartOfSpeech pos) const {
  return static_cast<std::size_t>(std::count_if(
      senses_.begin(), senses_.end(), [pos](const auto& kv) { return kv.first.second == pos; }));
}

// ---------------------------------------------------------------------------
// Triples

namespace {

Triple parse_triple(std::string_view line, const Taxonomy& taxonomy,
                    const SenseInventory& inventory) {
  auto fields = detail::split(line, '\t');
  if (fields.size() != 6)
    throw Error("expected 6 tab-separated fields, got " + std::to_string(fields.size()));
  for (auto& f : fields) {
    f = detail::trim(f);
    if (f.empty() || detail::has_space(f)) throw Error("empty or malformed field");
  }
  Triple t;
  t.verb_lemma = std::string(fields[0]);
  auto rel = parse_relation(fields[2]);
  if (!rel) throw Error("unknown relation '" + std::string(fields[2]) + "' (expected subj|obj)");
  t.rel = *rel;
  t.noun_lemma = std::string(fields[3]);
  t.doc_id = std::string(fields[5]);

  auto resolve = [&](std::string_view lemma, std::string_view id, PartOfSpeech pos) {
    if (!inventory.contains(lemma, pos))
      throw Error("unknown " + std::string(pos == PartOfSpeech::noun ? "noun" : "verb") +
                  " lemma '" + std::string(lemma) + "'");
    auto c = taxonomy.find(id);
    if (!c) throw Error("unknown concept '" + std::string(id) + "'");
    if (!inventory.sense_number(lemma, pos, *c))
      throw Error("concept '" + std::string(id) + "' is not a sense of '" + std::string(lemma) +
                  "'");
    return *c;
  };
  t.verb_concept = resolve(fields[0], fields[1], PartOfSpeech::verb);
  t.noun_concept = resolve(fields[3], fields[4], PartOfSpeech::noun);
  return t;
}

}  // namespace

std::vector<Triple> load_triples(std::istream& in, const Taxonomy& taxonomy,
                                 const SenseInventory& inventory,
                                 const TripleLoadOptions& options,
                                 std::vector<std::string>* warnings) {
  std::vector<Triple> out;
  detail::for_each_record(in, [&](std::size_t lineno, std::string_view line) {
    try {
      out.push_back(parse_triple(line, taxonomy, inventory));
    } catch (const Error& e) {
      if (!options.skip_bad_lines) throw ParseError(lineno, e.what());
      if (warnings) warnings->push_back("line " + std::to_string(lineno) + ": " + e.what());
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// FrequencyTables

void FrequencyTables::add(const Triple& t, std::size_t times) {
  noun_concept[t.noun_concept] += times;
  verb_concept[t.verb_concept] += times;
  noun_rel_verb[{t.noun_concept, t.rel, t.verb_lemma}] += times;
  noun_rel_class[{t.noun_concept, t.rel, t.verb_concept}] += times;
  rel_verb[{t.rel, t.verb_lemma}] += times;
  rel_class[{t.rel, t.verb_concept}] += times;
  triples += times;
}

namespace {

template <class Map>
void merge_counts(Map& into, const Map& from) {
  for (const auto& [k, v] : from) into[k] += v;
}

template <class Map, class Key>
std::size_t lookup(const Map& m, const Key& k) {
  auto it = m.find(k);
  return it == m.end() ? 0 : it->second;
}

}  // namespace

FrequencyTables& FrequencyTables::operator+=(const FrequencyTables& other) {
  merge_counts(noun_concept, other.noun_concept);
  merge_counts(verb_concept, other.verb_concept);
  merge_counts(noun_rel_verb, other.noun_rel_verb);
  merge_counts(noun_rel_class, other.noun_rel_class);
  merge_counts(rel_verb, other.rel_verb);
  merge_counts(rel_class, other.rel_class);
  triples += other.triples;
  return *this;
}

std::size_t FrequencyTables::noun_count(ConceptIndex cn) const {
  return lookup(noun_concept, cn);
}

std::size_t FrequencyTables::rel_verb_count(Relation rel, std::string_view verb) const {
  return lookup(rel_verb, RelVerb{rel, std::string(verb)});
}

std::size_t FrequencyTables::noun_rel_verb_count(ConceptIndex cn, Relation rel,
                                                 std::string_view verb) const {
  return lookup(noun_rel_verb, NounRelVerb{cn, rel, std::string(verb)});
}

FrequencyTables count_frequencies(std::span<const Triple> triples) {
  FrequencyTables tables;
  for (const auto& t : triples) tables.add(t);
  return tables;
}

}  // namespace selpref
