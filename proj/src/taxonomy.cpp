#include "selpref/taxonomy.hpp"

#include <algorithm>
#include <deque>
#include <istream>

#include "selpref/error.hpp"
#include "text_util.hpp"

namespace selpref {

std::string_view to_string(PartOfSpeech pos) {
  return pos == PartOfSpeech::noun ? "n" : "v";
}

std::optional<PartOfSpeech> parse_pos(std::string_view token) {
  if (token == "n") return PartOfSpeech::noun;
  if (token == "v") return PartOfSpeech::verb;
  return std::nullopt;
}

Taxonomy Taxonomy::load(std::istream& in) {
  std::vector<ConceptEntry> entries;
  detail::for_each_record(in, [&](std::size_t lineno, std::string_view line) {
    auto fields = detail::split(line, '\t');
    if (fields.size() != 3)
      throw ParseError(lineno, "expected 3 tab-separated fields, got " +
                                   std::to_string(fields.size()));
    ConceptEntry e;
    auto id = detail::trim(fields[0]);
    if (id.empty() || detail::has_space(id))
      throw ParseError(lineno, "concept id must be a non-empty token");
    e.id = std::string(id);
    auto pos = parse_pos(detail::trim(fields[1]));
    if (!pos) throw ParseError(lineno, "part of speech must be 'n' or 'v'");
    e.pos = *pos;
    auto parents = detail::trim(fields[2]);
    if (parents.empty()) throw ParseError(lineno, "empty parent field (use '-' for roots)");
    if (parents != "-") {
      for (auto p : detail::split(parents, ',')) {
        p = detail::trim(p);
        if (p.empty() || detail::has_space(p))
          throw ParseError(lineno, "malformed parent list");
        e.parents.emplace_back(p);
      }
    }
    entries.push_back(std::move(e));
  });
  return from_entries(std::move(entries));
}

Taxonomy Taxonomy::from_entries(std::vector<ConceptEntry> entries) {
  Taxonomy t;
  const auto n = entries.size();
  t.ids_.reserve(n);
  t.pos_.reserve(n);
  for (auto& e : entries) {
    auto idx = static_cast<ConceptIndex>(t.ids_.size());
    if (!t.by_id_.emplace(e.id, idx).second)
      throw ValidationError("duplicate concept id '" + e.id + "'");
    t.ids_.push_back(e.id);
    t.pos_.push_back(e.pos);
  }

  t.parents_.assign(n, {});
  t.children_.assign(n, {});
  for (std::size_t c = 0; c < n; ++c) {
    for (const auto& p : entries[c].parents) {
      auto it = t.by_id_.find(p);
      if (it == t.by_id_.end())
        throw ValidationError("concept '" + t.ids_[c] + "' references unknown parent '" + p + "'");
      auto& ps = t.parents_[c];
      if (std::find(ps.begin(), ps.end(), it->second) != ps.end()) continue;
      if (t.pos_[it->second] != t.pos_[c])
        throw ValidationError("concept '" + t.ids_[c] + "' and parent '" + p +
                              "' differ in part of speech");
      ps.push_back(it->second);
      t.children_[it->second].push_back(static_cast<ConceptIndex>(c));
    }
  }

  // Kahn's algorithm, parents first.
  std::vector<std::size_t> pending(n);
  std::deque<ConceptIndex> ready;
  for (std::size_t c = 0; c < n; ++c) {
    pending[c] = t.parents_[c].size();
    if (pending[c] == 0) ready.push_back(static_cast<ConceptIndex>(c));
  }
  t.topo_.reserve(n);
  while (!ready.empty()) {
    auto c = ready.front();
    ready.pop_front();
    t.topo_.push_back(c);
    for (auto child : t.children_[c])
      if (--pending[child] == 0) ready.push_back(child);
  }
  if (t.topo_.size() != n) {
    // Every unprocessed concept still has an unprocessed parent; following
    // such parents must eventually revisit a concept, which lies on a cycle.
    std::vector<char> seen(n, 0);
    std::size_t c = 0;
    while (pending[c] == 0) ++c;
    while (!seen[c]) {
      seen[c] = 1;
      for (auto p : t.parents_[c]) {
        if (pending[p] != 0) {
          c = p;
          break;
        }
      }
    }
    throw CycleError(t.ids_[c]);
  }

  t.ancestors_.assign(n, {});
  for (auto c : t.topo_) {
    auto& anc = t.ancestors_[c];
    anc.push_back(c);
    for (auto p : t.parents_[c]) {
      const auto& up = t.ancestors_[p];
      anc.insert(anc.end(), up.begin(), up.end());
    }
    std::sort(anc.begin(), anc.end());
    anc.erase(std::unique(anc.begin(), anc.end()), anc.end());
  }
  t.descendants_.assign(n, {});
  for (std::size_t c = 0; c < n; ++c)
    for (auto a : t.ancestors_[c]) t.descendants_[a].push_back(static_cast<ConceptIndex>(c));
  return t;
}

std::optional<ConceptIndex> Taxonomy::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

ConceptIndex Taxonomy::index(std::string_view id) const {
  if (auto c = find(id)) return *c;
  throw UnknownConceptError(std::string(id));
}

bool Taxonomy::subsumes(ConceptIndex upper, ConceptIndex lower) const {
  const auto& anc = ancestors_.at(lower);
  if (upper >= ids_.size()) throw std::out_of_range("concept index out of range");
  return std::binary_search(anc.begin(), anc.end(), upper);
}

std::vector<ConceptIndex> Taxonomy::roots() const {
  std::vector<ConceptIndex> out;
  for (std::size_t c = 0; c < parents_.size(); ++c)
    if (parents_[c].empty()) out.push_back(static_cast<ConceptIndex>(c));
  return out;
}

namespace {

std::vector<std::string> to_ids(const Taxonomy& t, std::span<const ConceptIndex> cs) {
  std::vector<std::string> out;
  out.reserve(cs.size());
  for (auto c : cs) out.push_back(t.id(c));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::string> Taxonomy::ancestors(std::string_view id) const {
  return to_ids(*this, ancestors(index(id)));
}

std::vector<std::string> Taxonomy::descendants(std::string_view id) const {
  return to_ids(*this, descendants(index(id)));
}

bool Taxonomy::subsumes(std::string_view upper, std::string_view lower) const {
  return subsumes(index(upper), index(lower));
}

std::size_t Taxonomy::classes_count(std::string_view id) const {
  return classes_count(index(id));
}

}  // namespace selpref
