#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace selpref {

enum class PartOfSpeech : std::uint8_t { noun, verb };

std::string_view to_string(PartOfSpeech pos);
std::optional<PartOfSpeech> parse_pos(std::string_view token);

// Dense index of a concept inside one Taxonomy. Indices follow file order.
using ConceptIndex = std::uint32_t;

// One record of the taxonomy file before validation.
struct ConceptEntry {
  std::string id;
  PartOfSpeech pos = PartOfSpeech::noun;
  std::vector<std::string> parents;
};

/// Immutable concept hierarchy: a rooted, multi-parent DAG whose nodes are
/// partitioned into a noun and a verb hierarchy.
///
/// Subsumption is reflexive. Ancestor and descendant sets are materialized
/// once at construction (sorted by index), so `ancestors`, `descendants`,
/// `subsumes` and `classes_count` are lookups. A concept reachable along
/// several paths appears once in each set.
class Taxonomy {
 public:
  Taxonomy() = default;

  /// Parses the line format `<id>\t<pos>\t<parents|->`. Loading is
  /// two-pass, so parents may be declared after their children.
  static Taxonomy load(std::istream& in);
  static Taxonomy from_entries(std::vector<ConceptEntry> entries);

  std::size_t size() const noexcept { return ids_.size(); }
  const std::string& id(ConceptIndex c) const { return ids_.at(c); }
  PartOfSpeech pos(ConceptIndex c) const { return pos_.at(c); }

  std::optional<ConceptIndex> find(std::string_view id) const;
  // Throws UnknownConceptError.
  ConceptIndex index(std::string_view id) const;

  std::span<const ConceptIndex> parents(ConceptIndex c) const { return parents_.at(c); }
  std::span<const ConceptIndex> children(ConceptIndex c) const { return children_.at(c); }

  // Reflexive-transitive closures.
  std::span<const ConceptIndex> ancestors(ConceptIndex c) const { return ancestors_.at(c); }
  std::span<const ConceptIndex> descendants(ConceptIndex c) const { return descendants_.at(c); }

  bool subsumes(ConceptIndex upper, ConceptIndex lower) const;
  // |ancestors(c)|, counting c itself.
  std::size_t classes_count(ConceptIndex c) const { return ancestors_.at(c).size(); }

  std::vector<ConceptIndex> roots() const;
  // Parents before children.
  std::span<const ConceptIndex> topological_order() const { return topo_; }

  // Id-based conveniences used by tools and tests.
  std::vector<std::string> ancestors(std::string_view id) const;
  std::vector<std::string> descendants(std::string_view id) const;
  bool subsumes(std::string_view upper, std::string_view lower) const;
  std::size_t classes_count(std::string_view id) const;

 private:
  std::vector<std::string> ids_;
  std::vector<PartOfSpeech> pos_;
  std::unordered_map<std::string, ConceptIndex> by_id_;
  std::vector<std::vector<ConceptIndex>> parents_;
  std::vector<std::vector<ConceptIndex>> children_;
  std::vector<std::vector<ConceptIndex>> ancestors_;
  std::vector<std::vector<ConceptIndex>> descendants_;
  std::vector<ConceptIndex> topo_;
};

}  // namespace selpref
