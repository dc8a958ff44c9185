#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "selpref/prefmodel.hpp"

namespace selpref {

// Hex SHA-256 of raw file bytes; guards a dump against mismatched inputs.
std::string content_digest(std::string_view bytes);

struct DumpHeader {
  std::string taxonomy_digest;
  std::string senses_digest;
  std::string triples_digest;
  std::uint64_t seed = 0;

  friend bool operator==(const DumpHeader&, const DumpHeader&) = default;
};

/// Writes one record per nonzero estimate:
///   `<table-tag>\t<key fields...>\t<value>` with 12 significant digits,
/// after a header line carrying the input digests. Output is a pure function
/// of the estimates and header.
void write_dump(std::ostream& out, const DumpHeader& header, const ClassEstimates& estimates,
                const Taxonomy& taxonomy);

struct LoadedDump {
  DumpHeader header;
  ClassEstimates estimates;
};

// Throws ParseError on malformed records, UnknownConceptError on ids the
// taxonomy does not contain.
LoadedDump read_dump(std::istream& in, const Taxonomy& taxonomy);

}  // namespace selpref
