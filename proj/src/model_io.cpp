#include "selpref/model_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include <fmt/format.h>
#include <openssl/sha.h>

#include "selpref/error.hpp"
#include "text_util.hpp"

namespace selpref {

namespace {

constexpr std::string_view kMagic = "#selpref-model";
constexpr int kVersion = 1;

std::string fmt_value(double v) { return fmt::format("{:.12g}", v); }

double parse_value(std::size_t lineno, std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v < 0.0)
    throw ParseError(lineno, "bad value '" + std::string(s) + "'");
  return v;
}

Relation parse_rel(std::size_t lineno, std::string_view s) {
  auto rel = parse_relation(s);
  if (!rel) throw ParseError(lineno, "bad relation '" + std::string(s) + "'");
  return *rel;
}

}  // namespace

std::string content_digest(std::string_view bytes) {
  unsigned char md[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), md);
  std::string hex;
  hex.reserve(2 * SHA256_DIGEST_LENGTH);
  for (unsigned char b : md) hex += fmt::format("{:02x}", b);
  return hex;
}

void write_dump(std::ostream& out, const DumpHeader& header, const ClassEstimates& est,
                const Taxonomy& taxonomy) {
  out << kMagic << "\tversion=" << kVersion << "\tseed=" << header.seed
      << "\ttaxonomy=" << header.taxonomy_digest << "\tsenses=" << header.senses_digest
      << "\ttriples=" << header.triples_digest << '\n';
  const auto id = [&](ConceptIndex c) -> const std::string& { return taxonomy.id(c); };

  for (std::size_t c = 0; c < est.class_freq.size(); ++c)
    if (est.class_freq[c] > 0.0)
      out << "class_freq\t" << id(static_cast<ConceptIndex>(c)) << '\t'
          << fmt_value(est.class_freq[c]) << '\n';
  for (const auto& [key, v] : est.rel_verb)
    out << "rel_verb\t" << to_string(key.first) << '\t' << key.second << '\t' << fmt_value(v)
        << '\n';
  for (const auto& [key, row] : est.noun_rel_verb)
    for (const auto& [cn, v] : row)
      out << "noun_rel_verb\t" << id(cn) << '\t' << to_string(key.first) << '\t' << key.second
          << '\t' << fmt_value(v) << '\n';
  for (const auto& [key, row] : est.class_rel_verb)
    for (const auto& [cn, v] : row)
      out << "class_rel_verb\t" << id(cn) << '\t' << to_string(key.first) << '\t' << key.second
          << '\t' << fmt_value(v) << '\n';
  for (const auto& [key, row] : est.class_rel_class)
    for (const auto& [cn, v] : row)
      out << "class_rel_class\t" << id(cn) << '\t' << to_string(key.first) << '\t'
          << id(key.second) << '\t' << fmt_value(v) << '\n';
  for (const auto& [key, v] : est.rel_class)
    out << "rel_class\t" << to_string(key.first) << '\t' << id(key.second) << '\t'
        << fmt_value(v) << '\n';
}

LoadedDump read_dump(std::istream& in, const Taxonomy& taxonomy) {
  LoadedDump dump;
  dump.estimates.class_freq.assign(taxonomy.size(), 0.0);
  auto& est = dump.estimates;

  std::string first;
  if (!std::getline(in, first)) throw ParseError(1, "empty model dump");
  {
    auto fields = detail::split(detail::trim(first), '\t');
    if (fields.empty() || fields[0] != kMagic) throw ParseError(1, "not a selpref model dump");
    for (std::size_t i = 1; i < fields.size(); ++i) {
      auto eq = fields[i].find('=');
      if (eq == std::string_view::npos) throw ParseError(1, "malformed header field");
      auto key = fields[i].substr(0, eq);
      auto value = std::string(fields[i].substr(eq + 1));
      if (key == "version") {
        if (value != std::to_string(kVersion))
          throw ParseError(1, "unsupported dump version " + value);
      } else if (key == "seed") {
        dump.header.seed = std::stoull(value);
      } else if (key == "taxonomy") {
        dump.header.taxonomy_digest = value;
      } else if (key == "senses") {
        dump.header.senses_digest = value;
      } else if (key == "triples") {
        dump.header.triples_digest = value;
      }
    }
  }

  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    auto view = detail::trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto f = detail::split(view, '\t');
    auto expect = [&](std::size_t n) {
      if (f.size() != n)
        throw ParseError(lineno, "record '" + std::string(f[0]) + "' needs " +
                                     std::to_string(n) + " fields");
    };
    const auto tag = f[0];
    try {
      if (tag == "class_freq") {
        expect(3);
        est.class_freq[taxonomy.index(f[1])] = parse_value(lineno, f[2]);
      } else if (tag == "rel_verb") {
        expect(4);
        est.rel_verb[{parse_rel(lineno, f[1]), std::string(f[2])}] = parse_value(lineno, f[3]);
      } else if (tag == "noun_rel_verb" || tag == "class_rel_verb") {
        expect(5);
        auto& table = tag == "noun_rel_verb" ? est.noun_rel_verb : est.class_rel_verb;
        table[{parse_rel(lineno, f[2]), std::string(f[3])}][taxonomy.index(f[1])] =
            parse_value(lineno, f[4]);
      } else if (tag == "class_rel_class") {
        expect(5);
        est.class_rel_class[{parse_rel(lineno, f[2]), taxonomy.index(f[3])}]
                           [taxonomy.index(f[1])] = parse_value(lineno, f[4]);
      } else if (tag == "rel_class") {
        expect(4);
        est.rel_class[{parse_rel(lineno, f[1]), taxonomy.index(f[2])}] =
            parse_value(lineno, f[3]);
      } else {
        throw ParseError(lineno, "unknown table tag '" + std::string(tag) + "'");
      }
    } catch (const UnknownConceptError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return dump;
}

}  // namespace selpref
