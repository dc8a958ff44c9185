#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace selpref {

// Base for every error raised while loading or querying models.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A line that does not match its file format. `line` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a semantic invariant (cycles, dangling
// references, part-of-speech mismatches, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class CycleError : public ValidationError {
 public:
  explicit CycleError(std::string concept_id)
      : ValidationError("cycle detected through concept '" + concept_id + "'"),
        concept_(std::move(concept_id)) {}
  const std::string& concept_id() const noexcept { return concept_; }

 private:
  std::string concept_;
};

class UnknownConceptError : public Error {
 public:
  explicit UnknownConceptError(const std::string& id)
      : Error("unknown concept '" + id + "'") {}
};

class UnknownLemmaError : public Error {
 public:
  explicit UnknownLemmaError(const std::string& lemma)
      : Error("unknown lemma '" + lemma + "'") {}
};

}  // namespace selpref
