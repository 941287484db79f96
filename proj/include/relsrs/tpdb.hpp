#pragma once

// Reading and writing the TPDB plain string-rewriting format.
//
//   (RULES
//     a b -> a,
//     c ->= b c
//   )
//
// Strict rules use `->`, relative rules `->=`.  A side is a whitespace
// separated list of identifiers and may be empty.  Sections other than
// RULES are kept verbatim.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "relsrs/core.hpp"

namespace relsrs {

  struct SrsRule {
    std::vector<std::string> lhs;
    std::vector<std::string> rhs;
    Mode                     mode = Mode::strict;
    bool                     operator==(SrsRule const&) const = default;
  };

  struct SrsDocument {
    std::vector<SrsRule>     rules;
    std::vector<std::string> other_sections;  // verbatim, including parentheses
    bool                     operator==(SrsDocument const&) const = default;
  };

  class ParseError : public std::runtime_error {
   public:
    ParseError(std::size_t line, std::size_t column, std::string const& message);
    std::size_t line() const noexcept {
      return line_;
    }
    std::size_t column() const noexcept {
      return column_;
    }

   private:
    std::size_t line_;
    std::size_t column_;
  };

  SrsDocument parse_srs(std::string_view text);
  std::string print_srs(SrsDocument const& doc);

  /// Letters are numbered in order of first occurrence.
  RelSrs      to_system(SrsDocument const& doc);
  SrsDocument to_document(RelSrs const& system);

  RelSrs read_srs_file(std::string const& path);

  // Shorthand for single-character alphabets, e.g. "ab -> a, c ->= bc" or
  // "ε ->= ab".  New letters are appended to `alphabet` in order of first
  // occurrence.
  RelSrs parse_compact(std::string_view text, Alphabet alphabet = {});

}  // namespace relsrs
