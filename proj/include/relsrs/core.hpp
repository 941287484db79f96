#pragma once

// Words, rules and relative string rewriting systems.
//
// A relative system R/S is stored as one rule list; the mode of each rule
// says whether it belongs to R (strict, counted) or S (relative, not
// counted).  Letters are small integers; their display names live in the
// Alphabet.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace relsrs {

  using Letter = std::uint16_t;
  using Word   = std::vector<Letter>;

  class Alphabet {
   public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    /// The alphabet a, b, c, ... of the given size.
    static Alphabet standard(std::size_t size);

    std::size_t size() const noexcept {
      return names_.size();
    }
    std::string const& name(Letter l) const {
      return names_.at(l);
    }
    std::vector<std::string> const& names() const noexcept {
      return names_;
    }

    bool contains(std::string_view name) const;
    Letter index(std::string_view name) const;  // throws std::out_of_range

    /// Appends a letter unless present; returns its index either way.
    Letter intern(std::string const& name);

    bool operator==(Alphabet const& other) const {
      return names_ == other.names_;
    }

   private:
    std::vector<std::string>                names_;
    std::unordered_map<std::string, Letter> index_;
  };

  enum class Mode : std::uint8_t { strict, relative };

  struct Rule {
    Word lhs;
    Word rhs;
    Mode mode = Mode::strict;

    bool is_strict() const noexcept {
      return mode == Mode::strict;
    }
    std::size_t size() const noexcept {
      return lhs.size() + rhs.size();
    }
    auto operator<=>(Rule const&) const = default;
  };

  struct RelSrs {
    Alphabet          alphabet;
    std::vector<Rule> rules;

    std::vector<Rule> strict_rules() const;
    std::vector<Rule> relative_rules() const;
    bool              has_strict() const;
    bool              has_relative() const;

    bool operator==(RelSrs const&) const = default;
  };

  struct Step {
    std::size_t position = 0;
    std::size_t rule     = 0;
    auto        operator<=>(Step const&) const = default;
  };

  struct Derivation {
    Word              start;
    std::vector<Step> steps;
  };

  class NotApplicable : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class InvalidDerivation : public std::runtime_error {
   public:
    InvalidDerivation(std::size_t step, std::string const& what);
    std::size_t step() const noexcept {
      return step_;
    }

   private:
    std::size_t step_;
  };

  bool occurs_at(Word const& word, Word const& pattern, std::size_t position);
  bool is_factor(Word const& pattern, Word const& word);
  /// Position of the leftmost occurrence, or word.size() + 1 if none.
  std::size_t find_factor(Word const& pattern, Word const& word, std::size_t from = 0);

  Word concat(Word const& x, Word const& y);
  Word reversed(Word w);

  Word apply_rule_at(Word const& word, Rule const& rule, std::size_t position);

  /// All one-step rewrites, ordered by rule index then position.
  std::vector<std::pair<Step, Word>> successors(Word const& word, RelSrs const& system);

  /// Applies every step in order; throws InvalidDerivation on the first
  /// step that does not apply.
  Word replay(Derivation const& derivation, RelSrs const& system);

  std::size_t strict_step_count(Derivation const& derivation, RelSrs const& system);

  RelSrs      strictify(RelSrs const& system);
  RelSrs      reverse_system(RelSrs const& system);
  /// The relative rules of `system`, made strict, in their original order.
  RelSrs      relative_part_as_strict(RelSrs const& system);
  std::size_t system_size(RelSrs const& system);

  // Display helpers: letters joined by single spaces when any name is longer
  // than one character, juxtaposed otherwise; the empty word prints as "ε".
  std::string to_string(Word const& word, Alphabet const& alphabet);
  std::string to_string(Rule const& rule, Alphabet const& alphabet);
  std::string to_string(RelSrs const& system);

  struct WordHash {
    std::size_t operator()(Word const& w) const noexcept;
  };

}  // namespace relsrs
