#include "relsrs/core.hpp"

#include <algorithm>
#include <sstream>

namespace relsrs {

  Alphabet::Alphabet(std::vector<std::string> names) {
    for (auto const& n : names) {
      if (n.empty()) {
        throw std::invalid_argument("empty letter name");
      }
      if (contains(n)) {
        throw std::invalid_argument("duplicate letter name " + n);
      }
      intern(n);
    }
  }

  Alphabet Alphabet::standard(std::size_t size) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < size; ++i) {
      if (i < 26) {
        names.emplace_back(1, static_cast<char>('a' + i));
      } else {
        names.push_back("x" + std::to_string(i));
      }
    }
    return Alphabet(std::move(names));
  }

  bool Alphabet::contains(std::string_view name) const {
    return index_.find(std::string(name)) != index_.end();
  }

  Letter Alphabet::index(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) {
      throw std::out_of_range("unknown letter " + std::string(name));
    }
    return it->second;
  }

  Letter Alphabet::intern(std::string const& name) {
    auto it = index_.find(name);
    if (it != index_.end()) {
      return it->second;
    }
    if (names_.size() >= 0xFFFF) {
      throw std::length_error("alphabet too large");
    }
    auto l = static_cast<Letter>(names_.size());
    names_.push_back(name);
    index_.emplace(name, l);
    return l;
  }

  std::vector<Rule> RelSrs::strict_rules() const {
    std::vector<Rule> out;
    std::copy_if(rules.begin(), rules.end(), std::back_inserter(out), [](Rule const& r) {
      return r.is_strict();
    });
    return out;
  }

  std::vector<Rule> RelSrs::relative_rules() const {
    std::vector<Rule> out;
    std::copy_if(rules.begin(), rules.end(), std::back_inserter(out), [](Rule const& r) {
      return !r.is_strict();
    });
    return out;
  }

  bool RelSrs::has_strict() const {
    return std::any_of(rules.begin(), rules.end(), [](Rule const& r) { return r.is_strict(); });
  }

  bool RelSrs::has_relative() const {
    return std::any_of(rules.begin(), rules.end(), [](Rule const& r) { return !r.is_strict(); });
  }

  InvalidDerivation::InvalidDerivation(std::size_t step, std::string const& what)
      : std::runtime_error("invalid derivation at step " + std::to_string(step) + ": " + what),
        step_(step) {}

  bool occurs_at(Word const& word, Word const& pattern, std::size_t position) {
    if (position > word.size() || word.size() - position < pattern.size()) {
      return false;
    }
    return std::equal(pattern.begin(), pattern.end(), word.begin() + position);
  }

  std::size_t find_factor(Word const& pattern, Word const& word, std::size_t from) {
    if (pattern.size() > word.size()) {
      return word.size() + 1;
    }
    for (std::size_t i = from; i + pattern.size() <= word.size(); ++i) {
      if (occurs_at(word, pattern, i)) {
        return i;
      }
    }
    return word.size() + 1;
  }

  bool is_factor(Word const& pattern, Word const& word) {
    return find_factor(pattern, word) <= word.size();
  }

  Word concat(Word const& x, Word const& y) {
    Word out;
    out.reserve(x.size() + y.size());
    out.insert(out.end(), x.begin(), x.end());
    out.insert(out.end(), y.begin(), y.end());
    return out;
  }

  Word reversed(Word w) {
    std::reverse(w.begin(), w.end());
    return w;
  }

  Word apply_rule_at(Word const& word, Rule const& rule, std::size_t position) {
    if (!occurs_at(word, rule.lhs, position)) {
      throw NotApplicable("not applicable: lhs does not occur at position "
                          + std::to_string(position));
    }
    Word out;
    out.reserve(word.size() - rule.lhs.size() + rule.rhs.size());
    out.insert(out.end(), word.begin(), word.begin() + position);
    out.insert(out.end(), rule.rhs.begin(), rule.rhs.end());
    out.insert(out.end(), word.begin() + position + rule.lhs.size(), word.end());
    return out;
  }

  std::vector<std::pair<Step, Word>> successors(Word const& word, RelSrs const& system) {
    std::vector<std::pair<Step, Word>> out;
    for (std::size_t r = 0; r < system.rules.size(); ++r) {
      auto const& rule = system.rules[r];
      if (rule.lhs.size() > word.size()) {
        continue;
      }
      for (std::size_t p = 0; p + rule.lhs.size() <= word.size(); ++p) {
        if (occurs_at(word, rule.lhs, p)) {
          out.emplace_back(Step{p, r}, apply_rule_at(word, rule, p));
        }
      }
    }
    return out;
  }

  Word replay(Derivation const& derivation, RelSrs const& system) {
    Word current = derivation.start;
    for (std::size_t i = 0; i < derivation.steps.size(); ++i) {
      auto const& step = derivation.steps[i];
      if (step.rule >= system.rules.size()) {
        throw InvalidDerivation(i, "rule index " + std::to_string(step.rule) + " out of range");
      }
      auto const& rule = system.rules[step.rule];
      if (!occurs_at(current, rule.lhs, step.position)) {
        throw InvalidDerivation(i, "rule " + std::to_string(step.rule) + " does not apply at "
                                       + std::to_string(step.position));
      }
      current = apply_rule_at(current, rule, step.position);
    }
    return current;
  }

  std::size_t strict_step_count(Derivation const& derivation, RelSrs const& system) {
    return static_cast<std::size_t>(
        std::count_if(derivation.steps.begin(), derivation.steps.end(), [&](Step const& s) {
          return s.rule < system.rules.size() && system.rules[s.rule].is_strict();
        }));
  }

  RelSrs strictify(RelSrs const& system) {
    RelSrs out = system;
    for (auto& r : out.rules) {
      r.mode = Mode::strict;
    }
    return out;
  }

  RelSrs reverse_system(RelSrs const& system) {
    RelSrs out = system;
    for (auto& r : out.rules) {
      std::reverse(r.lhs.begin(), r.lhs.end());
      std::reverse(r.rhs.begin(), r.rhs.end());
    }
    return out;
  }

  RelSrs relative_part_as_strict(RelSrs const& system) {
    RelSrs out{system.alphabet, {}};
    for (auto const& r : system.rules) {
      if (!r.is_strict()) {
        out.rules.push_back(Rule{r.lhs, r.rhs, Mode::strict});
      }
    }
    return out;
  }

  std::size_t system_size(RelSrs const& system) {
    std::size_t n = 0;
    for (auto const& r : system.rules) {
      n += r.size();
    }
    return n;
  }

  std::string to_string(Word const& word, Alphabet const& alphabet) {
    if (word.empty()) {
      return "ε";
    }
    bool spaced = std::any_of(alphabet.names().begin(), alphabet.names().end(),
                              [](std::string const& n) { return n.size() != 1; });
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (spaced && i > 0) {
        out += ' ';
      }
      out += alphabet.name(word[i]);
    }
    return out;
  }

  std::string to_string(Rule const& rule, Alphabet const& alphabet) {
    return to_string(rule.lhs, alphabet) + (rule.is_strict() ? " -> " : " ->= ")
           + to_string(rule.rhs, alphabet);
  }

  std::string to_string(RelSrs const& system) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < system.rules.size(); ++i) {
      os << (i ? ", " : "") << to_string(system.rules[i], system.alphabet);
    }
    os << '}';
    return os.str();
  }

  std::size_t WordHash::operator()(Word const& w) const noexcept {
    std::size_t h = 1469598103934665603ULL ^ w.size();
    for (auto l : w) {
      h ^= l + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

}  // namespace relsrs
