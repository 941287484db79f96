#include "relsrs/enumerate.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "relsrs/term.hpp"

namespace relsrs {

  namespace {

    bool length_lex_less(Word const& x, Word const& y) {
      if (x.size() != y.size()) {
        return x.size() < y.size();
      }
      return x < y;
    }

    void append_encoding(CanonicalKey& key, Rule const& r) {
      key.push_back(r.is_strict() ? 0 : 1);
      key.push_back(static_cast<std::uint32_t>(r.lhs.size()));
      key.insert(key.end(), r.lhs.begin(), r.lhs.end());
      key.push_back(static_cast<std::uint32_t>(r.rhs.size()));
      key.insert(key.end(), r.rhs.begin(), r.rhs.end());
    }

    std::vector<Rule> sorted_unique(std::vector<Rule> rules) {
      std::sort(rules.begin(), rules.end(), rule_less);
      rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
      return rules;
    }

    CanonicalKey key_of_sorted(std::vector<Rule> const& rules) {
      CanonicalKey key;
      for (auto const& r : rules) {
        append_encoding(key, r);
      }
      return key;
    }

    Word rename(Word const& w, std::vector<Letter> const& perm, bool reverse) {
      Word out;
      out.reserve(w.size());
      for (auto l : w) {
        out.push_back(perm[l]);
      }
      if (reverse) {
        std::reverse(out.begin(), out.end());
      }
      return out;
    }

    Rule rename(Rule const& r, std::vector<Letter> const& perm, bool reverse) {
      return Rule{rename(r.lhs, perm, reverse), rename(r.rhs, perm, reverse), r.mode};
    }

    // Every letter permutation, times reversal if requested; the identity first.
    std::vector<std::pair<std::vector<Letter>, bool>> transforms(std::size_t k, bool reversal) {
      std::vector<Letter> perm(k);
      std::iota(perm.begin(), perm.end(), Letter{0});
      std::vector<std::pair<std::vector<Letter>, bool>> out;
      do {
        out.emplace_back(perm, false);
        if (reversal) {
          out.emplace_back(perm, true);
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      return out;
    }

  }  // namespace

  bool rule_less(Rule const& x, Rule const& y) {
    if (x.mode != y.mode) {
      return x.is_strict();
    }
    if (x.lhs != y.lhs) {
      return length_lex_less(x.lhs, y.lhs);
    }
    return length_lex_less(x.rhs, y.rhs);
  }

  CanonicalKey system_key(RelSrs const& system) {
    return key_of_sorted(sorted_unique(system.rules));
  }

  RelSrs canonical_form(RelSrs const& system, bool identify_reversal) {
    RelSrs       best{system.alphabet, {}};
    CanonicalKey best_key;
    bool         first = true;
    for (auto const& [perm, rev] : transforms(system.alphabet.size(), identify_reversal)) {
      std::vector<Rule> rules;
      rules.reserve(system.rules.size());
      for (auto const& r : system.rules) {
        rules.push_back(rename(r, perm, rev));
      }
      rules    = sorted_unique(std::move(rules));
      auto key = key_of_sorted(rules);
      if (first || key < best_key) {
        best.rules = std::move(rules);
        best_key   = std::move(key);
        first      = false;
      }
    }
    return best;
  }

  CanonicalKey canonical_key(RelSrs const& system, bool identify_reversal) {
    return system_key(canonical_form(system, identify_reversal));
  }

  std::vector<Word> words_up_to(std::size_t alphabet_size, std::size_t max_len) {
    std::vector<Word> out{Word{}};
    if (alphabet_size == 0) {
      return out;
    }
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
      std::size_t const end = out.size();
      // Length-len words in lexicographic order: extend each shorter word
      // (already in lex order) by every letter.
      for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t l = 0; l < alphabet_size; ++l) {
          Word w = out[i];
          w.push_back(static_cast<Letter>(l));
          out.push_back(std::move(w));
        }
      }
      begin = end;
    }
    return out;
  }

  std::size_t EnumerationStats::total() const {
    std::size_t n = 0;
    for (auto const& [size, count] : emitted) {
      n += count;
    }
    return n;
  }

  void EnumerationStats::merge(EnumerationStats const& other) {
    candidate_rules = std::max(candidate_rules, other.candidate_rules);
    for (auto const& [size, count] : other.emitted) {
      emitted[size] += count;
    }
    unused_letter += other.unused_letter;
    twin_rule += other.twin_rule;
    non_canonical += other.non_canonical;
    pruned_trivial += other.pruned_trivial;
  }

  namespace {

    constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();

    class Enumerator {
     public:
      Enumerator(EnumerationConfig const& config, std::function<void(RelSrs const&)> const& emit)
          : config_(config), emit_(emit), alphabet_(Alphabet::standard(config.alphabet_size)) {
        build_candidates();
        build_tables();
        build_images();
        stats_.candidate_rules = rules_.size();
      }

      EnumerationStats run() {
        for (std::size_t size = 1; size <= config_.max_size; ++size) {
          stats_.emitted[size];
          for (std::size_t count = 1; count <= size; ++count) {
            dfs(0, size, count);
          }
        }
        return stats_;
      }

     private:
      void build_candidates() {
        auto const words = words_up_to(config_.alphabet_size, config_.max_size);
        for (auto mode : {Mode::strict, Mode::relative}) {
          for (auto const& l : words) {
            for (auto const& r : words) {
              auto const size = l.size() + r.size();
              if (size == 0 || size > config_.max_size) {
                continue;
              }
              if (mode == Mode::relative && l == r) {
                continue;
              }
              rules_.push_back(Rule{l, r, mode});
            }
          }
        }
        std::sort(rules_.begin(), rules_.end(), rule_less);
        strict_end_ = static_cast<std::uint32_t>(
            std::partition_point(rules_.begin(), rules_.end(),
                                 [](Rule const& r) { return r.is_strict(); })
            - rules_.begin());
        for (std::uint32_t i = 0; i < rules_.size(); ++i) {
          CanonicalKey k;
          append_encoding(k, rules_[i]);
          index_.emplace(std::move(k), i);
          sizes_.push_back(static_cast<std::uint32_t>(rules_[i].size()));
          std::uint32_t mask = 0;
          for (auto const* side : {&rules_[i].lhs, &rules_[i].rhs}) {
            for (auto l : *side) {
              mask |= 1u << l;
            }
          }
          masks_.push_back(mask);
        }
        twin_.assign(rules_.size(), none);
        for (std::uint32_t i = strict_end_; i < rules_.size(); ++i) {
          twin_[i] = lookup(Rule{rules_[i].lhs, rules_[i].rhs, Mode::strict});
        }
      }

      std::uint32_t lookup(Rule const& r) const {
        CanonicalKey k;
        append_encoding(k, r);
        auto it = index_.find(k);
        return it == index_.end() ? none : it->second;
      }

      // next_fit_[t][i]: first j >= i whose size is <= t; next_exact_ likewise
      // with size == t.
      void build_tables() {
        auto const n = static_cast<std::uint32_t>(rules_.size());
        next_fit_.assign(config_.max_size + 1, std::vector<std::uint32_t>(n + 1, n));
        next_exact_ = next_fit_;
        for (std::size_t t = 0; t <= config_.max_size; ++t) {
          for (std::uint32_t i = n; i-- > 0;) {
            next_fit_[t][i]   = sizes_[i] <= t ? i : next_fit_[t][i + 1];
            next_exact_[t][i] = sizes_[i] == t ? i : next_exact_[t][i + 1];
          }
        }
      }

      void build_images() {
        auto all = transforms(config_.alphabet_size, config_.identify_reversal);
        for (std::size_t t = 1; t < all.size(); ++t) {  // skip the identity
          std::vector<std::uint32_t> img(rules_.size());
          for (std::uint32_t i = 0; i < rules_.size(); ++i) {
            img[i] = lookup(rename(rules_[i], all[t].first, all[t].second));
          }
          images_.push_back(std::move(img));
        }
      }

      void dfs(std::uint32_t from, std::size_t remaining, std::size_t count) {
        auto const n = static_cast<std::uint32_t>(rules_.size());
        if (count == 1) {
          for (auto j = next_exact_[remaining][from]; j < n; j = next_exact_[remaining][j + 1]) {
            if (chosen_.empty() && config_.require_nonempty_r && j >= strict_end_) {
              break;
            }
            chosen_.push_back(j);
            leaf(remaining + sum_);
            chosen_.pop_back();
          }
          return;
        }
        auto const limit = remaining - (count - 1);
        for (auto j = next_fit_[limit][from]; j < n; j = next_fit_[limit][j + 1]) {
          if (chosen_.empty() && config_.require_nonempty_r && j >= strict_end_) {
            break;
          }
          chosen_.push_back(j);
          sum_ += sizes_[j];
          dfs(j + 1, remaining - sizes_[j], count - 1);
          sum_ -= sizes_[j];
          chosen_.pop_back();
        }
      }

      void leaf(std::size_t size) {
        if (config_.require_nonempty_s && chosen_.back() < strict_end_) {
          return;
        }
        if (config_.require_all_letters_used) {
          std::uint32_t mask = 0;
          for (auto j : chosen_) {
            mask |= masks_[j];
          }
          if (mask != (1u << config_.alphabet_size) - 1) {
            ++stats_.unused_letter;
            return;
          }
        }
        for (auto j : chosen_) {
          if (twin_[j] != none && std::binary_search(chosen_.begin(), chosen_.end(), twin_[j])) {
            ++stats_.twin_rule;
            return;
          }
        }
        for (auto const& img : images_) {
          scratch_.clear();
          for (auto j : chosen_) {
            scratch_.push_back(img[j]);
          }
          std::sort(scratch_.begin(), scratch_.end());
          if (scratch_ < chosen_) {
            ++stats_.non_canonical;
            return;
          }
        }
        RelSrs system{alphabet_, {}};
        for (auto j : chosen_) {
          system.rules.push_back(rules_[j]);
        }
        if (config_.prune_trivial && trivial_verdict(system)) {
          ++stats_.pruned_trivial;
          return;
        }
        ++stats_.emitted[size];
        emit_(system);
      }

      EnumerationConfig const&                   config_;
      std::function<void(RelSrs const&)> const& emit_;
      Alphabet                                   alphabet_;
      std::vector<Rule>                          rules_;
      std::vector<std::uint32_t>                 sizes_;
      std::vector<std::uint32_t>                 masks_;
      std::vector<std::uint32_t>                 twin_;
      std::map<CanonicalKey, std::uint32_t>      index_;
      std::uint32_t                              strict_end_ = 0;
      std::vector<std::vector<std::uint32_t>>    next_fit_;
      std::vector<std::vector<std::uint32_t>>    next_exact_;
      std::vector<std::vector<std::uint32_t>>    images_;
      std::vector<std::uint32_t>                 chosen_;
      std::vector<std::uint32_t>                 scratch_;
      std::size_t                                sum_ = 0;
      EnumerationStats                           stats_;
    };

  }  // namespace

  EnumerationStats enumerate_systems(EnumerationConfig const&                   config,
                                     std::function<void(RelSrs const&)> const& emit) {
    if (config.alphabet_size < 1 || config.alphabet_size > 4) {
      throw std::invalid_argument("alphabet size must be between 1 and 4");
    }
    return Enumerator(config, emit).run();
  }

  std::vector<RelSrs> enumerate_all(EnumerationConfig const& config) {
    std::vector<RelSrs> out;
    enumerate_systems(config, [&](RelSrs const& s) { out.push_back(s); });
    return out;
  }

  std::string enumeration_manifest(EnumerationConfig const& config, EnumerationStats const& stats) {
    auto               flag = [](bool b) { return b ? "on" : "off"; };
    std::ostringstream out;
    out << "# relsrs enumeration manifest\n"
        << "alphabet_size " << config.alphabet_size << "\n"
        << "max_size " << config.max_size << "\n"
        << "require_all_letters_used " << flag(config.require_all_letters_used) << "\n"
        << "require_nonempty_R " << flag(config.require_nonempty_r) << "\n"
        << "require_nonempty_S " << flag(config.require_nonempty_s) << "\n"
        << "identify_reversal " << flag(config.identify_reversal) << "\n"
        << "prune_trivial " << flag(config.prune_trivial) << "\n"
        << "excluded_rules relative_l=r, empty_l=r=e\n"
        << "candidate_rules " << stats.candidate_rules << "\n"
        << "# size count\n";
    for (std::size_t size = 1; size <= config.max_size; ++size) {
      auto it = stats.emitted.find(size);
      out << "size " << size << " " << (it == stats.emitted.end() ? 0 : it->second) << "\n";
    }
    out << "total " << stats.total() << "\n"
        << "# rule sets dropped by filter\n"
        << "dropped unused_letter " << stats.unused_letter << "\n"
        << "dropped twin_rule " << stats.twin_rule << "\n"
        << "dropped non_canonical " << stats.non_canonical << "\n"
        << "dropped pruned_trivial " << stats.pruned_trivial << "\n";
    return out.str();
  }

}  // namespace relsrs
