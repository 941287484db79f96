#pragma once

// Enumeration of relative string rewriting systems up to letter renaming.
//
// Rules are ordered strict before relative, then by length-lexicographic
// lhs, then rhs.  The key of a system is the concatenation of the
// encodings (mode, |lhs|, lhs, |rhs|, rhs) of its rules in that order; the
// canonical form is the renaming with the smallest key.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "relsrs/core.hpp"

namespace relsrs {

  using CanonicalKey = std::vector<std::uint32_t>;

  /// Rule order used for keys and for the enumeration.
  bool rule_less(Rule const& x, Rule const& y);

  /// Key of the system as given: rules sorted, exact duplicates dropped.
  CanonicalKey system_key(RelSrs const& system);

  // Minimum over all letter permutations (and word reversal when
  // identify_reversal is set).  The result keeps the alphabet of `system`
  // and has its rules sorted without duplicates.
  RelSrs       canonical_form(RelSrs const& system, bool identify_reversal = false);
  CanonicalKey canonical_key(RelSrs const& system, bool identify_reversal = false);

  /// Words of length 0..max_len over letters 0..k-1, length-lexicographic.
  std::vector<Word> words_up_to(std::size_t alphabet_size, std::size_t max_len);

  struct EnumerationConfig {
    std::size_t alphabet_size             = 2;  // 1..4
    std::size_t max_size                  = 4;
    bool        require_all_letters_used  = true;
    bool        require_nonempty_r        = true;
    bool        require_nonempty_s        = true;
    bool        identify_reversal         = false;
    bool        prune_trivial             = false;
  };

  struct EnumerationStats {
    std::size_t                        candidate_rules = 0;
    std::map<std::size_t, std::size_t> emitted;  // by system size
    // Complete rule sets (of the right size) dropped by each filter.
    std::size_t unused_letter  = 0;
    std::size_t twin_rule      = 0;
    std::size_t non_canonical  = 0;
    std::size_t pruned_trivial = 0;

    std::size_t total() const;
    void        merge(EnumerationStats const& other);
  };

  // Streams one representative per class in order of size, then number of
  // rules, then key.  Systems use the standard alphabet a, b, c, d.
  EnumerationStats enumerate_systems(EnumerationConfig const&                   config,
                                     std::function<void(RelSrs const&)> const& emit);

  std::vector<RelSrs> enumerate_all(EnumerationConfig const& config);

  std::string enumeration_manifest(EnumerationConfig const& config, EnumerationStats const& stats);

}  // namespace relsrs
