#pragma once

// Test helpers and oracles that do not share code with the library.

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "relsrs/core.hpp"
#include "relsrs/semiring.hpp"
#include "relsrs/tpdb.hpp"

namespace support {

  inline relsrs::RelSrs sys(std::string_view compact) {
    return relsrs::parse_compact(compact);
  }

  inline std::string fixture(std::string const& name) {
    return std::string(RELSRS_FIXTURES) + "/" + name;
  }

  inline std::string slurp(std::string const& path) {
    std::ifstream     in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  // ---- plain matrix products ------------------------------------------------

  using BigInt  = relsrs::BigInt;
  using NatRows = std::vector<std::vector<BigInt>>;
  // nullopt is -inf
  using ArcRows = std::vector<std::vector<std::optional<BigInt>>>;

  inline NatRows nat_identity(std::size_t d) {
    NatRows m(d, std::vector<BigInt>(d, 0));
    for (std::size_t i = 0; i < d; ++i) {
      m[i][i] = 1;
    }
    return m;
  }

  inline NatRows nat_mul(NatRows const& x, NatRows const& y) {
    std::size_t d = x.size();
    NatRows     z(d, std::vector<BigInt>(d, 0));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
          z[i][j] += x[i][k] * y[k][j];
        }
      }
    }
    return z;
  }

  inline ArcRows arc_identity(std::size_t d) {
    ArcRows m(d, std::vector<std::optional<BigInt>>(d));
    for (std::size_t i = 0; i < d; ++i) {
      m[i][i] = BigInt(0);
    }
    return m;
  }

  inline ArcRows arc_mul(ArcRows const& x, ArcRows const& y) {
    std::size_t d = x.size();
    ArcRows     z(d, std::vector<std::optional<BigInt>>(d));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
          if (x[i][k] && y[k][j]) {
            BigInt s = *x[i][k] + *y[k][j];
            if (!z[i][j] || s > *z[i][j]) {
              z[i][j] = s;
            }
          }
        }
      }
    }
    return z;
  }

  // Word over single-character names.
  template <typename Rows, typename Mul>
  Rows product(std::string const& word, std::map<char, Rows> const& m, Rows id, Mul mul) {
    Rows out = id;
    for (char c : word) {
      out = mul(out, m.at(c));
    }
    return out;
  }

  // ---- string systems -------------------------------------------------------

  struct SRule {
    std::string l, r;
    bool        strict;
    auto        operator<=>(SRule const&) const = default;
  };

  using SSystem = std::vector<SRule>;

  inline SSystem to_strings(relsrs::RelSrs const& s) {
    SSystem out;
    auto    word = [&](relsrs::Word const& w) {
      std::string t;
      for (auto l : w) {
        t += s.alphabet.name(l);
      }
      return t;
    };
    for (auto const& r : s.rules) {
      out.push_back({word(r.lhs), word(r.rhs), r.is_strict()});
    }
    return out;
  }

  // ---- naive quotient enumeration ------------------------------------------

  inline std::vector<std::string> all_words(std::size_t k, std::size_t max_len) {
    std::vector<std::string> out{""};
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].size() < max_len) {
        for (std::size_t c = 0; c < k; ++c) {
          out.push_back(out[i] + static_cast<char>('a' + c));
        }
      }
    }
    return out;
  }

  inline std::string rename(std::string w, std::string const& perm) {
    for (auto& c : w) {
      c = perm[static_cast<std::size_t>(c - 'a')];
    }
    return w;
  }

  // Class representative: smallest sorted rule list over all renamings.
  inline SSystem naive_representative(SSystem s, std::size_t k) {
    std::string perm;
    for (std::size_t c = 0; c < k; ++c) {
      perm += static_cast<char>('a' + c);
    }
    std::optional<SSystem> best;
    do {
      SSystem t;
      for (auto const& r : s) {
        t.push_back({rename(r.l, perm), rename(r.r, perm), r.strict});
      }
      std::sort(t.begin(), t.end());
      if (!best || t < *best) {
        best = t;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return *best;
  }

  // Counts per size of classes of rule sets with all letters used, nonempty
  // strict and relative parts, no relative l = r, no rule in both modes.
  inline std::map<std::size_t, std::size_t> naive_counts(std::size_t k, std::size_t max_size) {
    std::vector<SRule> rules;
    for (auto const& l : all_words(k, max_size)) {
      for (auto const& r : all_words(k, max_size)) {
        if (l.size() + r.size() >= 1 && l.size() + r.size() <= max_size) {
          rules.push_back({l, r, true});
          if (l != r) {
            rules.push_back({l, r, false});
          }
        }
      }
    }
    std::set<SSystem> classes;
    SSystem           current;
    // Ordered sequences of distinct rules; the set removes reorderings.
    auto rec = [&](auto&& self, std::size_t budget) -> void {
      if (!current.empty()) {
        bool strict = false, relative = false, twin = false;
        std::set<char> letters;
        for (auto const& r : current) {
          (r.strict ? strict : relative) = true;
          for (char c : r.l + r.r) {
            letters.insert(c);
          }
          for (auto const& q : current) {
            twin = twin || (q.l == r.l && q.r == r.r && q.strict != r.strict);
          }
        }
        if (strict && relative && !twin && letters.size() == k) {
          classes.insert(naive_representative(current, k));
        }
      }
      for (auto const& r : rules) {
        auto const size = r.l.size() + r.r.size();
        if (size > budget || std::find(current.begin(), current.end(), r) != current.end()) {
          continue;
        }
        current.push_back(r);
        self(self, budget - size);
        current.pop_back();
      }
    };
    rec(rec, max_size);
    std::map<std::size_t, std::size_t> counts;
    for (std::size_t s = 1; s <= max_size; ++s) {
      counts[s] = 0;
    }
    for (auto const& c : classes) {
      std::size_t size = 0;
      for (auto const& r : c) {
        size += r.l.size() + r.r.size();
      }
      ++counts[size];
    }
    return counts;
  }

  // ---- bounded loop simulator ----------------------------------------------

  struct SimStep {
    std::size_t pos, rule;
  };

  struct SimLoop {
    std::string          start, u, w;
    std::vector<SimStep> steps;
  };

  inline std::optional<std::string> apply(std::string const& word, SRule const& r,
                                          std::size_t pos) {
    if (pos + r.l.size() > word.size() || word.compare(pos, r.l.size(), r.l) != 0) {
      return std::nullopt;
    }
    return word.substr(0, pos) + r.r + word.substr(pos + r.l.size());
  }

  // Replays the loop `unrollings` times on u^i v w^i; returns the number of
  // strict steps, or nullopt if some step does not apply or a round does not
  // end in u^(i+1) v w^(i+1).
  inline std::optional<std::size_t> unroll(SSystem const& s, SimLoop const& loop,
                                           std::size_t unrollings) {
    std::size_t strict = 0;
    std::string pre, post;
    for (std::size_t i = 0; i < unrollings; ++i) {
      std::string word = pre + loop.start + post;
      for (auto const& st : loop.steps) {
        auto next = apply(word, s[st.rule], st.pos + pre.size());
        if (!next) {
          return std::nullopt;
        }
        word = *next;
        strict += s[st.rule].strict;
      }
      pre += loop.u;
      post += loop.w;
      if (word != pre + loop.start + post) {
        return std::nullopt;
      }
    }
    return strict;
  }

  // BFS from every start word up to start_len over words of length <= cap,
  // at most step_cap expansions per start word.  A loop is reported only if
  // three unrollings replay and contain a strict step.
  inline std::optional<SimLoop> simulate_loop(SSystem const& s, std::size_t k,
                                              std::size_t start_len = 4, std::size_t cap = 10,
                                              std::size_t step_cap = 10000) {
    for (auto const& v : all_words(k, start_len)) {
      struct N {
        std::string word;
        bool        strict;
        std::size_t parent;
        SimStep     step;
      };
      std::vector<N>                             nodes{{v, false, 0, {0, 0}}};
      std::set<std::pair<std::string, bool>>     seen{{v, false}};
      std::size_t                                expansions = 0;
      for (std::size_t h = 0; h < nodes.size() && expansions < step_cap; ++h) {
        for (std::size_t ri = 0; ri < s.size(); ++ri) {
          for (std::size_t p = 0; p + s[ri].l.size() <= nodes[h].word.size(); ++p) {
            auto next = apply(nodes[h].word, s[ri], p);
            if (!next || next->size() > cap) {
              continue;
            }
            ++expansions;
            bool strict = nodes[h].strict || s[ri].strict;
            if (!seen.insert({*next, strict}).second) {
              continue;
            }
            nodes.push_back({*next, strict, h, {p, ri}});
            auto at = next->find(v);
            if (strict && at != std::string::npos) {
              SimLoop loop{v, next->substr(0, at), next->substr(at + v.size()), {}};
              for (auto i = nodes.size() - 1; i != 0; i = nodes[i].parent) {
                loop.steps.push_back(nodes[i].step);
              }
              std::reverse(loop.steps.begin(), loop.steps.end());
              auto strict_steps = unroll(s, loop, 3);
              if (strict_steps && *strict_steps > 0) {
                return loop;
              }
            }
          }
        }
      }
    }
    return std::nullopt;
  }

}  // namespace support
