#include "relsrs/nonterm.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace relsrs {

  CheckResult check_loop_certificate(LoopCertificate const& cert, RelSrs const& system) {
    if (cert.steps.empty()) {
      return CheckResult::fail("loop has no steps");
    }
    Word final_word;
    try {
      final_word = replay(cert.derivation(), system);
    } catch (InvalidDerivation const& e) {
      return CheckResult::fail(e.what());
    }
    if (final_word != concat(concat(cert.left, cert.start), cert.right)) {
      return CheckResult::fail("final word " + to_string(final_word, system.alphabet)
                               + " is not u v w for the claimed u, w");
    }
    auto strict = strict_step_count(cert.derivation(), system);
    if (cert.kind == LoopKind::mixed) {
      if (strict == 0) {
        return CheckResult::fail("mixed loop without a strict step");
      }
      return CheckResult::pass();
    }
    if (strict != 0) {
      return CheckResult::fail("emitting loop uses a strict step");
    }
    if (!cert.witness) {
      return CheckResult::fail("emitting loop without redex witness");
    }
    auto const& wit = *cert.witness;
    if (wit.rule >= system.rules.size() || !system.rules[wit.rule].is_strict()) {
      return CheckResult::fail("witness rule is not a strict rule");
    }
    Word const& ctx = wit.context == Context::left ? cert.left : cert.right;
    if (!occurs_at(ctx, system.rules[wit.rule].lhs, wit.position)) {
      return CheckResult::fail("witness redex does not occur in the context");
    }
    return CheckResult::pass();
  }

  LoopCertificate reverse_loop_certificate(LoopCertificate const& cert, RelSrs const& system) {
    LoopCertificate out;
    out.kind  = cert.kind;
    out.start = reversed(cert.start);
    out.left  = reversed(cert.right);
    out.right = reversed(cert.left);
    Word current = cert.start;
    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
      auto const& s = cert.steps[i];
      if (s.rule >= system.rules.size()
          || !occurs_at(current, system.rules[s.rule].lhs, s.position)) {
        throw InvalidDerivation(i, "cannot transport an invalid loop");
      }
      auto const& rule = system.rules[s.rule];
      out.steps.push_back(Step{current.size() - s.position - rule.lhs.size(), s.rule});
      current = apply_rule_at(current, rule, s.position);
    }
    if (cert.witness) {
      auto        wit = *cert.witness;
      Word const& ctx = wit.context == Context::left ? cert.left : cert.right;
      auto const& lhs = system.rules.at(wit.rule).lhs;
      if (ctx.size() < wit.position + lhs.size()) {
        throw std::invalid_argument("witness outside its context");
      }
      wit.position = ctx.size() - wit.position - lhs.size();
      wit.context  = wit.context == Context::left ? Context::right : Context::left;
      out.witness  = wit;
    }
    return out;
  }

  namespace {

    struct Node {
      Word          word;
      std::uint32_t parent;
      Step          step;
      std::uint32_t depth;
      bool          strict;
    };

    struct SearchState {
      LoopSearchBounds const& bounds;
      Deadline const&         deadline;
      std::size_t             states = 0;
      bool                    exhausted = false;
      bool                    timed_out = false;

      bool charge() {
        ++states;
        if (bounds.max_states != 0 && states > bounds.max_states) {
          exhausted = true;
          return false;
        }
        if ((states & 1023) == 0 && deadline.expired()) {
          timed_out = true;
          return false;
        }
        return true;
      }
    };

    std::vector<Step> path_to(std::vector<Node> const& nodes, std::uint32_t index) {
      std::vector<Step> steps;
      while (nodes[index].depth > 0) {
        steps.push_back(nodes[index].step);
        index = nodes[index].parent;
      }
      std::reverse(steps.begin(), steps.end());
      return steps;
    }

    std::optional<RedexWitness> redex_in(Word const& ctx, Context context, RelSrs const& system) {
      for (std::size_t r = 0; r < system.rules.size(); ++r) {
        auto const& rule = system.rules[r];
        if (!rule.is_strict()) {
          continue;
        }
        auto p = find_factor(rule.lhs, ctx);
        if (p <= ctx.size()) {
          return RedexWitness{context, r, p};
        }
      }
      return std::nullopt;
    }

    // Looks for a loop certificate on a newly reached word.
    std::optional<LoopCertificate> loop_at(LoopKind kind, Word const& start, Word const& word,
                                           bool strict, RelSrs const& system) {
      if (kind == LoopKind::mixed) {
        if (!strict) {
          return std::nullopt;
        }
        auto p = find_factor(start, word);
        if (p > word.size()) {
          return std::nullopt;
        }
        LoopCertificate c;
        c.kind  = kind;
        c.start = start;
        c.left  = Word(word.begin(), word.begin() + p);
        c.right = Word(word.begin() + p + start.size(), word.end());
        return c;
      }
      for (auto p = find_factor(start, word); p <= word.size(); p = find_factor(start, word, p + 1)) {
        Word left(word.begin(), word.begin() + p);
        Word right(word.begin() + p + start.size(), word.end());
        auto wit = redex_in(left, Context::left, system);
        if (!wit) {
          wit = redex_in(right, Context::right, system);
        }
        if (wit) {
          LoopCertificate c;
          c.kind    = kind;
          c.start   = start;
          c.left    = std::move(left);
          c.right   = std::move(right);
          c.witness = wit;
          return c;
        }
        if (start.empty()) {
          break;  // every split of the empty word was covered by p = 0
        }
      }
      return std::nullopt;
    }

    std::optional<LoopCertificate> bfs_from(RelSrs const& system, Word const& start,
                                            LoopKind kind, SearchState& state) {
      auto const& bounds = state.bounds;
      // An emitting loop uses relative rules only.
      std::vector<std::size_t> usable;
      for (std::size_t r = 0; r < system.rules.size(); ++r) {
        if (kind == LoopKind::mixed || !system.rules[r].is_strict()) {
          usable.push_back(r);
        }
      }
      std::vector<Node> nodes;
      // bit 0: reached without a strict step, bit 1: with one
      std::unordered_map<Word, std::uint8_t, WordHash> seen;
      nodes.push_back(Node{start, 0, {}, 0, false});
      seen[start] = 1;
      if (!state.charge()) {
        return std::nullopt;
      }
      for (std::size_t head = 0; head < nodes.size(); ++head) {
        if (nodes[head].depth >= bounds.max_steps) {
          continue;
        }
        for (auto r : usable) {
          auto const& rule = system.rules[r];
          Word const& cur  = nodes[head].word;
          if (cur.size() - rule.lhs.size() + rule.rhs.size() > bounds.max_word_len
              || rule.lhs.size() > cur.size()) {
            continue;
          }
          for (std::size_t p = 0; p + rule.lhs.size() <= nodes[head].word.size(); ++p) {
            if (!occurs_at(nodes[head].word, rule.lhs, p)) {
              continue;
            }
            Word next   = apply_rule_at(nodes[head].word, rule, p);
            bool strict = nodes[head].strict || rule.is_strict();
            auto& mask  = seen[next];
            std::uint8_t bit = strict ? 2 : 1;
            if ((mask & bit) || (!strict && (mask & 2))) {
              continue;
            }
            mask |= bit;
            if (!state.charge()) {
              return std::nullopt;
            }
            auto parent = static_cast<std::uint32_t>(head);
            auto depth  = nodes[head].depth + 1;
            if (auto cert = loop_at(kind, start, next, strict, system)) {
              nodes.push_back(Node{std::move(next), parent, Step{p, r}, depth, strict});
              cert->steps = path_to(nodes, static_cast<std::uint32_t>(nodes.size() - 1));
              return cert;
            }
            nodes.push_back(Node{std::move(next), parent, Step{p, r}, depth, strict});
          }
        }
      }
      return std::nullopt;
    }

    bool contains_redex(Word const& w, RelSrs const& system, LoopKind kind) {
      for (auto const& r : system.rules) {
        if ((kind == LoopKind::mixed || !r.is_strict()) && is_factor(r.lhs, w)) {
          return true;
        }
      }
      return false;
    }

    LoopSearchResult search(RelSrs const& system, LoopSearchBounds const& bounds,
                            Deadline const& deadline, LoopKind kind) {
      LoopSearchResult result;
      SearchState      state{bounds, deadline};
      auto const       k = system.alphabet.size();
      auto try_word = [&](Word const& w) {
        if (!contains_redex(w, system, kind)) {
          return false;
        }
        ++result.start_words;
        result.certificate = bfs_from(system, w, kind, state);
        return result.certificate.has_value() || state.exhausted || state.timed_out;
      };
      bool done = try_word(Word{});
      for (std::size_t len = 1; !done && len <= bounds.max_word_len && k > 0; ++len) {
        Word w(len, 0);
        while (!done) {
          done = try_word(w);
          // odometer increment, last letter fastest
          std::size_t i = len;
          while (i > 0 && w[i - 1] + 1u == k) {
            w[--i] = 0;
          }
          if (i == 0) {
            break;
          }
          ++w[i - 1];
        }
      }
      result.states_explored  = state.states;
      result.budget_exhausted = state.exhausted;
      result.timed_out        = state.timed_out;
      return result;
    }

    LoopSearchResult search_from(RelSrs const& system, Word const& start,
                                 LoopSearchBounds const& bounds, LoopKind kind) {
      LoopSearchResult result;
      Deadline         never;
      SearchState      state{bounds, never};
      result.start_words      = 1;
      result.certificate      = bfs_from(system, start, kind, state);
      result.states_explored  = state.states;
      result.budget_exhausted = state.exhausted;
      return result;
    }

  }  // namespace

  LoopSearchResult search_mixed_loop(RelSrs const& system, LoopSearchBounds const& bounds,
                                     Deadline const& deadline) {
    return search(system, bounds, deadline, LoopKind::mixed);
  }

  LoopSearchResult search_emitting_loop(RelSrs const& system, LoopSearchBounds const& bounds,
                                        Deadline const& deadline) {
    if (!system.has_strict()) {
      return {};
    }
    return search(system, bounds, deadline, LoopKind::emitting);
  }

  LoopSearchResult search_mixed_loop_from(RelSrs const& system, Word const& start,
                                          LoopSearchBounds const& bounds) {
    return search_from(system, start, bounds, LoopKind::mixed);
  }

  LoopSearchResult search_emitting_loop_from(RelSrs const& system, Word const& start,
                                             LoopSearchBounds const& bounds) {
    return search_from(system, start, bounds, LoopKind::emitting);
  }

  // ---------------------------------------------------------------------------
  // Forward closures
  // ---------------------------------------------------------------------------

  bool is_looping(ForwardClosure const& closure) {
    return closure.strict_steps > 0 && is_factor(closure.source, closure.target);
  }

  namespace {

    constexpr Letter separator = 0xFFFF;

    Word closure_key(Word const& source, Word const& target, bool strict) {
      Word key = source;
      key.push_back(separator);
      key.insert(key.end(), target.begin(), target.end());
      key.push_back(strict ? 1 : 0);
      return key;
    }

    // Saturates in FIFO order.  When stop_at_loop is set, returns as soon as
    // a looping closure is created; it is then the last element.
    ClosureSearchResult saturate(RelSrs const& system, std::size_t bound, std::size_t max_closures,
                                 bool stop_at_loop, bool& found) {
      ClosureSearchResult                    out;
      std::unordered_set<Word, WordHash>     seen;
      found = false;

      auto add = [&](ForwardClosure c) {
        if (c.source.size() > bound || c.target.size() > bound) {
          return false;
        }
        if (!seen.insert(closure_key(c.source, c.target, c.strict_steps > 0)).second) {
          return false;
        }
        if (out.closures.size() >= max_closures) {
          out.truncated = true;
          return true;
        }
        bool loop = is_looping(c);
        out.closures.push_back(std::move(c));
        if (loop && stop_at_loop) {
          found = true;
          return true;
        }
        return false;
      };

      for (std::size_t r = 0; r < system.rules.size(); ++r) {
        auto const&    rule = system.rules[r];
        ForwardClosure seed{rule.lhs, rule.rhs, rule.is_strict() ? 1u : 0u,
                            Derivation{rule.lhs, {Step{0, r}}}};
        if (add(std::move(seed))) {
          return out;
        }
      }

      for (std::size_t head = 0; head < out.closures.size(); ++head) {
        // (a) rewrite the target
        auto const target = out.closures[head].target;
        for (auto& [step, next] : successors(target, system)) {
          ForwardClosure const& c = out.closures[head];
          ForwardClosure        n;
          n.source       = c.source;
          n.target       = std::move(next);
          n.strict_steps = c.strict_steps + (system.rules[step.rule].is_strict() ? 1 : 0);
          n.trace        = c.trace;
          n.trace.steps.push_back(step);
          if (add(std::move(n))) {
            return out;
          }
        }
        // (b) extend to the right by a rule whose lhs overlaps the target end
        for (std::size_t r = 0; r < system.rules.size(); ++r) {
          auto const& rule = system.rules[r];
          for (std::size_t k = 1; k < rule.lhs.size() && k <= target.size(); ++k) {
            if (!std::equal(rule.lhs.begin(), rule.lhs.begin() + k, target.end() - k)) {
              continue;
            }
            ForwardClosure const& c = out.closures[head];
            ForwardClosure        n;
            n.source = c.source;
            n.source.insert(n.source.end(), rule.lhs.begin() + k, rule.lhs.end());
            n.target = Word(target.begin(), target.end() - k);
            n.target.insert(n.target.end(), rule.rhs.begin(), rule.rhs.end());
            n.strict_steps = c.strict_steps + (rule.is_strict() ? 1 : 0);
            n.trace        = Derivation{n.source, c.trace.steps};
            n.trace.steps.push_back(Step{target.size() - k, r});
            if (add(std::move(n))) {
              return out;
            }
          }
        }
      }
      return out;
    }

  }  // namespace

  ClosureSearchResult forward_closures(RelSrs const& system, std::size_t max_closure_size,
                                       std::size_t max_closures) {
    bool found = false;
    return saturate(system, max_closure_size, max_closures, false, found);
  }

  std::optional<ForwardClosure> find_looping_forward_closure(RelSrs const& system,
                                                             std::size_t max_closure_size,
                                                             std::size_t max_closures) {
    bool found = false;
    auto res   = saturate(system, max_closure_size, max_closures, true, found);
    if (!found) {
      return std::nullopt;
    }
    return std::move(res.closures.back());
  }

  LoopCertificate to_loop_certificate(ForwardClosure const& closure, RelSrs const& system) {
    (void) system;
    auto p = find_factor(closure.source, closure.target);
    if (p > closure.target.size()) {
      throw std::invalid_argument("closure is not looping");
    }
    LoopCertificate c;
    c.kind  = LoopKind::mixed;
    c.start = closure.source;
    c.steps = closure.trace.steps;
    c.left  = Word(closure.target.begin(), closure.target.begin() + p);
    c.right = Word(closure.target.begin() + p + closure.source.size(), closure.target.end());
    return c;
  }

}  // namespace relsrs
