#pragma once

// Disproving relative termination.
//
// A mixed loop is a derivation v ->+ u v w over R u S that uses at least one
// strict step.  An emitting loop is a derivation v ->+ u v w that uses only
// relative steps and whose context u or w contains a redex of a strict rule.
// Either one yields an infinite derivation with infinitely many R-steps.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "relsrs/core.hpp"
#include "relsrs/deadline.hpp"

namespace relsrs {

  enum class LoopKind : std::uint8_t { mixed, emitting };
  enum class Context : std::uint8_t { left, right };  // u or w

  struct RedexWitness {
    Context     context  = Context::left;
    std::size_t rule     = 0;  // index of a strict rule
    std::size_t position = 0;  // occurrence of its lhs inside the context word
    bool        operator==(RedexWitness const&) const = default;
  };

  struct LoopCertificate {
    LoopKind                    kind = LoopKind::mixed;
    Word                        start;
    std::vector<Step>           steps;
    Word                        left;   // u
    Word                        right;  // w
    std::optional<RedexWitness> witness;

    Derivation derivation() const {
      return Derivation{start, steps};
    }
    bool operator==(LoopCertificate const&) const = default;
  };

  struct CheckResult {
    bool        ok = false;
    std::string reason;

    static CheckResult pass() {
      return {true, {}};
    }
    static CheckResult fail(std::string why) {
      return {false, std::move(why)};
    }
    explicit operator bool() const noexcept {
      return ok;
    }
  };

  CheckResult check_loop_certificate(LoopCertificate const& cert, RelSrs const& system);

  /// The same loop read right to left: a certificate for reverse_system(system).
  LoopCertificate reverse_loop_certificate(LoopCertificate const& cert, RelSrs const& system);

  struct LoopSearchBounds {
    std::size_t max_word_len = 12;
    std::size_t max_steps    = 40;
    // Total BFS states over all start words; 0 means unlimited.
    std::size_t max_states = 2'000'000;
  };

  struct LoopSearchResult {
    std::optional<LoopCertificate> certificate;
    std::size_t                    states_explored = 0;
    std::size_t                    start_words     = 0;
    bool                           budget_exhausted = false;
    bool                           timed_out        = false;

    explicit operator bool() const noexcept {
      return certificate.has_value();
    }
  };

  // Start words are taken in length-lexicographic order among the words of
  // length <= max_word_len that contain an lhs occurrence; from each one a
  // BFS on step count runs, dropping words longer than max_word_len.  The
  // first loop found is returned.
  LoopSearchResult search_mixed_loop(RelSrs const& system, LoopSearchBounds const& bounds = {},
                                     Deadline const& deadline = {});
  LoopSearchResult search_emitting_loop(RelSrs const& system, LoopSearchBounds const& bounds = {},
                                        Deadline const& deadline = {});

  /// Same searches restricted to one start word.
  LoopSearchResult search_mixed_loop_from(RelSrs const& system, Word const& start,
                                          LoopSearchBounds const& bounds = {});
  LoopSearchResult search_emitting_loop_from(RelSrs const& system, Word const& start,
                                             LoopSearchBounds const& bounds = {});

  struct ForwardClosure {
    Word        source;
    Word        target;
    std::size_t strict_steps = 0;
    Derivation  trace;  // source ->+ target
  };

  struct ClosureSearchResult {
    std::vector<ForwardClosure> closures;
    bool                        truncated = false;  // hit max_closures
  };

  // Saturates the closure calculus: every rule is a closure; a closure's
  // target may be rewritten anywhere; a closure (u, v1 v2) extends by a rule
  // l -> r with l = v2 l', v2 a non-empty proper prefix of l, to
  // (u l', v1 r).  Closures with source or target longer than
  // max_closure_size are discarded.  Closures are identified by (source,
  // target, whether any strict step was used).
  ClosureSearchResult forward_closures(RelSrs const& system, std::size_t max_closure_size = 20,
                                       std::size_t max_closures = 1'000'000);

  bool is_looping(ForwardClosure const& closure);

  std::optional<ForwardClosure> find_looping_forward_closure(RelSrs const& system,
                                                             std::size_t max_closure_size = 20,
                                                             std::size_t max_closures = 1'000'000);

  /// A looping closure (u, x u y) read as a mixed loop certificate.
  LoopCertificate to_loop_certificate(ForwardClosure const& closure, RelSrs const& system);

}  // namespace relsrs
