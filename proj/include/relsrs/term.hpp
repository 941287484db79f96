#pragma once

// Proving relative termination: certificate checkers, bounded searches for
// weights and matrix interpretations, and the strictification strategy.

#include <cstdint>
#include <optional>

#include "relsrs/certificate.hpp"
#include "relsrs/deadline.hpp"
#include "relsrs/nonterm.hpp"

namespace relsrs {

  // Strict rules must strictly decrease the total weight, relative rules must
  // not increase it.  Throws CertificateError if a rule letter has no weight.
  CheckResult check_weights(WeightCertificate const& cert, RelSrs const& system);

  // Letters are monotone iff their top-left and bottom-right entries are
  // >= 1.  Relative rules need [lhs] >= [rhs] entry-wise, strict rules
  // additionally a larger top-right entry, [lhs](0,d-1) > [rhs](0,d-1).
  CheckResult check_matrix_natural(NaturalMatrixCertificate const& cert, RelSrs const& system);

  // Letters need a finite top-left entry >= 0.  Relative rules need
  // [lhs] >= [rhs] entry-wise, strict rules [lhs] >> [rhs] entry-wise.
  CheckResult check_matrix_arctic(ArcticMatrixCertificate const& cert, RelSrs const& system);

  template <typename S>
  Matrix<typename S::value_type> interpret(Word const& w,
                                           std::map<Letter, Matrix<typename S::value_type>> const& m,
                                           std::size_t dim) {
    auto out = identity_matrix<S>(dim);
    for (auto l : w) {
      auto it = m.find(l);
      if (it == m.end()) {
        throw CertificateError("no matrix for letter " + std::to_string(l));
      }
      out = multiply<S>(out, it->second);
    }
    return out;
  }

  /// Checks one certificate against the system it claims to settle.
  CheckResult check_certificate(Certificate const& cert, RelSrs const& system);
  CheckResult check_order_certificate(OrderCertificate const& cert, RelSrs const& system);

  /// Cheap verdicts: a strict rule l -> l or e -> r loops, and an empty R is
  /// relatively terminating.
  std::optional<ProofOutcome> trivial_verdict(RelSrs const& system);

  std::optional<WeightCertificate> search_weights(RelSrs const& system, std::int64_t max_weight,
                                                  Deadline const& deadline = {});

  enum class SemiringKind : std::uint8_t { natural, arctic };

  struct MatrixSearchConfig {
    std::size_t   max_dim        = 3;   // dimensions 1..2 exhaustive, above that randomized
    std::int64_t  max_entry      = 2;
    std::size_t   random_trials  = 10'000;  // per randomized dimension
    std::uint64_t seed           = 0x5eed;
    std::size_t   max_candidates = 20'000'000;  // exhaustive leaves per dimension
  };

  std::optional<OrderCertificate> search_matrix(RelSrs const& system, SemiringKind semiring,
                                                MatrixSearchConfig const& config,
                                                Deadline const& deadline = {});

  struct ProveBudget {
    std::int64_t       max_weight = 16;
    MatrixSearchConfig matrix;
    LoopSearchBounds   loop{12, 40, 200'000};
    double             timeout_seconds = 0;  // 0: none
  };

  ProofOutcome prove(RelSrs const& system, ProveBudget const& budget = {});

}  // namespace relsrs
