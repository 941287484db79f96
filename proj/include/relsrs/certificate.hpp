#pragma once

// Certificates and proof outcomes.
//
// Every YES or NO verdict carries a certificate that can be re-checked
// against the system without any search.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "relsrs/core.hpp"
#include "relsrs/nonterm.hpp"
#include "relsrs/semiring.hpp"

namespace relsrs {

  enum class Verdict : std::uint8_t { yes, no, maybe };

  std::string to_string(Verdict v);

  /// Raised when a certificate does not fit the system at all (missing
  /// letter, inconsistent dimensions).
  class CertificateError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  struct WeightCertificate {
    std::map<Letter, Rational> weights;
    bool                       operator==(WeightCertificate const&) const = default;
  };

  struct NaturalMatrixCertificate {
    std::size_t                      dimension = 1;
    std::map<Letter, Matrix<BigInt>> matrices;
    bool operator==(NaturalMatrixCertificate const&) const = default;
  };

  struct ArcticMatrixCertificate {
    std::size_t                      dimension = 1;
    std::map<Letter, Matrix<Arctic>> matrices;
    bool operator==(ArcticMatrixCertificate const&) const = default;
  };

  /// R is empty, so no derivation has an R-step.
  struct EmptyRCertificate {
    bool operator==(EmptyRCertificate const&) const = default;
  };

  using OrderCertificate
      = std::variant<WeightCertificate, NaturalMatrixCertificate, ArcticMatrixCertificate>;

  // Strictification.  YES: `strictified` proves SN(R u S), which implies
  // SN(R/S).  NO: `s_termination` proves SN(S) (S read as strict rules) and
  // `loop` is a loop of the strictified system; since S alone cannot loop,
  // the loop uses an R-rule.
  struct StrictifyCertificate {
    Verdict                         verdict = Verdict::yes;
    std::optional<OrderCertificate> strictified;
    std::optional<OrderCertificate> s_termination;
    std::optional<LoopCertificate>  loop;
    bool operator==(StrictifyCertificate const&) const = default;
  };

  using Certificate = std::variant<WeightCertificate, NaturalMatrixCertificate,
                                   ArcticMatrixCertificate, LoopCertificate,
                                   StrictifyCertificate, EmptyRCertificate>;

  /// The verdict a certificate claims.
  Verdict claimed_verdict(Certificate const& cert);

  std::string certificate_type(Certificate const& cert);

  struct Attempt {
    std::string method;  // e.g. "weights", "matrix-natural d=2"
    std::string target;  // "S", "R u S", "R/S"
    std::string outcome;
  };

  struct ProofOutcome {
    Verdict                    verdict = Verdict::maybe;
    std::optional<Certificate> certificate;
    std::string                reason;
    std::vector<Attempt>       attempts;
  };

}  // namespace relsrs
