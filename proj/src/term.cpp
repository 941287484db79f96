#include "relsrs/term.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace relsrs {

  std::string to_string(Verdict v) {
    switch (v) {
      case Verdict::yes:
        return "YES";
      case Verdict::no:
        return "NO";
      case Verdict::maybe:
        return "MAYBE";
    }
    return "MAYBE";
  }

  Verdict claimed_verdict(Certificate const& cert) {
    return std::visit(
        [](auto const& c) -> Verdict {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, LoopCertificate>) {
            return Verdict::no;
          } else if constexpr (std::is_same_v<T, StrictifyCertificate>) {
            return c.verdict;
          } else {
            return Verdict::yes;
          }
        },
        cert);
  }

  std::string certificate_type(Certificate const& cert) {
    return std::visit(
        [](auto const& c) -> std::string {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, WeightCertificate>) {
            return "weights";
          } else if constexpr (std::is_same_v<T, NaturalMatrixCertificate>) {
            return "matrix-natural";
          } else if constexpr (std::is_same_v<T, ArcticMatrixCertificate>) {
            return "matrix-arctic";
          } else if constexpr (std::is_same_v<T, LoopCertificate>) {
            return c.kind == LoopKind::mixed ? "loop-mixed" : "loop-emitting";
          } else if constexpr (std::is_same_v<T, StrictifyCertificate>) {
            return "strictify-compose";
          } else {
            return "empty-R";
          }
        },
        cert);
  }

  // ---------------------------------------------------------------------------
  // Checkers
  // ---------------------------------------------------------------------------

  namespace {

    std::string rule_label(RelSrs const& system, std::size_t i) {
      return "rule " + std::to_string(i) + " (" + to_string(system.rules[i], system.alphabet) + ")";
    }

    std::string letter_name(RelSrs const& system, Letter l) {
      return l < system.alphabet.size() ? system.alphabet.name(l) : "#" + std::to_string(l);
    }

    template <typename M>
    void check_letters_covered(M const& matrices, RelSrs const& system) {
      for (auto const& rule : system.rules) {
        for (auto const* side : {&rule.lhs, &rule.rhs}) {
          for (auto l : *side) {
            if (matrices.find(l) == matrices.end()) {
              throw CertificateError("no interpretation for letter " + letter_name(system, l));
            }
          }
        }
      }
    }

    template <typename M>
    void check_dimensions(M const& matrices, std::size_t dimension) {
      if (dimension == 0) {
        throw CertificateError("dimension must be positive");
      }
      for (auto const& [l, m] : matrices) {
        if (m.dim() != dimension) {
          throw CertificateError("dimension mismatch: matrix of size " + std::to_string(m.dim())
                                 + " in a dimension " + std::to_string(dimension)
                                 + " certificate");
        }
      }
    }

  }  // namespace

  CheckResult check_weights(WeightCertificate const& cert, RelSrs const& system) {
    for (auto const& [l, w] : cert.weights) {
      if (w < 0) {
        return CheckResult::fail("negative weight for letter " + letter_name(system, l));
      }
    }
    auto weight = [&](Word const& word) {
      Rational sum = 0;
      for (auto l : word) {
        auto it = cert.weights.find(l);
        if (it == cert.weights.end()) {
          throw CertificateError("unknown letter " + letter_name(system, l)
                                 + ": no weight given");
        }
        sum += it->second;
      }
      return sum;
    };
    for (std::size_t i = 0; i < system.rules.size(); ++i) {
      auto const& r  = system.rules[i];
      Rational    wl = weight(r.lhs), wr = weight(r.rhs);
      if (r.is_strict() ? !(wl > wr) : !(wl >= wr)) {
        return CheckResult::fail(rule_label(system, i) + ": weight " + wl.str()
                                 + (r.is_strict() ? " > " : " >= ") + wr.str() + " fails");
      }
    }
    return CheckResult::pass();
  }

  CheckResult check_matrix_natural(NaturalMatrixCertificate const& cert, RelSrs const& system) {
    using S = NaturalSemiring<BigInt>;
    check_dimensions(cert.matrices, cert.dimension);
    check_letters_covered(cert.matrices, system);
    for (auto const& [l, m] : cert.matrices) {
      for (auto const& e : m.entries()) {
        if (e < 0) {
          return CheckResult::fail("negative entry for letter " + letter_name(system, l));
        }
      }
      if (m(0, 0) < 1 || m(m.dim() - 1, m.dim() - 1) < 1) {
        return CheckResult::fail("letter " + letter_name(system, l)
                                 + " is not monotone: a corner entry is < 1");
      }
    }
    auto const d = cert.dimension;
    for (std::size_t i = 0; i < system.rules.size(); ++i) {
      auto const& r = system.rules[i];
      auto        L = interpret<S>(r.lhs, cert.matrices, d);
      auto        R = interpret<S>(r.rhs, cert.matrices, d);
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
          if (L(a, b) < R(a, b)) {
            return CheckResult::fail(rule_label(system, i) + ": entry (" + std::to_string(a + 1)
                                     + "," + std::to_string(b + 1) + ") " + L(a, b).str()
                                     + " < " + R(a, b).str());
          }
        }
      }
      if (r.is_strict() && !(L(0, d - 1) > R(0, d - 1))) {
        return CheckResult::fail(rule_label(system, i) + ": top-right entry "
                                 + L(0, d - 1).str() + " not > " + R(0, d - 1).str());
      }
    }
    return CheckResult::pass();
  }

  namespace {
    std::string arctic_str(Arctic const& a) {
      return a.is_neg_inf() ? "-inf" : a.value().str();
    }
  }  // namespace

  CheckResult check_matrix_arctic(ArcticMatrixCertificate const& cert, RelSrs const& system) {
    using S = ArcticSemiring<BigInt>;
    check_dimensions(cert.matrices, cert.dimension);
    check_letters_covered(cert.matrices, system);
    for (auto const& [l, m] : cert.matrices) {
      if (m(0, 0).is_neg_inf() || m(0, 0).value() < 0) {
        return CheckResult::fail("letter " + letter_name(system, l)
                                 + ": top-left entry must be finite and >= 0");
      }
    }
    auto const d = cert.dimension;
    for (std::size_t i = 0; i < system.rules.size(); ++i) {
      auto const& r = system.rules[i];
      auto        L = interpret<S>(r.lhs, cert.matrices, d);
      auto        R = interpret<S>(r.rhs, cert.matrices, d);
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
          bool ok = r.is_strict() ? much_greater(L(a, b), R(a, b)) : L(a, b) >= R(a, b);
          if (!ok) {
            return CheckResult::fail(rule_label(system, i) + ": entry (" + std::to_string(a + 1)
                                     + "," + std::to_string(b + 1) + ") " + arctic_str(L(a, b))
                                     + (r.is_strict() ? " >> " : " >= ") + arctic_str(R(a, b))
                                     + " fails");
          }
        }
      }
    }
    return CheckResult::pass();
  }

  CheckResult check_order_certificate(OrderCertificate const& cert, RelSrs const& system) {
    try {
      return std::visit(
          [&](auto const& c) -> CheckResult {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, WeightCertificate>) {
              return check_weights(c, system);
            } else if constexpr (std::is_same_v<T, NaturalMatrixCertificate>) {
              return check_matrix_natural(c, system);
            } else {
              return check_matrix_arctic(c, system);
            }
          },
          cert);
    } catch (CertificateError const& e) {
      return CheckResult::fail(e.what());
    }
  }

  CheckResult check_certificate(Certificate const& cert, RelSrs const& system) {
    return std::visit(
        [&](auto const& c) -> CheckResult {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, LoopCertificate>) {
            return check_loop_certificate(c, system);
          } else if constexpr (std::is_same_v<T, EmptyRCertificate>) {
            return system.has_strict() ? CheckResult::fail("R is not empty") : CheckResult::pass();
          } else if constexpr (std::is_same_v<T, StrictifyCertificate>) {
            if (c.verdict == Verdict::yes) {
              if (!c.strictified) {
                return CheckResult::fail("strictify-compose YES without a certificate");
              }
              auto r = check_order_certificate(*c.strictified, strictify(system));
              if (!r) {
                r.reason = "strictified system: " + r.reason;
              }
              return r;
            }
            if (c.verdict != Verdict::no || !c.s_termination || !c.loop) {
              return CheckResult::fail("strictify-compose NO needs s-termination and loop parts");
            }
            auto r = check_order_certificate(*c.s_termination, relative_part_as_strict(system));
            if (!r) {
              r.reason = "S part: " + r.reason;
              return r;
            }
            if (c.loop->kind != LoopKind::mixed) {
              return CheckResult::fail("strictified loop must be a plain loop");
            }
            r = check_loop_certificate(*c.loop, strictify(system));
            if (!r) {
              r.reason = "strictified loop: " + r.reason;
            }
            return r;
          } else {
            return check_order_certificate(OrderCertificate(c), system);
          }
        },
        cert);
  }

  std::optional<ProofOutcome> trivial_verdict(RelSrs const& system) {
    if (!system.has_strict()) {
      ProofOutcome o;
      o.verdict     = Verdict::yes;
      o.certificate = EmptyRCertificate{};
      o.attempts.push_back({"trivial", "R/S", "R is empty"});
      return o;
    }
    for (std::size_t i = 0; i < system.rules.size(); ++i) {
      auto const& r = system.rules[i];
      if (!r.is_strict() || (r.lhs != r.rhs && !r.lhs.empty())) {
        continue;
      }
      LoopCertificate c;
      c.kind  = LoopKind::mixed;
      c.start = r.lhs;
      c.steps = {Step{0, i}};
      if (r.lhs.empty()) {
        c.left = r.rhs;
      }
      ProofOutcome o;
      o.verdict     = Verdict::no;
      o.certificate = std::move(c);
      o.attempts.push_back({"trivial", "R/S",
                            r.lhs.empty() ? "strict rule with empty lhs" : "strict rule l -> l"});
      return o;
    }
    return std::nullopt;
  }

  // ---------------------------------------------------------------------------
  // Weight search
  // ---------------------------------------------------------------------------

  namespace {

    std::vector<Letter> used_letters(RelSrs const& system) {
      std::set<Letter> s;
      for (auto const& r : system.rules) {
        s.insert(r.lhs.begin(), r.lhs.end());
        s.insert(r.rhs.begin(), r.rhs.end());
      }
      return {s.begin(), s.end()};
    }

    struct LinearConstraint {
      std::vector<std::int64_t> coeff;  // per used letter
      std::int64_t              need;   // 1 for strict, 0 for weak
    };

    class WeightSearch {
     public:
      WeightSearch(RelSrs const& system, std::int64_t max_weight, Deadline const& deadline)
          : letters_(used_letters(system)), max_(max_weight), deadline_(deadline) {
        for (auto const& r : system.rules) {
          LinearConstraint c{std::vector<std::int64_t>(letters_.size(), 0), r.is_strict() ? 1 : 0};
          for (auto l : r.lhs) {
            ++c.coeff[slot(l)];
          }
          for (auto l : r.rhs) {
            --c.coeff[slot(l)];
          }
          constraints_.push_back(std::move(c));
        }
        value_.assign(letters_.size(), 0);
      }

      std::optional<std::vector<std::int64_t>> run() {
        if (dfs(0)) {
          return value_;
        }
        return std::nullopt;
      }

      std::vector<Letter> const& letters() const {
        return letters_;
      }

     private:
      std::size_t slot(Letter l) const {
        return static_cast<std::size_t>(
            std::lower_bound(letters_.begin(), letters_.end(), l) - letters_.begin());
      }

      // Best value each constraint can still reach with letters [i, n) free.
      bool feasible(std::size_t i) const {
        for (auto const& c : constraints_) {
          std::int64_t best = 0;
          for (std::size_t j = 0; j < letters_.size(); ++j) {
            best += j < i ? c.coeff[j] * value_[j] : std::max<std::int64_t>(c.coeff[j], 0) * max_;
          }
          if (best < c.need) {
            return false;
          }
        }
        return true;
      }

      bool dfs(std::size_t i) {
        if (++nodes_ % 4096 == 0 && deadline_.expired()) {
          aborted_ = true;
        }
        if (aborted_ || !feasible(i)) {
          return false;
        }
        if (i == letters_.size()) {
          return true;
        }
        for (std::int64_t v = 0; v <= max_; ++v) {
          value_[i] = v;
          if (dfs(i + 1)) {
            return true;
          }
          if (aborted_) {
            return false;
          }
        }
        return false;
      }

      std::vector<Letter>           letters_;
      std::vector<LinearConstraint> constraints_;
      std::vector<std::int64_t>     value_;
      std::int64_t                  max_;
      Deadline const&               deadline_;
      std::size_t                   nodes_   = 0;
      bool                          aborted_ = false;
    };

  }  // namespace

  std::optional<WeightCertificate> search_weights(RelSrs const& system, std::int64_t max_weight,
                                                  Deadline const& deadline) {
    WeightSearch search(system, max_weight, deadline);
    auto         found = search.run();
    if (!found) {
      return std::nullopt;
    }
    WeightCertificate cert;
    for (std::size_t l = 0; l < system.alphabet.size(); ++l) {
      cert.weights[static_cast<Letter>(l)] = 0;
    }
    for (std::size_t i = 0; i < search.letters().size(); ++i) {
      cert.weights[search.letters()[i]] = Rational((*found)[i]);
    }
    if (!check_weights(cert, system)) {
      return std::nullopt;
    }
    return cert;
  }

  // ---------------------------------------------------------------------------
  // Matrix search
  // ---------------------------------------------------------------------------

  namespace {

    using Nat64    = NaturalSemiring<std::int64_t>;
    using Arc64    = ArcticSemiring<std::int64_t>;
    using Arctic64 = BasicArctic<std::int64_t>;

    template <typename S>
    struct Domain;

    template <>
    struct Domain<Nat64> {
      using value_type = std::int64_t;
      static std::vector<value_type> values(std::int64_t max_entry) {
        std::vector<value_type> v;
        for (std::int64_t i = 0; i <= max_entry; ++i) {
          v.push_back(i);
        }
        return v;
      }
      // Both corners >= 1 keep the top-right entry strictly monotone.
      static bool cell_ok(std::size_t cell, std::size_t dim, value_type v) {
        return (cell != 0 && cell + 1 != dim * dim) || v >= 1;
      }
      static std::size_t violations(Matrix<value_type> const& L, Matrix<value_type> const& R,
                                    bool strict) {
        std::size_t n = 0;
        for (std::size_t i = 0; i < L.entries().size(); ++i) {
          n += L.entries()[i] < R.entries()[i];
        }
        auto const d = L.dim();
        if (strict && !(L(0, d - 1) > R(0, d - 1))) {
          ++n;
        }
        return n;
      }
      static OrderCertificate to_certificate(std::size_t d,
                                             std::map<Letter, Matrix<value_type>> const& m) {
        NaturalMatrixCertificate c;
        c.dimension = d;
        for (auto const& [l, x] : m) {
          Matrix<BigInt> y(d, 0);
          for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
              y(i, j) = x(i, j);
            }
          }
          c.matrices[l] = y;
        }
        return c;
      }
    };

    template <>
    struct Domain<Arc64> {
      using value_type = Arctic64;
      static std::vector<value_type> values(std::int64_t max_entry) {
        std::vector<value_type> v{Arctic64::neg_inf()};
        for (std::int64_t i = 0; i <= max_entry; ++i) {
          v.emplace_back(i);
        }
        return v;
      }
      static bool cell_ok(std::size_t cell, std::size_t, value_type const& v) {
        return cell != 0 || (v.is_finite() && v.value() >= 0);
      }
      static std::size_t violations(Matrix<value_type> const& L, Matrix<value_type> const& R,
                                    bool strict) {
        std::size_t n = 0;
        for (std::size_t i = 0; i < L.entries().size(); ++i) {
          auto const& x = L.entries()[i];
          auto const& y = R.entries()[i];
          n += strict ? !much_greater(x, y) : x < y;
        }
        return n;
      }
      static OrderCertificate to_certificate(std::size_t d,
                                             std::map<Letter, Matrix<value_type>> const& m) {
        ArcticMatrixCertificate c;
        c.dimension = d;
        for (auto const& [l, x] : m) {
          Matrix<Arctic> y(d, Arctic::neg_inf());
          for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
              if (x(i, j).is_finite()) {
                y(i, j) = Arctic(BigInt(x(i, j).value()));
              }
            }
          }
          c.matrices[l] = y;
        }
        return c;
      }
    };

    template <typename S>
    class MatrixSearch {
     public:
      using value_type = typename S::value_type;
      using Mat        = Matrix<value_type>;
      using D          = Domain<S>;

      MatrixSearch(RelSrs const& system, MatrixSearchConfig const& config,
                   Deadline const& deadline)
          : system_(system),
            config_(config),
            deadline_(deadline),
            letters_(used_letters(system)),
            values_(D::values(config.max_entry)) {
        // A rule is checked as soon as its last letter (in search order) is set.
        ready_.resize(letters_.size());
        for (std::size_t r = 0; r < system.rules.size(); ++r) {
          std::size_t last = 0;
          bool        any  = false;
          for (auto const* side : {&system.rules[r].lhs, &system.rules[r].rhs}) {
            for (auto l : *side) {
              last = std::max(last, slot(l));
              any  = true;
            }
          }
          if (any) {
            ready_[last].push_back(r);
          } else {
            constant_rules_.push_back(r);  // e -> e; depends on no letter
          }
        }
      }

      std::optional<OrderCertificate> exhaustive(std::size_t d) {
        dim_ = d;
        build_candidates();
        assignment_.assign(letters_.size(), Mat(d, S::zero()));
        leaves_ = 0;
        if (!rules_hold(constant_rules_)) {
          return std::nullopt;
        }
        if (!dfs(0)) {
          return std::nullopt;
        }
        return finish();
      }

      std::optional<OrderCertificate> randomized(std::size_t d, std::mt19937_64& rng) {
        dim_ = d;
        if (letters_.empty()) {
          return std::nullopt;
        }
        std::size_t const restart_every = 1000;
        std::size_t       best          = 0;
        for (std::size_t trial = 0; trial < config_.random_trials; ++trial) {
          if (trial % restart_every == 0) {
            assignment_.clear();
            for (std::size_t i = 0; i < letters_.size(); ++i) {
              assignment_.push_back(random_matrix(rng));
            }
            best = score();
          }
          if (best == 0) {
            return finish();
          }
          if ((trial & 255) == 0 && deadline_.expired()) {
            return std::nullopt;
          }
          auto        li    = static_cast<std::size_t>(rng() % letters_.size());
          auto        ei    = static_cast<std::size_t>(rng() % (d * d));
          auto        saved = assignment_[li];
          auto&       m     = assignment_[li];
          m(ei / d, ei % d) = random_value(rng, ei);
          auto s            = score();
          if (s <= best) {
            best = s;
          } else {
            m = saved;
          }
        }
        if (best == 0) {
          return finish();
        }
        return std::nullopt;
      }

     private:
      std::size_t slot(Letter l) const {
        return static_cast<std::size_t>(
            std::lower_bound(letters_.begin(), letters_.end(), l) - letters_.begin());
      }

      value_type random_value(std::mt19937_64& rng, std::size_t cell) {
        while (true) {
          auto const& v = values_[rng() % values_.size()];
          if (D::cell_ok(cell, dim_, v)) {
            return v;
          }
        }
      }

      Mat random_matrix(std::mt19937_64& rng) {
        Mat m(dim_, S::zero());
        for (std::size_t i = 0; i < dim_ * dim_; ++i) {
          m(i / dim_, i % dim_) = random_value(rng, i);
        }
        return m;
      }

      void build_candidates() {
        candidates_.clear();
        auto const        cells = dim_ * dim_;
        std::vector<std::size_t> idx(cells, 0);
        while (true) {
          bool ok = true;
          for (std::size_t c = 0; c < cells; ++c) {
            ok = ok && D::cell_ok(c, dim_, values_[idx[c]]);
          }
          if (ok) {
            Mat m(dim_, S::zero());
            for (std::size_t c = 0; c < cells; ++c) {
              m(c / dim_, c % dim_) = values_[idx[c]];
            }
            candidates_.push_back(std::move(m));
          }
          std::size_t c = cells;
          while (c > 0 && idx[c - 1] + 1 == values_.size()) {
            idx[--c] = 0;
          }
          if (c == 0) {
            break;
          }
          ++idx[c - 1];
        }
      }

      Mat eval(Word const& w) const {
        auto out = identity_matrix<S>(dim_);
        for (auto l : w) {
          out = multiply<S>(out, assignment_[slot(l)]);
        }
        return out;
      }

      bool rules_hold(std::vector<std::size_t> const& rules) const {
        try {
          for (auto r : rules) {
            auto const& rule = system_.rules[r];
            if (D::violations(eval(rule.lhs), eval(rule.rhs), rule.is_strict()) != 0) {
              return false;
            }
          }
        } catch (ArithmeticOverflow const&) {
          return false;
        }
        return true;
      }

      std::size_t score() const {
        std::size_t total = 0;
        for (auto const& rule : system_.rules) {
          try {
            total += D::violations(eval(rule.lhs), eval(rule.rhs), rule.is_strict());
          } catch (ArithmeticOverflow const&) {
            total += 1000;
          }
        }
        return total;
      }

      bool dfs(std::size_t i) {
        if (i == letters_.size()) {
          return true;
        }
        for (auto const& cand : candidates_) {
          if (++leaves_ > config_.max_candidates) {
            return false;
          }
          if ((leaves_ & 4095) == 0 && deadline_.expired()) {
            leaves_ = config_.max_candidates + 1;
            return false;
          }
          assignment_[i] = cand;
          if (rules_hold(ready_[i]) && dfs(i + 1)) {
            return true;
          }
        }
        return false;
      }

      std::optional<OrderCertificate> finish() const {
        std::map<Letter, Mat> m;
        for (std::size_t i = 0; i < letters_.size(); ++i) {
          m[letters_[i]] = assignment_[i];
        }
        for (std::size_t l = 0; l < system_.alphabet.size(); ++l) {
          m.emplace(static_cast<Letter>(l), identity_matrix<S>(dim_));
        }
        auto cert = D::to_certificate(dim_, m);
        if (!check_order_certificate(cert, system_)) {
          return std::nullopt;
        }
        return cert;
      }

      RelSrs const&                         system_;
      MatrixSearchConfig const&             config_;
      Deadline const&                       deadline_;
      std::vector<Letter>                   letters_;
      std::vector<value_type>               values_;
      std::vector<std::vector<std::size_t>> ready_;
      std::vector<std::size_t>              constant_rules_;
      std::vector<Mat>                      candidates_;
      std::vector<Mat>                      assignment_;
      std::size_t                           dim_    = 1;
      std::size_t                           leaves_ = 0;
    };

    template <typename S>
    std::optional<OrderCertificate> search_matrix_in(RelSrs const& system,
                                                     MatrixSearchConfig const& config,
                                                     Deadline const&           deadline) {
      MatrixSearch<S> search(system, config, deadline);
      for (std::size_t d = 1; d <= std::min<std::size_t>(config.max_dim, 2); ++d) {
        if (auto c = search.exhaustive(d)) {
          return c;
        }
        if (deadline.expired()) {
          return std::nullopt;
        }
      }
      std::mt19937_64 rng(config.seed);
      for (std::size_t d = 3; d <= config.max_dim; ++d) {
        if (auto c = search.randomized(d, rng)) {
          return c;
        }
      }
      return std::nullopt;
    }

  }  // namespace

  std::optional<OrderCertificate> search_matrix(RelSrs const& system, SemiringKind semiring,
                                                MatrixSearchConfig const& config,
                                                Deadline const&           deadline) {
    if (semiring == SemiringKind::natural) {
      return search_matrix_in<Nat64>(system, config, deadline);
    }
    return search_matrix_in<Arc64>(system, config, deadline);
  }

  // ---------------------------------------------------------------------------
  // Strategy
  // ---------------------------------------------------------------------------

  namespace {

    class Prover {
     public:
      Prover(ProveBudget const& budget)
          : budget_(budget),
            deadline_(budget.timeout_seconds > 0
                          ? Deadline(std::chrono::duration<double>(budget.timeout_seconds))
                          : Deadline()) {}

      ProofOutcome run(RelSrs const& system) {
        if (auto t = trivial_verdict(system)) {
          return *t;
        }
        auto const s_system = relative_part_as_strict(system);
        auto       s_cert   = find_order(s_system, "S");
        bool       strict_loop_searched = false;
        if (!s_cert && !timed_out()) {
          auto loop = loop_search(s_system, "S", LoopKind::mixed);
          if (loop) {
            log("S", "SN(S) disproved; skipping strictification");
          }
        }
        if (s_cert) {
          auto const strict_system = strictify(system);
          if (auto c = find_order(strict_system, "R u S")) {
            return finish(StrictifyCertificate{Verdict::yes, std::move(*c), {}, {}}, system);
          }
          if (!timed_out()) {
            auto loop = loop_search(strict_system, "R u S", LoopKind::mixed);
            strict_loop_searched = !loop.budget_exhausted && !loop.timed_out;
            if (loop) {
              return finish(
                  StrictifyCertificate{Verdict::no, {}, std::move(*s_cert), *loop.certificate},
                  system);
            }
          }
        }
        if (auto c = find_order(system, "R/S")) {
          return finish(std::visit([](auto&& x) { return Certificate(std::move(x)); },
                                   std::move(*c)),
                        system);
        }
        if (!timed_out()) {
          auto loop = loop_search(system, "R/S", LoopKind::emitting);
          if (loop) {
            return finish(*loop.certificate, system);
          }
        }
        // With SN(S) known, every mixed loop is a loop of the strictified
        // system, which was already searched under the same bounds.
        if (!timed_out() && !strict_loop_searched) {
          auto loop = loop_search(system, "R/S", LoopKind::mixed);
          if (loop) {
            return finish(*loop.certificate, system);
          }
        }
        ProofOutcome out;
        out.verdict  = Verdict::maybe;
        out.reason   = timed_out() ? "timeout" : "no method succeeded within the budget";
        out.attempts = std::move(attempts_);
        return out;
      }

     private:
      bool timed_out() const {
        return deadline_.expired();
      }

      void log(std::string target, std::string outcome, std::string method = "strategy") {
        attempts_.push_back({std::move(method), std::move(target), std::move(outcome)});
      }

      std::optional<OrderCertificate> find_order(RelSrs const& sys, std::string const& target) {
        if (timed_out()) {
          return std::nullopt;
        }
        auto const w_method = "weights max=" + std::to_string(budget_.max_weight);
        if (auto w = search_weights(sys, budget_.max_weight, deadline_)) {
          log(target, "found", w_method);
          return OrderCertificate(std::move(*w));
        }
        log(target, "none", w_method);
        auto const bounds = " dim<=" + std::to_string(budget_.matrix.max_dim)
                            + " entries<=" + std::to_string(budget_.matrix.max_entry);
        for (auto kind : {SemiringKind::natural, SemiringKind::arctic}) {
          if (timed_out()) {
            return std::nullopt;
          }
          auto const method
              = std::string(kind == SemiringKind::natural ? "matrix-natural" : "matrix-arctic")
                + bounds;
          if (auto m = search_matrix(sys, kind, budget_.matrix, deadline_)) {
            log(target, "found", method);
            return m;
          }
          log(target, timed_out() ? "timeout" : "none", method);
        }
        return std::nullopt;
      }

      LoopSearchResult loop_search(RelSrs const& sys, std::string const& target, LoopKind kind) {
        auto res = kind == LoopKind::mixed ? search_mixed_loop(sys, budget_.loop, deadline_)
                                           : search_emitting_loop(sys, budget_.loop, deadline_);
        std::string method = kind == LoopKind::mixed ? "loop-mixed" : "loop-emitting";
        method += " len<=" + std::to_string(budget_.loop.max_word_len)
                  + " steps<=" + std::to_string(budget_.loop.max_steps);
        std::string outcome = res ? "found"
                              : res.timed_out        ? "timeout"
                              : res.budget_exhausted ? "none (state budget exhausted after "
                                                           + std::to_string(res.states_explored)
                                                           + " states)"
                                                     : "none";
        log(target, outcome, method);
        return res;
      }

      ProofOutcome finish(Certificate cert, RelSrs const& system) {
        ProofOutcome out;
        auto         check = check_certificate(cert, system);
        if (!check) {
          // Would be a bug in a search; never report an unchecked verdict.
          out.verdict = Verdict::maybe;
          out.reason  = "internal: certificate rejected: " + check.reason;
        } else {
          out.verdict     = claimed_verdict(cert);
          out.certificate = std::move(cert);
        }
        out.attempts = std::move(attempts_);
        return out;
      }

      ProveBudget const&   budget_;
      Deadline             deadline_;
      std::vector<Attempt> attempts_;
    };

  }  // namespace

  ProofOutcome prove(RelSrs const& system, ProveBudget const& budget) {
    return Prover(budget).run(system);
  }

}  // namespace relsrs
