// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.  Criterion 10 runs only when RELSRS_TPDB_DIR points at an
// SRS_Relative checkout.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "relsrs/cert_io.hpp"
#include "relsrs/enumerate.hpp"
#include "relsrs/grid.hpp"
#include "relsrs/nonterm.hpp"
#include "relsrs/term.hpp"
#include "support.hpp"

using namespace relsrs;
using support::sys;

namespace {

  struct Result {
    bool        ok = true;
    std::string detail;

    void require(bool cond, std::string const& what) {
      if (!cond && ok) {
        ok     = false;
        detail = what;
      }
    }
  };

  // ---- independent matrix checks ------------------------------------------

  std::string word_of(Word const& w, Alphabet const& a) {
    std::string s;
    for (auto l : w) {
      s += a.name(l);
    }
    return s;
  }

  std::map<char, support::NatRows> nat_rows(NaturalMatrixCertificate const& c, Alphabet const& a) {
    std::map<char, support::NatRows> out;
    for (auto const& [l, m] : c.matrices) {
      support::NatRows rows(m.dim(), std::vector<BigInt>(m.dim()));
      for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
          rows[i][j] = m(i, j);
        }
      }
      out[a.name(l)[0]] = rows;
    }
    return out;
  }

  std::map<char, support::ArcRows> arc_rows(ArcticMatrixCertificate const& c, Alphabet const& a) {
    std::map<char, support::ArcRows> out;
    for (auto const& [l, m] : c.matrices) {
      support::ArcRows rows(m.dim(), std::vector<std::optional<BigInt>>(m.dim()));
      for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
          if (m(i, j).is_finite()) {
            rows[i][j] = m(i, j).value();
          }
        }
      }
      out[a.name(l)[0]] = rows;
    }
    return out;
  }

  // Corners >= 1, entries >= 0; relative rules entry-wise >=, strict rules
  // additionally a larger top-right entry.
  bool natural_ok(NaturalMatrixCertificate const& c, RelSrs const& s) {
    auto        m = nat_rows(c, s.alphabet);
    std::size_t d = c.dimension;
    for (auto const& [_, x] : m) {
      for (auto const& row : x) {
        for (auto const& e : row) {
          if (e < 0) {
            return false;
          }
        }
      }
      if (x[0][0] < 1 || x[d - 1][d - 1] < 1) {
        return false;
      }
    }
    for (auto const& r : s.rules) {
      auto L = support::product(word_of(r.lhs, s.alphabet), m, support::nat_identity(d), support::nat_mul);
      auto R = support::product(word_of(r.rhs, s.alphabet), m, support::nat_identity(d), support::nat_mul);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          if (L[i][j] < R[i][j]) {
            return false;
          }
        }
      }
      if (r.is_strict() && !(L[0][d - 1] > R[0][d - 1])) {
        return false;
      }
    }
    return true;
  }

  // Top-left finite and >= 0; relative rules entry-wise >=, strict rules
  // entry-wise >> (where -inf >> -inf).
  bool arctic_ok(ArcticMatrixCertificate const& c, RelSrs const& s) {
    auto        m = arc_rows(c, s.alphabet);
    std::size_t d = c.dimension;
    for (auto const& [_, x] : m) {
      if (!x[0][0] || *x[0][0] < 0) {
        return false;
      }
    }
    auto ge = [](std::optional<BigInt> const& x, std::optional<BigInt> const& y) {
      return !y || (x && *x >= *y);
    };
    auto gg = [](std::optional<BigInt> const& x, std::optional<BigInt> const& y) {
      return !y ? true : (x && *x > *y);
    };
    for (auto const& r : s.rules) {
      auto L = support::product(word_of(r.lhs, s.alphabet), m, support::arc_identity(d), support::arc_mul);
      auto R = support::product(word_of(r.rhs, s.alphabet), m, support::arc_identity(d), support::arc_mul);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          if (!(r.is_strict() ? gg(L[i][j], R[i][j]) : ge(L[i][j], R[i][j]))) {
            return false;
          }
        }
      }
    }
    return true;
  }

  // ---- criteria -----------------------------------------------------------

  Result certificate_anchors() {
    Result r;
    auto   s11 = read_srs_file(support::fixture("rel11.srs"));
    auto   s12 = read_srs_file(support::fixture("rel12.srs"));
    auto   c11 = std::get<ArcticMatrixCertificate>(
        read_certificate_file(support::fixture("rel11.cert"), s11.alphabet));
    auto c12 = std::get<NaturalMatrixCertificate>(
        read_certificate_file(support::fixture("rel12.cert"), s12.alphabet));
    r.require(c11.dimension == 4 && c12.dimension == 5, "unexpected anchor dimensions");
    r.require(bool(check_matrix_arctic(c11, s11)), "rel11 arctic certificate rejected");
    r.require(bool(check_matrix_natural(c12, s12)), "rel12 natural certificate rejected");
    r.require(arctic_ok(c11, s11) && natural_ok(c12, s12), "independent check rejects an anchor");

    std::mt19937_64 rng(20240611);
    std::size_t     accepted = 0, rejected = 0;

    // rel12: the prescribed mutation b(2,3) 4 -> 0, then 19 entries +-1
    {
      auto b = s12.alphabet.index("b");
      r.require(c12.matrices[b](1, 2) == 4, "rel12 b(2,3) is not 4");
      std::vector<NaturalMatrixCertificate> muts;
      auto                                  m = c12;
      m.matrices[b](1, 2) = 0;
      muts.push_back(m);
      while (muts.size() < 20) {
        auto it = c12.matrices.begin();
        std::advance(it, rng() % c12.matrices.size());
        std::size_t i = rng() % 5, j = rng() % 5;
        auto        x = c12;
        auto&       e = x.matrices[it->first](i, j);
        e += (rng() % 2 || e == 0) ? 1 : -1;
        muts.push_back(x);
      }
      for (std::size_t k = 0; k < muts.size(); ++k) {
        bool lib = bool(check_matrix_natural(muts[k], s12));
        bool ind = natural_ok(muts[k], s12);
        r.require(lib == ind, "rel12 mutation " + std::to_string(k) + ": library and recomputation disagree");
        (lib ? accepted : rejected) += 1;
        if (k == 0) {
          r.require(!lib, "prescribed rel12 mutation accepted");
        }
      }
    }
    // rel11: the prescribed mutation p(2,3) 1 -> 0, then 19 of +-1 / finite <-> -inf
    {
      auto p = s11.alphabet.index("p");
      r.require(c11.matrices[p](1, 2) == Arctic(BigInt(1)), "rel11 p(2,3) is not 1");
      std::vector<ArcticMatrixCertificate> muts;
      auto                                 m = c11;
      m.matrices[p](1, 2) = Arctic(BigInt(0));
      muts.push_back(m);
      while (muts.size() < 20) {
        auto it = c11.matrices.begin();
        std::advance(it, rng() % c11.matrices.size());
        std::size_t i = rng() % 4, j = rng() % 4;
        auto        x = c11;
        auto&       e = x.matrices[it->first](i, j);
        if (!e.is_finite()) {
          e = Arctic(BigInt(0));
        } else {
          switch (rng() % 3) {
            case 0: e = Arctic(e.value() + 1); break;
            case 1: e = Arctic(e.value() - 1); break;
            default: e = Arctic::neg_inf();
          }
        }
        muts.push_back(x);
      }
      for (std::size_t k = 0; k < muts.size(); ++k) {
        bool lib = bool(check_matrix_arctic(muts[k], s11));
        bool ind = arctic_ok(muts[k], s11);
        r.require(lib == ind, "rel11 mutation " + std::to_string(k) + ": library and recomputation disagree");
        (lib ? accepted : rejected) += 1;
        if (k == 0) {
          r.require(!lib, "prescribed rel11 mutation accepted");
        }
      }
    }
    if (r.ok) {
      r.detail = "anchors accepted; 40 mutations: " + std::to_string(rejected) + " rejected, "
                 + std::to_string(accepted) + " re-accepted and re-verified";
    }
    return r;
  }

  std::optional<std::size_t> simulate(RelSrs const& s, LoopCertificate const& c) {
    support::SimLoop loop{word_of(c.start, s.alphabet), word_of(c.left, s.alphabet),
                          word_of(c.right, s.alphabet), {}};
    for (auto const& st : c.steps) {
      loop.steps.push_back({st.position, st.rule});
    }
    return support::unroll(support::to_strings(s), loop, 3);
  }

  Result loop_anchors() {
    Result r;
    struct Case {
      char const* system;
      std::size_t max_steps;
      std::string from;
    };
    std::ostringstream found;
    for (auto const& c : {Case{"ab -> a, c ->= bc", 2, "abc"}, Case{"bab -> a, c ->= cb, d ->= bd", 3, "cad"}}) {
      auto s   = sys(c.system);
      auto res = search_mixed_loop(s, {5, c.max_steps, 0});
      r.require(res.certificate.has_value(), std::string("no loop for ") + c.system);
      if (!res.certificate) {
        continue;
      }
      auto const& cert = *res.certificate;
      r.require(cert.steps.size() <= c.max_steps, std::string("loop too long for ") + c.system);
      r.require(bool(check_loop_certificate(cert, s)), std::string("loop rejected for ") + c.system);
      auto sim = simulate(s, cert);
      r.require(sim && *sim > 0, std::string("loop does not replay for ") + c.system);
      auto rev = reverse_loop_certificate(cert, s);
      r.require(bool(check_loop_certificate(rev, reverse_system(s))),
                std::string("reversed loop rejected for ") + c.system);

      // the loop from the listed start word itself
      Word v;
      for (char ch : c.from) {
        v.push_back(s.alphabet.index(std::string(1, ch)));
      }
      auto at = search_mixed_loop_from(s, v, {5, c.max_steps, 0});
      r.require(at.certificate && at.certificate->start == v && at.certificate->left.empty()
                    && at.certificate->right.empty() && bool(check_loop_certificate(*at.certificate, s)),
                "no loop from " + c.from);
      found << " " << word_of(cert.start, s.alphabet) << "/" << cert.steps.size();
    }
    if (r.ok) {
      r.detail = "loops (start/steps):" + found.str() + "; reversals re-check";
    }
    return r;
  }

  Result closure_anchors() {
    Result      r;
    std::size_t const bound = 20;
    auto        none   = [&](RelSrs const& s, std::string const& name) {
      auto res = forward_closures(s, bound);
      r.require(!res.truncated, "closure saturation truncated for " + name);
      bool looping = false;
      for (auto const& c : res.closures) {
        looping = looping || (is_looping(c) && c.strict_steps > 0);
      }
      r.require(!looping, "looping closure found for " + name);
      return res.closures.size();
    };
    auto cad = sys("bab -> a, c ->= cb, d ->= bd");
    auto n1  = none(sys("ab -> a, c ->= bc"), "abc");
    auto n2  = none(cad, "cad");
    auto n3  = none(reverse_system(cad), "reversed cad");

    auto        pos = sys("ba -> a, c ->= cb");
    std::size_t minimal = 0;
    for (std::size_t b = 1; b <= bound && minimal == 0; ++b) {
      if (find_looping_forward_closure(pos, b)) {
        minimal = b;
      }
    }
    r.require(minimal != 0, "no looping closure for {ba -> a, c ->= cb}");
    if (minimal) {
      auto c = *find_looping_forward_closure(pos, bound);
      r.require(c.strict_steps > 0, "positive closure has no strict step");
      r.require(bool(check_loop_certificate(to_loop_certificate(c, pos), pos)),
                "positive closure does not give a loop certificate");
    }
    if (r.ok) {
      r.detail = "bound 20: none among " + std::to_string(n1) + "/" + std::to_string(n2) + "/"
                 + std::to_string(n3) + " closures; positive case from bound " + std::to_string(minimal);
    }
    return r;
  }

  Result emitting_anchor() {
    Result r;
    auto   s   = sys("a -> b, c ->= ac");
    auto   res = search_emitting_loop(s);
    r.require(res.certificate.has_value(), "no emitting loop");
    if (res.certificate) {
      auto const& c = *res.certificate;
      r.require(c.kind == LoopKind::emitting, "wrong loop kind");
      r.require(c.left == Word{s.alphabet.index("a")}, "context u is " + word_of(c.left, s.alphabet));
      r.require(bool(check_loop_certificate(c, s)), "emitting certificate rejected");
      r.detail = "v=" + word_of(c.start, s.alphabet) + " u=" + word_of(c.left, s.alphabet);
    }
    return r;
  }

  Result grid_anchors() {
    Result r;
    auto   first  = sys("ac -> c, ε ->= ab, ab ->= ε");
    auto   second = sys("ac -> c, ε ->= ab, ba ->= ε");
    auto   m      = check_grid_algebra(grid_fixture_m(), first, 50);
    r.require(m.ok() && m.find("model"), "M is not a model on B=50: " + m.to_string());
    auto i = check_grid_algebra(grid_fixture_i_coordinate(), first, 30);
    r.require(i.ok() && i.find("monotone") && i.find("compatible"), "I/coordinate: " + i.to_string());
    auto d = check_grid_algebra(grid_fixture_i_difference(), second, 30);
    r.require(d.ok() && d.find("compatible"), "I/difference: " + d.to_string());
    auto f  = check_grid_algebra(grid_fixture_i_coordinate(), second, 30);
    auto mp = f.find("model");
    r.require(mp && !mp->ok, "I model property does not fail on the second system");
    if (mp && !mp->ok) {
      r.require(mp->counterexample.find("ba_I(0,0) = (1,1) != (0,0)") != std::string::npos,
                "unexpected counterexample " + mp->counterexample);
      auto ba = Word{second.alphabet.index("b"), second.alphabet.index("a")};
      for (std::int64_t x = 0; x <= 30; ++x) {
        r.require(apply_grid(grid_fixture_i_coordinate(), ba, second.alphabet, {x, 0})
                      == GridPoint{x + 1, 1},
                  "ba_I(x,0) != (x+1,1) at x=" + std::to_string(x));
      }
      r.detail = "counterexample " + mp->counterexample;
    }
    return r;
  }

  Result enumeration_anchors() {
    Result r;
    struct Target {
      std::size_t k;
      char const* text;
      std::size_t size;
    };
    std::vector<Target> targets{{2, "aa -> ε, abb ->= abbba", 10},
                                {2, "aabba -> baab, ε ->= a", 10},
                                {3, "ac -> c, ε ->= ab, ab ->= ε", 7},
                                {3, "ac -> c, ε ->= ab, ba ->= ε", 7}};
    std::map<CanonicalKey, bool> wanted;
    for (auto const& t : targets) {
      auto s = parse_compact(t.text, Alphabet::standard(t.k));
      r.require(system_size(s) == t.size, std::string("system_size wrong for ") + t.text);
      wanted[canonical_key(s)] = false;
    }
    std::size_t total = 0;
    for (std::size_t k : {2, 3}) {
      EnumerationConfig cfg;
      cfg.alphabet_size = k;
      cfg.max_size      = k == 2 ? 10 : 7;
      enumerate_systems(cfg, [&](RelSrs const& s) {
        ++total;
        if (system_size(s) >= 7) {
          auto it = wanted.find(system_key(s));
          if (it != wanted.end()) {
            it->second = true;
          }
        }
      });
    }
    for (auto const& [key, seen] : wanted) {
      r.require(seen, "a listed system is missing from the enumeration");
    }
    EnumerationConfig small;
    small.alphabet_size = 2;
    small.max_size      = 4;
    auto stats          = enumerate_systems(small, [](RelSrs const&) {});
    auto oracle         = support::naive_counts(2, 4);
    for (std::size_t s = 1; s <= 4; ++s) {
      auto got = stats.emitted.count(s) ? stats.emitted.at(s) : 0;
      r.require(got == oracle[s], "size " + std::to_string(s) + ": " + std::to_string(got)
                                      + " systems, oracle " + std::to_string(oracle[s]));
    }
    if (r.ok) {
      r.detail = "4 listed systems found among " + std::to_string(total)
                 + "; k=2 size<=4 counts match the brute-force oracle";
    }
    return r;
  }

  Result soundness_sweep() {
    Result            r;
    EnumerationConfig cfg;
    cfg.alphabet_size = 2;
    cfg.max_size      = 5;
    std::size_t n = 0, yes = 0, no = 0, maybe = 0, sim = 0;
    enumerate_systems(cfg, [&](RelSrs const& s) {
      ++n;
      auto o    = prove(s);
      auto loop = support::simulate_loop(support::to_strings(s), 2);
      sim += loop.has_value();
      switch (o.verdict) {
        case Verdict::yes:
          ++yes;
          r.require(!loop, "YES for " + to_string(s) + " but the simulator finds a loop");
          break;
        case Verdict::no:
          ++no;
          r.require(o.certificate && bool(check_certificate(*o.certificate, s)),
                    "NO certificate does not re-check for " + to_string(s));
          break;
        case Verdict::maybe: ++maybe; break;
      }
      if (o.certificate) {
        r.require(bool(check_certificate(*o.certificate, s)), "certificate rejected for " + to_string(s));
      }
    });
    if (r.ok) {
      r.detail = std::to_string(n) + " systems: YES " + std::to_string(yes) + ", NO " + std::to_string(no)
                 + ", MAYBE " + std::to_string(maybe) + "; simulator loops " + std::to_string(sim);
    }
    return r;
  }

  Result strategy_fixtures() {
    Result r;
    struct Case {
      char const* system;
      Verdict     verdict;
      char const* type;
    };
    std::vector<Case> cases{
        {"ab -> a, b ->= ε", Verdict::yes, "strictify-compose"},
        // S = {c -> bc} loops by itself; the verdict comes from a mixed loop
        {"ab -> a, c ->= bc", Verdict::no, "loop-mixed"},
        {"b -> a, a ->= b", Verdict::no, "strictify-compose"},
        {"ac -> c, ε ->= ab, ab ->= ε", Verdict::maybe, ""},
        {"aa -> a, b ->= bb", Verdict::yes, "weights"},
        {"ba -> ab, a ->= aa", Verdict::no, "loop-mixed"},
        {"a -> ε, b ->= a", Verdict::yes, "strictify-compose"},
        {"ε -> a, b ->= ε", Verdict::no, "loop-mixed"},
        {"a -> b, c ->= ac", Verdict::no, "loop-emitting"},
        {"a ->= b, b ->= a", Verdict::yes, "empty-R"},
    };
    std::ostringstream summary;
    for (auto const& c : cases) {
      auto s = sys(c.system);
      auto o = prove(s);
      r.require(o.verdict == c.verdict,
                std::string(c.system) + ": got " + relsrs::to_string(o.verdict));
      if (c.verdict == Verdict::maybe) {
        r.require(!o.certificate && !o.attempts.empty(), std::string(c.system) + ": MAYBE without log");
        continue;
      }
      if (!o.certificate) {
        r.require(false, std::string(c.system) + ": no certificate");
        continue;
      }
      r.require(certificate_type(*o.certificate) == c.type,
                std::string(c.system) + ": certificate type " + certificate_type(*o.certificate));
      r.require(bool(check_certificate(*o.certificate, s)), std::string(c.system) + ": certificate rejected");
      if (auto const* sc = std::get_if<StrictifyCertificate>(&*o.certificate)) {
        if (sc->verdict == Verdict::yes) {
          r.require(sc->strictified && bool(check_order_certificate(*sc->strictified, strictify(s))),
                    std::string(c.system) + ": strictified part rejected");
          if (std::string(c.system) == "ab -> a, b ->= ε") {
            r.require(sc->strictified && std::holds_alternative<WeightCertificate>(*sc->strictified),
                      "strictified part is not a weight certificate");
          }
        } else {
          r.require(sc->s_termination
                        && bool(check_order_certificate(*sc->s_termination, relative_part_as_strict(s))),
                    std::string(c.system) + ": S part rejected");
          r.require(sc->loop && bool(check_loop_certificate(*sc->loop, strictify(s))),
                    std::string(c.system) + ": strictified loop rejected");
        }
      }
      summary << relsrs::to_string(o.verdict)[0];
    }
    if (r.ok) {
      r.detail = "10 fixtures as expected (" + summary.str() + "+MAYBE)";
    }
    return r;
  }

  Result round_trip() {
    Result            r;
    EnumerationConfig cfg;
    cfg.alphabet_size = 3;
    cfg.max_size      = 7;
    std::vector<RelSrs> picked;
    std::size_t         seen = 0;
    enumerate_systems(cfg, [&](RelSrs const& s) {
      // every 97th system, spread over all sizes
      if (seen++ % 97 == 0 && picked.size() < 1000) {
        picked.push_back(s);
      }
    });
    for (auto const& s : picked) {
      auto once  = print_srs(to_document(s));
      auto doc   = parse_srs(once);
      auto twice = print_srs(doc);
      r.require(once == twice, "not byte-stable: " + once);
      r.require(to_system(doc).rules == s.rules, "rules changed: " + once);
    }
    r.require(picked.size() == 1000, "only " + std::to_string(picked.size()) + " systems");
    if (r.ok) {
      r.detail = "1000 systems print -> parse -> print byte-stable";
    }
    return r;
  }

  Result corpus(std::string const& dir) {
    Result      r;
    std::size_t files = 0, decided = 0;
    ProveBudget b;
    b.timeout_seconds = 2;
    for (auto const& e : std::filesystem::recursive_directory_iterator(dir)) {
      if (e.path().extension() != ".srs") {
        continue;
      }
      ++files;
      try {
        auto s  = read_srs_file(e.path().string());
        auto st = strictify(s);
        r.require(st.rules.size() == s.rules.size(), "strictify changed the rule count: " + e.path().string());
        auto o = prove(s, b);
        r.require(!o.attempts.empty() || trivial_verdict(s), "no attempt log for " + e.path().string());
        decided += o.verdict != Verdict::maybe;
      } catch (std::exception const& ex) {
        r.require(false, e.path().string() + ": " + ex.what());
      }
    }
    r.require(files > 0, "no .srs files under " + dir);
    if (r.ok) {
      r.detail = std::to_string(files) + " files parsed; " + std::to_string(decided) + " decided";
    }
    return r;
  }

}  // namespace

int main() {
  struct Criterion {
    int                     id;
    char const*             name;
    double                  limit;  // seconds
    std::function<Result()> run;
  };
  std::vector<Criterion> criteria{
      {1, "certificate anchors", 1, certificate_anchors},
      {2, "loop anchors", 1, loop_anchors},
      {3, "forward-closure anchors", 10, closure_anchors},
      {4, "emitting-loop anchor", 1, emitting_anchor},
      {5, "grid algebra anchors", 5, grid_anchors},
      {6, "enumeration anchors", 60, enumeration_anchors},
      {7, "prover soundness sweep", 600, soundness_sweep},
      {8, "strictification strategy", 30, strategy_fixtures},
      {9, "format round-trip", 5, round_trip},
  };
  if (char const* dir = std::getenv("RELSRS_TPDB_DIR")) {
    criteria.push_back({10, "TPDB corpus", 1e9, [d = std::string(dir)] { return corpus(d); }});
  }

  bool all = true;
  for (auto const& c : criteria) {
    auto   t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (std::exception const& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.ok && secs > c.limit) {
      r = {false, "took longer than " + std::to_string(c.limit) + " s; " + r.detail};
    }
    all = all && r.ok;
    std::cout << "criterion " << c.id << " (" << c.name << "): " << (r.ok ? "PASS" : "FAIL") << " ["
              << std::fixed << std::setprecision(2) << secs << " s] " << r.detail << std::endl;
  }
  if (!std::getenv("RELSRS_TPDB_DIR")) {
    std::cout << "criterion 10 (TPDB corpus): SKIP (set RELSRS_TPDB_DIR to an SRS_Relative checkout)\n";
  }
  return all ? 0 : 1;
}
