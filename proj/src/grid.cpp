#include "relsrs/grid.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace relsrs {

  GridAlgebra grid_fixture_m() {
    return {"M", GridInterpretation::m, GridOrder::none, ModelScope::all_rules};
  }
  GridAlgebra grid_fixture_i_coordinate() {
    return {"I/coordinate", GridInterpretation::i, GridOrder::coordinate,
            ModelScope::relative_rules};
  }
  GridAlgebra grid_fixture_i_difference() {
    return {"I/difference", GridInterpretation::i, GridOrder::difference, ModelScope::none};
  }

  bool GridReport::ok() const {
    return std::all_of(properties.begin(), properties.end(),
                       [](GridProperty const& p) { return p.ok; });
  }

  GridProperty const* GridReport::find(std::string const& name) const {
    for (auto const& p : properties) {
      if (p.name == name) {
        return &p;
      }
    }
    return nullptr;
  }

  std::string GridReport::to_string() const {
    std::ostringstream out;
    for (auto const& p : properties) {
      out << p.name << ": ";
      if (p.ok) {
        out << "verified up to " << bound << "\n";
      } else {
        out << "fails: " << p.counterexample << "\n";
      }
    }
    return out.str();
  }

  namespace {

    GridPoint apply_letter(GridInterpretation interp, char letter, GridPoint p) {
      auto [x, y] = p;
      if (interp == GridInterpretation::m) {
        switch (letter) {
          case 'a':
            return {std::max<std::int64_t>(0, x - 1), 0};
          case 'b':
            return {x + 1, 0};
          default:
            return {0, 0};
        }
      }
      switch (letter) {
        case 'a':
          return y > 0 ? GridPoint{x, y - 1} : GridPoint{x + 1, 0};
        case 'b':
          return {x, y + 1};
        default:
          return {x, 0};
      }
    }

    char letter_char(Alphabet const& alphabet, Letter l) {
      auto const& n = alphabet.name(l);
      if (n != "a" && n != "b" && n != "c") {
        throw std::invalid_argument("grid algebras interpret only the letters a, b, c; got " + n);
      }
      return n[0];
    }

    bool greater(GridOrder order, GridPoint p, GridPoint q) {
      auto [x1, y1] = p;
      auto [x2, y2] = q;
      if (order == GridOrder::coordinate) {
        return x1 > x2 && y1 == y2;
      }
      return x1 > x2 && y1 >= y2 && x1 - y1 > x2 - y2;
    }

    bool greater_eq(GridOrder order, GridPoint p, GridPoint q) {
      auto [x1, y1] = p;
      auto [x2, y2] = q;
      if (order == GridOrder::coordinate) {
        return x1 >= x2 && y1 == y2;
      }
      return x1 >= x2 && y1 >= y2 && x1 - y1 >= x2 - y2;
    }

    std::string show(GridAlgebra const& g, GridPoint p) {
      if (g.interpretation == GridInterpretation::m) {
        return std::to_string(p[0]);
      }
      return "(" + std::to_string(p[0]) + "," + std::to_string(p[1]) + ")";
    }

    std::string suffix(GridAlgebra const& g) {
      return g.interpretation == GridInterpretation::m ? "_M" : "_I";
    }

  }  // namespace

  GridPoint apply_grid(GridAlgebra const& algebra, Word const& word, Alphabet const& alphabet,
                       GridPoint p) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      p = apply_letter(algebra.interpretation, letter_char(alphabet, *it), p);
    }
    return p;
  }

  GridReport check_grid_algebra(GridAlgebra const& algebra, RelSrs const& system,
                                std::int64_t bound) {
    GridReport report{algebra.name, bound, {}};
    std::vector<GridPoint> grid;
    std::int64_t const     ymax = algebra.interpretation == GridInterpretation::m ? 0 : bound;
    for (std::int64_t x = 0; x <= bound; ++x) {
      for (std::int64_t y = 0; y <= ymax; ++y) {
        grid.push_back({x, y});
      }
    }
    auto const& A    = system.alphabet;
    auto        eval = [&](Word const& w, GridPoint p) { return apply_grid(algebra, w, A, p); };
    auto        word = [&](Word const& w) { return to_string(w, A); };
    auto        sfx  = suffix(algebra);

    if (algebra.model != ModelScope::none) {
      GridProperty prop{"model", true, {}};
      for (auto const& r : system.rules) {
        if (algebra.model == ModelScope::relative_rules && r.is_strict()) {
          continue;
        }
        for (auto p : grid) {
          auto l = eval(r.lhs, p), rr = eval(r.rhs, p);
          if (l != rr) {
            prop.ok             = false;
            prop.counterexample = "rule " + to_string(r, A) + ": " + word(r.lhs) + sfx
                                  + show(algebra, p) + " = " + show(algebra, l) + " != "
                                  + show(algebra, rr) + " = " + word(r.rhs) + sfx
                                  + show(algebra, p);
            break;
          }
        }
        if (!prop.ok) {
          break;
        }
      }
      report.properties.push_back(std::move(prop));
    }
    if (algebra.order == GridOrder::none) {
      return report;
    }

    std::set<Letter> letters;
    for (auto const& r : system.rules) {
      letters.insert(r.lhs.begin(), r.lhs.end());
      letters.insert(r.rhs.begin(), r.rhs.end());
    }
    for (bool strict : {true, false}) {
      GridProperty prop{strict ? "monotone" : "weakly monotone", true, {}};
      auto         rel = [&](GridPoint p, GridPoint q) {
        return strict ? greater(algebra.order, p, q) : greater_eq(algebra.order, p, q);
      };
      for (auto l : letters) {
        Word const w{l};
        for (auto p : grid) {
          for (auto q : grid) {
            if (!rel(p, q)) {
              continue;
            }
            auto fp = eval(w, p), fq = eval(w, q);
            if (!rel(fp, fq)) {
              prop.ok             = false;
              prop.counterexample = A.name(l) + sfx + ": " + show(algebra, p)
                                    + (strict ? " > " : " >= ") + show(algebra, q) + " but "
                                    + show(algebra, fp) + (strict ? " not > " : " not >= ")
                                    + show(algebra, fq);
              goto done;
            }
          }
        }
      }
    done:
      report.properties.push_back(std::move(prop));
    }

    GridProperty compat{"compatible", true, {}};
    for (auto const& r : system.rules) {
      for (auto p : grid) {
        auto l = eval(r.lhs, p), rr = eval(r.rhs, p);
        bool ok = r.is_strict() ? greater(algebra.order, l, rr) : greater_eq(algebra.order, l, rr);
        if (!ok) {
          compat.ok             = false;
          compat.counterexample = "rule " + to_string(r, A) + " at " + show(algebra, p) + ": "
                                  + show(algebra, l) + (r.is_strict() ? " not > " : " not >= ")
                                  + show(algebra, rr);
          break;
        }
      }
      if (!compat.ok) {
        break;
      }
    }
    report.properties.push_back(std::move(compat));
    return report;
  }

}  // namespace relsrs
