#pragma once

// Exhaustive checks of two hand-made ordered algebras on a finite grid.
//
// M interprets words over {a, b, c} as functions on N, I as functions on
// N^2 (its second component is M):
//
//   a_M(y) = max(0, y-1)   b_M(y) = y+1       c_M(y) = 0
//   a_I(x,y) = if y > 0 then (x, y-1) else (x+1, 0)
//   b_I(x,y) = (x, y+1)    c_I(x,y) = (x, 0)
//
// A word acts right to left: [uv](p) = [u]([v](p)), and the empty word is
// the identity.  Results only ever say "verified up to B".

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "relsrs/core.hpp"

namespace relsrs {

  enum class GridInterpretation : std::uint8_t { m, i };

  enum class GridOrder : std::uint8_t {
    none,  // no order: only the model property is checked
    // (x1,y1) > (x2,y2) iff x1 > x2 and y1 = y2; >= with x1 >= x2.
    coordinate,
    // (x1,y1) > (x2,y2) iff x1 > x2, y1 >= y2 and x1-y1 > x2-y2; >= likewise.
    difference,
  };

  enum class ModelScope : std::uint8_t { none, all_rules, relative_rules };

  struct GridAlgebra {
    std::string        name;
    GridInterpretation interpretation = GridInterpretation::m;
    GridOrder          order          = GridOrder::none;
    ModelScope         model          = ModelScope::none;
  };

  GridAlgebra grid_fixture_m();              // M, model for all rules
  GridAlgebra grid_fixture_i_coordinate();   // I, coordinate order, model on S
  GridAlgebra grid_fixture_i_difference();   // I, difference order pair

  using GridPoint = std::array<std::int64_t, 2>;  // M uses only the first entry

  struct GridProperty {
    std::string name;  // "model", "monotone", "weakly monotone", "compatible"
    bool        ok = true;
    std::string counterexample;
  };

  struct GridReport {
    std::string               fixture;
    std::int64_t              bound = 0;
    std::vector<GridProperty> properties;

    bool        ok() const;
    GridProperty const* find(std::string const& name) const;
    std::string to_string() const;
  };

  GridPoint apply_grid(GridAlgebra const& algebra, Word const& word, Alphabet const& alphabet,
                       GridPoint p);

  // Checks on {0..B} (M) or {0..B}^2 (I): the model property where the
  // fixture claims it, strict and weak monotonicity of each letter used by
  // the system, and compatibility (strict rules decrease under >, relative
  // rules under >=).  The system must use only the letters a, b, c.
  GridReport check_grid_algebra(GridAlgebra const& algebra, RelSrs const& system,
                                std::int64_t bound);

}  // namespace relsrs
