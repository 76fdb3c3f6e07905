#ifndef HEGRAD_CORE_FEASIBLE_HPP
#define HEGRAD_CORE_FEASIBLE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "core/decimal.hpp"

namespace hegrad {

// One coordinate's constraint: nothing (all reals), lo = 0 (orthant), or a
// closed interval. Euclidean projection is the coordinatewise clamp.
struct CoordinateBound {
  std::optional<ScaledDecimal> lo, hi;
};

// Product of per-coordinate scalar sets. The pure shapes the update rules
// use (all of R^n, the non-negative orthant, a box) have direct constructors;
// case-study agents mix them across one state block via product().
class FeasibleSet {
 public:
  enum class Kind { all_reals, non_negative, box, product };

  FeasibleSet() = default;
  static FeasibleSet all_reals(std::size_t dim);
  static FeasibleSet non_negative(std::size_t dim);
  static FeasibleSet box(std::vector<ScaledDecimal> lo, std::vector<ScaledDecimal> hi);
  static FeasibleSet product(std::vector<CoordinateBound> bounds);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return bounds_.size(); }
  const std::vector<CoordinateBound>& bounds() const { return bounds_; }

  // Bounded in every coordinate (a box possibly assembled via product()).
  bool is_bounded() const;

  ScaledDecimal project_coordinate(std::size_t index, const ScaledDecimal& value) const;
  std::vector<ScaledDecimal> project(const std::vector<ScaledDecimal>& point) const;
  bool contains(const std::vector<ScaledDecimal>& point) const;

  // Largest fraction-digit count among the finite bounds; quantized-state
  // feasibility depends on bounds being representable at working precision.
  unsigned max_bound_digits() const;

 private:
  Kind kind_ = Kind::all_reals;
  std::vector<CoordinateBound> bounds_;
};

}  // namespace hegrad

#endif
