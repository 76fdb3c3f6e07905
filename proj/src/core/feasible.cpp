#include "core/feasible.hpp"

#include <algorithm>

#include "core/errors.hpp"

namespace hegrad {

FeasibleSet FeasibleSet::all_reals(std::size_t dim) {
  FeasibleSet s;
  s.kind_ = Kind::all_reals;
  s.bounds_.resize(dim);
  return s;
}

FeasibleSet FeasibleSet::non_negative(std::size_t dim) {
  FeasibleSet s;
  s.kind_ = Kind::non_negative;
  s.bounds_.assign(dim, CoordinateBound{ScaledDecimal(), std::nullopt});
  return s;
}

FeasibleSet FeasibleSet::box(std::vector<ScaledDecimal> lo, std::vector<ScaledDecimal> hi) {
  if (lo.size() != hi.size()) {
    throw Error(ErrorCode::dimension_mismatch, "box bounds differ in length");
  }
  FeasibleSet s;
  s.kind_ = Kind::box;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) {
      throw Error(ErrorCode::invalid_argument,
                  "box lower bound exceeds upper bound at coordinate " +
                      std::to_string(i));
    }
    s.bounds_.push_back({std::move(lo[i]), std::move(hi[i])});
  }
  return s;
}

FeasibleSet FeasibleSet::product(std::vector<CoordinateBound> bounds) {
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const auto& b = bounds[i];
    if (b.lo && b.hi && *b.lo > *b.hi) {
      throw Error(ErrorCode::invalid_argument,
                  "lower bound exceeds upper bound at coordinate " + std::to_string(i));
    }
  }
  FeasibleSet s;
  s.kind_ = Kind::product;
  s.bounds_ = std::move(bounds);
  return s;
}

bool FeasibleSet::is_bounded() const {
  return !bounds_.empty() &&
         std::all_of(bounds_.begin(), bounds_.end(),
                     [](const CoordinateBound& b) { return b.lo && b.hi; });
}

ScaledDecimal FeasibleSet::project_coordinate(std::size_t index,
                                              const ScaledDecimal& value) const {
  if (index >= bounds_.size()) {
    throw Error(ErrorCode::dimension_mismatch, "coordinate index out of range");
  }
  const CoordinateBound& b = bounds_[index];
  if (b.lo && value < *b.lo) return *b.lo;
  if (b.hi && value > *b.hi) return *b.hi;
  return value;
}

std::vector<ScaledDecimal> FeasibleSet::project(
    const std::vector<ScaledDecimal>& point) const {
  if (point.size() != bounds_.size()) {
    throw Error(ErrorCode::dimension_mismatch,
                "projection input has dimension " + std::to_string(point.size()) +
                    ", set has " + std::to_string(bounds_.size()));
  }
  std::vector<ScaledDecimal> out(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) out[i] = project_coordinate(i, point[i]);
  return out;
}

bool FeasibleSet::contains(const std::vector<ScaledDecimal>& point) const {
  if (point.size() != bounds_.size()) return false;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (!(project_coordinate(i, point[i]) == point[i])) return false;
  }
  return true;
}

unsigned FeasibleSet::max_bound_digits() const {
  unsigned d = 0;
  for (const auto& b : bounds_) {
    if (b.lo) d = std::max(d, b.lo->fraction_digits());
    if (b.hi) d = std::max(d, b.hi->fraction_digits());
  }
  return d;
}

}  // namespace hegrad
