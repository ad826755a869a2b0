#pragma once

// Domain value types: grids, sampled functions, square-root slope functions,
// warpings of [0,1], and their unit-sphere square-root transforms. All types
// validate their invariants at construction and are immutable afterwards.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "elastic/numerics.hpp"

namespace elastic {

// Unit-norm tolerance for square-root transforms (post-normalization).
inline constexpr double kNormTol = 1e-6;

inline void require_finite(const std::vector<double>& vs, const char* what) {
  for (double v : vs) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite value");
  }
}

// Strictly increasing abscissae on [0,1] with pinned endpoints.
class Grid {
 public:
  explicit Grid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 3) throw std::invalid_argument("Grid: need at least 3 points");
    if (points_.front() != 0.0 || points_.back() != 1.0) {
      throw std::invalid_argument("Grid: endpoints must be exactly 0 and 1");
    }
    for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
      if (!(points_[i + 1] > points_[i])) {
        throw std::invalid_argument("Grid: points must be strictly increasing");
      }
    }
    require_finite(points_, "Grid");
  }

  static Grid uniform(std::size_t n) {
    if (n < 3) throw std::invalid_argument("Grid::uniform: need at least 3 points");
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
      pts[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    }
    pts.back() = 1.0;
    return Grid(std::move(pts));
  }

  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  const std::vector<double>& points() const { return points_; }

  friend bool operator==(const Grid& a, const Grid& b) { return a.points_ == b.points_; }

 private:
  std::vector<double> points_;
};

inline void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

// A real-valued function sampled on a grid.
class SampledFunction {
 public:
  SampledFunction(Grid grid, std::vector<double> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
      throw std::invalid_argument("SampledFunction: values/grid length mismatch");
    }
    require_finite(values_, "SampledFunction");
  }

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  SampledFunction shifted(double c) const {
    std::vector<double> v = values_;
    for (double& x : v) x += c;
    return SampledFunction(grid_, std::move(v));
  }

 private:
  Grid grid_;
  std::vector<double> values_;
};

// Square-root slope representation of a function.
class Srsf {
 public:
  Srsf(Grid grid, std::vector<double> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
      throw std::invalid_argument("Srsf: values/grid length mismatch");
    }
    require_finite(values_, "Srsf");
  }

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  double norm() const { return norm_l2(grid_.points(), values_); }

 private:
  Grid grid_;
  std::vector<double> values_;
};

// A warping (orientation-preserving diffeomorphism) of [0,1], sampled.
class Warping {
 public:
  Warping(Grid grid, std::vector<double> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
      throw std::invalid_argument("Warping: values/grid length mismatch");
    }
    if (values_.front() != 0.0 || values_.back() != 1.0) {
      throw std::invalid_argument("Warping: boundary values must be exactly 0 and 1");
    }
    for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
      if (!(values_[i + 1] > values_[i])) {
        throw std::invalid_argument("Warping: values must be strictly increasing");
      }
    }
    require_finite(values_, "Warping");
  }

  static Warping identity(const Grid& grid) { return Warping(grid, grid.points()); }

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  Grid grid_;
  std::vector<double> values_;
};

// Square-root transform of a warping: a point on the positive orthant of the
// unit Hilbert sphere. The regular constructor floors negative samples at zero
// and renormalizes to unit L2 norm; from_raw() accepts already-valid samples
// verbatim (used when reloading serialized data).
class Srt {
 public:
  Srt(Grid grid, std::vector<double> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
      throw std::invalid_argument("Srt: values/grid length mismatch");
    }
    require_finite(values_, "Srt");
    for (double& v : values_) v = std::max(v, 0.0);
    const double n = norm_l2(grid_.points(), values_);
    if (!(n > 1e-12)) throw std::invalid_argument("Srt: degenerate (zero-norm) input");
    for (double& v : values_) v /= n;
  }

  static Srt from_raw(Grid grid, std::vector<double> values) {
    Srt psi(std::move(grid), std::move(values), RawTag{});
    if (psi.values_.size() != psi.grid_.size()) {
      throw std::invalid_argument("Srt::from_raw: values/grid length mismatch");
    }
    require_finite(psi.values_, "Srt::from_raw");
    for (double v : psi.values_) {
      if (v < 0.0) throw std::invalid_argument("Srt::from_raw: negative value");
    }
    if (std::abs(psi.norm() - 1.0) > kNormTol) {
      throw std::invalid_argument("Srt::from_raw: norm not within tolerance of 1");
    }
    return psi;
  }

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  double norm() const { return norm_l2(grid_.points(), values_); }

 private:
  struct RawTag {};
  Srt(Grid grid, std::vector<double> values, RawTag)
      : grid_(std::move(grid)), values_(std::move(values)) {}

  Grid grid_;
  std::vector<double> values_;
};

}  // namespace elastic
