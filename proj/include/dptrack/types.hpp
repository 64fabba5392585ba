#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dptrack/error.hpp"

namespace dptrack {

/// Pixel index: x is the column, y the row, origin at the top-left corner.
struct PixelCoord {
  int x = 0;
  int y = 0;

  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

/// Chebyshev (max-axis) distance between two pixels.
int chebyshev(PixelCoord a, PixelCoord b);

/// One frame's dense grid of object-probability scores in [0, 1], stored
/// row-major. Instances are always valid; the only way to build one is
/// through the validating factory.
class ProbMap {
 public:
  /// Throws DimensionMismatch for bad sizes, ValueOutOfRange for a value
  /// that is NaN, infinite, negative or above 1.
  static ProbMap create(int width, int height, std::vector<double> values);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return values_.size(); }

  double at(int x, int y) const noexcept {
    return values_[static_cast<std::size_t>(y) * width_ + x];
  }
  double at(PixelCoord p) const noexcept { return at(p.x, p.y); }

  bool contains(PixelCoord p) const noexcept {
    return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_;
  }

  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const ProbMap&, const ProbMap&) = default;

 private:
  ProbMap(int width, int height, std::vector<double> values)
      : width_(width), height_(height), values_(std::move(values)) {}

  int width_;
  int height_;
  std::vector<double> values_;
};

ProbMap make_prob_map(int width, int height, std::vector<double> values);

/// Temporally ordered stack of equally sized probability maps (T >= 1).
class ProbSequence {
 public:
  /// Throws EmptySequence for no frames, DimensionMismatch when frames differ
  /// in size.
  explicit ProbSequence(std::vector<ProbMap> frames);

  std::size_t size() const noexcept { return frames_.size(); }
  int width() const noexcept { return frames_.front().width(); }
  int height() const noexcept { return frames_.front().height(); }

  const ProbMap& operator[](std::size_t t) const noexcept { return frames_[t]; }
  std::span<const ProbMap> frames() const noexcept { return frames_; }

  bool contains(PixelCoord p) const noexcept { return frames_.front().contains(p); }

  friend bool operator==(const ProbSequence&, const ProbSequence&) = default;

 private:
  std::vector<ProbMap> frames_;
};

/// Maximum per-frame displacement along each axis.
class SlopeConstraint {
 public:
  explicit SlopeConstraint(int radius);

  int radius() const noexcept { return radius_; }

  bool allows(PixelCoord from, PixelCoord to) const noexcept {
    return chebyshev(from, to) <= radius_;
  }

 private:
  int radius_;
};

struct TrackPath {
  std::vector<PixelCoord> points;
  double score = 0.0;
};

/// Real-valued ground-truth center, in pixels.
struct Center {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Center&, const Center&) = default;
};

struct GroundTruth {
  std::vector<Center> centers;
};

/// Sum of the sequence's values along `path`, accumulated in ascending frame
/// order. Throws LengthMismatch or OutOfBounds.
double path_score(const ProbSequence& seq, std::span<const PixelCoord> path);

/// True when every consecutive pair of points is within the constraint.
bool is_feasible(std::span<const PixelCoord> path, const SlopeConstraint& constraint);

}  // namespace dptrack
