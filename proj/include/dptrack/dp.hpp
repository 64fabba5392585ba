#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "dptrack/types.hpp"

namespace dptrack {

/// Cumulative score of a cell no admissible path can reach.
inline constexpr double kUnreachable = -std::numeric_limits<double>::infinity();

/// Fixes the first path point; every other frame-0 cell is inadmissible.
struct Anchor {
  PixelCoord position;
};

/// Forward-pass state: per-frame cumulative best scores and, for frames
/// 1..T-1, the row-major index of the predecessor that realizes each score
/// (-1 where the cell is unreachable, and everywhere on frame 0).
class DPTable {
 public:
  DPTable(int width, int height, std::size_t frames, int radius);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t frames() const noexcept { return frames_; }
  int radius() const noexcept { return radius_; }

  double cumulative(std::size_t t, PixelCoord p) const noexcept {
    return cumulative_[offset(t, p)];
  }
  /// Predecessor on frame t-1, or nullopt for frame 0 and unreachable cells.
  std::optional<PixelCoord> predecessor(std::size_t t, PixelCoord p) const noexcept;

  std::span<const double> cumulative_frame(std::size_t t) const noexcept {
    return {cumulative_.data() + t * plane(), plane()};
  }
  std::span<double> cumulative_frame(std::size_t t) noexcept {
    return {cumulative_.data() + t * plane(), plane()};
  }
  std::span<std::int32_t> backpointer_frame(std::size_t t) noexcept {
    return {backpointers_.data() + t * plane(), plane()};
  }
  std::span<const std::int32_t> backpointer_frame(std::size_t t) const noexcept {
    return {backpointers_.data() + t * plane(), plane()};
  }

  friend bool operator==(const DPTable&, const DPTable&) = default;

 private:
  std::size_t plane() const noexcept { return static_cast<std::size_t>(width_) * height_; }
  std::size_t offset(std::size_t t, PixelCoord p) const noexcept {
    return t * plane() + static_cast<std::size_t>(p.y) * width_ + p.x;
  }

  int width_;
  int height_;
  std::size_t frames_;
  int radius_;
  std::vector<double> cumulative_;
  std::vector<std::int32_t> backpointers_;
};

// Tie-break shared by every tracker below: among equal candidates the one with
// the smallest (y, x), i.e. the smallest row-major index, wins.

/// Forward cumulative pass under the slope constraint. Throws OutOfBounds when
/// the anchor lies outside the maps.
DPTable dp_forward(const ProbSequence& seq, const SlopeConstraint& constraint,
                   std::optional<Anchor> anchor = std::nullopt);

/// Picks the final-frame argmax and follows predecessors back to frame 0.
/// Throws DimensionMismatch if `table` does not match `seq`, NoFeasiblePath if
/// the final frame is entirely unreachable.
TrackPath dp_backtrack(const DPTable& table, const ProbSequence& seq);

/// Globally optimal constraint-feasible path (dp_forward + dp_backtrack).
TrackPath track(const ProbSequence& seq, const SlopeConstraint& constraint,
                std::optional<Anchor> anchor = std::nullopt);

/// Per-frame baseline: each point is the best raw value of the current frame
/// within reach of the previous point.
TrackPath greedy_track(const ProbSequence& seq, const SlopeConstraint& constraint,
                       std::optional<Anchor> anchor = std::nullopt);

inline constexpr std::size_t kBruteForceMaxFrames = 6;
inline constexpr std::size_t kBruteForceMaxCells = 36;

/// Exhaustive enumeration of feasible paths, for verification only. Equal
/// scores resolve by comparing points from the last frame backward, which is
/// the order backtracking commits to them. Throws RefuseTooLarge beyond
/// kBruteForceMaxFrames frames or kBruteForceMaxCells cells per frame.
TrackPath brute_force_track(const ProbSequence& seq, const SlopeConstraint& constraint,
                            std::optional<Anchor> anchor = std::nullopt);

}  // namespace dptrack
