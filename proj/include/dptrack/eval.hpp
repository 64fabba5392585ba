#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dptrack/dp.hpp"
#include "dptrack/synth.hpp"
#include "dptrack/types.hpp"

namespace dptrack {

/// Fraction of frames whose center error is within each threshold (inclusive).
struct PrecisionCurve {
  std::vector<double> thresholds;  // strictly ascending, pixels
  std::vector<double> fractions;   // nondecreasing, in [0, 1]

  /// Fraction at an exact grid threshold, nullopt if `threshold` is not on the grid.
  std::optional<double> at(double threshold) const;
};

inline constexpr double kDefaultMaxThreshold = 50.0;
inline constexpr double kDefaultThresholdStep = 1.0;
inline constexpr double kReportThreshold = 20.0;

struct EvalReport {
  std::vector<double> errors;  // per frame, pixels
  double average_error = 0.0;
  PrecisionCurve curve;
  double precision_at_20 = 0.0;
};

/// Per-frame Euclidean distance between tracked and ground-truth centers.
/// Throws LengthMismatch.
std::vector<double> center_errors(std::span<const PixelCoord> path, const GroundTruth& gt);

/// Thresholds step, 2*step, ..., up to max_threshold. Throws EmptyInput or
/// BadThresholds.
PrecisionCurve precision_curve(std::span<const double> errors, double max_threshold,
                               double step);

/// Fraction of errors <= threshold.
double fraction_within(std::span<const double> errors, double threshold);

EvalReport make_report(std::vector<double> errors, double max_threshold = kDefaultMaxThreshold,
                       double step = kDefaultThresholdStep);

enum class Tracker { Dp, Greedy };

struct OpeResult {
  TrackPath path;
  EvalReport report;
};

/// Ground-truth frame-0 center rounded to the nearest pixel. Throws
/// OutOfBounds when that pixel is off the map, EmptyInput for empty gt.
Anchor anchor_from(const GroundTruth& gt, const ProbSequence& seq);

/// One-pass evaluation: track once over the whole sequence, optionally
/// anchored at the rounded first ground-truth center, then score.
OpeResult run_ope(const ProbSequence& seq, const GroundTruth& gt,
                  const SlopeConstraint& constraint, bool initialized,
                  Tracker tracker = Tracker::Dp);

struct TrackerComparison {
  OpeResult dp;
  OpeResult greedy;
};

/// Renders each scenario and runs both trackers, initialized from ground
/// truth, under the same constraint. Rows follow input order.
std::vector<TrackerComparison> compare_trackers(std::span<const SynthScenario> scenarios,
                                                const SlopeConstraint& constraint);

/// Mean error over frames [from_frame, end); 0 when the range is empty.
double mean_error_from(std::span<const double> errors, std::size_t from_frame);

/// Summary of one occlusion-sweep cell. Post-occlusion errors average the
/// frames after the occlusion window (after the sequence midpoint when the
/// cell has no occlusion).
struct OcclusionBenchRow {
  SweepPoint point;
  std::optional<OcclusionWindow> occlusion;
  double dp_average_error = 0.0;
  double greedy_average_error = 0.0;
  double dp_precision_at_20 = 0.0;
  double greedy_precision_at_20 = 0.0;
  double dp_post_occlusion_error = 0.0;
  double greedy_post_occlusion_error = 0.0;
  TrackerComparison runs;
};

std::vector<OcclusionBenchRow> run_occlusion_benchmark(std::span<const int> lengths,
                                                       std::span<const int> radii,
                                                       const SynthScenario& base);

}  // namespace dptrack
