#include "dptrack/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace dptrack {

std::optional<double> PrecisionCurve::at(double threshold) const {
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (std::abs(thresholds[i] - threshold) <= 1e-9) return fractions[i];
  }
  return std::nullopt;
}

std::vector<double> center_errors(std::span<const PixelCoord> path, const GroundTruth& gt) {
  if (path.size() != gt.centers.size()) {
    std::ostringstream msg;
    msg << "track has " << path.size() << " frames, ground truth has " << gt.centers.size();
    throw Error(ErrorKind::LengthMismatch, msg.str());
  }
  std::vector<double> errors(path.size());
  for (std::size_t t = 0; t < path.size(); ++t) {
    errors[t] = std::hypot(path[t].x - gt.centers[t].x, path[t].y - gt.centers[t].y);
  }
  return errors;
}

double fraction_within(std::span<const double> errors, double threshold) {
  if (errors.empty()) return 0.0;
  const auto hits = std::count_if(errors.begin(), errors.end(),
                                  [threshold](double e) { return e <= threshold; });
  return static_cast<double>(hits) / static_cast<double>(errors.size());
}

PrecisionCurve precision_curve(std::span<const double> errors, double max_threshold,
                               double step) {
  if (errors.empty()) throw Error(ErrorKind::EmptyInput, "no center errors to summarize");
  if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(max_threshold) ||
      max_threshold < step) {
    std::ostringstream msg;
    msg << "need 0 < step <= max threshold, got step " << step << " and max " << max_threshold;
    throw Error(ErrorKind::BadThresholds, msg.str());
  }
  const auto count = static_cast<std::size_t>(std::floor(max_threshold / step + 1e-9));
  PrecisionCurve curve;
  curve.thresholds.reserve(count);
  curve.fractions.reserve(count);
  for (std::size_t k = 1; k <= count; ++k) {
    const double tau = static_cast<double>(k) * step;
    curve.thresholds.push_back(tau);
    curve.fractions.push_back(fraction_within(errors, tau));
  }
  return curve;
}

EvalReport make_report(std::vector<double> errors, double max_threshold, double step) {
  EvalReport report;
  report.curve = precision_curve(errors, max_threshold, step);
  report.average_error = std::accumulate(errors.begin(), errors.end(), 0.0) /
                         static_cast<double>(errors.size());
  report.precision_at_20 = fraction_within(errors, kReportThreshold);
  report.errors = std::move(errors);
  return report;
}

Anchor anchor_from(const GroundTruth& gt, const ProbSequence& seq) {
  if (gt.centers.empty()) throw Error(ErrorKind::EmptyInput, "ground truth has no frames");
  const Center c = gt.centers.front();
  const PixelCoord p{static_cast<int>(std::lround(c.x)), static_cast<int>(std::lround(c.y))};
  if (!seq.contains(p)) {
    std::ostringstream msg;
    msg << "first ground-truth center (" << c.x << ", " << c.y << ") is off the map";
    throw Error(ErrorKind::OutOfBounds, msg.str());
  }
  return {p};
}

OpeResult run_ope(const ProbSequence& seq, const GroundTruth& gt,
                  const SlopeConstraint& constraint, bool initialized, Tracker tracker) {
  if (gt.centers.size() != seq.size()) {
    std::ostringstream msg;
    msg << "ground truth has " << gt.centers.size() << " frames, sequence has " << seq.size();
    throw Error(ErrorKind::LengthMismatch, msg.str());
  }
  std::optional<Anchor> anchor;
  if (initialized) anchor = anchor_from(gt, seq);
  OpeResult result;
  result.path = tracker == Tracker::Dp ? track(seq, constraint, anchor)
                                       : greedy_track(seq, constraint, anchor);
  result.report = make_report(center_errors(result.path.points, gt));
  return result;
}

std::vector<TrackerComparison> compare_trackers(std::span<const SynthScenario> scenarios,
                                                const SlopeConstraint& constraint) {
  std::vector<TrackerComparison> rows;
  rows.reserve(scenarios.size());
  for (const auto& s : scenarios) {
    const auto [seq, gt] = render_scenario(s);
    rows.push_back({run_ope(seq, gt, constraint, true, Tracker::Dp),
                    run_ope(seq, gt, constraint, true, Tracker::Greedy)});
  }
  return rows;
}

double mean_error_from(std::span<const double> errors, std::size_t from_frame) {
  if (from_frame >= errors.size()) return 0.0;
  const auto tail = errors.subspan(from_frame);
  return std::accumulate(tail.begin(), tail.end(), 0.0) / static_cast<double>(tail.size());
}

std::vector<OcclusionBenchRow> run_occlusion_benchmark(std::span<const int> lengths,
                                                       std::span<const int> radii,
                                                       const SynthScenario& base) {
  std::vector<OcclusionBenchRow> rows;
  for (auto& [point, scenario] : occlusion_benchmark(lengths, radii, base)) {
    OcclusionBenchRow row;
    row.point = point;
    if (!scenario.occlusions.empty()) row.occlusion = scenario.occlusions.front();
    const std::size_t after = row.occlusion
                                  ? static_cast<std::size_t>(row.occlusion->end_frame) + 1
                                  : static_cast<std::size_t>(scenario.frames) / 2;
    auto runs = compare_trackers(std::span(&scenario, 1), SlopeConstraint(point.radius));
    row.runs = std::move(runs.front());
    const auto& dp = row.runs.dp.report;
    const auto& greedy = row.runs.greedy.report;
    row.dp_average_error = dp.average_error;
    row.greedy_average_error = greedy.average_error;
    row.dp_precision_at_20 = dp.precision_at_20;
    row.greedy_precision_at_20 = greedy.precision_at_20;
    row.dp_post_occlusion_error = mean_error_from(dp.errors, after);
    row.greedy_post_occlusion_error = mean_error_from(greedy.errors, after);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace dptrack
