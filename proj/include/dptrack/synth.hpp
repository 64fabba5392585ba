#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "dptrack/types.hpp"

namespace dptrack {

/// Isotropic Gaussian blob following a per-frame real-valued trajectory.
struct BlobSpec {
  std::vector<Center> trajectory;
  double peak = 1.0;   // (0, 1]
  double sigma = 1.0;  // pixels, > 0
};

/// Inclusive frame span during which the target contributes nothing.
struct OcclusionWindow {
  int start_frame = 0;
  int end_frame = 0;

  int length() const noexcept { return end_frame - start_frame + 1; }
};

struct SynthScenario {
  int width = 0;
  int height = 0;
  int frames = 0;
  BlobSpec target;
  std::vector<BlobSpec> distractors;
  std::vector<OcclusionWindow> occlusions;
  double noise_amplitude = 0.0;  // [0, 1)
  std::uint64_t seed = 0;
};

/// Identifier of the per-frame noise generator, recorded alongside outputs.
inline constexpr std::string_view kRngAlgorithm = "splitmix64-mt19937_64-u53";

/// Throws InvalidScenario naming the first violated constraint.
void validate(const SynthScenario& s);

/// Keyframe for piecewise-linear trajectories.
struct Waypoint {
  int frame = 0;
  double x = 0.0;
  double y = 0.0;
};

/// Samples a piecewise-linear path at frames 0..frames-1. Positions before the
/// first waypoint and after the last are held constant. Waypoint frames must be
/// strictly increasing; throws InvalidScenario otherwise.
std::vector<Center> interpolate_waypoints(std::span<const Waypoint> waypoints, int frames);

/// Seed of frame `frame`'s noise stream, independent of every other frame.
std::uint64_t frame_seed(std::uint64_t seed, int frame);

/// Renders the scenario into probability maps plus the target's rounded
/// trajectory as ground truth. Deterministic in the scenario (seed included).
std::pair<ProbSequence, GroundTruth> render_scenario(const SynthScenario& s);

struct SweepPoint {
  int occlusion_length = 0;
  int radius = 0;
};

/// Occlusion window of `length` frames centered in a sequence of `frames`
/// frames; nullopt for length 0. Throws InvalidScenario if it does not fit.
std::optional<OcclusionWindow> centered_occlusion(int frames, int length);

/// One scenario per (length, radius) pair, in lengths-major order. Each copies
/// `base` with its occlusions replaced by a single centered window.
std::vector<std::pair<SweepPoint, SynthScenario>> occlusion_benchmark(
    std::span<const int> lengths, std::span<const int> radii, const SynthScenario& base);

}  // namespace dptrack
