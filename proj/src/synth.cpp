#include "dptrack/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace dptrack {
namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorKind::InvalidScenario, what);
}

void validate_blob(const BlobSpec& b, int frames, const std::string& name) {
  if (b.trajectory.size() != static_cast<std::size_t>(frames)) {
    std::ostringstream msg;
    msg << name << " trajectory has " << b.trajectory.size() << " points for " << frames
        << " frames";
    invalid(msg.str());
  }
  if (!(b.peak > 0.0 && b.peak <= 1.0)) invalid(name + " peak must lie in (0, 1]");
  if (!(b.sigma > 0.0) || !std::isfinite(b.sigma)) invalid(name + " sigma must be positive");
  for (const auto& c : b.trajectory) {
    if (!std::isfinite(c.x) || !std::isfinite(c.y)) invalid(name + " trajectory is not finite");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

void validate(const SynthScenario& s) {
  if (s.width < 1 || s.height < 1) invalid("width and height must be >= 1");
  if (s.frames < 1) invalid("frames must be >= 1");
  validate_blob(s.target, s.frames, "target");
  for (const auto& c : s.target.trajectory) {
    const double x = std::round(c.x);
    const double y = std::round(c.y);
    if (x < 0 || y < 0 || x >= s.width || y >= s.height) {
      std::ostringstream msg;
      msg << "target center (" << c.x << ", " << c.y << ") leaves the " << s.width << "x"
          << s.height << " map";
      invalid(msg.str());
    }
  }
  for (std::size_t i = 0; i < s.distractors.size(); ++i) {
    validate_blob(s.distractors[i], s.frames, "distractor " + std::to_string(i));
  }
  for (const auto& w : s.occlusions) {
    if (w.start_frame < 0 || w.start_frame > w.end_frame || w.end_frame >= s.frames) {
      std::ostringstream msg;
      msg << "occlusion " << w.start_frame << "-" << w.end_frame << " is not within 0-"
          << s.frames - 1;
      invalid(msg.str());
    }
  }
  if (!(s.noise_amplitude >= 0.0 && s.noise_amplitude < 1.0)) {
    invalid("noise amplitude must lie in [0, 1)");
  }
}

std::vector<Center> interpolate_waypoints(std::span<const Waypoint> waypoints, int frames) {
  if (waypoints.empty()) invalid("a path needs at least one waypoint");
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    if (waypoints[i].frame <= waypoints[i - 1].frame) {
      invalid("waypoint frames must be strictly increasing");
    }
  }
  std::vector<Center> out;
  out.reserve(static_cast<std::size_t>(std::max(frames, 0)));
  std::size_t seg = 0;
  for (int t = 0; t < frames; ++t) {
    if (t <= waypoints.front().frame) {
      out.push_back({waypoints.front().x, waypoints.front().y});
      continue;
    }
    if (t >= waypoints.back().frame) {
      out.push_back({waypoints.back().x, waypoints.back().y});
      continue;
    }
    while (waypoints[seg + 1].frame < t) ++seg;
    const auto& a = waypoints[seg];
    const auto& b = waypoints[seg + 1];
    const double u = static_cast<double>(t - a.frame) / (b.frame - a.frame);
    out.push_back({a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)});
  }
  return out;
}

std::uint64_t frame_seed(std::uint64_t seed, int frame) {
  return splitmix64(seed + static_cast<std::uint64_t>(frame + 1) * 0x9E3779B97F4A7C15ULL);
}

std::pair<ProbSequence, GroundTruth> render_scenario(const SynthScenario& s) {
  validate(s);
  const auto occluded = [&](int t) {
    return std::any_of(s.occlusions.begin(), s.occlusions.end(), [t](const OcclusionWindow& w) {
      return t >= w.start_frame && t <= w.end_frame;
    });
  };

  std::vector<ProbMap> frames;
  frames.reserve(static_cast<std::size_t>(s.frames));
  std::vector<const BlobSpec*> visible;
  for (int t = 0; t < s.frames; ++t) {
    visible.clear();
    if (!occluded(t)) visible.push_back(&s.target);
    for (const auto& d : s.distractors) visible.push_back(&d);

    std::mt19937_64 rng(frame_seed(s.seed, t));
    std::vector<double> values(static_cast<std::size_t>(s.width) * s.height);
    for (int y = 0; y < s.height; ++y) {
      for (int x = 0; x < s.width; ++x) {
        double v = 0.0;
        for (const BlobSpec* b : visible) {
          const Center c = b->trajectory[static_cast<std::size_t>(t)];
          const double dx = x - c.x;
          const double dy = y - c.y;
          v += b->peak * std::exp(-(dx * dx + dy * dy) / (2.0 * b->sigma * b->sigma));
        }
        // 53 high bits -> uniform [0, 1)
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        v += u * s.noise_amplitude;
        values[static_cast<std::size_t>(y) * s.width + x] = std::clamp(v, 0.0, 1.0);
      }
    }
    frames.push_back(ProbMap::create(s.width, s.height, std::move(values)));
  }

  GroundTruth gt;
  gt.centers.reserve(s.target.trajectory.size());
  for (const auto& c : s.target.trajectory) {
    gt.centers.push_back({std::round(c.x), std::round(c.y)});
  }
  return {ProbSequence(std::move(frames)), std::move(gt)};
}

std::optional<OcclusionWindow> centered_occlusion(int frames, int length) {
  if (length < 0 || length > frames) {
    std::ostringstream msg;
    msg << "occlusion length " << length << " does not fit " << frames << " frames";
    invalid(msg.str());
  }
  if (length == 0) return std::nullopt;
  const int start = (frames - length) / 2;
  return OcclusionWindow{start, start + length - 1};
}

std::vector<std::pair<SweepPoint, SynthScenario>> occlusion_benchmark(
    std::span<const int> lengths, std::span<const int> radii, const SynthScenario& base) {
  validate(base);
  std::vector<std::pair<SweepPoint, SynthScenario>> out;
  out.reserve(lengths.size() * radii.size());
  for (int length : lengths) {
    const auto window = centered_occlusion(base.frames, length);
    for (int radius : radii) {
      if (radius < 0) invalid("sweep radius must be >= 0");
      SynthScenario s = base;
      s.occlusions.clear();
      if (window) s.occlusions.push_back(*window);
      out.emplace_back(SweepPoint{length, radius}, std::move(s));
    }
  }
  return out;
}

}  // namespace dptrack
