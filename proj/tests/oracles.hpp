#pragma once

// Reference evaluators used only by the tests. They are written straight from
// the definitions (no tables, no shared helpers with the library) and are only
// fast enough for tiny inputs.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "dptrack/types.hpp"

namespace dptrack::testing {

inline double sum_along(const ProbSequence& seq, const std::vector<PixelCoord>& path) {
  double s = 0.0;
  for (std::size_t t = 0; t < path.size(); ++t) {
    s += seq[t].values()[static_cast<std::size_t>(path[t].y) * seq.width() + path[t].x];
  }
  return s;
}

// Best score of any admissible path ending at (x, y) on frame t, by direct
// recursion over every predecessor. Exponential; keep T <= 4 and maps tiny.
inline double recurrence(const ProbSequence& seq, int radius, std::optional<PixelCoord> anchor,
                         std::size_t t, int x, int y) {
  const double inf = std::numeric_limits<double>::infinity();
  const double here = seq[t].values()[static_cast<std::size_t>(y) * seq.width() + x];
  if (t == 0) {
    if (anchor && (anchor->x != x || anchor->y != y)) return -inf;
    return here;
  }
  double best = -inf;
  for (int v = 0; v < seq.height(); ++v) {
    for (int u = 0; u < seq.width(); ++u) {
      if (std::abs(u - x) > radius || std::abs(v - y) > radius) continue;
      best = std::max(best, recurrence(seq, radius, anchor, t - 1, u, v));
    }
  }
  return best == -inf ? -inf : here + best;
}

struct Enumerated {
  std::vector<PixelCoord> path;
  double score = -std::numeric_limits<double>::infinity();
  std::size_t feasible = 0;
};

// Walks every T-tuple of cells like an odometer and keeps the best feasible one;
// equal scores go to the tuple that is smaller when read from the last frame.
inline Enumerated enumerate_all(const ProbSequence& seq, int radius,
                                std::optional<PixelCoord> anchor) {
  const std::size_t frames = seq.size();
  const int cells = seq.width() * seq.height();
  std::vector<int> digit(frames, 0);
  Enumerated best;
  while (true) {
    std::vector<PixelCoord> path(frames);
    for (std::size_t t = 0; t < frames; ++t) {
      path[t] = {digit[t] % seq.width(), digit[t] / seq.width()};
    }
    bool ok = !anchor || path[0] == *anchor;
    for (std::size_t t = 1; ok && t < frames; ++t) {
      ok = std::abs(path[t].x - path[t - 1].x) <= radius &&
           std::abs(path[t].y - path[t - 1].y) <= radius;
    }
    if (ok) {
      ++best.feasible;
      const double s = sum_along(seq, path);
      bool take = best.path.empty() || s > best.score;
      if (!take && s == best.score) {
        for (std::size_t t = frames; t-- > 0;) {
          if (digit[t] != best.path[t].y * seq.width() + best.path[t].x) {
            take = digit[t] < best.path[t].y * seq.width() + best.path[t].x;
            break;
          }
        }
      }
      if (take) {
        best.path = path;
        best.score = s;
      }
    }
    std::size_t i = 0;
    while (i < frames && ++digit[i] == cells) digit[i++] = 0;
    if (i == frames) break;
  }
  return best;
}

inline double gaussian(double x, double y, double cx, double cy, double peak, double sigma) {
  return peak * std::exp(-((x - cx) * (x - cx) + (y - cy) * (y - cy)) / (2 * sigma * sigma));
}

inline double distance(double ax, double ay, double bx, double by) {
  return std::sqrt((ax - bx) * (ax - bx) + (ay - by) * (ay - by));
}

}  // namespace dptrack::testing
