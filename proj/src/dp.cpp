#include "dptrack/dp.hpp"

#include <algorithm>
#include <sstream>

namespace dptrack {
namespace {

void check_anchor(const ProbSequence& seq, const std::optional<Anchor>& anchor) {
  if (anchor && !seq.contains(anchor->position)) {
    std::ostringstream msg;
    msg << "anchor (" << anchor->position.x << ", " << anchor->position.y
        << ") lies outside the " << seq.width() << "x" << seq.height() << " map";
    throw Error(ErrorKind::OutOfBounds, msg.str());
  }
}

PixelCoord coord_of(std::size_t index, int width) {
  return {static_cast<int>(index % width), static_cast<int>(index / width)};
}

// Clipped square window of the given radius around (x, y).
struct Window {
  int x0, x1, y0, y1;  // inclusive
};

Window window_around(PixelCoord c, int radius, int width, int height) {
  return {std::max(c.x - radius, 0), std::min(c.x + radius, width - 1),
          std::max(c.y - radius, 0), std::min(c.y + radius, height - 1)};
}

// Row-major argmax over the window; strict '>' keeps the smallest index on ties.
// Returns -1 when every entry is kUnreachable.
std::int32_t window_argmax(std::span<const double> grid, int width, const Window& w) {
  double best = kUnreachable;
  std::int32_t best_index = -1;
  for (int y = w.y0; y <= w.y1; ++y) {
    const double* row = grid.data() + static_cast<std::size_t>(y) * width;
    for (int x = w.x0; x <= w.x1; ++x) {
      if (row[x] > best) {
        best = row[x];
        best_index = y * width + x;
      }
    }
  }
  return best_index;
}

}  // namespace

DPTable::DPTable(int width, int height, std::size_t frames, int radius)
    : width_(width),
      height_(height),
      frames_(frames),
      radius_(radius),
      cumulative_(frames * static_cast<std::size_t>(width) * height, kUnreachable),
      backpointers_(frames * static_cast<std::size_t>(width) * height, -1) {}

std::optional<PixelCoord> DPTable::predecessor(std::size_t t, PixelCoord p) const noexcept {
  const std::int32_t index = backpointers_[offset(t, p)];
  if (index < 0) return std::nullopt;
  return coord_of(static_cast<std::size_t>(index), width_);
}

DPTable dp_forward(const ProbSequence& seq, const SlopeConstraint& constraint,
                   std::optional<Anchor> anchor) {
  check_anchor(seq, anchor);
  const int width = seq.width();
  const int height = seq.height();
  const int radius = constraint.radius();
  DPTable table(width, height, seq.size(), radius);

  auto first = table.cumulative_frame(0);
  const auto values0 = seq[0].values();
  if (anchor) {
    const auto i = static_cast<std::size_t>(anchor->position.y) * width + anchor->position.x;
    first[i] = values0[i];
  } else {
    std::copy(values0.begin(), values0.end(), first.begin());
  }

  for (std::size_t t = 1; t < seq.size(); ++t) {
    const auto prev = table.cumulative_frame(t - 1);
    auto cur = table.cumulative_frame(t);
    auto back = table.backpointer_frame(t);
    const auto values = seq[t].values();
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * width + x;
        const std::int32_t from =
            window_argmax(prev, width, window_around({x, y}, radius, width, height));
        if (from < 0) continue;  // stays kUnreachable, no predecessor
        cur[i] = values[i] + prev[static_cast<std::size_t>(from)];
        back[i] = from;
      }
    }
  }
  return table;
}

TrackPath dp_backtrack(const DPTable& table, const ProbSequence& seq) {
  if (table.width() != seq.width() || table.height() != seq.height() ||
      table.frames() != seq.size()) {
    throw Error(ErrorKind::DimensionMismatch, "DP table was not produced from this sequence");
  }
  const std::size_t last = table.frames() - 1;
  const auto final_frame = table.cumulative_frame(last);
  const auto end = std::max_element(final_frame.begin(), final_frame.end());
  if (*end == kUnreachable) {
    throw Error(ErrorKind::NoFeasiblePath, "no cell of the final frame is reachable");
  }

  TrackPath path;
  path.score = *end;
  path.points.resize(table.frames());
  PixelCoord p = coord_of(static_cast<std::size_t>(end - final_frame.begin()), table.width());
  path.points[last] = p;
  for (std::size_t t = last; t > 0; --t) {
    // Every reachable cell on t >= 1 has a predecessor.
    p = *table.predecessor(t, p);
    path.points[t - 1] = p;
  }
  return path;
}

TrackPath track(const ProbSequence& seq, const SlopeConstraint& constraint,
                std::optional<Anchor> anchor) {
  return dp_backtrack(dp_forward(seq, constraint, anchor), seq);
}

TrackPath greedy_track(const ProbSequence& seq, const SlopeConstraint& constraint,
                       std::optional<Anchor> anchor) {
  check_anchor(seq, anchor);
  const int width = seq.width();
  const int height = seq.height();

  TrackPath path;
  path.points.reserve(seq.size());
  PixelCoord p;
  if (anchor) {
    p = anchor->position;
  } else {
    const auto v = seq[0].values();
    p = coord_of(static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin()),
                 width);
  }
  path.points.push_back(p);
  for (std::size_t t = 1; t < seq.size(); ++t) {
    const auto index = window_argmax(seq[t].values(), width,
                                     window_around(p, constraint.radius(), width, height));
    p = coord_of(static_cast<std::size_t>(index), width);
    path.points.push_back(p);
  }
  path.score = path_score(seq, path.points);
  return path;
}

namespace {

class Enumerator {
 public:
  Enumerator(const ProbSequence& seq, int radius) : seq_(seq), radius_(radius) {
    current_.resize(seq.size());
  }

  void start(PixelCoord p) {
    current_[0] = p;
    extend(1, seq_[0].at(p));
  }

  bool found() const { return has_best_; }
  TrackPath result() const { return {best_, best_score_}; }

 private:
  void extend(std::size_t t, double score) {
    if (t == seq_.size()) {
      consider(score);
      return;
    }
    const Window w = window_around(current_[t - 1], radius_, seq_.width(), seq_.height());
    for (int y = w.y0; y <= w.y1; ++y) {
      for (int x = w.x0; x <= w.x1; ++x) {
        current_[t] = {x, y};
        extend(t + 1, score + seq_[t].at(x, y));
      }
    }
  }

  // Equal scores: compare from the last frame backward, smaller (y, x) first.
  bool precedes_best() const {
    for (std::size_t t = current_.size(); t-- > 0;) {
      const auto& a = current_[t];
      const auto& b = best_[t];
      if (a.y != b.y) return a.y < b.y;
      if (a.x != b.x) return a.x < b.x;
    }
    return false;
  }

  void consider(double score) {
    if (!has_best_ || score > best_score_ || (score == best_score_ && precedes_best())) {
      has_best_ = true;
      best_score_ = score;
      best_ = current_;
    }
  }

  const ProbSequence& seq_;
  int radius_;
  std::vector<PixelCoord> current_;
  std::vector<PixelCoord> best_;
  double best_score_ = 0.0;
  bool has_best_ = false;
};

}  // namespace

TrackPath brute_force_track(const ProbSequence& seq, const SlopeConstraint& constraint,
                            std::optional<Anchor> anchor) {
  const std::size_t cells = static_cast<std::size_t>(seq.width()) * seq.height();
  if (seq.size() > kBruteForceMaxFrames || cells > kBruteForceMaxCells) {
    std::ostringstream msg;
    msg << "brute force limited to " << kBruteForceMaxFrames << " frames of at most "
        << kBruteForceMaxCells << " cells, got " << seq.size() << " frames of " << cells;
    throw Error(ErrorKind::RefuseTooLarge, msg.str());
  }
  check_anchor(seq, anchor);

  Enumerator search(seq, constraint.radius());
  if (anchor) {
    search.start(anchor->position);
  } else {
    for (int y = 0; y < seq.height(); ++y) {
      for (int x = 0; x < seq.width(); ++x) search.start({x, y});
    }
  }
  return search.result();
}

}  // namespace dptrack
