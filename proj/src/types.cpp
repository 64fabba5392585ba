#include "dptrack/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace dptrack {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::OutOfBounds: return "OutOfBounds";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::EmptySequence: return "EmptySequence";
    case ErrorKind::NoFeasiblePath: return "NoFeasiblePath";
    case ErrorKind::RefuseTooLarge: return "RefuseTooLarge";
    case ErrorKind::InvalidScenario: return "InvalidScenario";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::BadThresholds: return "BadThresholds";
    case ErrorKind::BadMagic: return "BadMagic";
    case ErrorKind::TruncatedFile: return "TruncatedFile";
    case ErrorKind::TrailingData: return "TrailingData";
    case ErrorKind::MixedDimensions: return "MixedDimensions";
    case ErrorKind::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorKind::EmptyDirectory: return "EmptyDirectory";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

int chebyshev(PixelCoord a, PixelCoord b) {
  return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

ProbMap ProbMap::create(int width, int height, std::vector<double> values) {
  if (width < 1 || height < 1) {
    std::ostringstream msg;
    msg << "map dimensions must be positive, got " << width << "x" << height;
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  const auto expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (values.size() != expected) {
    std::ostringstream msg;
    msg << "expected " << expected << " values for a " << width << "x" << height
        << " map, got " << values.size();
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!(v >= 0.0 && v <= 1.0)) {  // also rejects NaN
      std::ostringstream msg;
      msg << "value " << v << " at index " << i << " (x=" << i % width
          << ", y=" << i / width << ") is outside [0, 1]";
      throw Error(ErrorKind::ValueOutOfRange, msg.str());
    }
  }
  return ProbMap(width, height, std::move(values));
}

ProbMap make_prob_map(int width, int height, std::vector<double> values) {
  return ProbMap::create(width, height, std::move(values));
}

ProbSequence::ProbSequence(std::vector<ProbMap> frames) : frames_(std::move(frames)) {
  if (frames_.empty()) {
    throw Error(ErrorKind::EmptySequence, "a probability sequence needs at least one frame");
  }
  const int w = frames_.front().width();
  const int h = frames_.front().height();
  for (std::size_t t = 1; t < frames_.size(); ++t) {
    if (frames_[t].width() != w || frames_[t].height() != h) {
      std::ostringstream msg;
      msg << "frame " << t << " is " << frames_[t].width() << "x" << frames_[t].height()
          << ", expected " << w << "x" << h;
      throw Error(ErrorKind::DimensionMismatch, msg.str());
    }
  }
}

SlopeConstraint::SlopeConstraint(int radius) : radius_(radius) {
  if (radius < 0) {
    throw Error(ErrorKind::InvalidArgument,
                "slope radius must be >= 0, got " + std::to_string(radius));
  }
}

double path_score(const ProbSequence& seq, std::span<const PixelCoord> path) {
  if (path.size() != seq.size()) {
    std::ostringstream msg;
    msg << "path has " << path.size() << " points for " << seq.size() << " frames";
    throw Error(ErrorKind::LengthMismatch, msg.str());
  }
  double score = 0.0;
  for (std::size_t t = 0; t < path.size(); ++t) {
    if (!seq.contains(path[t])) {
      std::ostringstream msg;
      msg << "point (" << path[t].x << ", " << path[t].y << ") of frame " << t
          << " lies outside the " << seq.width() << "x" << seq.height() << " map";
      throw Error(ErrorKind::OutOfBounds, msg.str());
    }
    score += seq[t].at(path[t]);
  }
  return score;
}

bool is_feasible(std::span<const PixelCoord> path, const SlopeConstraint& constraint) {
  for (std::size_t t = 1; t < path.size(); ++t) {
    if (!constraint.allows(path[t - 1], path[t])) return false;
  }
  return true;
}

}  // namespace dptrack
