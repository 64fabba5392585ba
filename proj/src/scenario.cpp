#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <type_traits>

#include "dptrack/io.hpp"

namespace dptrack {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class ScenarioParser {
 public:
  SynthScenario parse(std::string_view text) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++line_;
      parse_line(text.substr(start, end - start));
      start = end + 1;
    }
    return finish();
  }

 private:
  struct PendingBlob {
    std::vector<Waypoint> path;
    std::optional<double> peak;
    std::optional<double> sigma;
  };

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream msg;
    msg << "scenario line " << line_ << ": " << what;
    throw Error(ErrorKind::ParseError, msg.str());
  }

  template <typename T>
  T number(std::string_view s, std::string_view key) const {
    s = trim(s);
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      fail("bad value '" + std::string(s) + "' for " + std::string(key));
    }
    if constexpr (std::is_floating_point_v<T>) {
      if (!std::isfinite(value)) fail(std::string(key) + " is not finite");
    }
    return value;
  }

  // "t:x,y;t:x,y;..."
  std::vector<Waypoint> waypoints(std::string_view s, std::string_view key) const {
    std::vector<Waypoint> out;
    while (true) {
      const auto semi = s.find(';');
      const std::string_view item = trim(s.substr(0, semi));
      const auto colon = item.find(':');
      const auto comma = item.find(',');
      if (colon == std::string_view::npos || comma == std::string_view::npos || comma < colon) {
        fail("waypoint '" + std::string(item) + "' in " + std::string(key) + " is not t:x,y");
      }
      out.push_back({number<int>(item.substr(0, colon), key),
                     number<double>(item.substr(colon + 1, comma - colon - 1), key),
                     number<double>(item.substr(comma + 1), key)});
      if (semi == std::string_view::npos) break;
      s = s.substr(semi + 1);
    }
    return out;
  }

  template <typename T>
  void set_once(std::optional<T>& slot, T value, std::string_view key) {
    if (slot) fail("duplicate key " + std::string(key));
    slot = value;
  }

  void parse_line(std::string_view raw) {
    std::string_view line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) return;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail("expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "width") {
      set_once(width_, number<int>(value, key), key);
    } else if (key == "height") {
      set_once(height_, number<int>(value, key), key);
    } else if (key == "frames") {
      set_once(frames_, number<int>(value, key), key);
    } else if (key == "noise") {
      set_once(noise_, number<double>(value, key), key);
    } else if (key == "seed") {
      set_once(seed_, number<std::uint64_t>(value, key), key);
    } else if (key == "target.path") {
      if (!target_.path.empty()) fail("duplicate key target.path");
      target_.path = waypoints(value, key);
    } else if (key == "target.peak") {
      set_once(target_.peak, number<double>(value, key), key);
    } else if (key == "target.sigma") {
      set_once(target_.sigma, number<double>(value, key), key);
    } else if (key == "occlusion") {
      const auto dash = value.find('-');
      if (dash == std::string_view::npos) fail("occlusion must be 'start-end'");
      occlusions_.push_back({number<int>(value.substr(0, dash), key),
                             number<int>(value.substr(dash + 1), key)});
    } else if (key == "distractor.path") {
      distractors_.push_back({waypoints(value, key), std::nullopt, std::nullopt});
    } else if (key == "distractor.peak" || key == "distractor.sigma") {
      if (distractors_.empty()) fail(std::string(key) + " before any distractor.path");
      auto& d = distractors_.back();
      if (key == "distractor.peak") {
        set_once(d.peak, number<double>(value, key), key);
      } else {
        set_once(d.sigma, number<double>(value, key), key);
      }
    } else {
      fail("unknown key '" + std::string(key) + "'");
    }
  }

  BlobSpec build_blob(const PendingBlob& b, int frames, std::string_view name) const {
    if (!b.sigma) {
      throw Error(ErrorKind::ParseError, "scenario: missing " + std::string(name) + ".sigma");
    }
    return {interpolate_waypoints(b.path, frames), b.peak.value_or(1.0), *b.sigma};
  }

  SynthScenario finish() const {
    const auto require = [](const auto& slot, const char* key) {
      if (!slot) throw Error(ErrorKind::ParseError, std::string("scenario: missing ") + key);
      return *slot;
    };
    SynthScenario s;
    s.width = require(width_, "width");
    s.height = require(height_, "height");
    s.frames = require(frames_, "frames");
    if (target_.path.empty()) throw Error(ErrorKind::ParseError, "scenario: missing target.path");
    if (s.frames < 1) throw Error(ErrorKind::InvalidScenario, "frames must be >= 1");
    s.target = build_blob(target_, s.frames, "target");
    for (const auto& d : distractors_) s.distractors.push_back(build_blob(d, s.frames, "distractor"));
    s.occlusions = occlusions_;
    s.noise_amplitude = noise_.value_or(0.0);
    s.seed = seed_.value_or(0);
    validate(s);
    return s;
  }

  std::size_t line_ = 0;
  std::optional<int> width_, height_, frames_;
  std::optional<double> noise_;
  std::optional<std::uint64_t> seed_;
  PendingBlob target_;
  std::vector<PendingBlob> distractors_;
  std::vector<OcclusionWindow> occlusions_;
};

}  // namespace

SynthScenario parse_scenario(std::string_view text) { return ScenarioParser().parse(text); }

}  // namespace dptrack
