#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "dptrack/io.hpp"

namespace dptrack {
namespace {

struct Line {
  std::size_t number;  // 1-based
  std::string_view text;
};

// Splits on '\n', drops a trailing '\r' and a final empty line. Any other empty
// line is kept so the caller rejects it.
std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t start = 0;
  std::size_t number = 1;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!(end == text.size() && line.empty())) lines.push_back({number, line});
    start = end + 1;
    ++number;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

[[noreturn]] void parse_fail(std::string_view what_file, std::size_t line, const std::string& what) {
  std::ostringstream msg;
  msg << what_file << " line " << line << ": " << what;
  throw Error(ErrorKind::ParseError, msg.str());
}

template <typename T>
T parse_number(std::string_view field, std::string_view file, std::size_t line,
               std::string_view column) {
  T value{};
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || field.empty()) {
    parse_fail(file, line,
               "bad " + std::string(column) + " value '" + std::string(field) + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) parse_fail(file, line, std::string(column) + " is not finite");
  }
  return value;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string write_track_csv(const TrackPath& path, const ProbSequence& seq) {
  if (path.points.size() != seq.size()) {
    throw Error(ErrorKind::LengthMismatch, "track and sequence lengths differ");
  }
  std::string out = "frame,x,y,score_cum\n";
  double running = 0.0;
  for (std::size_t t = 0; t < path.points.size(); ++t) {
    const PixelCoord p = path.points[t];
    running += seq[t].at(p);
    out += std::to_string(t) + "," + std::to_string(p.x) + "," + std::to_string(p.y) + "," +
           format_double(running) + "\n";
  }
  return out;
}

TrackCsv read_track_csv(std::string_view text) {
  constexpr std::string_view kFile = "track csv";
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error(ErrorKind::EmptyInput, "track csv is empty");
  if (lines.front().text != "frame,x,y,score_cum") {
    parse_fail(kFile, 1, "expected header 'frame,x,y,score_cum'");
  }
  if (lines.size() == 1) throw Error(ErrorKind::EmptyInput, "track csv has no rows");
  TrackCsv out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto f = split_fields(line.text);
    if (f.size() != 4) parse_fail(kFile, line.number, "expected 4 fields");
    const auto frame = parse_number<long>(f[0], kFile, line.number, "frame");
    if (frame != static_cast<long>(i - 1)) {
      parse_fail(kFile, line.number, "frame " + std::to_string(frame) + " out of sequence");
    }
    out.points.push_back({parse_number<int>(f[1], kFile, line.number, "x"),
                          parse_number<int>(f[2], kFile, line.number, "y")});
    out.score_cum.push_back(parse_number<double>(f[3], kFile, line.number, "score_cum"));
  }
  return out;
}

GroundTruth read_gt_csv(std::string_view text) {
  constexpr std::string_view kFile = "ground-truth csv";
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error(ErrorKind::EmptyInput, "ground-truth csv is empty");
  const std::string_view header = lines.front().text;
  const bool boxes = header == "frame,x,y,w,h";
  if (!boxes && header != "frame,cx,cy") {
    parse_fail(kFile, 1, "expected header 'frame,cx,cy' or 'frame,x,y,w,h'");
  }
  if (lines.size() == 1) throw Error(ErrorKind::EmptyInput, "ground-truth csv has no rows");
  GroundTruth gt;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto f = split_fields(line.text);
    if (f.size() != (boxes ? 5u : 3u)) {
      parse_fail(kFile, line.number, boxes ? "expected 5 fields" : "expected 3 fields");
    }
    const auto frame = parse_number<long>(f[0], kFile, line.number, "frame");
    if (frame != static_cast<long>(i - 1)) {
      parse_fail(kFile, line.number, "frame " + std::to_string(frame) + " out of sequence");
    }
    const double a = parse_number<double>(f[1], kFile, line.number, boxes ? "x" : "cx");
    const double b = parse_number<double>(f[2], kFile, line.number, boxes ? "y" : "cy");
    if (!boxes) {
      gt.centers.push_back({a, b});
      continue;
    }
    const double w = parse_number<double>(f[3], kFile, line.number, "w");
    const double h = parse_number<double>(f[4], kFile, line.number, "h");
    if (!(w > 0.0 && h > 0.0)) parse_fail(kFile, line.number, "box width and height must be > 0");
    gt.centers.push_back({a + w / 2.0, b + h / 2.0});
  }
  return gt;
}

std::string write_gt_csv(const GroundTruth& gt) {
  std::string out = "frame,cx,cy\n";
  for (std::size_t t = 0; t < gt.centers.size(); ++t) {
    out += std::to_string(t) + "," + format_double(gt.centers[t].x) + "," +
           format_double(gt.centers[t].y) + "\n";
  }
  return out;
}

std::string write_report_csv(const EvalReport& report) {
  std::string out = "# errors\nframe,error\n";
  for (std::size_t t = 0; t < report.errors.size(); ++t) {
    out += std::to_string(t) + "," + format_double(report.errors[t]) + "\n";
  }
  out += "# precision\nthreshold,fraction\n";
  for (std::size_t i = 0; i < report.curve.thresholds.size(); ++i) {
    out += format_double(report.curve.thresholds[i]) + "," +
           format_double(report.curve.fractions[i]) + "\n";
  }
  out += "# summary\naverage_error,precision_at_20\n";
  out += format_double(report.average_error) + "," + format_double(report.precision_at_20) + "\n";
  return out;
}

std::string write_bench_csv(std::span<const OcclusionBenchRow> rows) {
  std::string out =
      "occlusion_length,occlusion_start,occlusion_end,radius,dp_average_error,"
      "greedy_average_error,dp_precision_at_20,greedy_precision_at_20,"
      "dp_post_occlusion_error,greedy_post_occlusion_error\n";
  for (const auto& r : rows) {
    out += std::to_string(r.point.occlusion_length) + "," +
           std::to_string(r.occlusion ? r.occlusion->start_frame : -1) + "," +
           std::to_string(r.occlusion ? r.occlusion->end_frame : -1) + "," +
           std::to_string(r.point.radius) + "," + format_double(r.dp_average_error) + "," +
           format_double(r.greedy_average_error) + "," + format_double(r.dp_precision_at_20) +
           "," + format_double(r.greedy_precision_at_20) + "," +
           format_double(r.dp_post_occlusion_error) + "," +
           format_double(r.greedy_post_occlusion_error) + "\n";
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::IoError, "failed reading " + path.string());
  return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

}  // namespace dptrack
