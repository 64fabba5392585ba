#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dptrack/eval.hpp"
#include "dptrack/synth.hpp"
#include "dptrack/types.hpp"

namespace dptrack {

// ---------------------------------------------------------------------------
// pmseq: "PMSQ1", then u32le T, H, W, then T*H*W float32le values, frame-major
// then row-major. Byte buffers are carried in std::string.
// ---------------------------------------------------------------------------

inline constexpr std::string_view kPmseqMagic = "PMSQ1";
inline constexpr std::size_t kPmseqHeaderSize = 5 + 3 * 4;

/// Values are narrowed to float32; sequences whose values are already float
/// representable round-trip bit-exactly.
std::string write_pmseq(const ProbSequence& seq);

/// Throws BadMagic, TruncatedFile, TrailingData, DimensionMismatch (a zero
/// dimension) or ValueOutOfRange naming the frame and byte offset.
ProbSequence read_pmseq(std::string_view bytes);

// ---------------------------------------------------------------------------
// Binary PGM (P5). Samples are one byte for maxval < 256, otherwise two bytes
// big-endian.
// ---------------------------------------------------------------------------

/// Sample v becomes v / maxval. `name` only labels error messages. Throws
/// UnsupportedFormat for other PNM variants, ParseError or TruncatedFile for
/// damaged files.
ProbMap read_pgm(std::string_view bytes, std::string_view name = "<pgm>");

/// Quantizes to round(v * maxval); maxval in [1, 65535].
std::string write_pgm(const ProbMap& map, int maxval = 255);

/// Reads every *.pgm file of `dir` in filename order. Throws EmptyDirectory or
/// MixedDimensions.
ProbSequence read_pgm_dir(const std::filesystem::path& dir);

/// Writes frame_00000.pgm, frame_00001.pgm, ... into `dir` (created if needed).
void write_pgm_dir(const std::filesystem::path& dir, const ProbSequence& seq, int maxval = 255);

// ---------------------------------------------------------------------------
// CSV files. Doubles are written in shortest round-trip form.
// ---------------------------------------------------------------------------

std::string format_double(double v);

/// "frame,x,y,score_cum" with the running path score.
std::string write_track_csv(const TrackPath& path, const ProbSequence& seq);

struct TrackCsv {
  std::vector<PixelCoord> points;
  std::vector<double> score_cum;
};
TrackCsv read_track_csv(std::string_view text);

/// Accepts "frame,cx,cy" or "frame,x,y,w,h"; boxes map to (x + w/2, y + h/2).
GroundTruth read_gt_csv(std::string_view text);
std::string write_gt_csv(const GroundTruth& gt);

/// Three sections (per-frame errors, precision curve, summary), each a
/// "# name" line followed by a header row and data rows.
std::string write_report_csv(const EvalReport& report);

std::string write_bench_csv(std::span<const OcclusionBenchRow> rows);

// ---------------------------------------------------------------------------
// Scenario description: "key = value" lines, '#' comments.
// ---------------------------------------------------------------------------

/// Throws ParseError (with line number) for syntax problems and unknown keys,
/// InvalidScenario when the parsed scenario is inconsistent.
SynthScenario parse_scenario(std::string_view text);

// ---------------------------------------------------------------------------

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace dptrack
