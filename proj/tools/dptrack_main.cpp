// dptrack: command-line front end for the DP tracker, the synthetic scenario
// renderer and the evaluation harness.
//
// Exit status is 0 on success, 1 when oracle-check finds a mismatch and 2 for
// any error, which is reported as a single "error: <Kind>: <message>" line on
// stderr.

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "dptrack/dp.hpp"
#include "dptrack/eval.hpp"
#include "dptrack/io.hpp"
#include "dptrack/oracle.hpp"
#include "dptrack/synth.hpp"

namespace fs = std::filesystem;
using namespace dptrack;

namespace {

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_file(path, content);
  }
}

ProbSequence load_sequence(const std::string& in) {
  if (fs::is_directory(in)) return read_pgm_dir(in);
  return read_pmseq(read_file(in));
}

PixelCoord parse_xy(const std::string& text) {
  const auto comma = text.find(',');
  int x = 0;
  int y = 0;
  const char* end = text.data() + text.size();
  if (comma == std::string::npos ||
      std::from_chars(text.data(), text.data() + comma, x).ptr != text.data() + comma ||
      std::from_chars(text.data() + comma + 1, end, y).ptr != end || comma == 0 ||
      comma + 1 == text.size()) {
    throw Error(ErrorKind::InvalidArgument, "--init expects X,Y, got '" + text + "'");
  }
  return {x, y};
}

struct TrackArgs {
  std::string in;
  int radius = 0;
  std::string init;
  std::string out;
  bool greedy = false;
};

int run_track(const TrackArgs& a) {
  const ProbSequence seq = load_sequence(a.in);
  const SlopeConstraint constraint(a.radius);
  std::optional<Anchor> anchor;
  if (!a.init.empty()) anchor = Anchor{parse_xy(a.init)};
  const TrackPath path =
      a.greedy ? greedy_track(seq, constraint, anchor) : track(seq, constraint, anchor);
  emit(a.out, write_track_csv(path, seq));
  return 0;
}

struct EvalArgs {
  std::string track;
  std::string gt;
  double max_threshold = kDefaultMaxThreshold;
  double step = kDefaultThresholdStep;
  std::string out;
};

int run_eval(const EvalArgs& a) {
  const TrackCsv tracked = read_track_csv(read_file(a.track));
  const GroundTruth gt = read_gt_csv(read_file(a.gt));
  const EvalReport report =
      make_report(center_errors(tracked.points, gt), a.max_threshold, a.step);
  emit(a.out, write_report_csv(report));
  return 0;
}

struct SynthArgs {
  std::string scenario;
  std::string out_seq;
  std::string out_gt;
  std::string out_meta;
  std::string out_pgm_dir;
};

int run_synth(const SynthArgs& a) {
  const SynthScenario scenario = parse_scenario(read_file(a.scenario));
  const auto [seq, gt] = render_scenario(scenario);
  write_file(a.out_seq, write_pmseq(seq));
  write_file(a.out_gt, write_gt_csv(gt));
  if (!a.out_pgm_dir.empty()) write_pgm_dir(a.out_pgm_dir, seq);
  const std::string meta = "rng=" + std::string(kRngAlgorithm) +
                           "\nseed=" + std::to_string(scenario.seed) +
                           "\nframes=" + std::to_string(seq.size()) +
                           "\nwidth=" + std::to_string(seq.width()) +
                           "\nheight=" + std::to_string(seq.height()) + "\n";
  if (!a.out_meta.empty()) write_file(a.out_meta, meta);
  std::cout << meta;
  return 0;
}

struct BenchArgs {
  std::string scenario;
  std::vector<int> lengths{0, 2, 4, 8};
  std::vector<int> radii{2, 5, 10};
  std::string out;
};

int run_bench(const BenchArgs& a) {
  const SynthScenario base = parse_scenario(read_file(a.scenario));
  const auto rows = run_occlusion_benchmark(a.lengths, a.radii, base);
  emit(a.out, write_bench_csv(rows));
  return 0;
}

struct OracleArgs {
  std::uint64_t seed = 1;
  std::size_t cases = 1000;
};

int run_oracle(const OracleArgs& a) {
  const OracleReport report = run_oracle_check(a.seed, a.cases);
  std::cout << "cases=" << report.cases << " anchored=" << report.anchored
            << " mismatches=" << report.mismatches.size()
            << " infeasible=" << report.infeasible_paths << "\n";
  for (const auto& m : report.mismatches) {
    std::cerr << "mismatch: case=" << m.case_index << " dp_score=" << format_double(m.dp.score)
              << " brute_force_score=" << format_double(m.brute_force.score) << "\n";
  }
  return report.mismatches.empty() && report.infeasible_paths == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Globally optimal single-object tracking through probability-map sequences"};
  app.require_subcommand(1);

  TrackArgs track_args;
  auto* track_cmd = app.add_subcommand("track", "Optimal (or greedy) path through a sequence");
  track_cmd->add_option("--in", track_args.in, "pmseq file or directory of P5 PGM frames")
      ->required();
  track_cmd->add_option("--radius", track_args.radius, "Slope constraint radius in pixels")
      ->required()
      ->check(CLI::NonNegativeNumber);
  track_cmd->add_option("--init", track_args.init, "Frame-0 anchor as X,Y");
  track_cmd->add_option("--out", track_args.out, "Track CSV (stdout if omitted)");
  track_cmd->add_flag("--greedy", track_args.greedy, "Use the per-frame greedy baseline");

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Center-error and precision report");
  eval_cmd->add_option("--track", eval_args.track, "Track CSV")->required();
  eval_cmd->add_option("--gt", eval_args.gt, "Ground-truth CSV (centers or boxes)")->required();
  eval_cmd->add_option("--max-threshold", eval_args.max_threshold, "Largest threshold, pixels")
      ->capture_default_str();
  eval_cmd->add_option("--step", eval_args.step, "Threshold step, pixels")->capture_default_str();
  eval_cmd->add_option("--out", eval_args.out, "Report CSV (stdout if omitted)");

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth", "Render a synthetic scenario");
  synth_cmd->add_option("--scenario", synth_args.scenario, "Scenario description")->required();
  synth_cmd->add_option("--out-seq", synth_args.out_seq, "Output pmseq file")->required();
  synth_cmd->add_option("--out-gt", synth_args.out_gt, "Output ground-truth CSV")->required();
  synth_cmd->add_option("--out-meta", synth_args.out_meta, "Generator metadata file");
  synth_cmd->add_option("--out-pgm-dir", synth_args.out_pgm_dir, "Also write frames as PGM");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench-occlusion", "DP vs greedy occlusion sweep");
  bench_cmd->add_option("--scenario", bench_args.scenario, "Base scenario")->required();
  bench_cmd->add_option("--lengths", bench_args.lengths, "Occlusion lengths, frames")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--radii", bench_args.radii, "Slope radii, pixels")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--out", bench_args.out, "Bench CSV (stdout if omitted)");

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "Randomized DP vs brute-force check");
  oracle_cmd->add_option("--seed", oracle_args.seed, "Generator seed")->capture_default_str();
  oracle_cmd->add_option("--cases", oracle_args.cases, "Number of instances")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: UsageError: " << one_line(e.what()) << "\n";
    return 2;
  }

  try {
    if (*track_cmd) return run_track(track_args);
    if (*eval_cmd) return run_eval(eval_args);
    if (*synth_cmd) return run_synth(synth_args);
    if (*bench_cmd) return run_bench(bench_args);
    if (*oracle_cmd) return run_oracle(oracle_args);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << one_line(e.what()) << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << one_line(e.what()) << "\n";
    return 2;
  }
  return 2;
}
