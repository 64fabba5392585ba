#include <gtest/gtest.h>

#include <bit>
#include <cstdint>
#include <filesystem>
#include <random>

#include "dptrack/io.hpp"
#include "dptrack/oracle.hpp"
#include "test_helpers.hpp"

namespace dptrack {
namespace {

namespace fs = std::filesystem;

std::string le32(std::uint32_t v) {
  std::string s(4, '\0');
  for (int i = 0; i < 4; ++i) s[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  return s;
}

std::string pmseq_bytes(std::uint32_t t, std::uint32_t h, std::uint32_t w,
                        const std::vector<float>& values) {
  std::string s = "PMSQ1" + le32(t) + le32(h) + le32(w);
  for (float f : values) s += le32(std::bit_cast<std::uint32_t>(f));
  return s;
}

// Values drawn as float so the sequence is representable in the file format.
ProbSequence random_float_sequence(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 9);
  std::uniform_real_distribution<float> val(0.0f, 1.0f);
  const int frames = dim(rng);
  const int w = dim(rng);
  const int h = dim(rng);
  std::vector<ProbMap> maps;
  for (int t = 0; t < frames; ++t) {
    std::vector<double> v(static_cast<std::size_t>(w) * h);
    for (double& x : v) x = val(rng);
    if (t == 0) v[0] = 1.0f;
    maps.push_back(make_prob_map(w, h, std::move(v)));
  }
  return ProbSequence(std::move(maps));
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("dptrack_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

TEST(Pmseq, LayoutIsAsDocumented) {
  const auto seq = testing::sequence_of(3, 1, {{0.0, 0.5, 1.0}});
  const std::string bytes = write_pmseq(seq);
  EXPECT_EQ(bytes, pmseq_bytes(1, 1, 3, {0.0f, 0.5f, 1.0f}));
  EXPECT_EQ(bytes.size(), kPmseqHeaderSize + 12);
}

TEST(Pmseq, RoundTripIsBitExact) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const ProbSequence seq = random_float_sequence(rng);
    const std::string bytes = write_pmseq(seq);
    EXPECT_EQ(read_pmseq(bytes), seq);
    EXPECT_EQ(write_pmseq(read_pmseq(bytes)), bytes);
  }
}

TEST(Pmseq, BadMagic) {
  std::string bytes = pmseq_bytes(1, 1, 1, {0.5f});
  bytes[4] = '0';
  EXPECT_DPTRACK_ERROR(read_pmseq(bytes), ErrorKind::BadMagic);
  EXPECT_DPTRACK_ERROR(read_pmseq("GIF89a"), ErrorKind::BadMagic);
}

TEST(Pmseq, ValueOutOfRangeNamesOffset) {
  // T=2, H=2, W=2; the bad value is frame 1, pixel 2 -> byte 17 + 4 * (4 + 2) = 41.
  std::vector<float> values(8, 0.25f);
  values[6] = 1.0000001f;
  try {
    read_pmseq(pmseq_bytes(2, 2, 2, values));
    FAIL() << "expected ValueOutOfRange";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ValueOutOfRange);
    EXPECT_NE(std::string(e.what()).find("frame 1"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("byte offset 41"), std::string::npos) << e.what();
  }
}

TEST(Pmseq, TruncatedAndTrailing) {
  const std::string good = pmseq_bytes(2, 1, 2, {0.1f, 0.2f, 0.3f, 0.4f});
  EXPECT_DPTRACK_ERROR(read_pmseq(good.substr(0, 3)), ErrorKind::TruncatedFile);
  EXPECT_DPTRACK_ERROR(read_pmseq(good.substr(0, 12)), ErrorKind::TruncatedFile);
  EXPECT_DPTRACK_ERROR(read_pmseq(good.substr(0, good.size() - 1)), ErrorKind::TruncatedFile);
  EXPECT_DPTRACK_ERROR(read_pmseq(good + "x"), ErrorKind::TrailingData);
  EXPECT_DPTRACK_ERROR(read_pmseq(pmseq_bytes(0, 1, 1, {})), ErrorKind::DimensionMismatch);
  EXPECT_DPTRACK_ERROR(read_pmseq(pmseq_bytes(0xFFFFFFFFu, 0xFFFFu, 0xFFFFu, {})),
                       ErrorKind::TruncatedFile);
}

TEST(Pgm, EightBitScaling) {
  const std::string bytes = std::string("P5\n2 2\n255\n") + '\x00' + '\xff' + '\x80' + '\x40';
  const ProbMap m = read_pgm(bytes);
  EXPECT_EQ(m.at(0, 0), 0.0);
  EXPECT_EQ(m.at(1, 0), 1.0);
  EXPECT_EQ(m.at(0, 1), 128.0 / 255.0);
  EXPECT_EQ(m.at(1, 1), 64.0 / 255.0);
}

TEST(Pgm, SixteenBitBigEndian) {
  // Samples 0x0102 = 258 and 0xFFFF = 65535, hand-encoded big-endian.
  const std::string bytes = std::string("P5 # comment\n2 1\n65535\n") + '\x01' + '\x02' +
                            '\xff' + '\xff';
  const ProbMap m = read_pgm(bytes);
  EXPECT_EQ(m.at(0, 0), 258.0 / 65535.0);
  EXPECT_EQ(m.at(1, 0), 1.0);
}

TEST(Pgm, RejectsOtherFormatsAndDamage) {
  EXPECT_DPTRACK_ERROR(read_pgm("P2\n1 1\n255\n0\n"), ErrorKind::UnsupportedFormat);
  EXPECT_DPTRACK_ERROR(read_pgm("P6\n1 1\n255\nabc"), ErrorKind::UnsupportedFormat);
  EXPECT_DPTRACK_ERROR(read_pgm("BM"), ErrorKind::UnsupportedFormat);
  EXPECT_DPTRACK_ERROR(read_pgm("P5\n2 2\n255\nab"), ErrorKind::TruncatedFile);
  EXPECT_DPTRACK_ERROR(read_pgm("P5\n1 1\n255\nab"), ErrorKind::TrailingData);
  EXPECT_DPTRACK_ERROR(read_pgm("P5\n1 x\n255\na"), ErrorKind::ParseError);
  EXPECT_DPTRACK_ERROR(read_pgm("P5\n1 1\n70000\na"), ErrorKind::ParseError);
  EXPECT_DPTRACK_ERROR(read_pgm(std::string("P5\n1 1\n100\n") + '\xc8'),
                       ErrorKind::ValueOutOfRange);
}

TEST(Pgm, WriteThenReadQuantizes) {
  const ProbMap m = make_prob_map(3, 1, {0.0, 0.5, 1.0});
  const ProbMap back = read_pgm(write_pgm(m, 255));
  EXPECT_EQ(back.at(1, 0), 128.0 / 255.0);
  const ProbMap wide = read_pgm(write_pgm(m, 65535));
  EXPECT_EQ(wide.at(1, 0), 32768.0 / 65535.0);
  EXPECT_EQ(wide.at(2, 0), 1.0);
}

TEST(PgmDir, ReadsInFilenameOrder) {
  TempDir dir;
  write_file(dir.path() / "b.pgm", write_pgm(make_prob_map(1, 1, {1.0})));
  write_file(dir.path() / "a.pgm", write_pgm(make_prob_map(1, 1, {0.0})));
  write_file(dir.path() / "notes.txt", "ignored");
  const ProbSequence seq = read_pgm_dir(dir.path());
  ASSERT_EQ(seq.size(), 2u);
  EXPECT_EQ(seq[0].at(0, 0), 0.0);
  EXPECT_EQ(seq[1].at(0, 0), 1.0);
}

TEST(PgmDir, Errors) {
  TempDir dir;
  EXPECT_DPTRACK_ERROR(read_pgm_dir(dir.path()), ErrorKind::EmptyDirectory);
  write_file(dir.path() / "0.pgm", write_pgm(make_prob_map(1, 1, {1.0})));
  write_file(dir.path() / "1.pgm", write_pgm(make_prob_map(2, 1, {1.0, 0.0})));
  EXPECT_DPTRACK_ERROR(read_pgm_dir(dir.path()), ErrorKind::MixedDimensions);
}

TEST(PgmDir, WriterRoundTrip) {
  TempDir dir;
  std::mt19937_64 rng(6);
  const ProbSequence seq = random_sequence(rng, 4, 5, 3);
  write_pgm_dir(dir.path() / "frames", seq, 65535);
  const ProbSequence back = read_pgm_dir(dir.path() / "frames");
  ASSERT_EQ(back.size(), 4u);
  for (std::size_t t = 0; t < 4; ++t) {
    for (std::size_t i = 0; i < 15; ++i) {
      EXPECT_NEAR(back[t].values()[i], seq[t].values()[i], 0.5 / 65535 + 1e-12);
    }
  }
}

TEST(Csv, FormatDoubleIsShortestRoundTrip) {
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(1.5), "1.5");
  EXPECT_EQ(format_double(0.1 + 0.2), "0.30000000000000004");
  EXPECT_EQ(format_double(5.0), "5");
}

TEST(Csv, TrackRoundTrip) {
  const auto seq = testing::sequence_of(2, 2, {{0.1, 0.2, 0.3, 0.4}, {0.5, 0.6, 0.7, 0.8}});
  TrackPath path{{{1, 0}, {0, 1}}, 0.2 + 0.7};
  const std::string csv = write_track_csv(path, seq);
  EXPECT_EQ(csv, "frame,x,y,score_cum\n0,1,0,0.2\n1,0,1,0.8999999999999999\n");
  const TrackCsv back = read_track_csv(csv);
  EXPECT_EQ(back.points, path.points);
  EXPECT_EQ(back.score_cum.back(), path.score);
}

TEST(Csv, TrackRejectsMalformed) {
  EXPECT_DPTRACK_ERROR(read_track_csv(""), ErrorKind::EmptyInput);
  EXPECT_DPTRACK_ERROR(read_track_csv("frame,x,y\n0,1,1\n"), ErrorKind::ParseError);
  EXPECT_DPTRACK_ERROR(read_track_csv("frame,x,y,score_cum\n1,0,0,0\n"), ErrorKind::ParseError);
  EXPECT_DPTRACK_ERROR(read_track_csv("frame,x,y,score_cum\n0,a,0,0\n"), ErrorKind::ParseError);
  EXPECT_DPTRACK_ERROR(read_track_csv("frame,x,y,score_cum\n0,0,0\n"), ErrorKind::ParseError);
  EXPECT_DPTRACK_ERROR(read_track_csv("frame,x,y,score_cum\n0,0,0,0\n\n1,0,0,0\n"),
                       ErrorKind::ParseError);
}

TEST(Csv, GroundTruthCentersAndBoxes) {
  const GroundTruth centers = read_gt_csv("frame,cx,cy\r\n0,1.5,2\r\n1,3,4.25\r\n");
  EXPECT_EQ(centers.centers, (std::vector<Center>{{1.5, 2}, {3, 4.25}}));
  const GroundTruth boxes = read_gt_csv("frame,x,y,w,h\n0,10,20,4,6\n1,0,0,1,1\n");
  EXPECT_EQ(boxes.centers, (std::vector<Center>{{12, 23}, {0.5, 0.5}}));
  EXPECT_EQ(read_gt_csv(write_gt_csv(centers)).centers, centers.centers);
}

TEST(Csv, GroundTruthRejectsMalformed) {
  EXPECT_DPTRACK_ERROR(read_gt_csv("frame,a,b\n0,1,1\n"), ErrorKind::ParseError);
  EXPECT_DPTRACK_ERROR(read_gt_csv("frame,x,y,w,h\n0,1,1,0,2\n"), ErrorKind::ParseError);
  EXPECT_DPTRACK_ERROR(read_gt_csv("frame,cx,cy\n0,1,nan\n"), ErrorKind::ParseError);
  EXPECT_DPTRACK_ERROR(read_gt_csv("frame,cx,cy\n0,1,1\n2,1,1\n"), ErrorKind::ParseError);
  EXPECT_DPTRACK_ERROR(read_gt_csv("frame,cx,cy\n"), ErrorKind::EmptyInput);
}

TEST(Csv, ReportSections) {
  const EvalReport r = make_report({0.0, 3.0}, 2, 1);
  EXPECT_EQ(write_report_csv(r),
            "# errors\nframe,error\n0,0\n1,3\n"
            "# precision\nthreshold,fraction\n1,0.5\n2,0.5\n"
            "# summary\naverage_error,precision_at_20\n1.5,1\n");
}

constexpr const char* kScenario = R"(# comment line
width = 32
height = 24
frames = 10
target.path = 0:2,3;9:20,12   # trailing comment
target.peak = 0.9
target.sigma = 2.5
occlusion = 3-4
occlusion = 7-7
distractor.path = 0:30,20
distractor.sigma = 1
distractor.path = 0:1,1;5:10,1
distractor.peak = 0.4
distractor.sigma = 3
noise = 0.05
seed = 99
)";

TEST(Scenario, ParsesAllKeys) {
  const SynthScenario s = parse_scenario(kScenario);
  EXPECT_EQ(s.width, 32);
  EXPECT_EQ(s.height, 24);
  EXPECT_EQ(s.frames, 10);
  EXPECT_EQ(s.target.peak, 0.9);
  EXPECT_EQ(s.target.sigma, 2.5);
  EXPECT_EQ(s.target.trajectory.front(), (Center{2, 3}));
  EXPECT_EQ(s.target.trajectory[9], (Center{20, 12}));
  EXPECT_DOUBLE_EQ(s.target.trajectory[3].x, 8.0);
  EXPECT_DOUBLE_EQ(s.target.trajectory[3].y, 6.0);
  ASSERT_EQ(s.occlusions.size(), 2u);
  EXPECT_EQ(s.occlusions[1].start_frame, 7);
  EXPECT_EQ(s.occlusions[1].end_frame, 7);
  ASSERT_EQ(s.distractors.size(), 2u);
  EXPECT_EQ(s.distractors[0].peak, 1.0);
  EXPECT_EQ(s.distractors[0].sigma, 1.0);
  EXPECT_EQ(s.distractors[1].peak, 0.4);
  EXPECT_EQ(s.distractors[1].trajectory[9], (Center{10, 1}));
  EXPECT_EQ(s.noise_amplitude, 0.05);
  EXPECT_EQ(s.seed, 99u);
}

TEST(Scenario, RejectsUnknownAndMalformed) {
  const std::string base = "width = 8\nheight = 8\nframes = 3\ntarget.path = 0:1,1\n"
                           "target.sigma = 1\n";
  EXPECT_NO_THROW(parse_scenario(base));
  EXPECT_DPTRACK_ERROR(parse_scenario(base + "colour = red\n"), ErrorKind::ParseError);
  EXPECT_DPTRACK_ERROR(parse_scenario(base + "width = 9\n"), ErrorKind::ParseError);
  EXPECT_DPTRACK_ERROR(parse_scenario(base + "noise 0.1\n"), ErrorKind::ParseError);
  EXPECT_DPTRACK_ERROR(parse_scenario(base + "distractor.peak = 0.5\n"), ErrorKind::ParseError);
  EXPECT_DPTRACK_ERROR(parse_scenario(base + "occlusion = 2\n"), ErrorKind::ParseError);
  EXPECT_DPTRACK_ERROR(parse_scenario("width = 8\n"), ErrorKind::ParseError);
  EXPECT_DPTRACK_ERROR(parse_scenario(base + "occlusion = 2-5\n"), ErrorKind::InvalidScenario);
  EXPECT_DPTRACK_ERROR(parse_scenario(base + "target.peak = 2\n"), ErrorKind::InvalidScenario);
}

TEST(Scenario, ShippedBaseScenarioParses) {
  const SynthScenario s = parse_scenario(read_file(DPTRACK_SOURCE_DIR "/scenarios/occlusion_base.txt"));
  EXPECT_EQ(s.width, 64);
  EXPECT_EQ(s.frames, 60);
  ASSERT_EQ(s.distractors.size(), 1u);
  for (std::size_t t = 0; t < 60; ++t) {
    EXPECT_EQ(s.distractors[0].trajectory[t].y - s.target.trajectory[t].y, 20.0);
    if (t > 0) {
      EXPECT_EQ(std::abs(s.target.trajectory[t].x - s.target.trajectory[t - 1].x), 2.0);
    }
  }
}

}  // namespace
}  // namespace dptrack
