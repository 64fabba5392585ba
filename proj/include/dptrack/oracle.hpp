#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "dptrack/dp.hpp"

namespace dptrack {

/// Uniform [0, 1) from the top 53 bits of one draw.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Sequence of `frames` maps with independent uniform values.
ProbSequence random_sequence(std::mt19937_64& rng, int frames, int width, int height);

struct OracleCase {
  ProbSequence seq;
  int radius;
  std::optional<Anchor> anchor;
};

/// Instance sized for brute force: T in 2..5, W and H in 2..5, radius 0..2,
/// anchored with probability 1/2.
OracleCase random_oracle_case(std::mt19937_64& rng);

struct OracleMismatch {
  std::size_t case_index;
  TrackPath dp;
  TrackPath brute_force;
};

struct OracleReport {
  std::size_t cases = 0;
  std::size_t anchored = 0;
  std::size_t infeasible_paths = 0;
  std::vector<OracleMismatch> mismatches;
};

/// Runs `cases` random instances through track() and brute_force_track() and
/// records every disagreement in score (bit-exact) or coordinates.
OracleReport run_oracle_check(std::uint64_t seed, std::size_t cases);

}  // namespace dptrack
