#include "dptrack/oracle.hpp"

namespace dptrack {

ProbSequence random_sequence(std::mt19937_64& rng, int frames, int width, int height) {
  std::vector<ProbMap> maps;
  maps.reserve(static_cast<std::size_t>(frames));
  for (int t = 0; t < frames; ++t) {
    std::vector<double> values(static_cast<std::size_t>(width) * height);
    for (double& v : values) v = uniform01(rng);
    maps.push_back(ProbMap::create(width, height, std::move(values)));
  }
  return ProbSequence(std::move(maps));
}

OracleCase random_oracle_case(std::mt19937_64& rng) {
  const auto pick = [&rng](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  const int frames = pick(2, 5);
  const int width = pick(2, 5);
  const int height = pick(2, 5);
  const int radius = pick(0, 2);
  const bool anchored = (rng() & 1u) != 0;
  std::optional<Anchor> anchor;
  if (anchored) anchor = Anchor{{pick(0, width - 1), pick(0, height - 1)}};
  return {random_sequence(rng, frames, width, height), radius, anchor};
}

OracleReport run_oracle_check(std::uint64_t seed, std::size_t cases) {
  std::mt19937_64 rng(seed);
  OracleReport report;
  for (std::size_t i = 0; i < cases; ++i) {
    const OracleCase c = random_oracle_case(rng);
    const SlopeConstraint constraint(c.radius);
    TrackPath dp = track(c.seq, constraint, c.anchor);
    TrackPath bf = brute_force_track(c.seq, constraint, c.anchor);
    ++report.cases;
    if (c.anchor) ++report.anchored;
    if (!is_feasible(dp.points, constraint)) ++report.infeasible_paths;
    if (!is_feasible(bf.points, constraint)) ++report.infeasible_paths;
    if (dp.score != bf.score || dp.points != bf.points) {
      report.mismatches.push_back({i, std::move(dp), std::move(bf)});
    }
  }
  return report;
}

}  // namespace dptrack
