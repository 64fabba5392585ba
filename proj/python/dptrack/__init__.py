"""Slope-constrained dynamic-programming tracker over probability maps."""

from ._dptrack import (
    DPTrackError,
    ProbSequence,
    TrackPath,
    brute_force_track,
    center_errors,
    dp_forward,
    greedy_track,
    occlusion_benchmark,
    path_score,
    precision_curve,
    read_pmseq,
    render_scenario,
    run_ope,
    track,
    write_pmseq,
)

__all__ = [
    "DPTrackError",
    "ProbSequence",
    "TrackPath",
    "brute_force_track",
    "center_errors",
    "dp_forward",
    "greedy_track",
    "occlusion_benchmark",
    "path_score",
    "precision_curve",
    "read_pmseq",
    "render_scenario",
    "run_ope",
    "track",
    "write_pmseq",
]
