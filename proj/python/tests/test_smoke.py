import pathlib

import numpy as np
import pytest

import dptrack

SCENARIO = pathlib.Path(__file__).resolve().parents[2] / "scenarios" / "occlusion_base.txt"


def moving_peak():
    values = np.zeros((3, 3, 3))
    for t in range(3):
        values[t, t, t] = 1.0
    return dptrack.ProbSequence(values)


def test_track_follows_peak():
    path = dptrack.track(moving_peak(), radius=1)
    assert path.points == [(0, 0), (1, 1), (2, 2)]
    assert path.score == 3.0


def test_anchor_and_greedy():
    seq = dptrack.ProbSequence(
        np.array([[[0, 0, 1, 0, 0]], [[0, 0.5, 0, 0.25, 0]], [[0, 0, 0, 0, 1]]], dtype=float)
    )
    assert dptrack.track(seq, 1, init=(2, 0)).points == [(2, 0), (3, 0), (4, 0)]
    assert dptrack.greedy_track(seq, 1, init=(2, 0)).points == [(2, 0), (1, 0), (0, 0)]


def test_matches_brute_force():
    rng = np.random.default_rng(3)
    for _ in range(20):
        seq = dptrack.ProbSequence(rng.random((3, 3, 4)))
        dp = dptrack.track(seq, 1)
        bf = dptrack.brute_force_track(seq, 1)
        assert dp.points == bf.points
        assert dp.score == bf.score


def test_dp_forward_shapes():
    cumulative, back = dptrack.dp_forward(moving_peak(), 1)
    assert cumulative.shape == (3, 3, 3)
    assert back.shape == (3, 3, 3)
    assert (back[0] == -1).all()
    assert cumulative[2, 2, 2] == 3.0


def test_errors_carry_kind():
    with pytest.raises(dptrack.DPTrackError) as info:
        dptrack.ProbSequence(np.full((1, 2, 2), 1.5))
    assert info.value.args[0] == "ValueOutOfRange"
    with pytest.raises(ValueError):
        dptrack.track(moving_peak(), -1)
    with pytest.raises(dptrack.DPTrackError) as info:
        dptrack.read_pmseq(b"nope")
    assert info.value.args[0] == "BadMagic"


def test_pmseq_round_trip():
    seq = dptrack.ProbSequence(np.random.default_rng(1).random((2, 4, 5)).astype(np.float32))
    again = dptrack.read_pmseq(dptrack.write_pmseq(seq))
    assert again == seq
    np.testing.assert_array_equal(again.to_numpy(), seq.to_numpy())


def test_evaluation():
    errors = dptrack.center_errors([(3, 4), (0, 0)], [(0.0, 0.0), (0.0, 0.0)])
    assert errors == [5.0, 0.0]
    thresholds, fractions = dptrack.precision_curve(errors, 10, 1)
    assert fractions[thresholds.index(4.0)] == 0.5
    assert fractions[thresholds.index(5.0)] == 1.0


def test_scenario_and_benchmark():
    text = SCENARIO.read_text()
    seq, centers = dptrack.render_scenario(text)
    assert (seq.frames, seq.height, seq.width) == (60, 64, 64)
    result = dptrack.run_ope(seq, centers, 5)
    assert result["path"].points[0] == (round(centers[0][0]), round(centers[0][1]))
    rows = dptrack.occlusion_benchmark(text, [0, 8], [5])
    assert [r["occlusion_length"] for r in rows] == [0, 8]
    for row in rows:
        assert row["dp_average_error"] <= row["greedy_average_error"]
