import pytest

from tactile_skin import (
    DetectionConfig,
    Gesture,
    Region,
    SensorFrame,
    SessionLog,
    TrialLabel,
    detection_table,
    false_positive_rate,
    region_summary,
    threshold_sweep,
)
from tactile_skin.evaluate import RateCell, round_half_away
from tactile_skin.fixtures import STUDY_COUNTS, study_fixture_log

from conftest import make_frame

T10 = DetectionConfig.uniform(10)


def test_round_half_away():
    assert round_half_away(0.5) == 1
    assert round_half_away(1.5) == 2
    assert round_half_away(2.4) == 2
    assert round_half_away(-0.5) == -1


def test_rate_cell_percent():
    assert RateCell(18, 20).percent == 90
    assert RateCell(0, 20).percent == 0
    with pytest.raises(ValueError):
        RateCell(0, 0).percent


def test_fixture_reproduces_published_cells():
    table = detection_table(study_fixture_log(), T10)
    expected_percent = {
        (Region.RIGHT_TRUNK, Gesture.CONTACT): 100,
        (Region.RIGHT_TRUNK, Gesture.STROKE): 90,
        (Region.RIGHT_TRUNK, Gesture.PAT): 100,
        (Region.RIGHT_TRUNK, Gesture.SCRATCH): 85,
        (Region.RIGHT_TRUNK, Gesture.POKE): 95,
        (Region.RIGHT_CHEEK, Gesture.CONTACT): 70,
        (Region.RIGHT_CHEEK, Gesture.STROKE): 60,
        (Region.RIGHT_CHEEK, Gesture.PAT): 50,
        (Region.RIGHT_CHEEK, Gesture.SCRATCH): 55,
        (Region.RIGHT_CHEEK, Gesture.POKE): 65,
        (Region.TOP_HEAD, Gesture.CONTACT): 100,
        (Region.TOP_HEAD, Gesture.STROKE): 100,
        (Region.TOP_HEAD, Gesture.PAT): 100,
        (Region.TOP_HEAD, Gesture.SCRATCH): 95,
        (Region.TOP_HEAD, Gesture.POKE): 85,
    }
    assert set(table.cells) == set(expected_percent)
    for key, percent in expected_percent.items():
        cell = table.cells[key]
        assert cell.trials == 20
        assert cell.detected == STUDY_COUNTS[key]
        assert cell.percent == percent


def test_fixture_region_summary():
    summary = region_summary(detection_table(study_fixture_log(), T10))
    assert summary[Region.RIGHT_TRUNK] == 94
    assert summary[Region.RIGHT_CHEEK] == 60
    assert summary[Region.TOP_HEAD] == 96


def test_region_summary_missing_cell_rejected():
    table = detection_table(study_fixture_log(), T10)
    cells = dict(table.cells)
    del cells[(Region.TOP_HEAD, Gesture.POKE)]
    from tactile_skin.evaluate import RateTable

    with pytest.raises(ValueError):
        region_summary(RateTable(cells))


def test_detection_table_rejects_unlabeled_log():
    rows = ((make_frame(), TrialLabel.idle("p01")),)
    with pytest.raises(ValueError):
        detection_table(SessionLog("p01", rows), T10)


def test_all_zero_log_gives_zero_cells():
    label = TrialLabel(Gesture.PAT, Region.LEFT_HEAD, "p01")
    rows = tuple((make_frame(seq=k, t_ms=k * 110), label) for k in range(4))
    table = detection_table(SessionLog("p01", rows), T10)
    assert table.cells[(Region.LEFT_HEAD, Gesture.PAT)] == RateCell(0, 1)


def test_table_csv_format():
    table = detection_table(study_fixture_log(), T10)
    lines = table.to_csv().splitlines()
    assert lines[0] == "gesture,region,detected,trials,percent"
    assert "stroke,right_trunk,18,20,90" in lines


def test_threshold_sweep_endpoints():
    log = study_fixture_log()
    curve = threshold_sweep(log, [0, 10, 1024])
    by_t = {t: (d, f) for t, d, f in curve.entries}
    assert by_t[0] == (1.0, 1.0)
    assert by_t[1024] == (0.0, 0.0)
    det_at_10 = by_t[10][0]
    expected = sum(STUDY_COUNTS.values()) / (20 * 15)
    assert det_at_10 == pytest.approx(expected)


def test_threshold_sweep_monotone_on_noisy_session():
    from tactile_skin import GestureScript, SimParams, run_session_sim

    plan = [
        (TrialLabel(g, Region.RIGHT_TRUNK, "p01"), GestureScript(g, Region.RIGHT_TRUNK, duration_frames=6))
        for g in (Gesture.CONTACT, Gesture.STROKE, Gesture.PAT, Gesture.SCRATCH, Gesture.POKE)
    ]
    log = run_session_sim(plan, SimParams(amplitude=40, noise_sigma=3.0, seed=5))
    curve = threshold_sweep(log, list(range(0, 60, 5)))
    dets = [d for _, d, _ in curve.entries]
    fps = [f for _, _, f in curve.entries]
    assert dets == sorted(dets, reverse=True)
    assert fps == sorted(fps, reverse=True)


def test_threshold_sweep_validation():
    log = study_fixture_log()
    with pytest.raises(ValueError):
        threshold_sweep(log, [])
    with pytest.raises(ValueError):
        threshold_sweep(log, [10, 10])
    with pytest.raises(ValueError):
        threshold_sweep(log, [-1, 5])


def test_false_positive_rate():
    idle = SessionLog(
        "p01",
        tuple(
            (make_frame(seq=k, t_ms=k * 110, deltas={2: 15} if k < 3 else {}), TrialLabel.idle("p01"))
            for k in range(100)
        ),
    )
    assert false_positive_rate(idle, T10) == pytest.approx(0.03)
    quiet = SessionLog(
        "p01", tuple((make_frame(seq=k, t_ms=k * 110), TrialLabel.idle("p01")) for k in range(10))
    )
    assert false_positive_rate(quiet, T10) == 0.0
    with pytest.raises(ValueError):
        false_positive_rate(study_fixture_log(), T10)
