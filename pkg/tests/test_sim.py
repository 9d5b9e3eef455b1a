import pytest

from tactile_skin import (
    BaselineState,
    DetectionConfig,
    DeviceSimulator,
    Gesture,
    GestureScript,
    Region,
    SimParams,
    TrialLabel,
    baseline_step,
    run_session_sim,
    synth_gesture,
    trial_detected,
    trials_of,
    write_csv,
)
from tactile_skin.sim import default_stroke_path

UNITY_GAIN = (1.0,) * 9


def noiseless(amplitude=40, **kw):
    return SimParams(amplitude=amplitude, region_gain=UNITY_GAIN, noise_sigma=0.0, **kw)


def test_baseline_step_examples():
    state = BaselineState((500,) * 9, hold_band=5)
    assert baseline_step(state, [500] * 9).values == (500,) * 9
    assert baseline_step(state, [498] * 9).values == (499,) * 9
    assert baseline_step(state, [460] * 9).values == (500,) * 9


def test_baseline_convergence():
    state = BaselineState((500,) * 9, hold_band=5)
    target = [497] * 9
    for _ in range(3):
        state = baseline_step(state, target)
    assert state.values == (497,) * 9


def test_poke_noiseless_peak():
    script = GestureScript(Gesture.POKE, Region.TOP_HEAD, duration_frames=2)
    frames = synth_gesture(script, noiseless())
    deltas = [f.delta(0) for f in frames]
    assert max(deltas) == 40
    for f in frames:
        for i in range(1, 9):
            assert f.delta(i) == 0


def test_determinism_same_seed():
    script = GestureScript(Gesture.SCRATCH, Region.RIGHT_TRUNK, duration_frames=8)
    params = SimParams(amplitude=40, region_gain=UNITY_GAIN, noise_sigma=3.0, seed=42)
    a = synth_gesture(script, params)
    b = synth_gesture(script, params)
    assert a == b


def test_stroke_peaks_increase_along_path():
    path = (Region.RIGHT_CHEEK, Region.RIGHT_HEAD, Region.TOP_HEAD)
    script = GestureScript(Gesture.STROKE, Region.RIGHT_CHEEK, stroke_path=path)
    frames = synth_gesture(script, noiseless())
    peak_time = {}
    for region in path:
        i = region.sensor_index
        peak_time[region] = max(range(len(frames)), key=lambda k: frames[k].delta(i))
    times = [peak_time[r] for r in path]
    assert times == sorted(times) and len(set(times)) == len(times)


def test_stroke_bad_path_rejected():
    # left_trunk and top_head are not adjacent
    script = GestureScript(
        Gesture.STROKE,
        Region.LEFT_TRUNK,
        stroke_path=(Region.LEFT_TRUNK, Region.TOP_HEAD),
    )
    with pytest.raises(ValueError):
        synth_gesture(script, noiseless())


def test_default_stroke_path_valid():
    from tactile_skin import canonical_topology

    topo = canonical_topology()
    for region in Region:
        path = default_stroke_path(region)
        assert path[0] is region
        assert len(path) >= 2
        for a, b in zip(path, path[1:]):
            assert topo.are_adjacent(a, b)


def standard_plan(regions, participant="p01"):
    plan = []
    for region in regions:
        for gesture in (Gesture.CONTACT, Gesture.STROKE, Gesture.PAT, Gesture.SCRATCH, Gesture.POKE):
            script = GestureScript(gesture, region, duration_frames=6)
            plan.append((TrialLabel(gesture, region, participant), script))
    return plan


def test_run_session_sim_single_poke():
    label = TrialLabel(Gesture.POKE, Region.TOP_HEAD, "p01")
    script = GestureScript(Gesture.POKE, Region.TOP_HEAD, duration_frames=2)
    log = run_session_sim([(label, script)], noiseless())
    assert len(log.rows) == 12  # 10 idle + 2 poke
    assert all(lab.is_idle for _, lab in log.rows[:10])
    assert all(lab == label for _, lab in log.rows[10:])
    t = [f.t_ms for f, _ in log.rows]
    assert t == sorted(t)


def test_run_session_sim_empty_plan():
    with pytest.raises(ValueError):
        run_session_sim([], noiseless())


def test_fifteen_trial_plan_all_detected_noiseless():
    regions = (Region.RIGHT_TRUNK, Region.RIGHT_CHEEK, Region.TOP_HEAD)
    log = run_session_sim(standard_plan(regions), noiseless())
    config = DetectionConfig.uniform(10)
    trials = trials_of(log)
    assert len(trials) == 15
    assert all(trial_detected(t.frames, t.label, config) for t in trials)
    # idle gaps are perfectly quiet
    for frame, label in log.rows:
        if label.is_idle:
            assert all(d == 0 for d in frame.deltas())


def test_session_determinism_byte_for_byte():
    regions = (Region.RIGHT_TRUNK, Region.TOP_HEAD)
    params = SimParams(amplitude=40, noise_sigma=3.0, seed=7)
    a = write_csv(run_session_sim(standard_plan(regions), params))
    b = write_csv(run_session_sim(standard_plan(regions), params))
    assert a == b


def test_extreme_noise_stays_in_range():
    params = SimParams(amplitude=40, noise_sigma=800.0, seed=3)
    sim = DeviceSimulator(params)
    for frame in sim.idle(50):
        assert all(0 <= v <= 1023 for v in frame.filtered)


def test_noiseless_soundness_all_gestures():
    # amplitude 11 is the lowest value where half-amplitude lead-in frames
    # clear the baseline hold band, so no drift erodes the peak below T=10
    config = DetectionConfig.uniform(10)
    for amplitude in (11, 40):
        for gesture in (Gesture.CONTACT, Gesture.STROKE, Gesture.PAT, Gesture.SCRATCH, Gesture.POKE):
            for region in (Region.RIGHT_TRUNK, Region.LEFT_HEAD, Region.TOP_HEAD):
                script = GestureScript(gesture, region, duration_frames=6)
                frames = synth_gesture(script, noiseless(amplitude=amplitude))
                label = TrialLabel(gesture, region, "p")
                assert trial_detected(frames, label, config), (amplitude, gesture, region)
