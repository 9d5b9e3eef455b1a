"""Calibrate per-sensor thresholds from an idle recording.

With margin 2.25 over each sensor's worst idle delta, the resulting
thresholds produce zero false positives on the calibration data and
near-zero on held-out idle data.
"""

from tactile_skin import (
    DetectionConfig,
    DeviceSimulator,
    SessionLog,
    SimParams,
    TrialLabel,
    calibrate_thresholds,
    false_positive_rate,
)


def idle_session(seed, n=120):
    sim = DeviceSimulator(SimParams(noise_sigma=3.0, seed=seed))
    rows = tuple((f, TrialLabel.idle("cal")) for f in sim.idle(n))
    return SessionLog("cal", rows)


calibration = idle_session(seed=1)
holdout = idle_session(seed=2)

thresholds = calibrate_thresholds(calibration.frames(), margin=2.25)
print("calibrated per-sensor thresholds:", thresholds)

config = DetectionConfig(thresholds)
print("false positives on calibration data:", false_positive_rate(calibration, config))
print("false positives on held-out data:   ", false_positive_rate(holdout, config))
