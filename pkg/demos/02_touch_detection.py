"""Threshold detection, localization, and debounced touch events.

A sensor is touched when |baseline - filtered| >= its threshold (T=10 is
the operating point). Events require 2 consecutive touched frames to open
and 2 untouched frames to close.
"""

from tactile_skin import DetectionConfig, SensorFrame, eventize, frame_touch_set, localize

config = DetectionConfig.uniform(10)
rest = (512,) * 9


def frame(k, deltas):
    filtered = list(rest)
    for i, d in deltas.items():
        filtered[i] = 512 - d
    return SensorFrame(seq=k, t_ms=k * 110, filtered=tuple(filtered), baseline=rest)


# a pat on the top of the head (sensor 0) with a weaker echo on the left cheek
stream = [
    frame(0, {}),
    frame(1, {0: 25, 1: 12}),
    frame(2, {0: 40, 1: 14}),
    frame(3, {0: 30}),
    frame(4, {}),
    frame(5, {}),
]

for f in stream:
    touched = sorted(frame_touch_set(f, config))
    where = localize(f, config)
    print(f"t={f.t_ms:4d}ms touched={touched} localized={where.token if where else '-'}")

print("\nevents:")
for e in eventize(stream, config):
    print(
        f"  {e.region.token}: {e.start_t_ms}..{e.end_t_ms}ms "
        f"peak={e.peak_delta} frames={e.frame_count}"
    )
