"""Simulate a touch study session and record it to CSV.

Each synthetic participant performs the five gestures (contact, stroke,
pat, scratch, poke) on three regions. The cheek couples weakly
(region gain 0.35), which under noise reproduces the study's ordering of
region performance.
"""

from pathlib import Path

from tactile_skin import (
    GESTURES,
    GestureScript,
    Region,
    SimParams,
    TrialLabel,
    run_session_sim,
    write_csv,
)

regions = (Region.RIGHT_TRUNK, Region.RIGHT_CHEEK, Region.TOP_HEAD)
plan = []
for p in range(3):
    participant = f"p{p + 1:02d}"
    for region in regions:
        for gesture in GESTURES:
            plan.append(
                (
                    TrialLabel(gesture, region, participant),
                    GestureScript(gesture, region, duration_frames=6),
                )
            )

params = SimParams(amplitude=40, noise_sigma=3.0, seed=42)
log = run_session_sim(plan, params)
out = Path("demo_session.csv")
out.write_text(write_csv(log), encoding="utf-8")
print(f"simulated {len(plan)} trials, {len(log.rows)} frames -> {out}")
print("same seed always produces a byte-identical CSV")
