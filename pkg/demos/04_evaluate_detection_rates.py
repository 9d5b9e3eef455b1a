"""Reproduce the published detection-rate table from the shipped fixture,
then sweep the global threshold to see the sensitivity tradeoff.
"""

from tactile_skin import DetectionConfig, detection_table, region_summary, threshold_sweep
from tactile_skin.fixtures import study_fixture_log

log = study_fixture_log()
config = DetectionConfig.uniform(10)

table = detection_table(log, config)
print(table.to_text())
print()
for region, mean in region_summary(table).items():
    print(f"{region.token}: {mean}% of gestures detected")

print("\nthreshold sweep (lower T detects more, but also more false positives):")
curve = threshold_sweep(log, [1, 5, 10, 20, 50, 200])
for t, det, fpr in curve.entries:
    print(f"  T={t:4d}  detection={det:6.1%}  idle false positives={fpr:6.1%}")
