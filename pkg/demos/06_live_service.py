"""Drive the live capture service programmatically: open a session, run a
labeled trial against simulated frames, and read back the verdict.

For the HTTP surface (and the browser operator console), run instead:

    tactile-skin serve --source sim:plan.json --port 8000 --frontend frontend/dist
"""

from tactile_skin import DetectionConfig, DeviceSimulator, Gesture, GestureScript, Region, SimParams
from tactile_skin.service import LiveSession

session = LiveSession(config=DetectionConfig.uniform(10), log_dir=".")
sim = DeviceSimulator(SimParams(amplitude=40, noise_sigma=2.0, seed=5))

session.start_session("demo")
for frame in sim.idle(5):
    session.ingest_frame(frame)

session.start_trial("poke", "top_head")
for frame in sim.gesture(GestureScript(Gesture.POKE, Region.TOP_HEAD)):
    session.ingest_frame(frame)
verdict = session.stop_trial()
print("trial verdict:", verdict)

snap = session.snapshot()
print(f"frame rate estimate: {snap.rate_hz:.2f} Hz over {snap.frames_ingested} frames")
result = session.stop_session()
print(f"recorded {result['frames']} frames to {result['csv_path']}")
