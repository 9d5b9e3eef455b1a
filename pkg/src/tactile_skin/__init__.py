"""Host-side toolkit for a 9-electrode capacitive tactile skin."""

from .detect import (
    Eventizer,
    TouchEvent,
    calibrate_thresholds,
    eventize,
    frame_touch_set,
    localize,
    sensor_touched,
    trial_detected,
)
from .evaluate import (
    RateCell,
    RateTable,
    SweepCurve,
    detection_table,
    false_positive_rate,
    region_summary,
    threshold_sweep,
    trials_of,
)
from .model import (
    GESTURES,
    NUM_SENSORS,
    DetectionConfig,
    Gesture,
    Region,
    RegionTopology,
    SensorFrame,
    TrialLabel,
    canonical_topology,
    region_of,
)
from .sim import (
    BaselineState,
    DeviceSimulator,
    GestureScript,
    SimParams,
    baseline_step,
    run_session_sim,
    synth_gesture,
)
from .store import DataError, SchemaError, SessionLog, read_csv, replay, write_csv
from .wire import DecodeDiagnostics, FrameDecoder, crc8, decode_stream, encode_frame

__version__ = "0.1.0"

__all__ = [
    "BaselineState",
    "DataError",
    "DecodeDiagnostics",
    "DetectionConfig",
    "DeviceSimulator",
    "Eventizer",
    "FrameDecoder",
    "GESTURES",
    "Gesture",
    "GestureScript",
    "NUM_SENSORS",
    "RateCell",
    "RateTable",
    "Region",
    "RegionTopology",
    "SchemaError",
    "SensorFrame",
    "SessionLog",
    "SimParams",
    "SweepCurve",
    "TouchEvent",
    "TrialLabel",
    "calibrate_thresholds",
    "canonical_topology",
    "crc8",
    "decode_stream",
    "detection_table",
    "encode_frame",
    "eventize",
    "false_positive_rate",
    "frame_touch_set",
    "localize",
    "read_csv",
    "region_of",
    "region_summary",
    "replay",
    "run_session_sim",
    "sensor_touched",
    "synth_gesture",
    "threshold_sweep",
    "trial_detected",
    "trials_of",
    "write_csv",
]
