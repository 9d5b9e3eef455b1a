"""Command-line surface: simulate, replay, evaluate, calibrate, serve."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .detect import calibrate_thresholds, eventize
from .evaluate import detection_table, idle_false_positive_rate, region_summary
from .model import (
    GESTURES,
    NUM_SENSORS,
    DetectionConfig,
    TrialLabel,
    gesture_from_token,
    region_from_token,
)
from .sim import GestureScript, SimParams, run_session_sim
from .store import read_csv, write_csv


def load_plan(path: str) -> tuple[list[tuple[TrialLabel, GestureScript]], SimParams]:
    """Plan file: JSON with optional "params" plus either an explicit
    "trials" list or a "regions" list (all five gestures per region), run
    once per entry in "participants"."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    params_kw = dict(doc.get("params", {}))
    if "region_gain" in params_kw:
        params_kw["region_gain"] = tuple(params_kw["region_gain"])
    params = SimParams(**params_kw)
    participants = doc.get("participants", ["p01"])
    if "trials" in doc:
        trial_defs = doc["trials"]
    elif "regions" in doc:
        trial_defs = [
            {"gesture": g.token, "region": r}
            for r in doc["regions"]
            for g in GESTURES
        ]
    else:
        raise ValueError("plan needs a 'trials' or 'regions' key")
    plan = []
    for participant in participants:
        for t in trial_defs:
            gesture = gesture_from_token(t["gesture"])
            region = region_from_token(t["region"])
            script = GestureScript(gesture, region, duration_frames=int(t.get("duration_frames", 6)))
            plan.append((TrialLabel(gesture, region, participant), script))
    return plan, params


def _config_from_args(args) -> DetectionConfig:
    if getattr(args, "thresholds_file", None):
        values = json.loads(Path(args.thresholds_file).read_text(encoding="utf-8"))
        return DetectionConfig(tuple(int(v) for v in values))
    return DetectionConfig.uniform(args.threshold)


def cmd_simulate(args) -> int:
    plan, params = load_plan(args.plan)
    if args.seed is not None:
        params = SimParams(
            frame_period_ms=params.frame_period_ms,
            amplitude=params.amplitude,
            region_gain=params.region_gain,
            noise_sigma=params.noise_sigma,
            rest_level=params.rest_level,
            seed=args.seed,
        )
    log = run_session_sim(plan, params)
    Path(args.out).write_text(write_csv(log), encoding="utf-8")
    print(f"wrote {len(log.rows)} frames ({len(plan)} trials) to {args.out}")
    return 0


def cmd_replay(args) -> int:
    log = read_csv(Path(args.session).read_text(encoding="utf-8"))
    config = _config_from_args(args)
    events = eventize(log.frames(), config)
    for e in events:
        print(
            f"touch {e.region.token} sensor={e.sensor_index} "
            f"t={e.start_t_ms}..{e.end_t_ms}ms peak={e.peak_delta} frames={e.frame_count}"
        )
    table = detection_table(log, config)
    print(table.to_text())
    if args.report:
        Path(args.report).write_text(table.to_csv(), encoding="utf-8")
        print(f"report written to {args.report}")
    return 0


def cmd_evaluate(args) -> int:
    log = read_csv(Path(args.session).read_text(encoding="utf-8"))
    config = _config_from_args(args)
    table = detection_table(log, config)
    print(table.to_text())
    print()
    for region, mean in region_summary(table).items():
        print(f"{region.token}: {mean}%")
    fpr = idle_false_positive_rate(log, config)
    print(f"idle false-positive rate: {fpr:.4f}")
    if args.csv:
        Path(args.csv).write_text(table.to_csv(), encoding="utf-8")
        print(f"report written to {args.csv}")
    else:
        sys.stdout.write(table.to_csv())
    return 0


def cmd_calibrate(args) -> int:
    log = read_csv(Path(args.idle).read_text(encoding="utf-8"))
    thresholds = calibrate_thresholds(log.frames(), args.margin)
    print(json.dumps(list(thresholds)))
    if args.out:
        Path(args.out).write_text(json.dumps(list(thresholds)) + "\n", encoding="utf-8")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import LiveSession, create_app, serial_source, sim_source

    session = LiveSession(config=_config_from_args(args))
    kind, _, target = args.source.partition(":")
    if kind == "sim":
        plan, params = load_plan(target)
        source = sim_source(session, plan, params)
    elif kind == "serial":
        source = serial_source(session, target)
    else:
        print(f"unknown source {args.source!r}; use serial:<path> or sim:<plan>", file=sys.stderr)
        return 2
    app = create_app(session, source_coro=source, frontend_dir=args.frontend)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tactile-skin", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="synthesize a labeled session CSV from a plan file")
    p.add_argument("--plan", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("replay", help="replay a session CSV through eventize + detection")
    p.add_argument("session")
    p.add_argument("--threshold", type=int, default=10)
    p.add_argument("--thresholds-file")
    p.add_argument("--report", help="write the detection table as CSV")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("evaluate", help="detection-rate table and region summary for a session")
    p.add_argument("session")
    p.add_argument("--threshold", type=int, default=10)
    p.add_argument("--thresholds-file")
    p.add_argument("--csv", help="write the machine-readable table here instead of stdout")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("calibrate", help="per-sensor thresholds from an idle session")
    p.add_argument("idle")
    p.add_argument("--margin", type=float, default=2.25)
    p.add_argument("--out")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("serve", help="run the live capture service")
    p.add_argument("--source", required=True, help="serial:<path> or sim:<plan.json>")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--threshold", type=int, default=10)
    p.add_argument("--thresholds-file")
    p.add_argument("--frontend", help="directory of static UI assets to serve")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
