#!/usr/bin/env python3
"""Regenerate the committed test fixtures (deterministic; safe to re-run).

Outputs:
    tests/fixtures/two_fixations.gtr   small clean gaze trace (~700 ms)
    tests/fixtures/session.gtr         multimodal trace for playback/stats
    frontend/test/fixtures/transcript.ndjson
                                       wire transcript with a full dwell
                                       commit and a cancelled dwell
"""

from __future__ import annotations

import json
from dataclasses import replace
from pathlib import Path

from gazekit.core import GazeSample, Rect, StreamConfig
from gazekit.fixation import DetectorParams, detect_batch
from gazekit.pipeline import GazePipeline
from gazekit.synth import Fixate, Saccade, ScenarioSpec, generate
from gazekit import trace as tr

ROOT = Path(__file__).resolve().parents[1]


def two_fixations() -> None:
    spec = ScenarioSpec(
        rate_hz=60.0,
        segments=(
            Fixate(160.0, 120.0, 320.0, 1.5),
            Saccade(520.0, 360.0, 50.0),
            Fixate(520.0, 360.0, 320.0, 1.5),
        ),
        seed=2024,
    )
    samples, _ = generate(spec)
    out = ROOT / "tests" / "fixtures" / "two_fixations.gtr"
    out.parent.mkdir(parents=True, exist_ok=True)
    tr.write_trace([tr.gaze_record(s) for s in samples], str(out))
    print(f"wrote {out} ({len(samples)} records)")


def session() -> None:
    spec = ScenarioSpec(
        rate_hz=60.0,
        segments=(
            Fixate(300.0, 700.0, 400.0, 2.0),
            Saccade(640.0, 300.0, 60.0),
            Fixate(640.0, 300.0, 500.0, 2.0),
            Saccade(1000.0, 650.0, 60.0),
            Fixate(1000.0, 650.0, 350.0, 2.0),
        ),
        seed=7,
    )
    samples, _ = generate(spec)
    config = StreamConfig(rate_hz=60.0)
    records = [tr.gaze_record(s) for s in samples]
    for i, s in enumerate(samples):
        if i % 3 == 0:  # a sluggish pointer trailing the gaze
            records.append(
                tr.TraceRecord(
                    int(s.t_ms), "POINTER", tr.PointerPayload(s.x_px - 8, s.y_px + 8)
                )
            )
    for fix in detect_batch(samples, DetectorParams(), config):
        # pupil settles to a plausible value per fixation
        records.append(tr.fix_record(replace(fix, mean_pupil_mm=3.4)))
    records.append(
        tr.zone_record(tr.InterestZone("map", Rect(100, 550, 400, 300), "overview map"))
    )
    records.append(
        tr.zone_record(tr.InterestZone("detail", Rect(500, 150, 400, 300), "zoom window"))
    )
    records.append(
        tr.TraceRecord(0, "SEG", tr.Segment("inspect-map", 0, 700))
    )
    records.append(
        tr.TraceRecord(700, "SEG", tr.Segment("inspect-detail", 700, 1500))
    )
    records.append(
        tr.TraceRecord(0, "EVENT", tr.EventPayload("system", "session_start", "demo"))
    )
    # screen copies at ~6 per second (valid 125..250 ms spacing)
    t = 0
    frame_no = 0
    last_t = int(samples[-1].t_ms)
    while t <= last_t:
        records.append(tr.TraceRecord(t, "FRAME", tr.FramePayload(f"frame_{frame_no:04d}.png")))
        frame_no += 1
        t += 166
    records.sort(key=lambda r: r.t_ms)
    out = ROOT / "tests" / "fixtures" / "session.gtr"
    tr.write_trace(records, str(out))
    print(f"wrote {out} ({len(records)} records)")


def wire_transcript() -> None:
    """Drive a pipeline: one committed dwell on the overview, then a dwell
    that arms and gets cancelled, then a saccade for a lens re-anchor."""
    pipeline = GazePipeline(config=StreamConfig(rate_hz=60.0))
    pipeline.map_state = replace(pipeline.map_state, zoom_index=3)
    ov = pipeline.layout.widgets["overview"]
    msgs = list(pipeline.hello())

    t = 0.0

    def feed(x: float, y: float, n: int, valid: bool = True) -> None:
        nonlocal t
        for _ in range(n):
            msgs.extend(pipeline.on_gaze(GazeSample(round(t), x, y, valid=valid)))
            t += 1000.0 / 60.0

    feed(ov.x + 150.0, ov.y + 100.0, 30)  # arm + commit
    feed(ov.x + 60.0, ov.y + 40.0, 14)    # arm ...
    feed(900.0, 200.0, 20)                # ... break away: cancelled + re-anchor
    msgs.extend(pipeline.flush())

    out = ROOT / "frontend" / "test" / "fixtures" / "transcript.ndjson"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("".join(json.dumps(m) + "\n" for m in msgs), encoding="utf-8")
    kinds = [m["type"] for m in msgs]
    assert "dwell_committed" in kinds and "dwell_cancelled" in kinds
    print(f"wrote {out} ({len(msgs)} messages)")


if __name__ == "__main__":
    two_fixations()
    session()
    wire_transcript()
