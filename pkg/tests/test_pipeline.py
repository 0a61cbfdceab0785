import json
from dataclasses import replace

import pytest

from gazekit.core import GazeSample, StreamConfig
from gazekit.pipeline import GazePipeline, sample_from_message


def zoomed_pipeline(zoom_index=3, **kwargs):
    """At zoom factor 1 the rect covers the whole overview and clamping pins
    the focus: pan/focus commands only move things once zoomed in."""
    p = GazePipeline(**kwargs)
    p.map_state = replace(p.map_state, zoom_index=zoom_index)
    return p


def steady_messages(pipeline, widget, n, rate=60.0, t0=0.0):
    """Park the gaze on a widget's center for n samples, collect messages."""
    x, y = pipeline.layout.widgets[widget].center
    out = []
    for i in range(n):
        out.extend(
            pipeline.on_gaze(GazeSample(t0 + round(i * 1000 / rate), x, y))
        )
    return out


def types(msgs):
    return [m["type"] for m in msgs]


def test_hello_carries_layout_and_state():
    p = GazePipeline()
    (hello,) = p.hello()
    assert hello["type"] == "map_state"
    assert "overview" in hello["layout"]
    assert hello["rect"]["w"] == hello["overview_w"] / hello["zoom_factor"]


def test_dwell_cycle_on_pan_button_moves_focus():
    p = zoomed_pipeline()
    fx0 = p.map_state.focus_px[0]
    msgs = steady_messages(p, "pan_right", 30)
    ts = types(msgs)
    assert "dwell_armed" in ts and "dwell_committed" in ts
    assert ts.index("dwell_armed") < ts.index("dwell_committed")
    map_msgs = [m for m in msgs if m["type"] == "map_state"]
    assert map_msgs and map_msgs[0]["focus_x"] == fx0 + p.map_state.pan_step_px


def test_parked_gaze_reactivates():
    # post-commit session restart: a parked gaze keeps stepping
    p = zoomed_pipeline()
    msgs = steady_messages(p, "pan_right", 120)
    commits = [m for m in msgs if m["type"] == "dwell_committed"]
    assert len(commits) >= 2
    moves = [m["focus_x"] for m in msgs if m["type"] == "map_state"]
    assert moves == sorted(moves) and len(set(moves)) == len(commits)


def test_overview_commit_sets_focus():
    p = zoomed_pipeline()
    ov = p.layout.widgets["overview"]
    gaze = (ov.x + 100.0, ov.y + 80.0)
    msgs = []
    for i in range(30):
        msgs.extend(p.on_gaze(GazeSample(round(i * 1000 / 60), *gaze)))
    state_msgs = [m for m in msgs if m["type"] == "map_state"]
    assert state_msgs
    # overview widget coordinates map 1:1 onto overview-map coordinates here
    assert state_msgs[0]["focus_x"] == pytest.approx(100.0)
    assert state_msgs[0]["focus_y"] == pytest.approx(80.0)


def test_zoom_button_commit_sets_zoom():
    p = GazePipeline()
    msgs = steady_messages(p, "zoom_3", 30)
    state_msgs = [m for m in msgs if m["type"] == "map_state"]
    assert state_msgs and state_msgs[0]["zoom_index"] == 2


def test_armed_always_precedes_committed_and_t_monotone():
    p = GazePipeline()
    msgs = []
    msgs.extend(steady_messages(p, "pan_left", 40))
    msgs.extend(steady_messages(p, "overview", 40, t0=2000))
    msgs.extend(steady_messages(p, "zoom_window", 40, t0=4000))
    armed_open = False
    for m in msgs:
        if m["type"] == "dwell_armed":
            armed_open = True
        elif m["type"] == "dwell_committed":
            assert armed_open
            armed_open = False
    ts = [m["t"] for m in msgs]
    assert ts == sorted(ts)


def test_lens_message_follows_anchor():
    p = GazePipeline()
    msgs = steady_messages(p, "zoom_window", 6)
    lens_msgs = [m for m in msgs if m["type"] == "lens"]
    assert len(lens_msgs) == 1
    center = p.layout.widgets["zoom_window"].center
    assert (lens_msgs[0]["x"], lens_msgs[0]["y"]) == center
    assert lens_msgs[0]["radius"] == pytest.approx(99.0099, abs=0.001)


def test_fix_events_on_wire():
    p = GazePipeline()
    msgs = steady_messages(p, "zoom_window", 10)
    ts = types(msgs)
    assert "fix_provisional" in ts and "fix_start" in ts
    p2 = GazePipeline()
    msgs2 = steady_messages(p2, "zoom_window", 10)
    msgs2.extend(p2.flush())
    assert "fix_end" in types(msgs2)


def test_zone_stats_request():
    p = GazePipeline()
    msgs = steady_messages(p, "overview", 40)
    msgs.extend(p.flush())
    (stats,) = p.on_message({"type": "zone_stats"})
    assert stats["type"] == "zone_stats"
    per_zone = {z["id"]: z for z in stats["zones"]}
    assert per_zone["overview"]["fixations"] >= 1
    assert per_zone["pan_left"]["fixations"] == 0


def test_on_line_round_trip():
    p = GazePipeline()
    x, y = p.layout.widgets["zoom_window"].center
    out = []
    for i in range(8):
        line = json.dumps(
            {"type": "gaze", "t": round(i * 1000 / 60), "x": x, "y": y, "valid": True}
        )
        out.extend(p.on_line(line))
    parsed = [json.loads(l) for l in out]
    assert any(m["type"] == "fix_provisional" for m in parsed)
    assert p.on_line("") == []
    assert p.on_message({"type": "unknown_kind"}) == []


def test_sample_from_message_defaults():
    s = sample_from_message({"t": 5, "x": 1, "y": 2})
    assert s.valid and s.pupil_mm is None
    s2 = sample_from_message({"t": 5, "valid": False})
    assert not s2.valid


def test_blink_messages_cancel_dwell():
    p = GazePipeline()
    x, y = p.layout.widgets["pan_up"].center
    msgs = []
    for i in range(15):
        msgs.extend(p.on_gaze(GazeSample(round(i * 1000 / 60), x, y)))
    msgs.extend(p.on_gaze(GazeSample(260, x, y, valid=False)))
    ts = types(msgs)
    assert "dwell_armed" in ts and "dwell_cancelled" in ts
    assert "dwell_committed" not in ts
