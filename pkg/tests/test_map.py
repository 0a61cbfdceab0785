import numpy as np
import pytest

from gazekit.core import ConfigError, Rect
from gazekit.mapctl import (
    DEFAULT_ZOOM_FACTORS,
    FocusCommit,
    MapLayout,
    MapState,
    Pan,
    SetZoom,
    apply_command,
    default_layout,
    overview_rect,
)


def state(focus=(300.0, 300.0), zoom=0, step=32.0, size=(512.0, 512.0)):
    return MapState(focus_px=focus, zoom_index=zoom, pan_step_px=step, overview_size_px=size)


def test_pan_moves_by_step():
    s = apply_command(state(zoom=3), Pan("right"))  # factor 4: clamp range is wide
    assert s.focus_px == (332.0, 300.0)


def test_pan_clamps_at_edges():
    s = apply_command(state(focus=(80.0, 300.0), zoom=3, step=32.0), Pan("left"))
    # factor 4 -> 128x128 rect -> focus_x floor is 64
    assert s.focus_px == (64.0, 300.0)


def test_focus_commit_clamps():
    s = apply_command(state(zoom=3), FocusCommit(10.0, 10.0))
    assert s.focus_px == (64.0, 64.0)


def test_set_zoom_reclamps():
    s = apply_command(state(focus=(300.0, 300.0), zoom=6), FocusCommit(500.0, 500.0))
    # factor 12 -> rect ~42.7 wide, focus nearly at the corner
    s2 = apply_command(s, SetZoom(1))  # factor 2 -> rect 256 wide
    assert s2.zoom_index == 1
    assert s2.focus_px == (384.0, 384.0)


def test_set_zoom_out_of_range():
    with pytest.raises(ValueError):
        apply_command(state(), SetZoom(7))
    with pytest.raises(ValueError):
        apply_command(state(), SetZoom(-1))


def test_overview_rect_example():
    s = state(focus=(300.0, 300.0), zoom=3)  # factor 4
    r = overview_rect(s)
    assert (r.x, r.y, r.w, r.h) == (236.0, 236.0, 128.0, 128.0)


def test_zoom_one_shows_everything():
    s = apply_command(state(focus=(400.0, 100.0), zoom=3), SetZoom(0))
    r = overview_rect(s)
    assert (r.x, r.y, r.w, r.h) == (0.0, 0.0, 512.0, 512.0)


def test_rect_shrinks_strictly_across_factors():
    areas = []
    for i in range(7):
        r = overview_rect(state(zoom=i))
        areas.append(r.w * r.h)
    assert all(a > b for a, b in zip(areas, areas[1:]))


def test_rect_size_rule_exact():
    for i, factor in enumerate(DEFAULT_ZOOM_FACTORS):
        r = overview_rect(state(zoom=i))
        assert r.w == 512.0 / factor
        assert r.h == 512.0 / factor


def test_pan_left_right_identity_without_clamping():
    s0 = state(focus=(256.0, 256.0), zoom=3)
    s1 = apply_command(apply_command(s0, Pan("left")), Pan("right"))
    assert s1.focus_px == s0.focus_px


def test_random_command_sequences_keep_rect_inside():
    rng = np.random.default_rng(23)
    s = state()
    for _ in range(3000):
        roll = rng.random()
        if roll < 0.4:
            cmd = Pan(str(rng.choice(["left", "right", "up", "down"])))
        elif roll < 0.7:
            cmd = SetZoom(int(rng.integers(0, 7)))
        else:
            cmd = FocusCommit(float(rng.uniform(-100, 612)), float(rng.uniform(-100, 612)))
        s = apply_command(s, cmd)
        r = overview_rect(s)
        assert r.x >= -1e-9 and r.y >= -1e-9
        assert r.x + r.w <= 512.0 + 1e-9
        assert r.y + r.h <= 512.0 + 1e-9


def test_state_validation():
    with pytest.raises(ValueError):
        MapState(focus_px=(0, 0), zoom_factors=(1, 2, 3))
    with pytest.raises(ValueError):
        MapState(focus_px=(0, 0), zoom_factors=(1, 2, 3, 4, 5, 6, 6))
    with pytest.raises(ValueError):
        MapState(focus_px=(0, 0), zoom_factors=(0.5, 2, 3, 4, 5, 6, 7))
    with pytest.raises(ValueError):
        MapState(focus_px=(0, 0), zoom_index=9)


def test_hit_test_widgets():
    layout = default_layout(1280, 1024)
    pr = layout.widgets["pan_right"]
    assert layout.hit_test(*pr.center) == "pan_right"
    ov = layout.widgets["overview"]
    assert layout.hit_test(*ov.center) == "overview"
    assert layout.hit_test(0.0, 1023.9) is None  # bottom-left gap


def test_hit_test_exhaustive_partition():
    # small layout tiling part of a 64x64 screen; every pixel resolves to
    # the rect that brute-force containment says it belongs to
    layout = MapLayout(
        {
            "a": Rect(0, 0, 32, 32),
            "b": Rect(32, 0, 32, 32),
            "c": Rect(0, 32, 64, 16),
        }
    )
    for px in range(64):
        for py in range(64):
            expected = None
            for name, r in layout.items():
                if r.x <= px < r.x + r.w and r.y <= py < r.y + r.h:
                    assert expected is None  # non-overlap sanity
                    expected = name
            assert layout.hit_test(px, py) == expected


def test_overlapping_layout_rejected():
    with pytest.raises(ConfigError):
        MapLayout({"a": Rect(0, 0, 10, 10), "b": Rect(5, 5, 10, 10)})


def test_default_layout_has_all_widgets():
    layout = default_layout()
    names = set(layout.widgets)
    assert {"overview", "zoom_window", "pan_left", "pan_right", "pan_up", "pan_down"} <= names
    assert {f"zoom_{i}" for i in range(1, 8)} <= names
