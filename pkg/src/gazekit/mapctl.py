"""Pure interaction logic of the gaze-controlled map view.

State is a focus point on an overview map plus one of seven zoom factors;
commands (pan by a fixed step, set zoom, commit a new focus) produce new
states. The viewed region is a rectangle centered on the focus whose size is
overview_size / zoom_factor, always clamped to stay inside the overview.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Mapping

from gazekit.core import ConfigError, Rect

# Widget ids of the hit-testable surfaces.
PAN_LEFT = "pan_left"
PAN_RIGHT = "pan_right"
PAN_UP = "pan_up"
PAN_DOWN = "pan_down"
OVERVIEW = "overview"
ZOOM_WINDOW = "zoom_window"
ZOOM_BUTTONS = tuple(f"zoom_{i}" for i in range(1, 8))
PAN_BUTTONS = (PAN_LEFT, PAN_RIGHT, PAN_UP, PAN_DOWN)

DEFAULT_ZOOM_FACTORS = (1.0, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0)


@dataclass(frozen=True)
class MapState:
    focus_px: tuple[float, float]
    zoom_index: int = 0
    pan_step_px: float = 32.0
    overview_size_px: tuple[float, float] = (512.0, 512.0)
    zoom_factors: tuple[float, ...] = DEFAULT_ZOOM_FACTORS

    def __post_init__(self) -> None:
        if len(self.zoom_factors) != 7:
            raise ValueError("exactly 7 zoom factors are required")
        if any(f < 1 for f in self.zoom_factors):
            # a factor below 1 would ask for a view larger than the overview
            raise ValueError("zoom factors must be >= 1")
        if any(b <= a for a, b in zip(self.zoom_factors, self.zoom_factors[1:])):
            raise ValueError("zoom factors must be strictly increasing")
        if not 0 <= self.zoom_index <= 6:
            raise ValueError("zoom_index must be in 0..6")
        if self.pan_step_px <= 0:
            raise ValueError("pan_step_px must be > 0")

    @property
    def zoom_factor(self) -> float:
        return self.zoom_factors[self.zoom_index]


@dataclass(frozen=True)
class Pan:
    direction: str  # left | right | up | down

    def __post_init__(self) -> None:
        if self.direction not in ("left", "right", "up", "down"):
            raise ValueError(f"bad pan direction {self.direction!r}")


@dataclass(frozen=True)
class SetZoom:
    index: int


@dataclass(frozen=True)
class FocusCommit:
    x: float
    y: float


MapCommand = Pan | SetZoom | FocusCommit


def overview_rect(state: MapState) -> Rect:
    """Viewed region in overview coordinates, centered on the focus."""
    ow, oh = state.overview_size_px
    w = ow / state.zoom_factor
    h = oh / state.zoom_factor
    return Rect(state.focus_px[0] - w / 2.0, state.focus_px[1] - h / 2.0, w, h)


def clamp_focus(state: MapState) -> MapState:
    """Pull the focus inward until the derived rectangle fits the overview."""
    ow, oh = state.overview_size_px
    w = ow / state.zoom_factor
    h = oh / state.zoom_factor
    fx = min(max(state.focus_px[0], w / 2.0), ow - w / 2.0)
    fy = min(max(state.focus_px[1], h / 2.0), oh - h / 2.0)
    if (fx, fy) == state.focus_px:
        return state
    return replace(state, focus_px=(fx, fy))


def apply_command(state: MapState, cmd: MapCommand) -> MapState:
    """Pure transition; pan moves the focus in overview coordinates."""
    if isinstance(cmd, Pan):
        dx, dy = {
            "left": (-state.pan_step_px, 0.0),
            "right": (state.pan_step_px, 0.0),
            "up": (0.0, -state.pan_step_px),
            "down": (0.0, state.pan_step_px),
        }[cmd.direction]
        state = replace(
            state, focus_px=(state.focus_px[0] + dx, state.focus_px[1] + dy)
        )
    elif isinstance(cmd, SetZoom):
        if not 0 <= cmd.index <= 6:
            raise ValueError(f"zoom index {cmd.index} outside 0..6")
        state = replace(state, zoom_index=cmd.index)
    elif isinstance(cmd, FocusCommit):
        state = replace(state, focus_px=(cmd.x, cmd.y))
    else:
        raise ValueError(f"unknown command {cmd!r}")
    return clamp_focus(state)


class MapLayout:
    """Non-overlapping widget rectangles in screen coordinates."""

    def __init__(self, widgets: Mapping[str, Rect]):
        items = list(widgets.items())
        for i, (name_a, rect_a) in enumerate(items):
            for name_b, rect_b in items[i + 1 :]:
                if rect_a.intersects(rect_b):
                    raise ConfigError(f"widgets {name_a} and {name_b} overlap")
        self.widgets = dict(widgets)

    def hit_test(self, x: float, y: float) -> str | None:
        for name, rect in self.widgets.items():
            if rect.contains(x, y):
                return name
        return None

    def items(self) -> Iterable[tuple[str, Rect]]:
        return self.widgets.items()


def default_layout(screen_w: int = 1280, screen_h: int = 1024) -> MapLayout:
    """Demo layout: zoom buttons across the top left, overview at the bottom
    left, zoom window on the right with the four pan buttons around it.

    Proportions are a reconstruction; nothing downstream depends on them.
    """
    pad = 8.0
    widgets: dict[str, Rect] = {}

    btn_w = screen_w * 0.05
    btn_h = screen_h * 0.05
    for i, name in enumerate(ZOOM_BUTTONS):
        widgets[name] = Rect(pad + i * (btn_w + pad), pad, btn_w, btn_h)

    ov_w = screen_w * 0.40
    ov_h = screen_h * 0.40
    widgets[OVERVIEW] = Rect(pad, screen_h - ov_h - pad, ov_w, ov_h)

    zw = screen_w * 0.42
    zx = screen_w - zw - pad - btn_w - pad
    zy = (screen_h - zw) / 2.0
    widgets[ZOOM_WINDOW] = Rect(zx, zy, zw, zw)
    widgets[PAN_LEFT] = Rect(zx - btn_w - pad, zy, btn_w, zw)
    widgets[PAN_RIGHT] = Rect(zx + zw + pad, zy, btn_w, zw)
    widgets[PAN_UP] = Rect(zx, zy - btn_h - pad, zw, btn_h)
    widgets[PAN_DOWN] = Rect(zx, zy + zw + pad, zw, btn_h)
    return MapLayout(widgets)
