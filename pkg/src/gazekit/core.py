"""Shared domain types, screen geometry, and unit conversions.

Everything downstream (fixation detection, dwell selection, the lens, the
landing predictor) works in screen pixels and milliseconds; this module owns
the two conversions that tie those units to the physical setup: visual angle
to pixels, and sample counts to milliseconds.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass


class GazeError(Exception):
    """Base class for engine errors."""


class StreamOrderError(GazeError):
    """A sample stream violated the non-decreasing timestamp contract."""


class ConfigError(GazeError):
    """Invalid configuration (overlapping layout, bad zone map, ...)."""


@dataclass(frozen=True)
class GazeSample:
    """One time-stamped gaze measurement.

    ``valid=False`` marks blinks / track loss; the coordinates of an invalid
    sample are carried along but must not be interpreted.
    """

    t_ms: float
    x_px: float
    y_px: float
    pupil_mm: float | None = None
    valid: bool = True

    def __post_init__(self) -> None:
        if self.pupil_mm is not None and self.pupil_mm < 0:
            raise ValueError(f"pupil_mm must be >= 0, got {self.pupil_mm}")


@dataclass(frozen=True)
class ScreenGeometry:
    """Viewing distance and pixel pitch of the display."""

    viewing_distance_mm: float
    px_per_mm: float
    width_px: int
    height_px: int

    def __post_init__(self) -> None:
        for name in ("viewing_distance_mm", "px_per_mm", "width_px", "height_px"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")


# Plausible desktop setup used by demos and tests: 600 mm viewing distance,
# 96 dpi (3.7795 px/mm), 1280x1024. All geometry is configuration, never a
# built-in truth.
DEFAULT_GEOMETRY = ScreenGeometry(
    viewing_distance_mm=600.0, px_per_mm=3.7795, width_px=1280, height_px=1024
)

# Typical remote-tracker accuracy; used as the default noise scale.
TRACKER_ACCURACY_DEG = 0.5


@dataclass(frozen=True)
class StreamConfig:
    """Sampling rate plus the geometry the stream was recorded against."""

    rate_hz: float = 60.0
    geometry: ScreenGeometry = DEFAULT_GEOMETRY

    def __post_init__(self) -> None:
        if self.rate_hz <= 0:
            raise ValueError(f"rate_hz must be > 0, got {self.rate_hz}")


def visual_angle_to_px(theta_deg: float, geometry: ScreenGeometry) -> float:
    """Span in pixels subtended by ``theta_deg`` of visual angle.

    Exact tangent formula (no small-angle shortcut):
    ``2 * distance * tan(theta/2) * px_per_mm``.
    """
    if theta_deg < 0:
        raise ValueError(f"visual angle must be >= 0, got {theta_deg}")
    half_rad = math.radians(theta_deg) / 2.0
    return 2.0 * geometry.viewing_distance_mm * math.tan(half_rad) * geometry.px_per_mm


def px_to_visual_angle(span_px: float, geometry: ScreenGeometry) -> float:
    """Inverse of :func:`visual_angle_to_px` (degrees for a pixel span)."""
    if span_px < 0:
        raise ValueError(f"pixel span must be >= 0, got {span_px}")
    half = span_px / (2.0 * geometry.viewing_distance_mm * geometry.px_per_mm)
    return math.degrees(2.0 * math.atan(half))


def samples_to_ms(n: int, rate_hz: float) -> float:
    """Duration of ``n`` sample periods at ``rate_hz``."""
    if n < 0:
        raise ValueError(f"sample count must be >= 0, got {n}")
    if rate_hz <= 0:
        raise ValueError(f"rate_hz must be > 0, got {rate_hz}")
    return n / rate_hz * 1000.0


def ms_to_samples(ms: float, rate_hz: float) -> int:
    """Smallest whole sample count spanning at least ``ms`` at ``rate_hz``."""
    if ms < 0:
        raise ValueError(f"duration must be >= 0, got {ms}")
    if rate_hz <= 0:
        raise ValueError(f"rate_hz must be > 0, got {rate_hz}")
    return math.ceil(ms * rate_hz / 1000.0 - 1e-9)


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle; containment is half-open ([x, x+w) x [y, y+h))
    so adjacent rectangles never claim the same point."""

    x: float
    y: float
    w: float
    h: float

    def contains(self, px: float, py: float) -> bool:
        return self.x <= px < self.x + self.w and self.y <= py < self.y + self.h

    def intersects(self, other: "Rect") -> bool:
        return (
            self.x < other.x + other.w
            and other.x < self.x + self.w
            and self.y < other.y + other.h
            and other.y < self.y + self.h
        )

    @property
    def center(self) -> tuple[float, float]:
        return (self.x + self.w / 2.0, self.y + self.h / 2.0)


def geometry_from_env(default: ScreenGeometry = DEFAULT_GEOMETRY) -> ScreenGeometry:
    """Geometry from ``GAZE_GEOMETRY="d_mm,px_per_mm,w,h"`` if set."""
    raw = os.environ.get("GAZE_GEOMETRY")
    if not raw:
        return default
    parts = raw.split(",")
    if len(parts) != 4:
        raise ConfigError(f"GAZE_GEOMETRY needs 4 comma-separated values, got {raw!r}")
    try:
        d, ppmm, w, h = (float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"GAZE_GEOMETRY is not numeric: {raw!r}") from exc
    return ScreenGeometry(d, ppmm, int(w), int(h))
