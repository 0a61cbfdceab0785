"""Gaze-contingent lens region: where the display stays at full resolution.

A region is anchored once per fixation at the mean of its first few samples
(4 by default, i.e. one anchor about 70 ms after fixation start at 60 Hz) and
never moves for the lifetime of that fixation. Between fixations the last
region is held rather than deactivated, so saccades do not flash a fully
degraded screen. Rendering is the consumer's job; this module only computes
region descriptors and point classifications.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from gazekit.core import GazeError, ScreenGeometry, visual_angle_to_px
from gazekit.fixation import FixEvent, FixEventKind

# Foveal field of vision: the default high-resolution span.
FOVEAL_THETA_DEG = 5.0
# Preset for extending the sharp area over the parafoveal field as well.
PARAFOVEAL_THETA_DEG = 10.0


class LensInactiveError(GazeError):
    """Raised when classifying against a region that is not active."""


@dataclass(frozen=True)
class LensParams:
    n_anchor: int = 4
    theta_deg: float = FOVEAL_THETA_DEG
    falloff: str = "step"  # "step" or "smooth"
    ramp_deg: float = 0.0  # extra angular width of the smooth ramp

    def __post_init__(self) -> None:
        if self.n_anchor < 1:
            raise ValueError("n_anchor must be >= 1")
        if self.theta_deg <= 0:
            raise ValueError("theta_deg must be > 0")
        if self.falloff not in ("step", "smooth"):
            raise ValueError("falloff must be 'step' or 'smooth'")
        if self.ramp_deg < 0:
            raise ValueError("ramp_deg must be >= 0")

    @classmethod
    def parafoveal(cls, **kwargs) -> "LensParams":
        kwargs.setdefault("theta_deg", PARAFOVEAL_THETA_DEG)
        return cls(**kwargs)


@dataclass(frozen=True)
class LensRegion:
    center_px: tuple[float, float]
    radius_px: float
    ramp_px: float = 0.0
    active: bool = True


class RegionLabel(enum.Enum):
    INSIDE = "inside"
    RAMP = "ramp"
    OUTSIDE = "outside"


def classify(point_px: tuple[float, float], region: LensRegion) -> RegionLabel:
    """Inside is the open disk; the boundary itself belongs to the ramp
    (or to the outside when there is no ramp)."""
    if not region.active:
        raise LensInactiveError("no active lens region")
    d = math.hypot(point_px[0] - region.center_px[0], point_px[1] - region.center_px[1])
    if d < region.radius_px:
        return RegionLabel.INSIDE
    if d < region.radius_px + region.ramp_px:
        return RegionLabel.RAMP
    return RegionLabel.OUTSIDE


def falloff_weight(point_px: tuple[float, float], region: LensRegion) -> float:
    """Resolution weight: 1 inside, 0 outside, linear across the ramp.

    Continuous and monotone in radial distance whenever ramp_px > 0.
    """
    if not region.active:
        raise LensInactiveError("no active lens region")
    d = math.hypot(point_px[0] - region.center_px[0], point_px[1] - region.center_px[1])
    if d <= region.radius_px:
        return 1.0
    if region.ramp_px <= 0 or d >= region.radius_px + region.ramp_px:
        return 0.0
    return 1.0 - (d - region.radius_px) / region.ramp_px


class LensTracker:
    """Consumes fixation events, produces lens regions."""

    def __init__(self, params: LensParams, geometry: ScreenGeometry):
        self.params = params
        self.geometry = geometry
        self.radius_px = visual_angle_to_px(params.theta_deg, geometry) / 2.0
        self.ramp_px = (
            visual_angle_to_px(params.ramp_deg, geometry) / 2.0
            if params.falloff == "smooth"
            else 0.0
        )
        self.region: LensRegion | None = None
        self._anchored_seq: int | None = None

    def on_fix_event(self, event: FixEvent) -> LensRegion | None:
        """Returns the new region when this event anchors one, else None.

        The anchor is the window centroid at the first event of a fixation
        carrying at least ``n_anchor`` samples; with the default detector
        settings that is the provisional event and the centroid is exactly
        the mean of the first 4 samples. End events leave the held region
        untouched.
        """
        if event.kind is FixEventKind.END:
            return None
        if (
            event.window_seq != self._anchored_seq
            and event.fixation.n_samples >= self.params.n_anchor
        ):
            self._anchored_seq = event.window_seq
            self.region = LensRegion(
                center_px=(event.fixation.centroid_x_px, event.fixation.centroid_y_px),
                radius_px=self.radius_px,
                ramp_px=self.ramp_px,
            )
            return self.region
        return None
