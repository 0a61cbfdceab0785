"""Landing-point prediction from saccade velocity, ahead of saccade end.

Angular speed is estimated by central difference over three consecutive valid
samples. A saccade is on once the speed stays above the onset threshold for
two samples; at the first strict speed decrease the peak is taken as known,
and because symmetric saccade profiles cover half their amplitude by peak
velocity, the landing point is extrapolated as

    predicted = onset + 2 * (peak - onset)

which needs no per-user calibration. Exactly one prediction is emitted per
saccade, at peak time, well before the eye lands.

Sampling rarely hits the true velocity peak: a symmetric profile usually
straddles it with two near-equal estimates one period apart, and worse, gaze
timestamps carry integer-millisecond jitter. The peak is therefore refined by
fitting a parabola through the three speed samples around the detected
decrease and interpolating the gaze position at the vertex time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from gazekit.core import GazeSample, ScreenGeometry, px_to_visual_angle

# Conventional velocity-threshold boundary between fixational and saccadic
# motion; tunable per deployment.
DEFAULT_ONSET_DEG_S = 100.0


@dataclass(frozen=True)
class VelocitySample:
    """Angular speed attributed to the middle sample of its 3-sample window."""

    t_ms: float
    speed_deg_s: float
    direction: tuple[float, float]  # unit vector in the screen plane (0,0 at rest)
    x_px: float
    y_px: float


@dataclass(frozen=True)
class LandingPrediction:
    predicted_px: tuple[float, float]
    issued_at_ms: float
    onset_px: tuple[float, float]
    peak_px: tuple[float, float]
    peak_speed_deg_s: float


def estimate_speed(window: list[GazeSample], geometry: ScreenGeometry) -> float:
    """Angular speed (deg/s) across a 3-sample window of valid samples."""
    if len(window) != 3:
        raise ValueError("speed estimation needs exactly 3 samples")
    first, _, last = window
    dt_ms = last.t_ms - first.t_ms
    if dt_ms <= 0:
        raise ValueError("window timestamps must be strictly increasing")
    dist_px = math.hypot(last.x_px - first.x_px, last.y_px - first.y_px)
    return px_to_visual_angle(dist_px, geometry) / (dt_ms / 1000.0)


def velocity_sample(window: list[GazeSample], geometry: ScreenGeometry) -> VelocitySample:
    speed = estimate_speed(window, geometry)
    first, mid, last = window
    dx = last.x_px - first.x_px
    dy = last.y_px - first.y_px
    norm = math.hypot(dx, dy)
    direction = (dx / norm, dy / norm) if speed > 0 and norm > 0 else (0.0, 0.0)
    return VelocitySample(mid.t_ms, speed, direction, mid.x_px, mid.y_px)


def _peak_vertex(
    a: VelocitySample, b: VelocitySample, c: VelocitySample
) -> tuple[float, float, float, float]:
    """(t, x, y, speed) of the speed maximum around middle sample ``b``,
    from a parabola through the three speed samples; positions are
    interpolated linearly at the vertex time."""
    t0, t1, t2 = a.t_ms, b.t_ms, c.t_ms
    v0, v1, v2 = a.speed_deg_s, b.speed_deg_s, c.speed_deg_s
    da, db = t1 - t0, t1 - t2
    num = da * da * (v1 - v2) - db * db * (v1 - v0)
    den = da * (v1 - v2) - db * (v1 - v0)
    if den <= 0:  # degenerate / no interior maximum
        return t1, b.x_px, b.y_px, v1
    t_star = min(max(t1 - 0.5 * num / den, t0), t2)
    lo, hi = (a, b) if t_star <= t1 else (b, c)
    span = hi.t_ms - lo.t_ms
    u = (t_star - lo.t_ms) / span if span > 0 else 0.0
    return (
        t_star,
        lo.x_px + (hi.x_px - lo.x_px) * u,
        lo.y_px + (hi.y_px - lo.y_px) * u,
        max(v0, v1, v2),
    )


class LandingPredictor:
    """Per-session streaming predictor; feed every gaze sample in order."""

    def __init__(
        self,
        geometry: ScreenGeometry,
        v_onset_deg_s: float = DEFAULT_ONSET_DEG_S,
        rate_hz: float | None = None,
    ):
        if v_onset_deg_s <= 0:
            raise ValueError("v_onset_deg_s must be > 0")
        self.geometry = geometry
        self.v_onset = v_onset_deg_s
        # traces carry integer-ms stamps; at rates whose period is not a
        # whole millisecond the rounding jitters 2-period gaps by up to 12%,
        # which is poison for peak detection. Knowing the nominal rate lets
        # us snap stamps back onto the sample grid before differencing.
        self._period_ms = 1000.0 / rate_hz if rate_hz else None
        self._buf: list[GazeSample] = []  # last 3 valid samples
        self._speeds: list[VelocitySample] = []  # last 3 speed samples
        self._in_saccade = False
        self._predicted = False
        self._onset: tuple[float, float] | None = None

    def _reset_saccade(self) -> None:
        self._in_saccade = False
        self._predicted = False
        self._onset = None

    def _degitter(self, sample: GazeSample) -> GazeSample:
        if self._period_ms is None:
            return sample
        snapped = round(sample.t_ms / self._period_ms) * self._period_ms
        if abs(snapped - sample.t_ms) >= 1.0:
            return sample  # not plain integer rounding; leave it alone
        return GazeSample(snapped, sample.x_px, sample.y_px, sample.pupil_mm)

    def push_sample(self, sample: GazeSample) -> LandingPrediction | None:
        if not sample.valid:
            self._buf = []
            self._speeds = []
            self._reset_saccade()
            return None
        issued_t = sample.t_ms  # report in the caller's clock, not the snapped one
        sample = self._degitter(sample)
        self._buf.append(sample)
        if len(self._buf) > 3:
            self._buf.pop(0)
        if len(self._buf) < 3:
            return None
        if self._buf[2].t_ms <= self._buf[0].t_ms:
            # duplicate timestamps: no usable speed for this window
            return None

        vs = velocity_sample(self._buf, self.geometry)
        self._speeds.append(vs)
        if len(self._speeds) > 3:
            self._speeds.pop(0)

        if not self._in_saccade:
            if (
                len(self._speeds) >= 2
                and vs.speed_deg_s > self.v_onset
                and self._speeds[-2].speed_deg_s > self.v_onset
            ):
                self._in_saccade = True
                self._predicted = False
                # anchor on the last sub-threshold speed sample when we have
                # one: that is the fixation edge the saccade left from
                anchor = (
                    self._speeds[-3] if len(self._speeds) >= 3 else self._speeds[-2]
                )
                self._onset = (anchor.x_px, anchor.y_px)
            return None

        # in saccade
        if vs.speed_deg_s <= self.v_onset:
            self._reset_saccade()
            return None
        if self._predicted:
            return None

        prev = self._speeds[-2]
        if vs.speed_deg_s < prev.speed_deg_s:
            # first strict decrease: the peak sits between the last three
            # speed samples; refine it instead of trusting the sample grid
            if len(self._speeds) == 3:
                _, px, py, pv = _peak_vertex(*self._speeds)
            else:
                px, py, pv = prev.x_px, prev.y_px, prev.speed_deg_s
            peak = (px, py)
            assert self._onset is not None
            predicted = (
                self._onset[0] + 2.0 * (peak[0] - self._onset[0]),
                self._onset[1] + 2.0 * (peak[1] - self._onset[1]),
            )
            self._predicted = True
            return LandingPrediction(
                predicted_px=predicted,
                issued_at_ms=issued_t,
                onset_px=self._onset,
                peak_px=peak,
                peak_speed_deg_s=pv,
            )
        return None
