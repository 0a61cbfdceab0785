"""Streaming dispersion-based fixation detection with an equivalent batch mode.

The detector grows a window while the summed x/y extent of its samples stays
within a visual-angle threshold. Streaming mode emits incremental events
(Provisional -> Start -> Update* -> End); batch mode scans a whole recording
in one pass. Both modes classify every stream identically: same window
boundaries, same sample counts, matching centroids. That equivalence is the
module's contract and is enforced by the test suite, with batch mode acting
as the reference.

Conventions:
- duration = n_samples / rate_hz * 1000 (each sample owns one sample period),
  so 12 samples at 60 Hz are exactly 200 ms;
- the sample that breaks a window seeds the next one, no backtracking;
- an invalid sample (blink / track loss) hard-terminates the open window.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from gazekit._kernels import scan_windows
from gazekit.core import (
    GazeSample,
    StreamConfig,
    StreamOrderError,
    visual_angle_to_px,
)


@dataclass(frozen=True)
class DetectorParams:
    """Dispersion threshold (visual angle), confirmation duration, and the
    sample count at which a window becomes provisional."""

    dispersion_max_deg: float = 1.0
    min_duration_ms: float = 100.0
    provisional_n: int = 4

    def __post_init__(self) -> None:
        if self.dispersion_max_deg <= 0:
            raise ValueError("dispersion_max_deg must be > 0")
        if self.min_duration_ms <= 0:
            raise ValueError("min_duration_ms must be > 0")
        if self.provisional_n < 2:
            raise ValueError("provisional_n must be >= 2")


@dataclass(frozen=True)
class Fixation:
    """A confirmed cluster of samples."""

    start_ms: float
    end_ms: float
    centroid_x_px: float
    centroid_y_px: float
    n_samples: int
    dispersion_px: float
    mean_pupil_mm: float | None = None

    def duration_ms(self, rate_hz: float) -> float:
        return self.n_samples / rate_hz * 1000.0


class FixEventKind(enum.Enum):
    PROVISIONAL = "provisional"
    START = "start"
    UPDATE = "update"
    END = "end"


@dataclass(frozen=True)
class FixEvent:
    """Incremental detector event carrying a snapshot of the open window.

    ``window_seq`` identifies the window the event belongs to; it increments
    every time a new window is seeded, including windows that are later
    retracted without ever confirming.
    """

    kind: FixEventKind
    fixation: Fixation
    window_seq: int


def _fixation_from(samples: list[GazeSample]) -> Fixation:
    """Build a fixation snapshot; summation order is fixed so streaming and
    batch construction agree bit-for-bit."""
    n = len(samples)
    sx = 0.0
    sy = 0.0
    minx = maxx = samples[0].x_px
    miny = maxy = samples[0].y_px
    pupil_sum = 0.0
    pupil_n = 0
    for s in samples:
        sx += s.x_px
        sy += s.y_px
        minx = s.x_px if s.x_px < minx else minx
        maxx = s.x_px if s.x_px > maxx else maxx
        miny = s.y_px if s.y_px < miny else miny
        maxy = s.y_px if s.y_px > maxy else maxy
        if s.pupil_mm is not None:
            pupil_sum += s.pupil_mm
            pupil_n += 1
    return Fixation(
        start_ms=samples[0].t_ms,
        end_ms=samples[-1].t_ms,
        centroid_x_px=sx / n,
        centroid_y_px=sy / n,
        n_samples=n,
        dispersion_px=(maxx - minx) + (maxy - miny),
        mean_pupil_mm=pupil_sum / pupil_n if pupil_n else None,
    )


class FixationDetector:
    """One detector instance per stream session; not safe for concurrent use."""

    def __init__(self, params: DetectorParams, config: StreamConfig):
        self.params = params
        self.config = config
        self.threshold_px = visual_angle_to_px(
            params.dispersion_max_deg, config.geometry
        )
        self._window: list[GazeSample] = []
        self._minx = self._maxx = self._miny = self._maxy = 0.0
        self._started = False
        self._provisional = False
        self._last_t: float | None = None
        self._seq = 0

    @property
    def open_window(self) -> list[GazeSample]:
        """Samples of the currently open window (do not mutate)."""
        return self._window

    @property
    def window_seq(self) -> int:
        return self._seq

    def _seed(self, sample: GazeSample) -> None:
        self._window = [sample]
        self._minx = self._maxx = sample.x_px
        self._miny = self._maxy = sample.y_px
        self._started = False
        self._provisional = False
        self._seq += 1

    def _close(self) -> list[FixEvent]:
        events = []
        if self._started:
            events.append(
                FixEvent(FixEventKind.END, _fixation_from(self._window), self._seq)
            )
        # provisional windows are retracted silently
        self._window = []
        self._started = False
        self._provisional = False
        return events

    def _transitions(self) -> list[FixEvent]:
        """Provisional/Start/Update checks after a sample joined the window."""
        events = []
        n = len(self._window)
        if not self._provisional and n >= self.params.provisional_n:
            self._provisional = True
            events.append(
                FixEvent(
                    FixEventKind.PROVISIONAL, _fixation_from(self._window), self._seq
                )
            )
        if not self._started:
            if n * 1000.0 / self.config.rate_hz >= self.params.min_duration_ms:
                self._started = True
                events.append(
                    FixEvent(FixEventKind.START, _fixation_from(self._window), self._seq)
                )
        elif n > 1:
            events.append(
                FixEvent(FixEventKind.UPDATE, _fixation_from(self._window), self._seq)
            )
        return events

    def push_sample(self, sample: GazeSample) -> list[FixEvent]:
        """Feed one sample; returns the events it triggered (possibly none)."""
        if self._last_t is not None and sample.t_ms < self._last_t:
            raise StreamOrderError(
                f"timestamp went backwards: {sample.t_ms} after {self._last_t}"
            )
        self._last_t = sample.t_ms

        if not sample.valid:
            return self._close()

        if not self._window:
            self._seed(sample)
            return self._transitions()

        nminx = min(self._minx, sample.x_px)
        nmaxx = max(self._maxx, sample.x_px)
        nminy = min(self._miny, sample.y_px)
        nmaxy = max(self._maxy, sample.y_px)
        if (nmaxx - nminx) + (nmaxy - nminy) <= self.threshold_px:
            self._minx, self._maxx = nminx, nmaxx
            self._miny, self._maxy = nminy, nmaxy
            self._window.append(sample)
            return self._transitions()

        events = self._close()
        self._seed(sample)
        events.extend(self._transitions())
        return events

    def flush(self) -> list[FixEvent]:
        """Close the stream: End for a confirmed window, retract otherwise.
        Idempotent."""
        return self._close()


def detect_batch(
    samples: list[GazeSample], params: DetectorParams, config: StreamConfig
) -> list[Fixation]:
    """One-pass fixation detection over a full recording.

    The window scan runs on the selected kernel backend (compiled when
    available); fixation objects are then built from the same sample objects
    the streaming path sees, keeping both modes numerically identical.
    """
    n = len(samples)
    if n == 0:
        return []
    t = np.fromiter((s.t_ms for s in samples), dtype=np.float64, count=n)
    if np.any(np.diff(t) < 0):
        raise StreamOrderError("batch input is not time-ordered")
    x = np.fromiter((s.x_px for s in samples), dtype=np.float64, count=n)
    y = np.fromiter((s.y_px for s in samples), dtype=np.float64, count=n)
    valid = np.fromiter((s.valid for s in samples), dtype=np.uint8, count=n)

    threshold_px = visual_angle_to_px(params.dispersion_max_deg, config.geometry)
    bounds = scan_windows(x, y, valid, threshold_px, params.min_duration_ms, config.rate_hz)
    return [_fixation_from(samples[int(a) : int(b) + 1]) for a, b in bounds]
