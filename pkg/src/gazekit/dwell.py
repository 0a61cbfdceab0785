"""Three-step dwell selection: sustained fixation -> warning -> activation.

The machine runs in lockstep with a fixation detector. When the open window
reaches ``n_arm`` samples and its first sample landed in an activatable zone,
it arms (the UI draws the warning circle around the mean of those samples);
``n_commit_extra`` samples later it commits with the mean of the first
``n_commit_total`` samples; a fixation that ends, or whose running mean
drifts out of the zone, cancels in between. At most one arm/commit cycle per
fixation.

Counts are the primitive, defined at 60 Hz and rescaled by round(n * rate/60)
for other rates; the 60 Hz defaults (10, 12, 22) put the warning at 166.67 ms
and the activation at 366.67 ms after fixation start, well under the 600 ms+
dwells eye-typing interfaces need.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Mapping

from gazekit.core import ConfigError, GazeSample, StreamConfig

# Maps a screen point to an activatable zone id, or None for dead space.
ZoneMap = Callable[[float, float], "str | None"]


@dataclass(frozen=True)
class DwellParams:
    """Sample counts at the 60 Hz reference rate."""

    n_arm: int = 10
    n_commit_extra: int = 12
    n_commit_total: int = 22

    def __post_init__(self) -> None:
        if min(self.n_arm, self.n_commit_extra, self.n_commit_total) < 1:
            raise ValueError("dwell counts must all be >= 1")

    def at_rate(self, rate_hz: float) -> tuple[int, int, int]:
        """(arm, commit-trigger, commit-average) counts rescaled to a rate."""
        scale = rate_hz / 60.0
        arm = max(1, round(self.n_arm * scale))
        extra = max(1, round(self.n_commit_extra * scale))
        total = max(1, round(self.n_commit_total * scale))
        return arm, arm + extra, total


class DwellEventKind(enum.Enum):
    ARMED = "armed"
    COMMITTED = "committed"
    CANCELLED = "cancelled"


@dataclass(frozen=True)
class DwellEvent:
    kind: DwellEventKind
    zone_id: str
    t_ms: float
    point_px: tuple[float, float] | None = None  # absent for Cancelled


def _mean_point(samples: list[GazeSample], n: int) -> tuple[float, float]:
    head = samples[:n]
    return (
        sum(s.x_px for s in head) / len(head),
        sum(s.y_px for s in head) / len(head),
    )


class DwellMachine:
    """One machine per pipeline; zone routing decides which surface a
    fixation is dwelling on. ``zone_params`` overrides the counts for
    individual zones (buttons may use shorter dwells than the map)."""

    def __init__(
        self,
        params: DwellParams,
        config: StreamConfig,
        zone_map: ZoneMap,
        zone_params: Mapping[str, DwellParams] | None = None,
    ):
        self.params = params
        self.config = config
        self.zone_map = zone_map
        self.zone_params = dict(zone_params or {})
        self._seq: int | None = None
        self._zone: str | None = None
        self._counts: tuple[int, int, int] | None = None
        self._armed = False
        self._done = False
        self._last_t = 0.0

    def _lookup(self, x: float, y: float) -> str | None:
        try:
            return self.zone_map(x, y)
        except Exception as exc:
            raise ConfigError(f"zone map lookup failed at ({x}, {y})") from exc

    def _finish_cycle(self, t_ms: float) -> list[DwellEvent]:
        """Terminate the current fixation's cycle (Cancelled if left armed)."""
        events = []
        if self._armed and not self._done and self._zone is not None:
            events.append(DwellEvent(DwellEventKind.CANCELLED, self._zone, t_ms))
        self._seq = None
        self._zone = None
        self._counts = None
        self._armed = False
        self._done = False
        return events

    def on_sample_in_fixation(
        self, sample: GazeSample, window: list[GazeSample], window_seq: int
    ) -> list[DwellEvent]:
        """Feed after the detector processed ``sample``; ``window`` is the
        detector's open window (empty if the sample terminated it)."""
        self._last_t = sample.t_ms
        events: list[DwellEvent] = []

        if self._seq is not None and (not window or window_seq != self._seq):
            events.extend(self._finish_cycle(sample.t_ms))
        if not window:
            return events

        if self._seq != window_seq:
            self._seq = window_seq
            first = window[0]
            self._zone = self._lookup(first.x_px, first.y_px)
            params = (
                self.zone_params.get(self._zone, self.params)
                if self._zone is not None
                else self.params
            )
            self._counts = params.at_rate(self.config.rate_hz)
            self._armed = False
            self._done = self._zone is None

        if self._done or self._zone is None:
            return events
        assert self._counts is not None
        n_arm, n_commit, n_avg = self._counts
        count = len(window)

        if not self._armed:
            if count >= n_arm:
                point = _mean_point(window, n_arm)
                if self._lookup(*point) == self._zone:
                    self._armed = True
                    events.append(
                        DwellEvent(
                            DwellEventKind.ARMED, self._zone, sample.t_ms, point
                        )
                    )
                else:
                    # drifted off the zone before the warning: stay silent
                    self._done = True
            return events

        # armed: watch the running mean, commit at the trigger count
        mean_all = _mean_point(window, count)
        if self._lookup(*mean_all) != self._zone:
            events.append(DwellEvent(DwellEventKind.CANCELLED, self._zone, sample.t_ms))
            self._done = True
            return events
        if count >= n_commit:
            point = _mean_point(window, min(n_avg, count))
            events.append(
                DwellEvent(DwellEventKind.COMMITTED, self._zone, sample.t_ms, point)
            )
            self._done = True
        return events

    def reset(self) -> list[DwellEvent]:
        """Back to idle; a pending armed state is cancelled."""
        return self._finish_cycle(self._last_t)
