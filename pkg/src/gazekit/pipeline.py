"""Session pipeline: gaze samples in, NDJSON-ready event messages out.

One pipeline per connection/session. Samples flow through the fixation
detector; its events drive the lens tracker and the dwell machine; committed
dwells are routed through the screen layout to map commands; every emitted
message mirrors one domain event. Messages leave in non-decreasing ``t``
order, and a committed dwell is always preceded by its armed message.

After a commit the detector session is restarted, so a gaze that stays put
(a parked pointer in the demo) starts a fresh fixation and can re-activate:
repeated pans come from repeated fixations, never from two commits inside
one fixation.
"""

from __future__ import annotations

import json
from typing import Any

from gazekit.core import GazeSample, StreamConfig
from gazekit.dwell import DwellEvent, DwellEventKind, DwellMachine, DwellParams
from gazekit.fixation import (
    DetectorParams,
    FixationDetector,
    Fixation,
    FixEvent,
    FixEventKind,
)
from gazekit.lens import LensParams, LensRegion, LensTracker
from gazekit.mapctl import (
    FocusCommit,
    MapLayout,
    MapState,
    OVERVIEW,
    Pan,
    SetZoom,
    ZOOM_BUTTONS,
    apply_command,
    default_layout,
    overview_rect,
)
from gazekit.saccade import LandingPredictor, LandingPrediction
from gazekit.trace import InterestZone, zone_stats as compute_zone_stats, fix_record

_FIX_TYPE = {
    FixEventKind.PROVISIONAL: "fix_provisional",
    FixEventKind.START: "fix_start",
    FixEventKind.UPDATE: "fix_update",
    FixEventKind.END: "fix_end",
}

_DWELL_TYPE = {
    DwellEventKind.ARMED: "dwell_armed",
    DwellEventKind.COMMITTED: "dwell_committed",
    DwellEventKind.CANCELLED: "dwell_cancelled",
}


def fix_message(t: float, event: FixEvent) -> dict:
    f = event.fixation
    return {
        "t": t,
        "type": _FIX_TYPE[event.kind],
        "seq": event.window_seq,
        "start": f.start_ms,
        "end": f.end_ms,
        "x": f.centroid_x_px,
        "y": f.centroid_y_px,
        "n": f.n_samples,
        "dispersion": f.dispersion_px,
        "pupil": f.mean_pupil_mm,
    }


def dwell_message(event: DwellEvent) -> dict:
    msg = {"t": event.t_ms, "type": _DWELL_TYPE[event.kind], "zone": event.zone_id}
    if event.point_px is not None:
        msg["x"], msg["y"] = event.point_px
    return msg


def lens_message(t: float, region: LensRegion) -> dict:
    return {
        "t": t,
        "type": "lens",
        "x": region.center_px[0],
        "y": region.center_px[1],
        "radius": region.radius_px,
        "ramp": region.ramp_px,
        "active": region.active,
    }


def landing_message(prediction: LandingPrediction) -> dict:
    return {
        "t": prediction.issued_at_ms,
        "type": "landing",
        "x": prediction.predicted_px[0],
        "y": prediction.predicted_px[1],
        "onset_x": prediction.onset_px[0],
        "onset_y": prediction.onset_px[1],
        "peak_x": prediction.peak_px[0],
        "peak_y": prediction.peak_px[1],
        "peak_speed": prediction.peak_speed_deg_s,
    }


def map_message(t: float, state: MapState, layout: MapLayout | None = None) -> dict:
    rect = overview_rect(state)
    msg: dict[str, Any] = {
        "t": t,
        "type": "map_state",
        "focus_x": state.focus_px[0],
        "focus_y": state.focus_px[1],
        "zoom_index": state.zoom_index,
        "zoom_factor": state.zoom_factor,
        "pan_step": state.pan_step_px,
        "overview_w": state.overview_size_px[0],
        "overview_h": state.overview_size_px[1],
        "rect": {"x": rect.x, "y": rect.y, "w": rect.w, "h": rect.h},
    }
    if layout is not None:
        msg["layout"] = {
            name: {"x": r.x, "y": r.y, "w": r.w, "h": r.h}
            for name, r in layout.items()
        }
    return msg


def sample_from_message(obj: dict) -> GazeSample:
    return GazeSample(
        t_ms=float(obj["t"]),
        x_px=float(obj.get("x", 0.0)),
        y_px=float(obj.get("y", 0.0)),
        pupil_mm=None if obj.get("pupil") is None else float(obj["pupil"]),
        valid=bool(obj.get("valid", True)),
    )


class GazePipeline:
    """Detector -> dwell/lens/predictor -> map, as one message-driven unit."""

    def __init__(
        self,
        config: StreamConfig | None = None,
        detector_params: DetectorParams | None = None,
        dwell_params: DwellParams | None = None,
        lens_params: LensParams | None = None,
        v_onset_deg_s: float | None = None,
        layout: MapLayout | None = None,
        map_state: MapState | None = None,
        zones: list[InterestZone] | None = None,
    ):
        self.config = config or StreamConfig()
        self.detector_params = detector_params or DetectorParams()
        self.layout = layout or default_layout(
            self.config.geometry.width_px, self.config.geometry.height_px
        )
        ov = self.layout.widgets[OVERVIEW]
        # focus lives in overview-map coordinates, not screen coordinates
        self.map_state = map_state or MapState(
            focus_px=(ov.w / 2.0, ov.h / 2.0), overview_size_px=(ov.w, ov.h)
        )
        self.detector = FixationDetector(self.detector_params, self.config)
        self.dwell = DwellMachine(
            dwell_params or DwellParams(), self.config, self._zone_of
        )
        self.lens = LensTracker(lens_params or LensParams(), self.config.geometry)
        self.predictor = LandingPredictor(
            self.config.geometry,
            rate_hz=self.config.rate_hz,
            **({"v_onset_deg_s": v_onset_deg_s} if v_onset_deg_s else {}),
        )
        self.zones = zones or [
            InterestZone(name, rect, label=name) for name, rect in self.layout.items()
        ]
        self.fixations: list[Fixation] = []
        self._last_t = 0.0

    def _zone_of(self, x: float, y: float) -> str | None:
        return self.layout.hit_test(x, y)

    def hello(self) -> list[dict]:
        """Initial message carrying the layout and map state."""
        return [map_message(self._last_t, self.map_state, self.layout)]

    def _handle_fix_events(self, t: float, events: list[FixEvent]) -> list[dict]:
        msgs = []
        for event in events:
            msgs.append(fix_message(t, event))
            if event.kind is FixEventKind.END:
                self.fixations.append(event.fixation)
            region = self.lens.on_fix_event(event)
            if region is not None:
                msgs.append(lens_message(t, region))
        return msgs

    def _route_commit(self, event: DwellEvent) -> list[dict]:
        """Turn a committed dwell into a map command."""
        zone = event.zone_id
        assert event.point_px is not None
        if zone == OVERVIEW:
            ov = self.layout.widgets[OVERVIEW]
            ow, oh = self.map_state.overview_size_px
            cmd = FocusCommit(
                (event.point_px[0] - ov.x) * (ow / ov.w),
                (event.point_px[1] - ov.y) * (oh / ov.h),
            )
        elif zone in ZOOM_BUTTONS:
            cmd = SetZoom(ZOOM_BUTTONS.index(zone))
        elif zone in ("pan_left", "pan_right", "pan_up", "pan_down"):
            cmd = Pan(zone.removeprefix("pan_"))
        else:
            return []
        self.map_state = apply_command(self.map_state, cmd)
        return [map_message(event.t_ms, self.map_state)]

    def on_gaze(self, sample: GazeSample) -> list[dict]:
        self._last_t = sample.t_ms
        msgs = self._handle_fix_events(sample.t_ms, self.detector.push_sample(sample))
        dwell_events = self.dwell.on_sample_in_fixation(
            sample, self.detector.open_window, self.detector.window_seq
        )
        committed = False
        for event in dwell_events:
            msgs.append(dwell_message(event))
            if event.kind is DwellEventKind.COMMITTED:
                msgs.extend(self._route_commit(event))
                committed = True
        prediction = self.predictor.push_sample(sample)
        if prediction is not None:
            msgs.append(landing_message(prediction))
        if committed:
            # restart the session so a steady gaze can activate again
            msgs.extend(self._handle_fix_events(sample.t_ms, self.detector.flush()))
            self.dwell.reset()
        return msgs

    def flush(self) -> list[dict]:
        msgs = self._handle_fix_events(self._last_t, self.detector.flush())
        for event in self.dwell.reset():
            msgs.append(dwell_message(event))
        return msgs

    def zone_stats_message(self) -> dict:
        stats = compute_zone_stats([fix_record(f) for f in self.fixations], self.zones)
        return {
            "t": self._last_t,
            "type": "zone_stats",
            "zones": [
                {
                    "id": zid,
                    "fixations": st.fixation_count,
                    "total_ms": st.total_fixation_ms,
                    "mean_pupil": st.mean_pupil_mm,
                }
                for zid, st in stats.items()
            ],
        }

    def on_message(self, obj: dict) -> list[dict]:
        """Dispatch one upstream wire message."""
        mtype = obj.get("type")
        if mtype == "gaze":
            return self.on_gaze(sample_from_message(obj))
        if mtype == "flush":
            return self.flush()
        if mtype == "zone_stats":
            return [self.zone_stats_message()]
        return []

    def on_line(self, line: str) -> list[str]:
        """NDJSON line in, NDJSON lines out."""
        line = line.strip()
        if not line:
            return []
        obj = json.loads(line)
        return [json.dumps(m) for m in self.on_message(obj)]
