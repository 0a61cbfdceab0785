"""Time-stamped multimodal trace format: record, parse, replay, analyze.

One record per line, tab-separated, LF-terminated, sorted by timestamp:

    <t_ms>\\t<KIND>\\t<field>...

Kinds and payload fields (floats printed with exactly 3 decimals, booleans
as 0/1, missing optionals as ``-``):

    GAZE     x y pupil valid
    POINTER  x y
    EVENT    source name detail        (source: system | user)
    FRAME    ref                       (external screenshot reference)
    FIX      end x y n dispersion pupil   (record t = fixation start)
    ZONE     id x y w h label
    SEG      label end                 (record t = segment start)

Timestamps are integer milliseconds: sub-millisecond precision buys nothing
at a 4.17 ms sample period. Text over binary: a session at 240 Hz is at most
240 lines per second, and diffs stay readable. Unknown kinds survive a
parse/serialize cycle untouched, so newer traces replay on older builds.
Audio and screen captures live outside the file; records carry references.
File extension: ``.gtr``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

from gazekit.core import GazeError, GazeSample, Rect
from gazekit.fixation import Fixation

KIND_GAZE = "GAZE"
KIND_POINTER = "POINTER"
KIND_EVENT = "EVENT"
KIND_FRAME = "FRAME"
KIND_FIX = "FIX"
KIND_ZONE = "ZONE"
KIND_SEG = "SEG"


class TraceParseError(GazeError):
    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        where = f"line {line_no}: " if line_no is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class InterestZone:
    zone_id: str
    rect_px: Rect
    label: str = ""

    def __post_init__(self) -> None:
        if self.rect_px.w <= 0 or self.rect_px.h <= 0:
            raise ValueError(f"zone {self.zone_id!r} has a degenerate rectangle")


@dataclass(frozen=True)
class Segment:
    label: str
    start_ms: int
    end_ms: int

    def __post_init__(self) -> None:
        if self.end_ms < self.start_ms:
            raise ValueError("segment end before start")


@dataclass(frozen=True)
class PointerPayload:
    x: float
    y: float


@dataclass(frozen=True)
class EventPayload:
    source: str  # system | user
    name: str
    detail: str = ""

    def __post_init__(self) -> None:
        if self.source not in ("system", "user"):
            raise ValueError(f"event source must be system|user, got {self.source!r}")


@dataclass(frozen=True)
class FramePayload:
    ref: str


@dataclass(frozen=True)
class OpaquePayload:
    """Fields of a record whose kind this build does not know."""

    fields: tuple[str, ...]


@dataclass(frozen=True)
class TraceRecord:
    t_ms: int
    kind: str
    payload: object


def _f(v: float) -> str:
    return f"{v:.3f}"


def _opt(v: float | None) -> str:
    return "-" if v is None else _f(v)


def _check_text(value: str) -> str:
    if "\t" in value or "\n" in value or "\r" in value:
        raise ValueError(f"text field may not contain tabs/newlines: {value!r}")
    return value


def serialize_record(record: TraceRecord) -> str:
    """One LF-terminated line."""
    p = record.payload
    k = record.kind
    if k == KIND_GAZE:
        assert isinstance(p, GazeSample)
        fields = [_f(p.x_px), _f(p.y_px), _opt(p.pupil_mm), str(int(p.valid))]
    elif k == KIND_POINTER:
        assert isinstance(p, PointerPayload)
        fields = [_f(p.x), _f(p.y)]
    elif k == KIND_EVENT:
        assert isinstance(p, EventPayload)
        fields = [p.source, _check_text(p.name), _check_text(p.detail)]
    elif k == KIND_FRAME:
        assert isinstance(p, FramePayload)
        fields = [_check_text(p.ref)]
    elif k == KIND_FIX:
        assert isinstance(p, Fixation)
        fields = [
            str(int(round(p.end_ms))),
            _f(p.centroid_x_px),
            _f(p.centroid_y_px),
            str(p.n_samples),
            _f(p.dispersion_px),
            _opt(p.mean_pupil_mm),
        ]
    elif k == KIND_ZONE:
        assert isinstance(p, InterestZone)
        r = p.rect_px
        fields = [
            _check_text(p.zone_id),
            _f(r.x),
            _f(r.y),
            _f(r.w),
            _f(r.h),
            _check_text(p.label),
        ]
    elif k == KIND_SEG:
        assert isinstance(p, Segment)
        fields = [_check_text(p.label), str(p.end_ms)]
    else:
        assert isinstance(p, OpaquePayload)
        fields = [_check_text(f) for f in p.fields]
    return "\t".join([str(record.t_ms), k, *fields]) + "\n"


def _parse_float(token: str, what: str, line_no: int | None) -> float:
    try:
        return float(token)
    except ValueError:
        raise TraceParseError(f"bad {what} {token!r}", line_no) from None


def _parse_opt(token: str, what: str, line_no: int | None) -> float | None:
    return None if token == "-" else _parse_float(token, what, line_no)


def _need(fields: list[str], n: int, kind: str, line_no: int | None) -> None:
    if len(fields) != n:
        raise TraceParseError(
            f"{kind} record needs {n} fields, got {len(fields)}", line_no
        )


def parse_record(line: str, line_no: int | None = None) -> TraceRecord:
    """Inverse of :func:`serialize_record`."""
    parts = line.rstrip("\n").split("\t")
    if len(parts) < 2:
        raise TraceParseError("record needs at least a timestamp and a kind", line_no)
    try:
        t_ms = int(parts[0])
    except ValueError:
        raise TraceParseError(f"bad timestamp {parts[0]!r}", line_no) from None
    kind, fields = parts[1], parts[2:]

    if kind == KIND_GAZE:
        _need(fields, 4, kind, line_no)
        if fields[3] not in ("0", "1"):
            raise TraceParseError(f"bad validity flag {fields[3]!r}", line_no)
        payload: object = GazeSample(
            t_ms=t_ms,
            x_px=_parse_float(fields[0], "x", line_no),
            y_px=_parse_float(fields[1], "y", line_no),
            pupil_mm=_parse_opt(fields[2], "pupil", line_no),
            valid=fields[3] == "1",
        )
    elif kind == KIND_POINTER:
        _need(fields, 2, kind, line_no)
        payload = PointerPayload(
            _parse_float(fields[0], "x", line_no),
            _parse_float(fields[1], "y", line_no),
        )
    elif kind == KIND_EVENT:
        _need(fields, 3, kind, line_no)
        try:
            payload = EventPayload(*fields)
        except ValueError as exc:
            raise TraceParseError(str(exc), line_no) from None
    elif kind == KIND_FRAME:
        _need(fields, 1, kind, line_no)
        payload = FramePayload(fields[0])
    elif kind == KIND_FIX:
        _need(fields, 6, kind, line_no)
        try:
            end_ms = int(fields[0])
            n_samples = int(fields[3])
        except ValueError:
            raise TraceParseError(
                f"bad integer field in FIX record: {fields[0]!r}/{fields[3]!r}", line_no
            ) from None
        payload = Fixation(
            start_ms=t_ms,
            end_ms=float(end_ms),
            centroid_x_px=_parse_float(fields[1], "x", line_no),
            centroid_y_px=_parse_float(fields[2], "y", line_no),
            n_samples=n_samples,
            dispersion_px=_parse_float(fields[4], "dispersion", line_no),
            mean_pupil_mm=_parse_opt(fields[5], "pupil", line_no),
        )
    elif kind == KIND_ZONE:
        _need(fields, 6, kind, line_no)
        try:
            payload = InterestZone(
                zone_id=fields[0],
                rect_px=Rect(
                    _parse_float(fields[1], "x", line_no),
                    _parse_float(fields[2], "y", line_no),
                    _parse_float(fields[3], "w", line_no),
                    _parse_float(fields[4], "h", line_no),
                ),
                label=fields[5],
            )
        except ValueError as exc:
            raise TraceParseError(str(exc), line_no) from None
    elif kind == KIND_SEG:
        _need(fields, 2, kind, line_no)
        try:
            payload = Segment(fields[0], t_ms, int(fields[1]))
        except ValueError as exc:
            raise TraceParseError(str(exc), line_no) from None
    else:
        payload = OpaquePayload(tuple(fields))
    return TraceRecord(t_ms=t_ms, kind=kind, payload=payload)


def read_trace(source: str | IO[str]) -> list[TraceRecord]:
    if isinstance(source, str):
        with open(source, "r", encoding="utf-8") as fh:
            return read_trace(fh)
    records = []
    for line_no, line in enumerate(source, start=1):
        if line.strip():
            records.append(parse_record(line, line_no))
    return records


def write_trace(records: Iterable[TraceRecord], dest: str | IO[str]) -> None:
    if isinstance(dest, str):
        with open(dest, "w", encoding="utf-8") as fh:
            write_trace(records, fh)
        return
    for record in records:
        dest.write(serialize_record(record))


def validate(records: list[TraceRecord]) -> list[str]:
    """Non-fatal consistency report (currently: timestamp ordering)."""
    issues = []
    for i in range(1, len(records)):
        if records[i].t_ms < records[i - 1].t_ms:
            issues.append(
                f"record {i + 1}: timestamp {records[i].t_ms} after "
                f"{records[i - 1].t_ms}"
            )
    return issues


def replay(
    records: Iterable[TraceRecord],
    speed_factor: float | None = 1.0,
    *,
    _now=time.monotonic,
    _sleep=time.sleep,
) -> Iterator[TraceRecord]:
    """Yield records at their recorded cadence scaled by ``speed_factor``.

    ``None`` or ``inf`` replays as fast as possible, order preserved. Delays
    are scheduled against the stream origin so sleep jitter does not
    accumulate.
    """
    if speed_factor is not None and speed_factor <= 0:
        raise ValueError("speed_factor must be > 0")
    as_fast = speed_factor is None or math.isinf(speed_factor)
    t0: int | None = None
    wall0 = 0.0
    for record in records:
        if not as_fast:
            if t0 is None:
                t0 = record.t_ms
                wall0 = _now()
            else:
                target = wall0 + (record.t_ms - t0) / 1000.0 / speed_factor
                delay = target - _now()
                if delay > 0:
                    _sleep(delay)
        yield record


@dataclass
class ZoneStats:
    fixation_count: int = 0
    total_fixation_ms: float = 0.0
    mean_pupil_mm: float | None = None


def zone_stats(
    records: Iterable[TraceRecord], zones: list[InterestZone]
) -> dict[str, ZoneStats]:
    """Per-zone fixation statistics over the trace's FIX records.

    Zones may overlap; a fixation whose centroid sits in several zones
    counts in each of them. Durations are the recorded start-to-end extents.
    """
    if not zones:
        raise ValueError("zones must be non-empty")
    stats = {z.zone_id: ZoneStats() for z in zones}
    pupil_sums = {z.zone_id: [0.0, 0] for z in zones}
    for record in records:
        if record.kind != KIND_FIX:
            continue
        fix = record.payload
        assert isinstance(fix, Fixation)
        for zone in zones:
            if zone.rect_px.contains(fix.centroid_x_px, fix.centroid_y_px):
                st = stats[zone.zone_id]
                st.fixation_count += 1
                st.total_fixation_ms += fix.end_ms - fix.start_ms
                if fix.mean_pupil_mm is not None:
                    pupil_sums[zone.zone_id][0] += fix.mean_pupil_mm
                    pupil_sums[zone.zone_id][1] += 1
    for zid, (total, count) in pupil_sums.items():
        if count:
            stats[zid].mean_pupil_mm = total / count
    return stats


def record_to_obj(record: TraceRecord) -> dict:
    """JSON-ready object with field names matching the TSV columns."""
    obj: dict = {"t": record.t_ms, "kind": record.kind}
    p = record.payload
    if record.kind == KIND_GAZE:
        assert isinstance(p, GazeSample)
        obj.update(x=p.x_px, y=p.y_px, pupil=p.pupil_mm, valid=p.valid)
    elif record.kind == KIND_POINTER:
        assert isinstance(p, PointerPayload)
        obj.update(x=p.x, y=p.y)
    elif record.kind == KIND_EVENT:
        assert isinstance(p, EventPayload)
        obj.update(source=p.source, name=p.name, detail=p.detail)
    elif record.kind == KIND_FRAME:
        assert isinstance(p, FramePayload)
        obj.update(ref=p.ref)
    elif record.kind == KIND_FIX:
        assert isinstance(p, Fixation)
        obj.update(
            end=int(round(p.end_ms)),
            x=p.centroid_x_px,
            y=p.centroid_y_px,
            n=p.n_samples,
            dispersion=p.dispersion_px,
            pupil=p.mean_pupil_mm,
        )
    elif record.kind == KIND_ZONE:
        assert isinstance(p, InterestZone)
        r = p.rect_px
        obj.update(id=p.zone_id, x=r.x, y=r.y, w=r.w, h=r.h, label=p.label)
    elif record.kind == KIND_SEG:
        assert isinstance(p, Segment)
        obj.update(label=p.label, end=p.end_ms)
    else:
        assert isinstance(p, OpaquePayload)
        obj.update(fields=list(p.fields))
    return obj


def gaze_record(sample: GazeSample) -> TraceRecord:
    return TraceRecord(t_ms=int(round(sample.t_ms)), kind=KIND_GAZE, payload=sample)


def fix_record(fix: Fixation) -> TraceRecord:
    return TraceRecord(t_ms=int(round(fix.start_ms)), kind=KIND_FIX, payload=fix)


def zone_record(zone: InterestZone, t_ms: int = 0) -> TraceRecord:
    return TraceRecord(t_ms=t_ms, kind=KIND_ZONE, payload=zone)
