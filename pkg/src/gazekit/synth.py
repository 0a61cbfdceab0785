"""Seeded gaze-stream generator with known ground truth.

Scenarios are ordered lists of Fixate / Saccade / Blink segments. Generation
is deterministic for a given seed (numpy PCG64, via ``default_rng``); the
algorithm name matters because recorded fixtures, not live RNG output, are
the portable interface for other implementations.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from gazekit.core import GazeSample


@dataclass(frozen=True)
class Fixate:
    """Hold position at ``(x, y)`` with isotropic Gaussian jitter."""

    x: float
    y: float
    duration_ms: float
    noise_sigma_px: float = 0.0

    def __post_init__(self) -> None:
        if self.duration_ms <= 0:
            raise ValueError("segment duration must be > 0")
        if self.noise_sigma_px < 0:
            raise ValueError("noise_sigma_px must be >= 0")


PROFILES = ("triangular", "raised_cosine")


@dataclass(frozen=True)
class Saccade:
    """Ballistic move to ``(x, y)`` along a symmetric speed profile; the last
    sample lands exactly on the target."""

    x: float
    y: float
    duration_ms: float
    profile: str = "triangular"

    def __post_init__(self) -> None:
        if self.duration_ms <= 0:
            raise ValueError("segment duration must be > 0")
        if self.profile not in PROFILES:
            raise ValueError(f"profile must be one of {PROFILES}")


@dataclass(frozen=True)
class Blink:
    """Track loss: invalid samples, coordinates not usable."""

    duration_ms: float

    def __post_init__(self) -> None:
        if self.duration_ms <= 0:
            raise ValueError("segment duration must be > 0")


Segment = Fixate | Saccade | Blink


@dataclass(frozen=True)
class ScenarioSpec:
    rate_hz: float
    segments: tuple[Segment, ...]
    seed: int = 0

    def __post_init__(self) -> None:
        if self.rate_hz <= 0:
            raise ValueError("rate_hz must be > 0")


@dataclass(frozen=True)
class TruthFixation:
    start_ms: int
    end_ms: int
    x: float
    y: float


@dataclass(frozen=True)
class TruthSaccade:
    start_ms: int
    end_ms: int
    from_x: float
    from_y: float
    to_x: float
    to_y: float
    peak_ms: float


@dataclass(frozen=True)
class TruthBlink:
    start_ms: int
    end_ms: int


@dataclass
class GroundTruth:
    """Intended segment structure behind a generated stream; the segment
    intervals cover the timeline without overlap."""

    fixations: list[TruthFixation] = field(default_factory=list)
    saccades: list[TruthSaccade] = field(default_factory=list)
    blinks: list[TruthBlink] = field(default_factory=list)


def displacement_fraction(profile: str, u: float) -> float:
    """Fraction of total displacement covered at normalized time ``u``.

    Integral of the normalized symmetric speed profile; exactly 0.5 at the
    profile midpoint for both shapes.
    """
    if profile == "triangular":
        if u <= 0.5:
            return 2.0 * u * u
        return 1.0 - 2.0 * (1.0 - u) * (1.0 - u)
    if profile == "raised_cosine":
        return u - math.sin(2.0 * math.pi * u) / (2.0 * math.pi)
    raise ValueError(f"unknown profile {profile!r}")


def generate(spec: ScenarioSpec) -> tuple[list[GazeSample], GroundTruth]:
    """Render a scenario into samples plus its ground truth."""
    rng = np.random.default_rng(spec.seed)
    rate = spec.rate_hz
    samples: list[GazeSample] = []
    truth = GroundTruth()
    k = 0  # global sample index; timestamps are round(k * 1000 / rate)
    pos = (0.0, 0.0)

    def t_of(idx: int) -> int:
        return round(idx * 1000.0 / rate)

    for seg in spec.segments:
        n = max(1, round(seg.duration_ms * rate / 1000.0))
        t_first, t_last = t_of(k), t_of(k + n - 1)
        if isinstance(seg, Fixate):
            if seg.noise_sigma_px > 0:
                jitter = rng.normal(0.0, seg.noise_sigma_px, size=(n, 2))
            else:
                jitter = np.zeros((n, 2))
            for i in range(n):
                samples.append(
                    GazeSample(
                        t_of(k + i),
                        float(seg.x + jitter[i, 0]),
                        float(seg.y + jitter[i, 1]),
                    )
                )
            truth.fixations.append(TruthFixation(t_first, t_last, seg.x, seg.y))
            pos = (seg.x, seg.y)
        elif isinstance(seg, Saccade):
            start = pos
            motion_start = t_of(k - 1) if k > 0 else t_first
            for i in range(1, n + 1):
                f = displacement_fraction(seg.profile, i / n)
                samples.append(
                    GazeSample(
                        t_of(k + i - 1),
                        start[0] + (seg.x - start[0]) * f,
                        start[1] + (seg.y - start[1]) * f,
                    )
                )
            truth.saccades.append(
                TruthSaccade(
                    t_first, t_last, start[0], start[1], seg.x, seg.y,
                    peak_ms=(motion_start + t_last) / 2.0,
                )
            )
            pos = (seg.x, seg.y)
        else:
            for i in range(n):
                samples.append(GazeSample(t_of(k + i), pos[0], pos[1], valid=False))
            truth.blinks.append(TruthBlink(t_first, t_last))
        k += n

    return samples, truth


# NDJSON scenario format: first line is a header object with rate_hz/seed,
# each following line is one segment object.

def scenario_to_ndjson(spec: ScenarioSpec) -> str:
    lines = [json.dumps({"rate_hz": spec.rate_hz, "seed": spec.seed})]
    for seg in spec.segments:
        if isinstance(seg, Fixate):
            lines.append(
                json.dumps(
                    {
                        "kind": "fixate",
                        "x": seg.x,
                        "y": seg.y,
                        "ms": seg.duration_ms,
                        "sigma": seg.noise_sigma_px,
                    }
                )
            )
        elif isinstance(seg, Saccade):
            lines.append(
                json.dumps(
                    {
                        "kind": "saccade",
                        "x": seg.x,
                        "y": seg.y,
                        "ms": seg.duration_ms,
                        "profile": seg.profile,
                    }
                )
            )
        else:
            lines.append(json.dumps({"kind": "blink", "ms": seg.duration_ms}))
    return "\n".join(lines) + "\n"


def scenario_from_ndjson(text: str) -> ScenarioSpec:
    rate_hz = 60.0
    seed = 0
    segments: list[Segment] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValueError(f"scenario line {lineno}: invalid JSON") from exc
        if "rate_hz" in obj or "seed" in obj:
            rate_hz = float(obj.get("rate_hz", rate_hz))
            seed = int(obj.get("seed", seed))
            continue
        kind = obj.get("kind")
        if kind == "fixate":
            segments.append(
                Fixate(obj["x"], obj["y"], obj["ms"], obj.get("sigma", 0.0))
            )
        elif kind == "saccade":
            segments.append(
                Saccade(obj["x"], obj["y"], obj["ms"], obj.get("profile", "triangular"))
            )
        elif kind == "blink":
            segments.append(Blink(obj["ms"]))
        else:
            raise ValueError(f"scenario line {lineno}: unknown segment kind {kind!r}")
    if not segments:
        raise ValueError("scenario has no segments")
    return ScenarioSpec(rate_hz=rate_hz, segments=tuple(segments), seed=seed)
