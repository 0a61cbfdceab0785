"""Benchmarks: detection latency, landing-prediction quality, kernel backends.

Everything here is also importable so the test suite can assert on the same
numbers the CLI prints.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from gazekit._kernels import BACKEND, compiled_scan_windows, pure_scan_windows
from gazekit.core import DEFAULT_GEOMETRY, ScreenGeometry, samples_to_ms, visual_angle_to_px
from gazekit.saccade import LandingPredictor
from gazekit.synth import Fixate, Saccade, ScenarioSpec, generate


def provisional_latency_table(
    rates: tuple[float, ...] = (60.0, 240.0),
    provisional_ns: tuple[int, ...] = (2, 4, 6, 8),
) -> list[tuple[float, int, float]]:
    """(rate_hz, provisional_n, latency_ms) grid: how long a lens or dwell
    consumer waits before the detector can hand it n samples."""
    return [
        (rate, n, samples_to_ms(n, rate)) for rate in rates for n in provisional_ns
    ]


@dataclass
class LandingStats:
    rate_hz: float
    profile: str
    n_saccades: int
    n_predicted_once: int
    median_error_pct: float
    max_error_pct: float
    min_lead_ms: float


def landing_error_suite(
    rate_hz: float,
    profile: str,
    n_cases: int = 200,
    amp_deg_range: tuple[float, float] = (2.0, 20.0),
    v_onset_deg_s: float = 30.0,
    geometry: ScreenGeometry = DEFAULT_GEOMETRY,
    seed: int = 42,
) -> LandingStats:
    """Landing error over seeded synthetic saccades with symmetric profiles.

    Saccade durations follow 30 ms + 2.5 ms/deg; fixations around each
    saccade are noise-free so the low onset threshold cannot false-trigger.
    Errors are reported as a percentage of saccade amplitude; lead is the
    time between the prediction and the saccade's last sample.
    """
    rng = np.random.default_rng(seed)
    errors: list[float] = []
    leads: list[float] = []
    predicted_once = 0
    for i in range(n_cases):
        amp_deg = rng.uniform(*amp_deg_range)
        amp_px = visual_angle_to_px(amp_deg, geometry)
        angle = rng.uniform(0.0, 2.0 * math.pi)
        x0 = geometry.width_px / 2.0
        y0 = geometry.height_px / 2.0
        x1 = x0 + amp_px * math.cos(angle)
        y1 = y0 + amp_px * math.sin(angle)
        spec = ScenarioSpec(
            rate_hz=rate_hz,
            segments=(
                Fixate(x0, y0, 400.0),
                Saccade(x1, y1, 30.0 + 2.5 * amp_deg, profile),
                Fixate(x1, y1, 400.0),
            ),
            seed=seed * 100000 + i,
        )
        samples, truth = generate(spec)
        predictor = LandingPredictor(
            geometry, v_onset_deg_s=v_onset_deg_s, rate_hz=rate_hz
        )
        predictions = [
            p for p in (predictor.push_sample(s) for s in samples) if p is not None
        ]
        if len(predictions) != 1:
            continue
        predicted_once += 1
        p = predictions[0]
        errors.append(
            math.hypot(p.predicted_px[0] - x1, p.predicted_px[1] - y1) / amp_px
        )
        leads.append(truth.saccades[0].end_ms - p.issued_at_ms)
    return LandingStats(
        rate_hz=rate_hz,
        profile=profile,
        n_saccades=n_cases,
        n_predicted_once=predicted_once,
        median_error_pct=float(np.median(errors)) * 100.0 if errors else math.nan,
        max_error_pct=float(np.max(errors)) * 100.0 if errors else math.nan,
        min_lead_ms=float(np.min(leads)) if leads else math.nan,
    )


def backend_benchmark(
    n_samples: int = 200_000, seed: int = 7, repeats: int = 3
) -> dict:
    """Time the batch window scan on both kernel backends.

    Returns per-backend best-of-N wall times in seconds plus the samples/s
    they translate to; ``speedup`` is pure/compiled (None when the extension
    is unavailable).
    """
    rng = np.random.default_rng(seed)
    # a plausible mix: mostly small jitter (fixations) with occasional jumps
    x = np.cumsum(rng.normal(0.0, 2.0, n_samples))
    jumps = rng.random(n_samples) < 0.01
    x[jumps] += rng.uniform(-300, 300, int(jumps.sum()))
    y = np.cumsum(rng.normal(0.0, 2.0, n_samples))
    valid = (rng.random(n_samples) > 0.005).astype(np.uint8)
    threshold = visual_angle_to_px(1.0, DEFAULT_GEOMETRY)

    def best_time(fn) -> float:
        best = math.inf
        for _ in range(repeats):
            t0 = time.perf_counter()
            fn(x, y, valid, threshold, 100.0, 240.0)
            best = min(best, time.perf_counter() - t0)
        return best

    result: dict = {"n_samples": n_samples, "selected": BACKEND}
    pure_t = best_time(pure_scan_windows)
    result["python"] = {"seconds": pure_t, "samples_per_s": n_samples / pure_t}
    if compiled_scan_windows is not None:
        comp_t = best_time(compiled_scan_windows)
        result["cython"] = {"seconds": comp_t, "samples_per_s": n_samples / comp_t}
        result["speedup"] = pure_t / comp_t
    else:
        result["speedup"] = None
    return result


def render_report(
    rates: tuple[float, ...] = (60.0, 240.0),
    provisional_ns: tuple[int, ...] = (2, 4, 6, 8),
    landing_cases: int = 200,
    bench_samples: int = 200_000,
) -> str:
    """Human-readable benchmark report used by the CLI."""
    lines = []
    lines.append("Provisional fixation latency (n samples / rate):")
    lines.append(f"  {'rate_hz':>8} {'n':>4} {'latency_ms':>12}")
    for rate, n, ms in provisional_latency_table(rates, provisional_ns):
        lines.append(f"  {rate:>8.0f} {n:>4} {ms:>12.2f}")

    lines.append("")
    lines.append(
        f"Landing prediction on {landing_cases} synthetic saccades "
        "(2-20 deg, symmetric profiles):"
    )
    lines.append(
        f"  {'rate_hz':>8} {'profile':>14} {'predicted':>10} "
        f"{'median_err%':>12} {'max_err%':>10} {'min_lead_ms':>12}"
    )
    for rate in rates:
        for profile in ("triangular", "raised_cosine"):
            st = landing_error_suite(rate, profile, n_cases=landing_cases)
            lines.append(
                f"  {st.rate_hz:>8.0f} {st.profile:>14} "
                f"{st.n_predicted_once:>4}/{st.n_saccades:<5} "
                f"{st.median_error_pct:>12.2f} {st.max_error_pct:>10.2f} "
                f"{st.min_lead_ms:>12.1f}"
            )
    lines.append(
        "  (negative lead = prediction useless at that rate: it lands after "
        "the eye does)"
    )

    lines.append("")
    bench = backend_benchmark(n_samples=bench_samples)
    lines.append(
        f"Batch window-scan backends over {bench['n_samples']} samples "
        f"(selected: {bench['selected']}):"
    )
    for name in ("python", "cython"):
        if name in bench:
            b = bench[name]
            lines.append(
                f"  {name:>8}: {b['seconds'] * 1000:>8.2f} ms "
                f"({b['samples_per_s'] / 1e6:.2f} M samples/s)"
            )
    if bench["speedup"] is not None:
        lines.append(f"  speedup: {bench['speedup']:.1f}x")
    else:
        lines.append("  compiled extension not built; pure Python only")
    return "\n".join(lines)
