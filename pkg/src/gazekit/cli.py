"""Command-line entry point: pipelines over traces plus the live server.

Subcommands:
    detect    trace in, fixations out (TSV FIX records or NDJSON)
    replay    re-emit a trace at its recorded cadence (scaled by --speed)
    simulate  render a scenario spec into a gaze trace
    resolve   rank interest zones against an utterance interval
    bench     latency / landing-error / kernel-backend report
    serve     NDJSON wire protocol over TCP, plus a browser bridge

Exit codes: 0 success, 1 data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import socketserver
import sys
import threading
from pathlib import Path

from gazekit import __version__
from gazekit.bench import render_report
from gazekit.core import (
    GazeError,
    GazeSample,
    ScreenGeometry,
    StreamConfig,
    geometry_from_env,
)
from gazekit.deictic import ResolverWeights, UtteranceInterval, assign_deictics, rank_referents
from gazekit.dwell import DwellParams
from gazekit.fixation import DetectorParams, detect_batch
from gazekit.lens import LensParams
from gazekit.pipeline import GazePipeline
from gazekit import trace as tr
from gazekit.synth import generate, scenario_from_ndjson
from gazekit import wsbridge

FRONTEND_DIR = Path(__file__).resolve().parents[2] / "frontend"


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _read_records(path: str) -> list[tr.TraceRecord]:
    if path == "-":
        return tr.read_trace(sys.stdin)
    with open(path, "r", encoding="utf-8") as fh:
        return tr.read_trace(fh)


def _out_stream(path: str | None):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _geometry(args) -> ScreenGeometry:
    if getattr(args, "geometry", None):
        parts = [float(p) for p in args.geometry.split(",")]
        if len(parts) != 4:
            raise ValueError("--geometry needs d_mm,px_per_mm,width,height")
        return ScreenGeometry(parts[0], parts[1], int(parts[2]), int(parts[3]))
    return geometry_from_env()


def _detector_params(args) -> DetectorParams:
    return DetectorParams(
        dispersion_max_deg=args.dispersion_deg,
        min_duration_ms=args.min_ms,
        provisional_n=args.provisional_n,
    )


def _add_detector_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rate", type=float, default=60.0, help="sampling rate in Hz (default 60)")
    p.add_argument(
        "--dispersion-deg",
        type=float,
        default=1.0,
        help="max fixation dispersion, degrees of visual angle (default 1.0)",
    )
    p.add_argument(
        "--min-ms",
        type=float,
        default=100.0,
        help="minimum fixation duration in ms (default 100)",
    )
    p.add_argument(
        "--provisional-n",
        type=int,
        default=4,
        help="samples before a provisional fixation is reported (default 4)",
    )
    p.add_argument(
        "--geometry",
        help="viewing geometry as d_mm,px_per_mm,width,height "
        "(default: GAZE_GEOMETRY env var or 600,3.7795,1280,1024)",
    )


def cmd_detect(args) -> int:
    records = _read_records(args.trace)
    samples = [r.payload for r in records if r.kind == tr.KIND_GAZE]
    config = StreamConfig(rate_hz=args.rate, geometry=_geometry(args))
    fixations = detect_batch(samples, _detector_params(args), config)
    out, close = _out_stream(args.output)
    try:
        for fix in fixations:
            if args.ndjson:
                out.write(json.dumps(tr.record_to_obj(tr.fix_record(fix))) + "\n")
            else:
                out.write(tr.serialize_record(tr.fix_record(fix)))
    finally:
        if close:
            out.close()
    return 0


def cmd_replay(args) -> int:
    records = _read_records(args.trace)
    speed = None if args.speed in ("inf", "max") else float(args.speed)
    for record in tr.replay(records, speed):
        sys.stdout.write(tr.serialize_record(record))
        sys.stdout.flush()
    return 0


def cmd_simulate(args) -> int:
    spec = scenario_from_ndjson(_read_text(args.spec))
    samples, _ = generate(spec)
    out, close = _out_stream(args.output)
    try:
        for sample in samples:
            out.write(tr.serialize_record(tr.gaze_record(sample)))
    finally:
        if close:
            out.close()
    return 0


def cmd_resolve(args) -> int:
    records = _read_records(args.trace)
    zones = [r.payload for r in records if r.kind == tr.KIND_ZONE]
    if args.zones:
        zones.extend(
            r.payload for r in _read_records(args.zones) if r.kind == tr.KIND_ZONE
        )
    fixations = [r.payload for r in records if r.kind == tr.KIND_FIX]
    if not fixations:
        samples = [r.payload for r in records if r.kind == tr.KIND_GAZE]
        config = StreamConfig(rate_hz=args.rate, geometry=_geometry(args))
        fixations = detect_batch(samples, _detector_params(args), config)

    start, _, end = args.utterance.partition(":")
    utterance = UtteranceInterval(float(start), float(end), args.deictics)
    weights = ResolverWeights(
        w_pre=args.w_pre,
        w_during=args.w_during,
        w_post=args.w_post,
        pre_window_ms=args.pre_ms,
        post_window_ms=args.post_ms,
    )
    ranked = rank_referents(utterance, fixations, zones, weights)
    for rank, score in enumerate(ranked, start=1):
        sys.stdout.write(
            json.dumps(
                {
                    "rank": rank,
                    "zone": score.zone_id,
                    "score": score.score,
                    "pre_ms": score.pre_ms,
                    "during_ms": score.during_ms,
                    "post_ms": score.post_ms,
                }
            )
            + "\n"
        )
    if args.deictics > 1:
        assignment = assign_deictics(utterance, fixations, zones, weights)
        sys.stdout.write(json.dumps({"assignment": assignment}) + "\n")
    return 0


def cmd_bench(args) -> int:
    rates = tuple(float(r) for r in args.rates.split(","))
    ns = tuple(int(n) for n in args.provisional_n.split(","))
    print(
        render_report(
            rates=rates,
            provisional_ns=ns,
            landing_cases=args.cases,
            bench_samples=args.samples,
        )
    )
    return 0


class _PipelineTCPHandler(socketserver.StreamRequestHandler):
    def handle(self):
        pipeline = self.server.pipeline_factory()  # type: ignore[attr-defined]
        for msg in pipeline.hello():
            self.wfile.write((json.dumps(msg) + "\n").encode("utf-8"))
        for raw in self.rfile:
            try:
                lines = pipeline.on_line(raw.decode("utf-8"))
            except (GazeError, ValueError, KeyError) as exc:
                lines = [json.dumps({"type": "error", "t": 0, "message": str(exc)})]
            for line in lines:
                self.wfile.write((line + "\n").encode("utf-8"))
            self.wfile.flush()


class PipelineTCPServer(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, addr, pipeline_factory):
        super().__init__(addr, _PipelineTCPHandler)
        self.pipeline_factory = pipeline_factory


def _pipeline_factory(args):
    geometry = _geometry(args)
    config = StreamConfig(rate_hz=args.rate, geometry=geometry)
    detector = _detector_params(args)
    dwell = DwellParams(
        n_arm=args.arm_n,
        n_commit_extra=args.commit_extra_n,
        n_commit_total=args.commit_total_n,
    )
    lens = LensParams(
        n_anchor=args.lens_anchor_n,
        theta_deg=args.lens_theta_deg,
        falloff=args.lens_falloff,
        ramp_deg=args.lens_ramp_deg,
    )

    def factory() -> GazePipeline:
        return GazePipeline(
            config=config,
            detector_params=detector,
            dwell_params=dwell,
            lens_params=lens,
            v_onset_deg_s=args.v_onset,
        )

    return factory


def cmd_serve(args) -> int:
    factory = _pipeline_factory(args)

    if args.stdio:
        pipeline = factory()
        for msg in pipeline.hello():
            sys.stdout.write(json.dumps(msg) + "\n")
        for raw in sys.stdin:
            for line in pipeline.on_line(raw):
                sys.stdout.write(line + "\n")
            sys.stdout.flush()
        return 0

    tcp = PipelineTCPServer((args.host, args.port), factory)
    servers = [tcp]
    threads = [threading.Thread(target=tcp.serve_forever, daemon=True)]
    print(f"wire protocol: tcp://{args.host}:{tcp.server_address[1]}")

    if args.http_port is not None:
        http = wsbridge.make_server(
            args.host, args.http_port, str(args.frontend), pipeline_factory=factory
        )
        servers.append(http)
        threads.append(threading.Thread(target=http.serve_forever, daemon=True))
        print(
            f"demo ui:       http://{args.host}:{http.server_address[1]}/ "
            f"(websocket bridge on {wsbridge.WS_PATH})"
        )

    for t in threads:
        t.start()
    try:
        for t in threads:
            t.join()
    except KeyboardInterrupt:
        for s in servers:
            s.shutdown()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gazekit",
        description="Gaze interaction engine: fixations, dwell selection, "
        "contingent lens, landing prediction, referent ranking.",
    )
    parser.add_argument("--version", action="version", version=f"gazekit {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("detect", help="detect fixations in a gaze trace")
    p.add_argument("trace", help=".gtr trace file, or - for stdin")
    _add_detector_flags(p)
    p.add_argument("--ndjson", action="store_true", help="emit NDJSON instead of TSV")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("replay", help="re-emit a trace at its recorded cadence")
    p.add_argument("trace", help=".gtr trace file, or - for stdin")
    p.add_argument(
        "--speed",
        default="1.0",
        help="speed factor; 'inf' or 'max' replays as fast as possible (default 1.0)",
    )
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("simulate", help="render a scenario spec into a gaze trace")
    p.add_argument("spec", help="NDJSON scenario spec, or - for stdin")
    p.add_argument("-o", "--output", help="output .gtr file (default stdout)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("resolve", help="rank interest zones against an utterance")
    p.add_argument("trace", help=".gtr trace with FIX (or GAZE) and ZONE records")
    p.add_argument("--zones", help="extra .gtr file contributing ZONE records")
    p.add_argument(
        "--utterance",
        required=True,
        metavar="START:END",
        help="utterance interval in ms, e.g. 1000:2600",
    )
    p.add_argument("--deictics", type=int, default=1, help="number of references (default 1)")
    p.add_argument("--w-pre", type=float, default=0.5, help="weight before the utterance (default 0.5)")
    p.add_argument("--w-during", type=float, default=1.0, help="weight during (default 1.0)")
    p.add_argument("--w-post", type=float, default=2.0, help="weight after (default 2.0)")
    p.add_argument("--pre-ms", type=float, default=1500.0, help="window before start, ms (default 1500)")
    p.add_argument("--post-ms", type=float, default=1500.0, help="window after end, ms (default 1500)")
    _add_detector_flags(p)
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("bench", help="latency, landing-error and backend report")
    p.add_argument("--rates", default="60,240", help="rates to tabulate (default 60,240)")
    p.add_argument(
        "--provisional-n", default="2,4,6,8", help="provisional counts (default 2,4,6,8)"
    )
    p.add_argument("--cases", type=int, default=200, help="saccades per landing suite (default 200)")
    p.add_argument(
        "--samples", type=int, default=200_000, help="samples for the backend bench (default 200000)"
    )
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("serve", help="run the live wire-protocol server")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8765, help="TCP NDJSON port (default 8765)")
    p.add_argument(
        "--http-port",
        type=int,
        default=8766,
        help="HTTP port for the demo UI and websocket bridge (default 8766)",
    )
    p.add_argument(
        "--frontend",
        default=str(FRONTEND_DIR),
        help="directory with the built demo UI (default: bundled frontend/)",
    )
    p.add_argument("--stdio", action="store_true", help="pipe mode: NDJSON on stdin/stdout")
    _add_detector_flags(p)
    p.add_argument("--arm-n", type=int, default=10, help="samples before the dwell warning (default 10 at 60 Hz)")
    p.add_argument(
        "--commit-extra-n",
        type=int,
        default=12,
        help="further samples between warning and activation (default 12 at 60 Hz)",
    )
    p.add_argument(
        "--commit-total-n",
        type=int,
        default=22,
        help="samples averaged for the activation point (default 22 at 60 Hz)",
    )
    p.add_argument("--lens-anchor-n", type=int, default=4, help="samples averaged for the lens anchor (default 4)")
    p.add_argument(
        "--lens-theta-deg",
        type=float,
        default=5.0,
        help="lens diameter in degrees of visual angle (default 5.0, the foveal field)",
    )
    p.add_argument("--lens-falloff", choices=("step", "smooth"), default="step")
    p.add_argument("--lens-ramp-deg", type=float, default=0.0, help="smooth-falloff ramp width, degrees")
    p.add_argument("--v-onset", type=float, default=100.0, help="saccade onset speed threshold, deg/s (default 100)")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_help()
        return 2
    try:
        return args.func(args)
    except BrokenPipeError:
        return 0
    except (GazeError, ValueError, KeyError, OSError) as exc:
        print(f"gazekit: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
