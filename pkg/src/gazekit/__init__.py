"""Real-time gaze interaction engine.

Turns raw gaze-sample streams into fixation, dwell-activation, lens-region,
landing-prediction, and referent-ranking events, with a recordable and
replayable trace format. See the CLI (``gazekit --help``) for the pipelines
wired on top.
"""

from gazekit.core import (
    DEFAULT_GEOMETRY,
    GazeSample,
    Rect,
    ScreenGeometry,
    StreamConfig,
    StreamOrderError,
    px_to_visual_angle,
    samples_to_ms,
    visual_angle_to_px,
)
from gazekit.fixation import (
    DetectorParams,
    FixEvent,
    FixEventKind,
    Fixation,
    FixationDetector,
    detect_batch,
)
from gazekit.dwell import DwellEvent, DwellEventKind, DwellMachine, DwellParams
from gazekit.lens import LensParams, LensRegion, LensTracker, classify, falloff_weight
from gazekit.saccade import LandingPrediction, LandingPredictor, estimate_speed
from gazekit.deictic import (
    ReferentScore,
    ResolverWeights,
    UtteranceInterval,
    assign_deictics,
    rank_referents,
)
from gazekit.trace import InterestZone, Segment, TraceRecord, parse_record, serialize_record
from gazekit.synth import Blink, Fixate, Saccade, ScenarioSpec, generate

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_GEOMETRY",
    "GazeSample",
    "Rect",
    "ScreenGeometry",
    "StreamConfig",
    "StreamOrderError",
    "px_to_visual_angle",
    "samples_to_ms",
    "visual_angle_to_px",
    "DetectorParams",
    "FixEvent",
    "FixEventKind",
    "Fixation",
    "FixationDetector",
    "detect_batch",
    "DwellEvent",
    "DwellEventKind",
    "DwellMachine",
    "DwellParams",
    "LensParams",
    "LensRegion",
    "LensTracker",
    "classify",
    "falloff_weight",
    "LandingPrediction",
    "LandingPredictor",
    "estimate_speed",
    "ReferentScore",
    "ResolverWeights",
    "UtteranceInterval",
    "assign_deictics",
    "rank_referents",
    "InterestZone",
    "Segment",
    "TraceRecord",
    "parse_record",
    "serialize_record",
    "Blink",
    "Fixate",
    "Saccade",
    "ScenarioSpec",
    "generate",
    "__version__",
]
