"""Rank on-screen referents for a spoken command by gaze evidence.

Speakers tend to glance at the object of a command while planning it, may
look during the utterance, and almost always check it right after finishing.
Scores therefore accumulate fixation time inside each zone across three
windows around the utterance (before / during / after), weighted with the
after-window highest by default. A fixation belongs to a zone when its
centroid lies inside the zone's rectangle.

This is one concrete scoring family for the alignment problem, not a claim
about the only possible filter; windows and weights are tunable.
"""

from __future__ import annotations

from dataclasses import dataclass

from gazekit.fixation import Fixation
from gazekit.trace import InterestZone


@dataclass(frozen=True)
class UtteranceInterval:
    start_ms: float
    end_ms: float
    deictic_count: int = 1

    def __post_init__(self) -> None:
        if self.end_ms < self.start_ms:
            raise ValueError("utterance end before start")
        if self.deictic_count < 1:
            raise ValueError("deictic_count must be >= 1")


@dataclass(frozen=True)
class ResolverWeights:
    w_pre: float = 0.5
    w_during: float = 1.0
    w_post: float = 2.0
    pre_window_ms: float = 1500.0
    post_window_ms: float = 1500.0

    def __post_init__(self) -> None:
        if min(self.w_pre, self.w_during, self.w_post) < 0:
            raise ValueError("weights must be non-negative")
        if self.w_pre + self.w_during + self.w_post <= 0:
            raise ValueError("at least one weight must be positive")
        if self.pre_window_ms < 0 or self.post_window_ms < 0:
            raise ValueError("window extents must be >= 0")


@dataclass(frozen=True)
class ReferentScore:
    zone_id: str
    score: float
    pre_ms: float
    during_ms: float
    post_ms: float


def _overlap(a0: float, a1: float, b0: float, b1: float) -> float:
    return max(0.0, min(a1, b1) - max(a0, b0))


def rank_referents(
    utterance: UtteranceInterval,
    fixations: list[Fixation],
    zones: list[InterestZone],
    weights: ResolverWeights = ResolverWeights(),
) -> list[ReferentScore]:
    """Zones ordered by descending weighted fixation-overlap score.

    Ties break toward the zone fixated more recently (later end of its last
    contributing fixation), then lexicographically by zone id.
    """
    if not zones:
        raise ValueError("zones must be non-empty")
    ids = [z.zone_id for z in zones]
    if len(set(ids)) != len(ids):
        raise ValueError("zone ids must be unique")

    pre0 = utterance.start_ms - weights.pre_window_ms
    post1 = utterance.end_ms + weights.post_window_ms

    scores: list[ReferentScore] = []
    recency: dict[str, float] = {}
    for zone in zones:
        pre = during = post = 0.0
        last = float("-inf")
        for fix in fixations:
            if not zone.rect_px.contains(fix.centroid_x_px, fix.centroid_y_px):
                continue
            p = _overlap(fix.start_ms, fix.end_ms, pre0, utterance.start_ms)
            d = _overlap(fix.start_ms, fix.end_ms, utterance.start_ms, utterance.end_ms)
            q = _overlap(fix.start_ms, fix.end_ms, utterance.end_ms, post1)
            if p + d + q > 0:
                last = max(last, fix.end_ms)
            pre += p
            during += d
            post += q
        scores.append(
            ReferentScore(
                zone_id=zone.zone_id,
                score=weights.w_pre * pre
                + weights.w_during * during
                + weights.w_post * post,
                pre_ms=pre,
                during_ms=during,
                post_ms=post,
            )
        )
        recency[zone.zone_id] = last

    scores.sort(key=lambda s: (-s.score, -recency[s.zone_id], s.zone_id))
    return scores


def assign_deictics(
    utterance: UtteranceInterval,
    fixations: list[Fixation],
    zones: list[InterestZone],
    weights: ResolverWeights = ResolverWeights(),
) -> list[str]:
    """Helper policy for utterances with several underspecified references:
    the k-th reference goes to the k-th distinct positively-scored zone in
    chronological fixation order (first look first). Returns up to
    ``deictic_count`` zone ids; fewer when the evidence names fewer zones.
    """
    ranked = rank_referents(utterance, fixations, zones, weights)
    positive = {s.zone_id for s in ranked if s.score > 0}
    seen: list[str] = []
    for fix in sorted(fixations, key=lambda f: f.start_ms):
        for zone in zones:
            if (
                zone.zone_id in positive
                and zone.zone_id not in seen
                and zone.rect_px.contains(fix.centroid_x_px, fix.centroid_y_px)
            ):
                seen.append(zone.zone_id)
                break
        if len(seen) >= utterance.deictic_count:
            break
    return seen[: utterance.deictic_count]
