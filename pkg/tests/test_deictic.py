import numpy as np
import pytest

from gazekit.core import Rect
from gazekit.deictic import (
    ResolverWeights,
    UtteranceInterval,
    assign_deictics,
    rank_referents,
)
from gazekit.fixation import Fixation
from gazekit.trace import InterestZone
from oracles import per_ms_referent_scores


def fix(start, end, x, y):
    return Fixation(start, end, x, y, n_samples=max(1, int((end - start) / 16)), dispersion_px=5.0)


ZONES = [
    InterestZone("a", Rect(0, 0, 100, 100)),
    InterestZone("b", Rect(200, 0, 100, 100)),
    InterestZone("c", Rect(400, 0, 100, 100)),
]


def test_sole_candidate_post_overlap():
    utt = UtteranceInterval(1000, 2000)
    fixes = [fix(2100, 2600, 50, 50)]
    scores = rank_referents(utt, fixes, ZONES)
    assert scores[0].zone_id == "a"
    assert (scores[0].pre_ms, scores[0].during_ms, scores[0].post_ms) == (0, 0, 500)
    assert scores[0].score == 2.0 * 500


def test_three_window_clipping():
    utt = UtteranceInterval(1000, 2000)
    fixes = [fix(900, 2500, 50, 50)]
    (top, *_) = rank_referents(utt, fixes, ZONES)
    assert (top.pre_ms, top.during_ms, top.post_ms) == (100, 1000, 500)
    assert top.score == 0.5 * 100 + 1.0 * 1000 + 2.0 * 500


def test_matches_per_ms_oracle():
    rng = np.random.default_rng(31)
    for _ in range(200):
        n_zones = int(rng.integers(1, 6))
        zones = [
            InterestZone(f"z{i}", Rect(i * 150.0, 0.0, 100.0, 100.0))
            for i in range(n_zones)
        ]
        utt = UtteranceInterval(
            int(rng.integers(1000, 3000)), int(rng.integers(3000, 5000))
        )
        fixes = []
        for _ in range(int(rng.integers(0, 21))):
            start = int(rng.integers(0, 7000))
            fixes.append(
                fix(
                    start,
                    start + int(rng.integers(20, 900)),
                    float(rng.uniform(-50, 900)),
                    float(rng.uniform(0, 150)),
                )
            )
        fixes.sort(key=lambda f: f.start_ms)
        weights = ResolverWeights(
            w_pre=float(rng.uniform(0, 2)),
            w_during=float(rng.uniform(0, 2)),
            w_post=float(rng.uniform(0.1, 3)),
            pre_window_ms=float(rng.integers(0, 2001)),
            post_window_ms=float(rng.integers(0, 2001)),
        )
        got = rank_referents(utt, fixes, zones, weights)
        expected = per_ms_referent_scores(utt, fixes, zones, weights)
        for s in got:
            exp_score, exp_breakdown = expected[s.zone_id]
            assert s.score == pytest.approx(exp_score, abs=1e-6)
            assert (s.pre_ms, s.during_ms, s.post_ms) == pytest.approx(
                exp_breakdown, abs=1e-9
            )
        # descending by score
        assert all(x.score >= y.score for x, y in zip(got, got[1:]))


def test_ranking_invariant_under_weight_scaling():
    rng = np.random.default_rng(7)
    utt = UtteranceInterval(1000, 2000)
    fixes = [
        fix(800, 1300, 50, 50),
        fix(1400, 1900, 250, 50),
        fix(2100, 2400, 450, 50),
        fix(2500, 2700, 50, 60),
    ]
    base = ResolverWeights()
    order0 = [s.zone_id for s in rank_referents(utt, fixes, ZONES, base)]
    for c in (0.001, 0.5, 3.0, 1e6):
        scaled = ResolverWeights(
            w_pre=base.w_pre * c, w_during=base.w_during * c, w_post=base.w_post * c
        )
        assert [s.zone_id for s in rank_referents(utt, fixes, ZONES, scaled)] == order0


def test_fixations_outside_windows_ignored():
    utt = UtteranceInterval(10_000, 11_000)
    weights = ResolverWeights()
    far = [fix(0, 800, 50, 50), fix(20_000, 21_000, 250, 50)]
    scores = rank_referents(utt, far, ZONES, weights)
    assert all(s.score == 0 for s in scores)


def test_zero_score_ranks_below_positive():
    utt = UtteranceInterval(1000, 2000)
    fixes = [fix(1100, 1500, 250, 50)]  # only zone b touched
    scores = rank_referents(utt, fixes, ZONES)
    assert scores[0].zone_id == "b" and scores[0].score > 0
    assert {s.zone_id for s in scores[1:]} == {"a", "c"}
    assert all(s.score == 0 for s in scores[1:])


def test_recency_breaks_ties():
    utt = UtteranceInterval(1000, 2000)
    # equal 300 ms during-overlap for a and b; b fixated later
    fixes = [fix(1000, 1300, 50, 50), fix(1500, 1800, 250, 50)]
    scores = rank_referents(utt, fixes, ZONES)
    assert [s.zone_id for s in scores[:2]] == ["b", "a"]


def test_weight_validation():
    with pytest.raises(ValueError):
        ResolverWeights(w_pre=0, w_during=0, w_post=0)
    with pytest.raises(ValueError):
        ResolverWeights(w_pre=-1)
    with pytest.raises(ValueError):
        rank_referents(UtteranceInterval(0, 1), [], [], ResolverWeights())
    with pytest.raises(ValueError):
        rank_referents(
            UtteranceInterval(0, 1),
            [],
            [InterestZone("x", Rect(0, 0, 1, 1)), InterestZone("x", Rect(2, 0, 1, 1))],
        )


def test_default_weights_prefer_post():
    w = ResolverWeights()
    assert w.w_post > w.w_during > w.w_pre


def test_assign_deictics_chronological():
    # "move that there": look at the object, then at the target position
    utt = UtteranceInterval(1000, 2000, deictic_count=2)
    fixes = [fix(900, 1400, 250, 50), fix(1600, 2100, 450, 50)]
    assert assign_deictics(utt, fixes, ZONES) == ["b", "c"]


def test_assign_deictics_caps_at_available_zones():
    utt = UtteranceInterval(1000, 2000, deictic_count=3)
    fixes = [fix(1100, 1600, 50, 50)]
    assert assign_deictics(utt, fixes, ZONES) == ["a"]


def test_utterance_validation():
    with pytest.raises(ValueError):
        UtteranceInterval(100, 50)
    with pytest.raises(ValueError):
        UtteranceInterval(0, 1, deictic_count=0)
