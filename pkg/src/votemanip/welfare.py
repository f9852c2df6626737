"""Welfare impact of a manipulation: pointwise regret, Monte Carlo expected
regret, analytic bounds, and a worst-case instance generator.

Regret is the social welfare of the sincere winner minus that of the
manipulated winner, both measured on the sincere profile. Social welfare
defaults to the rule's own positional score but is pluggable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .distributions import DistributionSpec, sample_profiles
from .voting import Profile, ScoringRule, StrategyPSM, score_profile, winner

__all__ = [
    "RegretReport",
    "regret",
    "expected_regret",
    "bound_general",
    "bound_kapproval",
    "worst_case_instance",
    "worst_case_strategy",
    "worst_case_regret",
]


@dataclass(frozen=True)
class RegretReport:
    """Monte Carlo regret summary for one strategy under one belief."""

    expected_regret: float
    normalized_expected_regret: float
    bound_general: float
    bound_kapproval: float | None
    p_flip_to_d: float
    p_flip_to_other: float
    trials: int

    @property
    def event_probs(self) -> tuple[float, float]:
        return (self.p_flip_to_d, self.p_flip_to_other)


def regret(sincere: Profile, strategy: StrategyPSM, rule: ScoringRule, welfare=None) -> float:
    """Welfare lost by the sincere voters when the coalition votes are added.

    ``welfare(candidate, profile) -> value`` overrides the default positional
    score; the winner determination always uses the rule itself.
    """
    scores = score_profile(sincere, rule)
    before = winner(scores, strategy.d)
    after = winner(scores + strategy.gains(rule), strategy.d)
    if welfare is None:
        return float(scores[before] - scores[after])
    return float(welfare(before, sincere) - welfare(after, sincere))


def _winners_with_bias(scores: np.ndarray, d: int) -> np.ndarray:
    """Vectorized winner() over rows: ties against d, then lowest index."""
    m = scores.shape[1]
    priority = np.concatenate([np.delete(np.arange(m), d), [d]])
    is_max = scores == scores.max(axis=1, keepdims=True)
    return priority[is_max[:, priority].argmax(axis=1)]


def expected_regret(
    spec: DistributionSpec,
    n: int,
    strategy: StrategyPSM,
    rule: ScoringRule,
    trials: int,
    rng,
) -> RegretReport:
    """Monte Carlo expected and normalized regret over fresh sampled profiles.

    Profiles are never pruned here: a manipulation can cost welfare even when
    the target cannot win. Flip frequencies (sincere winner displaced by the
    target / by some other candidate) are recorded and the analytic bounds are
    evaluated at those frequencies.
    """
    if trials < 1:
        raise ValueError("need at least one evaluation trial")
    if rule.m != strategy.m:
        raise ValueError("rule and strategy dimension mismatch")
    d = strategy.d
    gains = strategy.gains(rule)
    regret_sum = 0.0
    norm_sum = 0.0
    flips_to_d = 0
    flips_to_other = 0
    chunk = max(1, min(trials, 2_000_000 // max(n * rule.m, 1)))
    remaining = trials
    while remaining:
        batch = min(chunk, remaining)
        votes = sample_profiles(spec, n, batch, rng)
        scores = kernels.positional_scores(votes, rule.alpha)
        before = _winners_with_bias(scores, d)
        after = _winners_with_bias(scores + gains[None, :], d)
        rows = np.arange(batch)
        sw_before = scores[rows, before]
        sw_after = scores[rows, after]
        losses = sw_before - sw_after
        regret_sum += float(losses.sum())
        norm_sum += float((losses / sw_before).sum())
        flips_to_d += int(((before != d) & (after == d)).sum())
        flips_to_other += int(((after != before) & (after != d)).sum())
        remaining -= batch
    p_d = flips_to_d / trials
    p_other = flips_to_other / trials
    k = rule.approval_k()
    return RegretReport(
        expected_regret=regret_sum / trials,
        normalized_expected_regret=norm_sum / trials,
        bound_general=bound_general(rule, strategy.c, p_d, p_other),
        bound_kapproval=(
            bound_kapproval(strategy.c, k, rule.m, p_d, p_other) if k else None
        ),
        p_flip_to_d=p_d,
        p_flip_to_other=p_other,
        trials=trials,
    )


def bound_general(rule: ScoringRule, c: int, p_flip_to_d: float, p_flip_to_other: float) -> float:
    """Expected-regret ceiling for any rule, from flip frequencies alone."""
    for p in (p_flip_to_d, p_flip_to_other):
        if not 0.0 <= p <= 1.0:
            raise ValueError("flip probabilities must lie in [0, 1]")
    alpha = rule.alpha
    spread_top = int(alpha[0] - alpha[-1])
    spread_second = int(alpha[1] - alpha[-1])
    return c * (spread_top * p_flip_to_d + spread_second * p_flip_to_other)


def bound_kapproval(c: int, k: int, m: int, p_flip_to_d: float, p_flip_to_other: float) -> float:
    """Expected-regret ceiling for the balanced k-approval strategy under IC."""
    for p in (p_flip_to_d, p_flip_to_other):
        if not 0.0 <= p <= 1.0:
            raise ValueError("flip probabilities must lie in [0, 1]")
    if not 1 <= k < m:
        raise ValueError(f"need 1 <= k < m, got k={k}, m={m}")
    return (math.ceil(c * k / m) - 1) * (p_flip_to_d + p_flip_to_other)


def worst_case_instance(
    n: int, c: int, m: int, delta: int, xi: int, alpha_top: int
) -> tuple[Profile, ScoringRule, int]:
    """Instance on which manipulation regret approaches its ceiling.

    The sincere profile has c votes topping candidate 0 with everyone else
    balanced below, and the remaining n-c votes split half (0 first, d second)
    and half (d first, 0 second); the rule scores ``alpha_top`` for the top
    slot, delta+xi for the second, delta below. The d-first-0-last coalition
    (see ``worst_case_strategy``) flips the winner from 0 to d at a welfare
    cost of ``worst_case_regret``; shrinking delta and xi relative to
    alpha_top pushes the cost toward c times the rule's total points.
    """
    if m < 3:
        raise ValueError("construction needs at least 3 candidates")
    if c < 1 or c % (m - 1):
        raise ValueError("coalition size must be a positive multiple of m - 1")
    if n < c or (n - c) % 2:
        raise ValueError("need n - c non-negative and even")
    if delta < 1 or xi < 1:
        raise ValueError("delta and xi must be positive integers")
    if alpha_top < delta + xi:
        raise ValueError("alpha_top must be at least delta + xi")
    alpha = np.full(m, delta, dtype=np.int64)
    alpha[0] = alpha_top
    alpha[1] = delta + xi
    rule = ScoringRule(alpha)
    d = m - 1
    rest = np.arange(1, m, dtype=np.int64)  # every candidate but 0, d last
    votes = np.empty((n, m), dtype=np.int64)
    for b in range(c):
        votes[b, 0] = 0
        votes[b, 1:] = np.roll(rest, -(b % (m - 1)))
    middles = np.arange(1, m - 1, dtype=np.int64)
    half = (n - c) // 2
    votes[c : c + half] = np.concatenate(([0, d], middles))
    votes[c + half : n] = np.concatenate(([d, 0], middles))
    return Profile(votes), rule, d


def worst_case_strategy(m: int, c: int) -> StrategyPSM:
    """Coalition for the worst-case instance: d first, candidate 0 last."""
    order = np.concatenate(([m - 1], np.arange(1, m - 1), [0])).astype(np.int64)
    votes = np.broadcast_to(order, (c, m))
    return StrategyPSM.from_votes(np.array(votes), c=c, d=m - 1)


def worst_case_regret(m: int, c: int, delta: int, xi: int, alpha_top: int) -> int:
    """Exact regret of the worst-case pair: c*(alpha_top - delta) - c*xi/(m-1)."""
    if c % (m - 1):
        raise ValueError("coalition size must be a multiple of m - 1")
    return c * (alpha_top - delta) - (c // (m - 1)) * xi
