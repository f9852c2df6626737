"""Strategy search over sampled profiles.

The pipeline: summarize sampled profiles into score vectors, classify each
sample as impossible / guaranteed / contested for the target candidate, then
find the strategy matrix maximizing the number of samples the target wins.
The exact search is a mixed-integer program solved with HiGHS via
``scipy.optimize.milp``; ``brute_force_optimal`` is an independent exhaustive
oracle for small instances. Closed-form strategies and sample-size formulas
round out the module.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp

from .voting import Profile, ScoringRule, StrategyPSM

__all__ = [
    "SampleSet",
    "PruneResult",
    "SolveResult",
    "summarize",
    "prune",
    "solve_optimal",
    "brute_force_optimal",
    "strategy_objective",
    "balanced_strategy",
    "near_balanced_strategy",
    "borda3_strategy",
    "sample_complexity_general",
    "sample_complexity_kapproval",
]

BRUTE_FORCE_MAX_M = 4
BRUTE_FORCE_MAX_C = 4


@dataclass(frozen=True)
class SampleSet:
    """Score vectors of T sampled profiles, plus the rule that produced them."""

    score_vectors: np.ndarray
    rule: ScoringRule
    n: int

    def __post_init__(self):
        vectors = np.asarray(self.score_vectors, dtype=np.int64)
        if vectors.ndim != 2 or vectors.shape[1] != self.rule.m:
            raise ValueError("score vectors must have shape (T, m) matching the rule")
        if np.any(vectors < 0):
            raise ValueError("scores are non-negative")
        if vectors.size and np.any(vectors > self.n * int(self.rule.alpha[0])):
            raise ValueError("score exceeds n * alpha[0]; n is inconsistent")
        object.__setattr__(self, "score_vectors", vectors)

    @property
    def T(self) -> int:
        return self.score_vectors.shape[0]

    @property
    def m(self) -> int:
        return self.rule.m


@dataclass(frozen=True)
class PruneResult:
    """Partition of sample indices by what manipulation can still change."""

    impossible: np.ndarray
    guaranteed: np.ndarray
    contested: np.ndarray

    @property
    def counts(self) -> tuple[int, int, int]:
        return (self.impossible.size, self.guaranteed.size, self.contested.size)


@dataclass
class SolveResult:
    strategy: StrategyPSM
    objective: int
    win_probability: float
    manipulation_probability: float
    optimal: bool
    solve_time: float
    prune_result: PruneResult | None = None


def summarize(profiles, rule: ScoringRule) -> SampleSet:
    """Score each sampled profile; accepts Profiles or a (T, n, m) vote stack."""
    from ._backend import kernels

    if isinstance(profiles, np.ndarray):
        stack = profiles
    else:
        profiles = list(profiles)
        if not profiles:
            return SampleSet(np.empty((0, rule.m), dtype=np.int64), rule, 0)
        rows = [p.votes if isinstance(p, Profile) else np.asarray(p) for p in profiles]
        shapes = {r.shape for r in rows}
        if len(shapes) != 1:
            raise ValueError("profiles must share one (n, m) shape")
        stack = np.stack(rows)
    if stack.ndim != 3 or stack.shape[2] != rule.m:
        raise ValueError("expected votes of shape (T, n, m) matching the rule")
    if stack.shape[0] == 0:
        return SampleSet(np.empty((0, rule.m), dtype=np.int64), rule, 0)
    scores = kernels.positional_scores(stack, rule.alpha)
    return SampleSet(scores, rule, int(stack.shape[1]))


def prune(samples: SampleSet, c: int, d: int) -> PruneResult:
    """Classify samples: impossible (d cannot win even with the coalition),
    guaranteed (d wins whatever the coalition submits), contested (the rest).

    The rival maximum ranges over candidates other than d, so samples where d
    already leads come out guaranteed rather than misclassified.
    """
    if c < 1:
        raise ValueError("coalition size must be at least 1")
    _check_candidate(samples.m, d)
    alpha = samples.rule.alpha
    s = samples.score_vectors
    sd = s[:, d]
    rival_max = np.delete(s, d, axis=1).max(axis=1) if samples.m > 1 else np.zeros_like(sd)
    lift = sd + c * int(alpha[0])
    impossible = lift <= c * int(alpha[-1]) + rival_max
    guaranteed = lift > c * int(alpha[1]) + rival_max
    contested = ~impossible & ~guaranteed
    idx = np.arange(samples.T)
    return PruneResult(idx[impossible], idx[guaranteed], idx[contested])


def _check_candidate(m: int, d: int) -> None:
    if not 0 <= d < m:
        raise ValueError(f"candidate {d} out of range for m={m}")


def _win_limits(samples: SampleSet, c: int, d: int) -> np.ndarray:
    """limits[t, i] = largest coalition gain rival i may get while d still
    strictly wins sample t (row order: rivals ascending, d removed)."""
    s = samples.score_vectors
    lift = s[:, d] + c * int(samples.rule.alpha[0]) - 1
    return lift[:, None] - np.delete(s, d, axis=1)


def strategy_objective(samples: SampleSet, strategy: StrategyPSM) -> int:
    """Number of samples the target wins outright under ``strategy``."""
    if samples.m != strategy.m:
        raise ValueError("sample set and strategy dimension mismatch")
    gains = np.delete(strategy.gains(samples.rule), strategy.d)
    limits = _win_limits(samples, strategy.c, strategy.d)
    return int(np.all(gains[None, :] <= limits, axis=1).sum())


def _standing_wins(samples: SampleSet, d: int) -> int:
    """Samples the target wins before any coalition votes are added."""
    s = samples.score_vectors
    if samples.m == 1:
        return samples.T
    rival_max = np.delete(s, d, axis=1).max(axis=1)
    return int((s[:, d] > rival_max).sum())


def _rotation_psm(m: int, c: int, d: int, step: int = 1) -> StrategyPSM:
    """Ballots that put d first and rotate the rivals; always a valid strategy."""
    rivals = np.delete(np.arange(m, dtype=np.int64), d)
    votes = np.empty((c, m), dtype=np.int64)
    votes[:, 0] = d
    for ell in range(c):
        start = (ell * step) % (m - 1)
        votes[ell, 1:] = np.roll(rivals, -start)
    return StrategyPSM.from_votes(votes, c=c, d=d)


def _result(samples, strategy, c, d, optimal, elapsed, prune_result) -> SolveResult:
    objective = strategy_objective(samples, strategy)
    standing = _standing_wins(samples, d)
    T = samples.T
    return SolveResult(
        strategy=strategy,
        objective=objective,
        win_probability=objective / T,
        manipulation_probability=(objective - standing) / T,
        optimal=optimal,
        solve_time=elapsed,
        prune_result=prune_result,
    )


def solve_optimal(
    samples: SampleSet,
    c: int,
    d: int,
    budget: float | None = None,
    use_pruning: bool = True,
) -> SolveResult:
    """Strategy maximizing the number of samples the target wins outright.

    Wins are strict: with integer scores, "strictly greater" is a margin of at
    least 1, so ties count against the target. The reported objective is
    recounted from the returned strategy with integer arithmetic, and
    ``optimal`` is True only if the solver proved optimality within budget;
    otherwise the best incumbent found is returned (never worse than the
    balanced rotation fallback). ``use_pruning`` drops impossible/guaranteed
    samples from the program; it never changes the result, only its size.
    """
    if samples.T == 0:
        raise ValueError("cannot solve an empty sample set")
    if c < 1:
        raise ValueError("coalition size must be at least 1")
    _check_candidate(samples.m, d)
    start = time.perf_counter()
    classes = prune(samples, c, d)
    active = classes.contested if use_pruning else np.arange(samples.T)
    if active.size == 0:
        strategy = _rotation_psm(samples.m, c, d)
        return _result(samples, strategy, c, d, True, time.perf_counter() - start, classes)

    m = samples.m
    alpha = samples.rule.alpha
    limits = _win_limits(samples, c, d)[active]
    n_rivals = m - 1
    nx = n_rivals * n_rivals
    nt = active.size
    cap = c * int(alpha[1])  # most any rival can gain once d tops every ballot
    floor_gain = c * int(alpha[-1])
    total_gain = c * int(alpha[1:].sum())  # the coalition hands rivals exactly this

    # variable layout: X (row-major rivals x positions 1..m-1), then win flags
    cost = np.zeros(nx + nt)
    cost[nx:] = -1.0

    rows, cols, vals = [], [], []
    lb, ub = [], []
    row = 0
    for i in range(n_rivals):  # row sums of X
        for j in range(n_rivals):
            rows.append(row)
            cols.append(i * n_rivals + j)
            vals.append(1.0)
        lb.append(c)
        ub.append(c)
        row += 1
    for j in range(n_rivals):  # column sums of X
        for i in range(n_rivals):
            rows.append(row)
            cols.append(i * n_rivals + j)
            vals.append(1.0)
        lb.append(c)
        ub.append(c)
        row += 1
    sub_alpha = alpha[1:].astype(float)
    flag_upper = np.ones(nt)
    capped = np.minimum(limits, cap)
    # a sample cannot be won if some rival limit is below the forced minimum
    # gain, or if the rival limits cannot absorb the coalition's total points
    winnable = (limits >= floor_gain).all(axis=1) & (capped.sum(axis=1) >= total_gain)
    for t in range(nt):
        if not winnable[t]:
            flag_upper[t] = 0.0
            continue
        for i in range(n_rivals):
            lim = int(limits[t, i])
            if lim >= cap:
                continue  # gain can never exceed cap, constraint is vacuous
            # gain_i + (cap - lim) * won_t <= cap: winning caps rival i at lim
            for j in range(n_rivals):
                rows.append(row)
                cols.append(i * n_rivals + j)
                vals.append(sub_alpha[j])
            rows.append(row)
            cols.append(nx + t)
            vals.append(float(cap - lim))
            lb.append(-np.inf)
            ub.append(float(cap))
            row += 1

    matrix = sparse.csr_matrix((vals, (rows, cols)), shape=(row, nx + nt))
    constraints = LinearConstraint(matrix, np.asarray(lb), np.asarray(ub))
    bounds = Bounds(
        np.zeros(nx + nt), np.concatenate([np.full(nx, float(c)), flag_upper])
    )
    options = {}
    if budget is not None:
        options["time_limit"] = float(budget)
    res = milp(
        c=cost,
        constraints=constraints,
        integrality=np.ones(nx + nt),
        bounds=bounds,
        options=options,
    )
    fallback = _rotation_psm(m, c, d)
    if res.x is not None:
        sub = np.rint(res.x[:nx]).astype(np.int64).reshape(n_rivals, n_rivals)
        strategy = _embed_submatrix(sub, c, d, m)
        proved = res.status == 0
        if not proved and strategy_objective(samples, fallback) > strategy_objective(
            samples, strategy
        ):
            strategy = fallback
    else:
        strategy = fallback
        proved = False
    return _result(samples, strategy, c, d, proved, time.perf_counter() - start, classes)


def _embed_submatrix(sub: np.ndarray, c: int, d: int, m: int) -> StrategyPSM:
    entries = np.zeros((m, m), dtype=np.int64)
    entries[d, 0] = c
    rivals = np.delete(np.arange(m), d)
    entries[np.ix_(rivals, np.arange(1, m))] = sub
    return StrategyPSM(entries, c=c, d=d)


def iter_strategy_submatrices(size: int, c: int):
    """All size x size non-negative integer matrices with row/col sums c."""

    def compositions(total, parts, caps):
        if parts == 1:
            if total <= caps[0]:
                yield (total,)
            return
        for first in range(min(total, caps[0]) + 1):
            for rest in compositions(total - first, parts - 1, caps[1:]):
                yield (first,) + rest

    def rec(rows_left, caps, acc):
        if rows_left == 1:
            # remaining column capacities are forced to be the last row
            yield acc + [tuple(caps)]
            return
        for comp in compositions(c, len(caps), caps):
            yield from rec(rows_left - 1, [cap - x for cap, x in zip(caps, comp)], acc + [comp])

    for rows in rec(size, [c] * size, []):
        yield np.array(rows, dtype=np.int64)


def brute_force_optimal(samples: SampleSet, c: int, d: int) -> SolveResult:
    """Exhaustive search over every normalized strategy matrix.

    Exact by construction; guarded to m <= 4, c <= 4 where the enumeration
    stays tiny. Ties go to the first maximizer in enumeration order.
    """
    if samples.T == 0:
        raise ValueError("cannot solve an empty sample set")
    if samples.m > BRUTE_FORCE_MAX_M or c > BRUTE_FORCE_MAX_C:
        raise ValueError(
            f"brute force guarded to m <= {BRUTE_FORCE_MAX_M}, c <= {BRUTE_FORCE_MAX_C}"
        )
    if c < 1:
        raise ValueError("coalition size must be at least 1")
    _check_candidate(samples.m, d)
    start = time.perf_counter()
    limits = _win_limits(samples, c, d)
    sub_alpha = samples.rule.alpha[1:]
    best_sub, best_wins = None, -1
    for sub in iter_strategy_submatrices(samples.m - 1, c):
        gains = sub @ sub_alpha
        wins = int(np.all(gains[None, :] <= limits, axis=1).sum())
        if wins > best_wins:
            best_sub, best_wins = sub, wins
    strategy = _embed_submatrix(best_sub, c, d, samples.m)
    return _result(samples, strategy, c, d, True, time.perf_counter() - start, None)


def balanced_strategy(m: int, k: int, c: int, d: int) -> StrategyPSM:
    """Every coalition ballot tops with d; the c(k-1) remaining approved slots
    spread over the rivals so per-rival approval counts differ by at most 1.

    Below-the-fold positions are filled by continuing the rotation, which
    keeps every column sum at c without affecting k-approval scores.
    """
    if not 1 <= k < m:
        raise ValueError(f"need 1 <= k < m, got k={k}, m={m}")
    if c < 1:
        raise ValueError("coalition size must be at least 1")
    _check_candidate(m, d)
    return _rotation_psm(m, c, d, step=max(k - 1, 1))


def near_balanced_strategy(c: int, d: int) -> StrategyPSM:
    """Three-candidate Borda strategy: d always tops, and the two rivals'
    below-top points split (c/2 + 1, c/2 - 1), the lower index getting more."""
    if c % 2:
        raise ValueError("defined for even coalition sizes only")
    if c < 2:
        raise ValueError("coalition size must be at least 2")
    _check_candidate(3, d)
    lo, hi = [i for i in range(3) if i != d]
    entries = np.zeros((3, 3), dtype=np.int64)
    entries[d, 0] = c
    entries[lo, 1] = c // 2 + 1
    entries[lo, 2] = c // 2 - 1
    entries[hi, 1] = c // 2 - 1
    entries[hi, 2] = c // 2 + 1
    return StrategyPSM(entries, c=c, d=d)


def borda3_strategy(n: int, c: int, d: int) -> tuple[list[StrategyPSM], str]:
    """Candidate optimal strategies for three-candidate Borda, even coalitions.

    Under the parity conditions (n even with c+2 divisible by 4, or n odd with
    c divisible by 4) the balanced split is the optimum and is returned alone,
    tagged "balanced". Otherwise both the balanced and near-balanced splits
    are returned, tagged "ambiguous", for the caller to evaluate on samples.
    """
    if c % 2:
        raise ValueError("defined for even coalition sizes only")
    if n < 1:
        raise ValueError("need at least one sincere voter")
    balanced = balanced_strategy(3, 2, c, d)
    pinned = (n % 2 == 0 and (c + 2) % 4 == 0) or (n % 2 == 1 and c % 4 == 0)
    if pinned:
        return [balanced], "balanced"
    return [balanced, near_balanced_strategy(c, d)], "ambiguous"


def sample_complexity_general(c: int, m: int, eps: float, delta: float, C: float) -> int:
    """Samples sufficient for an eps-accurate win-probability estimate with
    confidence 1 - delta, scaled by the caller-supplied leading constant."""
    if eps <= 0 or delta <= 0:
        raise ValueError("eps and delta must be positive")
    if C <= 0:
        raise ValueError("the leading constant must be positive")
    if c < 1 or m < 2:
        raise ValueError("need c >= 1 and m >= 2")
    value = C * (c * m * math.log(c * m) + c * c + math.log(1.0 / delta)) / eps**2
    return math.ceil(value)


def sample_complexity_kapproval(c: int, k: int, m: int, eps: float, delta: float) -> int:
    """Specialized sample bound for k-approval (binomial term in log space)."""
    if eps <= 0 or delta <= 0:
        raise ValueError("eps and delta must be positive")
    if not 1 <= k < m:
        raise ValueError(f"need 1 <= k < m, got k={k}, m={m}")
    if c < 1:
        raise ValueError("need c >= 1")
    # log2 C(m + ck - 1, ck - 1) without forming the binomial
    log2_binom = (
        math.lgamma(m + c * k) - math.lgamma(c * k) - math.lgamma(m + 1)
    ) / math.log(2.0)
    value = 256.0 * (2.0 * log2_binom + math.log(4.0 / delta)) / eps**2
    return math.ceil(value)
