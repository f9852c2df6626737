"""Core election primitives: rankings, profiles, positional scoring, winners.

Candidates are dense 0-based indices. A ranking is an order array whose k-th
entry is the candidate placed at position k (position 0 = most preferred).
All score arithmetic is integer; scoring vectors must be supplied pre-scaled
to integers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ._backend import kernels

__all__ = [
    "Profile",
    "ScoringRule",
    "StrategyPSM",
    "as_ranking",
    "ranks_of",
    "score_profile",
    "psm_of_votes",
    "total_scores",
    "winner",
    "enumerate_profiles",
]


def as_ranking(order, m: int | None = None) -> np.ndarray:
    """Validate a candidate ordering and return it as an int64 array.

    Raises ValueError unless ``order`` is a permutation of 0..m-1.
    """
    arr = np.asarray(order, dtype=np.int64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("a ranking must be a non-empty 1-d sequence")
    if m is not None and arr.size != m:
        raise ValueError(f"expected a ranking over {m} candidates, got {arr.size}")
    if not np.array_equal(np.sort(arr), np.arange(arr.size)):
        raise ValueError(f"not a permutation of 0..{arr.size - 1}: {arr.tolist()}")
    return arr


def ranks_of(order) -> np.ndarray:
    """Inverse of an order array: ``ranks_of(order)[c]`` is candidate c's position."""
    order = np.asarray(order, dtype=np.int64)
    ranks = np.empty_like(order)
    ranks[order] = np.arange(order.size, dtype=np.int64)
    return ranks


@dataclass(frozen=True)
class Profile:
    """A stack of complete rankings over a common candidate set.

    ``votes`` has shape (n, m); row v is voter v's order array. Empty profiles
    (n = 0) are permitted so count matrices of empty vote lists are defined.
    """

    votes: np.ndarray

    def __post_init__(self):
        votes = np.asarray(self.votes, dtype=np.int64)
        if votes.ndim != 2:
            raise ValueError("votes must be a 2-d array of shape (n, m)")
        m = votes.shape[1]
        if m == 0:
            raise ValueError("profiles need at least one candidate")
        expected = np.arange(m, dtype=np.int64)
        if votes.shape[0] and not np.array_equal(
            np.sort(votes, axis=1), np.broadcast_to(expected, votes.shape)
        ):
            raise ValueError("every vote must be a permutation of 0..m-1")
        object.__setattr__(self, "votes", votes)

    @classmethod
    def from_rankings(cls, rankings) -> "Profile":
        rows = [as_ranking(r) for r in rankings]
        if not rows:
            raise ValueError("cannot infer the candidate count from no rankings")
        return cls(np.stack(rows))

    @property
    def n(self) -> int:
        return self.votes.shape[0]

    @property
    def m(self) -> int:
        return self.votes.shape[1]

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True)
class ScoringRule:
    """A positional scoring vector: non-increasing, non-negative integers.

    Degenerate (constant) vectors are rejected: alpha[0] must exceed alpha[-1].
    """

    alpha: np.ndarray

    def __post_init__(self):
        alpha = np.asarray(self.alpha)
        if alpha.ndim != 1 or alpha.size < 2:
            raise ValueError("alpha must be a 1-d vector over at least 2 positions")
        if not np.issubdtype(alpha.dtype, np.integer):
            if not np.all(alpha == np.floor(alpha)):
                raise ValueError("alpha must have integer entries (pre-scale rationals)")
        alpha = alpha.astype(np.int64)
        if np.any(alpha < 0):
            raise ValueError("alpha entries must be non-negative")
        if np.any(np.diff(alpha) > 0):
            raise ValueError("alpha must be non-increasing")
        if alpha[0] == alpha[-1]:
            raise ValueError("degenerate rule: alpha[0] must exceed alpha[-1]")
        object.__setattr__(self, "alpha", alpha)

    @property
    def m(self) -> int:
        return self.alpha.size

    @property
    def total_points(self) -> int:
        """Points one ballot hands out in total (sum of alpha)."""
        return int(self.alpha.sum())

    @classmethod
    def plurality(cls, m: int) -> "ScoringRule":
        alpha = np.zeros(m, dtype=np.int64)
        alpha[0] = 1
        return cls(alpha)

    @classmethod
    def kapproval(cls, m: int, k: int) -> "ScoringRule":
        if not 1 <= k < m:
            raise ValueError(f"k-approval needs 1 <= k < m, got k={k}, m={m}")
        alpha = np.zeros(m, dtype=np.int64)
        alpha[:k] = 1
        return cls(alpha)

    @classmethod
    def borda(cls, m: int) -> "ScoringRule":
        return cls(np.arange(m - 1, -1, -1, dtype=np.int64))

    def approval_k(self) -> int | None:
        """k if this rule is k-approval (a 0/1 step vector), else None."""
        alpha = self.alpha
        k = int((alpha == 1).sum())
        if k and np.array_equal(alpha, np.concatenate([np.ones(k), np.zeros(self.m - k)])):
            return k
        return None


@dataclass(frozen=True)
class StrategyPSM:
    """A coalition strategy as a candidate-by-position count matrix.

    All row and column sums equal the coalition size c, every coalition ballot
    puts the desired candidate d on top (entries[d, 0] == c), and no other
    candidate ever takes position 0.
    """

    entries: np.ndarray
    c: int
    d: int

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=np.int64)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError("strategy matrix must be square")
        m = entries.shape[0]
        if not 0 <= self.d < m:
            raise ValueError(f"desired candidate {self.d} out of range for m={m}")
        if self.c < 0:
            raise ValueError("coalition size must be non-negative")
        if np.any(entries < 0):
            raise ValueError("strategy matrix entries must be non-negative")
        if np.any(entries.sum(axis=0) != self.c) or np.any(entries.sum(axis=1) != self.c):
            raise ValueError(f"all row and column sums must equal c={self.c}")
        if entries[self.d, 0] != self.c or np.any(entries[self.d, 1:]):
            raise ValueError("the desired candidate must hold position 0 on every ballot")
        object.__setattr__(self, "entries", entries)

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_votes(cls, votes, c: int, d: int) -> "StrategyPSM":
        profile = votes if isinstance(votes, Profile) else Profile(np.asarray(votes))
        if profile.n != c:
            raise ValueError(f"expected {c} coalition ballots, got {profile.n}")
        return cls(psm_of_votes(profile), c=c, d=d)

    def gains(self, rule: ScoringRule) -> np.ndarray:
        """Score each candidate receives from the coalition (entries @ alpha)."""
        if rule.m != self.m:
            raise ValueError("rule and strategy dimension mismatch")
        return self.entries @ rule.alpha


def score_profile(profile: Profile, rule: ScoringRule) -> np.ndarray:
    """Total positional score of every candidate under ``rule``."""
    if profile.n == 0:
        raise ValueError("cannot score an empty profile")
    if profile.m != rule.m:
        raise ValueError(f"profile has m={profile.m} but rule has m={rule.m}")
    return kernels.positional_scores(profile.votes[None, :, :], rule.alpha)[0]


def psm_of_votes(votes) -> np.ndarray:
    """Count matrix: entry (i, j) is how many votes rank candidate i at position j.

    Accepts a Profile or a raw (n, m) array; an empty stack yields all zeros.
    """
    arr = votes.votes if isinstance(votes, Profile) else np.asarray(votes, dtype=np.int64)
    if arr.ndim != 2:
        raise ValueError("votes must have shape (n, m)")
    return kernels.psm_counts(arr)


def total_scores(scores, strategy, rule: ScoringRule) -> np.ndarray:
    """Sincere scores plus what the coalition matrix adds: scores + X @ alpha."""
    scores = np.asarray(scores, dtype=np.int64)
    matrix = strategy.entries if isinstance(strategy, StrategyPSM) else np.asarray(strategy, dtype=np.int64)
    if scores.shape != (rule.m,) or matrix.shape != (rule.m, rule.m):
        raise ValueError("scores, strategy and rule dimensions disagree")
    return scores + matrix @ rule.alpha


def winner(scores, d: int) -> int:
    """Highest-score candidate with ties resolved against the target d.

    A tie involving d goes to the lowest-indexed tied rival; ties among
    non-d candidates also go to the lowest index.
    """
    scores = np.asarray(scores)
    if scores.ndim != 1 or scores.size == 0:
        raise ValueError("scores must be a non-empty vector")
    tied = np.flatnonzero(scores == scores.max())
    if tied.size == 1:
        return int(tied[0])
    rivals = tied[tied != d]
    return int(rivals[0]) if rivals.size else int(d)


def enumerate_profiles(m: int, n: int) -> np.ndarray:
    """All (m!)^n ordered profiles as an array of shape (m!**n, n, m).

    Intended for exact small-universe computations; refuses blow-ups.
    """
    perms = np.array(list(itertools.permutations(range(m))), dtype=np.int64)
    count = perms.shape[0] ** n
    if count * n * m > 50_000_000:
        raise ValueError(f"{count} profiles of shape ({n}, {m}) is too large to enumerate")
    out = np.empty((count, n, m), dtype=np.int64)
    for idx, combo in enumerate(itertools.product(perms, repeat=n)):
        out[idx] = combo
    return out
