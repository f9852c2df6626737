"""Recover explicit coalition ballots from a strategy count matrix.

A matrix with all row and column sums equal to c is the candidate-by-position
graph of a c-regular bipartite multigraph, which splits into c edge-disjoint
perfect matchings; each matching is one complete ballot.
"""

from __future__ import annotations

import numpy as np

from .voting import Profile, StrategyPSM

__all__ = ["validate_psm", "recover_votes"]


def validate_psm(matrix, c: int) -> bool:
    """True iff ``matrix`` is square, non-negative integer, all line sums c."""
    arr = np.asarray(matrix)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        return False
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.all(arr == np.floor(arr)):
            return False
        arr = arr.astype(np.int64)
    if np.any(arr < 0):
        return False
    return bool(np.all(arr.sum(axis=0) == c) and np.all(arr.sum(axis=1) == c))


def _perfect_matching(residual: np.ndarray):
    """Candidate -> position assignment saturating both sides, or None.

    Deterministic: augmenting paths scan candidates and positions in ascending
    index order, so equal inputs give equal matchings.
    """
    m = residual.shape[0]
    pos_owner = np.full(m, -1, dtype=np.int64)

    def augment(cand: int, seen: np.ndarray) -> bool:
        for pos in range(m):
            if residual[cand, pos] > 0 and not seen[pos]:
                seen[pos] = True
                if pos_owner[pos] < 0 or augment(pos_owner[pos], seen):
                    pos_owner[pos] = cand
                    return True
        return False

    for cand in range(m):
        if not augment(cand, np.zeros(m, dtype=bool)):
            return None
    assignment = np.empty(m, dtype=np.int64)
    assignment[pos_owner] = np.arange(m, dtype=np.int64)
    return assignment


def recover_votes(strategy, c: int | None = None) -> Profile:
    """Decompose a valid count matrix into c explicit ballots.

    Accepts a StrategyPSM or any square matrix with equal row and column sums;
    returns a Profile whose count matrix reproduces the input exactly. Each
    extraction removes one perfect matching, leaving a (c-k)-regular residual.
    """
    if isinstance(strategy, StrategyPSM):
        matrix, c = strategy.entries, strategy.c
    else:
        matrix = np.asarray(strategy, dtype=np.int64)
        if c is None:
            if matrix.ndim != 2 or matrix.shape[0] == 0:
                raise ValueError("strategy matrix must be square and non-empty")
            c = int(matrix[0].sum())
    if not validate_psm(matrix, c):
        raise ValueError(f"not a valid strategy matrix for coalition size {c}")
    m = matrix.shape[0]
    residual = matrix.astype(np.int64).copy()
    votes = np.empty((c, m), dtype=np.int64)
    for step in range(c):
        assignment = _perfect_matching(residual)
        if assignment is None:
            raise ValueError("regular matrix failed to decompose")  # unreachable
        order = np.empty(m, dtype=np.int64)
        order[assignment] = np.arange(m, dtype=np.int64)
        votes[step] = order
        residual[np.arange(m), assignment] -= 1
    return Profile(votes)
