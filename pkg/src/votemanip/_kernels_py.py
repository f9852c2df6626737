"""Pure-NumPy implementations of the hot kernels.

`votemanip._kernels` (Cython) implements the same four functions with identical
semantics; `_backend` picks whichever is available. Both consume pre-drawn
uniforms so that, for a fixed seed, results are bit-identical across backends.
"""

import numpy as np

BACKEND = "pure"


def rim_decode(uniforms, cumweights):
    """Turn uniform draws into permutations via repeated insertion.

    ``uniforms`` has shape (N, m-1); row s drives sample s. Step t (1-based)
    inserts item t into the partial order of items 0..t-1: the insertion slot p
    is the first index with ``uniforms[s, t-1] * cumweights[t-1, t] <
    cumweights[t-1, p]``. Returns an (N, m) int64 array of orders over item
    indices 0..m-1 (item 0 seeds position 0).
    """
    uniforms = np.ascontiguousarray(uniforms, dtype=np.float64)
    n_samples, m_minus_1 = uniforms.shape
    m = m_minus_1 + 1
    out = np.zeros((n_samples, m), dtype=np.int64)
    if n_samples == 0 or m == 1:
        return out
    idx = np.arange(m, dtype=np.int64)
    for t in range(1, m):
        cum = cumweights[t - 1, : t + 1]
        x = uniforms[:, t - 1] * cum[t]
        pos = np.searchsorted(cum, x, side="right")
        head = idx[None, : t + 1]
        shifted = np.empty((n_samples, t + 1), dtype=np.int64)
        shifted[:, 1:] = out[:, :t]
        shifted[:, 0] = 0
        keep = out[:, : t + 1].copy()
        pcol = pos[:, None]
        out[:, : t + 1] = np.where(
            head == pcol, t, np.where(head < pcol, keep, shifted)
        )
    return out


def positional_scores(votes, alpha):
    """Per-profile candidate scores for a batch of profiles.

    ``votes`` has shape (P, n, m); ``votes[p, v, k]`` is the candidate ranked
    k-th by voter v of profile p. Returns (P, m) int64 totals under the score
    vector ``alpha``.
    """
    votes = np.asarray(votes, dtype=np.int64)
    alpha = np.asarray(alpha, dtype=np.int64)
    if votes.ndim != 3:
        raise ValueError("votes must have shape (profiles, voters, candidates)")
    ranks = np.argsort(votes, axis=2)
    return alpha[ranks].sum(axis=1, dtype=np.int64)


def psm_counts(votes):
    """Candidate-by-position count matrix of a vote stack of shape (n, m)."""
    votes = np.asarray(votes, dtype=np.int64)
    n, m = votes.shape
    out = np.zeros((m, m), dtype=np.int64)
    if n:
        positions = np.broadcast_to(np.arange(m, dtype=np.int64), (n, m))
        np.add.at(out, (votes.ravel(), positions.ravel()), 1)
    return out


def kendall_tau_block(orders, ref_ranks):
    """Kendall distances from each row of ``orders`` to a reference ranking.

    ``ref_ranks[c]`` is the reference position of candidate c (use
    ``voting.ranks_of``). Returns an (N,) int64 array of pairwise-inversion
    counts.
    """
    orders = np.asarray(orders, dtype=np.int64)
    ref_ranks = np.asarray(ref_ranks, dtype=np.int64)
    seq = ref_ranks[orders]
    m = orders.shape[1]
    iu, il = np.triu_indices(m, k=1)
    return (seq[:, iu] > seq[:, il]).sum(axis=1, dtype=np.int64)
