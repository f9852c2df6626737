"""Samplable belief models over sincere preference profiles.

Variants: impartial culture (IC), impartial anonymous culture (IAC), the
Mallows dispersion model and mixtures of it, empirical ballot pools, and a
point mass on a fixed profile. All samplers draw from an injected
``numpy.random.Generator``; equal seeds give equal outputs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .voting import Profile, as_ranking, ranks_of

__all__ = [
    "DistributionSpec",
    "ImpartialCulture",
    "ImpartialAnonymousCulture",
    "MallowsModel",
    "MallowsMixture",
    "EmpiricalPool",
    "PointMass",
    "kendall_tau",
    "mallows_normalizer",
    "mallows_pmf",
    "sample_ranking",
    "sample_profile",
    "sample_profiles",
    "load_ballots",
]

IAC_MAX_M = 8  # IAC needs the m! ranking table


class DistributionSpec:
    """Base marker for belief variants; use the concrete subclasses."""

    @property
    def m(self) -> int:  # pragma: no cover - overridden
        raise NotImplementedError


@dataclass(frozen=True)
class ImpartialCulture(DistributionSpec):
    """Every voter draws a ranking uniformly from all m! permutations."""

    num_candidates: int

    def __post_init__(self):
        if self.num_candidates < 2:
            raise ValueError("need at least 2 candidates")

    @property
    def m(self) -> int:
        return self.num_candidates


@dataclass(frozen=True)
class ImpartialAnonymousCulture(DistributionSpec):
    """Every anonymous voting situation (ranking count vector) equally likely."""

    num_candidates: int

    def __post_init__(self):
        if self.num_candidates < 2:
            raise ValueError("need at least 2 candidates")
        if self.num_candidates > IAC_MAX_M:
            raise ValueError(f"IAC sampling supports m <= {IAC_MAX_M}")

    @property
    def m(self) -> int:
        return self.num_candidates


@dataclass(frozen=True)
class MallowsModel(DistributionSpec):
    """Ranking distribution with P(r) proportional to phi**kendall_tau(r, sigma)."""

    sigma: np.ndarray
    phi: float

    def __post_init__(self):
        object.__setattr__(self, "sigma", as_ranking(self.sigma))
        if not 0.0 < self.phi <= 1.0:
            raise ValueError(f"phi must lie in (0, 1], got {self.phi}")

    @property
    def m(self) -> int:
        return self.sigma.size


@dataclass(frozen=True)
class MallowsMixture(DistributionSpec):
    """Convex combination of Mallows components over a common candidate set."""

    components: tuple
    weights: np.ndarray

    def __post_init__(self):
        components = tuple(self.components)
        if not components:
            raise ValueError("mixture needs at least one component")
        if any(not isinstance(comp, MallowsModel) for comp in components):
            raise ValueError("mixture components must be MallowsModel instances")
        if len({comp.m for comp in components}) != 1:
            raise ValueError("mixture components must share one candidate set")
        weights = np.asarray(self.weights, dtype=np.float64)
        if weights.shape != (len(components),):
            raise ValueError("need exactly one weight per component")
        if np.any(weights < 0) or abs(weights.sum() - 1.0) > 1e-9:
            raise ValueError("weights must be non-negative and sum to 1")
        object.__setattr__(self, "components", components)
        object.__setattr__(self, "weights", weights)

    @property
    def m(self) -> int:
        return self.components[0].m


@dataclass(frozen=True)
class EmpiricalPool(DistributionSpec):
    """A multiset of complete ballots sampled uniformly with replacement."""

    ballots: np.ndarray

    def __post_init__(self):
        pool = Profile(np.asarray(self.ballots)).votes
        if pool.shape[0] == 0:
            raise ValueError("empty pool")
        object.__setattr__(self, "ballots", pool)

    @property
    def m(self) -> int:
        return self.ballots.shape[1]

    @property
    def size(self) -> int:
        return self.ballots.shape[0]


@dataclass(frozen=True)
class PointMass(DistributionSpec):
    """Full-knowledge belief: probability one on a fixed profile."""

    profile: Profile

    def __post_init__(self):
        if not isinstance(self.profile, Profile):
            object.__setattr__(self, "profile", Profile(np.asarray(self.profile)))
        if self.profile.n == 0:
            raise ValueError("point mass needs a non-empty profile")

    @property
    def m(self) -> int:
        return self.profile.m


def kendall_tau(r1, r2) -> int:
    """Number of candidate pairs the two rankings order oppositely."""
    a = as_ranking(r1)
    b = as_ranking(r2, m=a.size)
    return int(kernels.kendall_tau_block(a[None, :], ranks_of(b))[0])


def mallows_normalizer(m: int, phi: float) -> float:
    """Sum of phi**kendall_tau(r, sigma) over all rankings r (any sigma)."""
    if m < 1:
        raise ValueError("m must be positive")
    if not 0.0 < phi <= 1.0:
        raise ValueError(f"phi must lie in (0, 1], got {phi}")
    if phi == 1.0:
        return float(math.factorial(m))
    z = 1.0
    for i in range(1, m + 1):
        z *= (1.0 - phi**i) / (1.0 - phi)
    return z


def mallows_pmf(r, model: MallowsModel) -> float:
    """Probability of ranking ``r`` under the dispersion model."""
    dist = kendall_tau(r, model.sigma)
    return model.phi**dist / mallows_normalizer(model.m, model.phi)


def _insertion_cumweights(m: int, phi: float) -> np.ndarray:
    """Cumulative insertion weights; row t-1 drives the step that places item t.

    Placing item t at slot p (0 = top) among t+1 slots weighs phi**(t - p), so
    low-dispersion models keep items near their reference position.
    """
    cum = np.zeros((max(m - 1, 1), m), dtype=np.float64)
    for t in range(1, m):
        w = phi ** np.arange(t, -1, -1, dtype=np.float64)
        cum[t - 1, : t + 1] = np.cumsum(w)
    return cum


def _mallows_block(model: MallowsModel, count: int, rng) -> np.ndarray:
    m = model.m
    uniforms = rng.random((count, max(m - 1, 0)))
    codes = kernels.rim_decode(uniforms, _insertion_cumweights(m, model.phi))
    return model.sigma[codes]


def _ic_block(m: int, count: int, rng) -> np.ndarray:
    base = np.broadcast_to(np.arange(m, dtype=np.int64), (count, m))
    return rng.permuted(base, axis=1)


def _mixture_block(spec: MallowsMixture, count: int, rng) -> np.ndarray:
    comp = rng.choice(len(spec.components), size=count, p=spec.weights)
    out = np.empty((count, spec.m), dtype=np.int64)
    for k, model in enumerate(spec.components):
        mask = comp == k
        hits = int(mask.sum())
        if hits:
            out[mask] = _mallows_block(model, hits, rng)
    return out


def _empirical_block(spec: EmpiricalPool, count: int, rng) -> np.ndarray:
    idx = rng.integers(0, spec.size, size=count)
    return spec.ballots[idx]


def _ranking_block(spec: DistributionSpec, count: int, rng) -> np.ndarray:
    if isinstance(spec, MallowsModel):
        return _mallows_block(spec, count, rng)
    if isinstance(spec, ImpartialCulture):
        return _ic_block(spec.m, count, rng)
    if isinstance(spec, MallowsMixture):
        return _mixture_block(spec, count, rng)
    if isinstance(spec, EmpiricalPool):
        return _empirical_block(spec, count, rng)
    raise ValueError(
        f"{type(spec).__name__} does not support ranking-level sampling"
    )


def sample_ranking(spec, rng) -> np.ndarray:
    """One ranking from an IC / Mallows / mixture / empirical belief.

    IAC and point-mass beliefs are profile-level only and raise ValueError.
    """
    return _ranking_block(spec, 1, rng)[0]


def _iac_situation(m: int, n: int, rng) -> np.ndarray:
    """Uniform count vector over all C(n + m! - 1, n) voting situations."""
    k = math.factorial(m)
    bars = np.sort(rng.choice(n + k - 1, size=k - 1, replace=False))
    aug = np.concatenate(([-1], bars, [n + k - 1]))
    return np.diff(aug) - 1


def _iac_profile(m: int, n: int, rng) -> np.ndarray:
    perms = np.array(list(itertools.permutations(range(m))), dtype=np.int64)
    counts = _iac_situation(m, n, rng)
    return np.repeat(perms, counts, axis=0)


def sample_profiles(spec: DistributionSpec, n: int, count: int, rng) -> np.ndarray:
    """``count`` independent profiles of ``n`` voters, stacked as (count, n, m)."""
    if n < 1:
        raise ValueError("profiles need at least one voter")
    if count < 1:
        raise ValueError("count must be positive")
    if isinstance(spec, PointMass):
        if n != spec.profile.n:
            raise ValueError(
                f"point mass holds {spec.profile.n} voters, cannot sample n={n}"
            )
        return np.broadcast_to(spec.profile.votes, (count, n, spec.m)).copy()
    if isinstance(spec, ImpartialAnonymousCulture):
        out = np.empty((count, n, spec.m), dtype=np.int64)
        for t in range(count):
            out[t] = _iac_profile(spec.m, n, rng)
        return out
    block = _ranking_block(spec, count * n, rng)
    return block.reshape(count, n, spec.m)


def sample_profile(spec: DistributionSpec, n: int, rng) -> Profile:
    """One profile of ``n`` sincere voters drawn from the belief."""
    return Profile(sample_profiles(spec, n, 1, rng)[0])


def load_ballots(path, policy: str = "drop", rng=None) -> EmpiricalPool:
    """Read a ballot file into an empirical pool of complete rankings.

    Format: a header line ``m=<int>``, then one record per line of the form
    ``COUNT: i1,i2,...,ik`` with 0-based candidate indices, most preferred
    first. ``#`` starts a comment. Truncated records (k < m) are handled per
    ``policy``: ``"drop"`` discards them, ``"uniform"`` completes the missing
    tail in a uniformly random order (requires ``rng``).
    """
    if policy not in ("drop", "uniform"):
        raise ValueError(f"unknown truncation policy {policy!r}")
    if policy == "uniform" and rng is None:
        raise ValueError("uniform completion needs an rng")
    m = None
    rows = []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if m is None:
                if not line.startswith("m="):
                    raise ValueError(f"line {lineno}: expected header 'm=<int>'")
                try:
                    m = int(line[2:])
                except ValueError:
                    raise ValueError(f"line {lineno}: bad candidate count {line!r}") from None
                if m < 2:
                    raise ValueError(f"line {lineno}: need at least 2 candidates")
                continue
            if ":" not in line:
                raise ValueError(f"line {lineno}: expected 'COUNT: i1,i2,...'")
            head, tail = line.split(":", 1)
            try:
                count = int(head)
                prefix = [int(tok) for tok in tail.split(",") if tok.strip() != ""]
            except ValueError:
                raise ValueError(f"line {lineno}: malformed record {line!r}") from None
            if count < 1:
                raise ValueError(f"line {lineno}: count must be positive")
            if not prefix:
                raise ValueError(f"line {lineno}: empty ballot")
            if len(set(prefix)) != len(prefix):
                raise ValueError(f"line {lineno}: repeated candidate in ballot")
            if any(not 0 <= cand < m for cand in prefix):
                raise ValueError(f"line {lineno}: candidate out of range 0..{m - 1}")
            if len(prefix) > m:
                raise ValueError(f"line {lineno}: ballot longer than m={m}")
            if len(prefix) == m:
                rows.extend([prefix] * count)
            elif policy == "uniform":
                missing = np.setdiff1d(np.arange(m, dtype=np.int64), prefix)
                for _ in range(count):
                    tail_order = rng.permutation(missing)
                    rows.append(prefix + tail_order.tolist())
            # policy == "drop": truncated record contributes nothing
    if m is None:
        raise ValueError("empty pool: no header found")
    if not rows:
        raise ValueError("empty pool: no complete ballots")
    return EmpiricalPool(np.asarray(rows, dtype=np.int64))
