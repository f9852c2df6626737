import numpy as np
import pytest

from votemanip import Profile, ScoringRule, StrategyPSM, enumerate_profiles


def make_rng(seed):
    return np.random.default_rng(seed)


def random_regular_matrix(m, c, rng):
    """Sum of c random permutation matrices: always row/col sums c."""
    out = np.zeros((m, m), dtype=np.int64)
    for _ in range(c):
        perm = rng.permutation(m)
        out[np.arange(m), perm] += 1
    return out


def random_strategy(m, c, d, rng):
    """Random normalized strategy: c ballots topping d, rivals shuffled below."""
    rivals = np.delete(np.arange(m, dtype=np.int64), d)
    votes = np.empty((c, m), dtype=np.int64)
    votes[:, 0] = d
    for row in range(c):
        votes[row, 1:] = rng.permutation(rivals)
    return StrategyPSM.from_votes(votes, c=c, d=d)


def random_rule(m, rng, max_score=8):
    while True:
        alpha = np.sort(rng.integers(0, max_score, size=m))[::-1]
        if alpha[0] > alpha[-1]:
            return ScoringRule(alpha)


@pytest.fixture(scope="session")
def all_profiles_3_3():
    return enumerate_profiles(3, 3)


@pytest.fixture
def rng():
    return make_rng(20240817)


def write_ballot_file(path, records, m):
    lines = [f"m={m}"]
    lines += [f"{count}: " + ",".join(str(c) for c in ballot) for count, ballot in records]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
