import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from votemanip import (
    Profile,
    ScoringRule,
    StrategyPSM,
    enumerate_profiles,
    psm_of_votes,
    score_profile,
    total_scores,
    winner,
)

BORDA3 = ScoringRule.borda(3)


class TestScoreProfile:
    def test_single_plurality_vote(self):
        profile = Profile(np.array([[0, 1, 2]]))
        rule = ScoringRule.plurality(3)
        assert score_profile(profile, rule).tolist() == [1, 0, 0]

    def test_two_votes_summed(self):
        profile = Profile(np.array([[0, 1, 2], [1, 0, 2]]))
        assert score_profile(profile, BORDA3).tolist() == [3, 3, 0]

    def test_all_rankings_symmetric(self):
        profile = Profile(enumerate_profiles(3, 1)[:, 0, :])
        assert score_profile(profile, BORDA3).tolist() == [6, 6, 6]

    def test_dimension_mismatch(self):
        profile = Profile(np.array([[0, 1, 2]]))
        with pytest.raises(ValueError):
            score_profile(profile, ScoringRule.borda(4))

    def test_empty_profile_rejected(self):
        profile = Profile(np.empty((0, 3), dtype=np.int64))
        with pytest.raises(ValueError):
            score_profile(profile, BORDA3)


class TestPsmOfVotes:
    def test_identical_votes(self):
        votes = np.array([[0, 1, 2], [0, 1, 2]])
        expected = [[2, 0, 0], [0, 2, 0], [0, 0, 2]]
        assert psm_of_votes(votes).tolist() == expected

    def test_empty_votes(self):
        assert psm_of_votes(np.empty((0, 3), dtype=np.int64)).tolist() == [
            [0, 0, 0],
            [0, 0, 0],
            [0, 0, 0],
        ]

    def test_mixed_votes(self):
        votes = np.array([[0, 1, 2], [1, 2, 0]])
        expected = [[1, 0, 1], [1, 1, 0], [0, 1, 1]]
        assert psm_of_votes(votes).tolist() == expected


class TestTotalScores:
    def test_zero_matrix_is_identity(self):
        zero = np.zeros((3, 3), dtype=np.int64)
        assert total_scores([3, 1, 2], zero, BORDA3).tolist() == [3, 1, 2]

    def test_single_vote(self):
        strategy = StrategyPSM.from_votes(np.array([[2, 0, 1]]), c=1, d=2)
        assert total_scores([0, 0, 0], strategy, BORDA3).tolist() == [1, 0, 2]

    def test_two_reversed_votes(self):
        strategy = StrategyPSM.from_votes(np.array([[2, 1, 0]] * 2), c=2, d=2)
        assert total_scores([3, 1, 2], strategy, BORDA3).tolist() == [3, 3, 6]

    def test_additivity(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            x1 = np.zeros((3, 3), dtype=np.int64)
            x2 = np.zeros((3, 3), dtype=np.int64)
            for x in (x1, x2):
                for _ in range(2):
                    x[np.arange(3), rng.permutation(3)] += 1
            s = rng.integers(0, 10, size=3)
            via_sum = total_scores(s, x1 + x2, BORDA3)
            chained = total_scores(total_scores(s, x1, BORDA3), x2, BORDA3)
            assert np.array_equal(via_sum, chained)


class TestWinner:
    def test_unique_max(self):
        assert winner([3, 1, 2], d=2) == 0

    def test_tie_breaks_against_target(self):
        assert winner([4, 4, 0], d=1) == 0

    def test_tie_between_rivals_goes_to_lowest_index(self):
        assert winner([4, 4, 0], d=2) == 0

    def test_target_wins_only_unique_max(self):
        assert winner([0, 1, 5], d=2) == 2

    @given(
        st.lists(st.integers(min_value=0, max_value=20), min_size=2, max_size=6),
        st.data(),
    )
    def test_never_returns_dominated_target(self, scores, data):
        d = data.draw(st.integers(min_value=0, max_value=len(scores) - 1))
        w = winner(scores, d)
        if w == d:
            assert all(scores[i] < scores[d] for i in range(len(scores)) if i != d)


class TestInvariants:
    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 5), st.integers(1, 6), st.integers(0, 10_000))
    def test_scores_sum_to_n_times_total(self, m, n, seed):
        rng = np.random.default_rng(seed)
        votes = np.stack([rng.permutation(m) for _ in range(n)])
        alpha = np.sort(rng.integers(0, 9, size=m))[::-1]
        if alpha[0] == alpha[-1]:
            alpha[0] += 1
        rule = ScoringRule(alpha)
        scores = score_profile(Profile(votes), rule)
        assert scores.sum() == n * rule.total_points

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 5), st.integers(1, 6), st.integers(0, 10_000))
    def test_psm_times_alpha_matches_scores(self, m, n, seed):
        rng = np.random.default_rng(seed)
        votes = np.stack([rng.permutation(m) for _ in range(n)])
        rule = ScoringRule.borda(m)
        profile = Profile(votes)
        assert np.array_equal(psm_of_votes(profile) @ rule.alpha, score_profile(profile, rule))


class TestValidation:
    def test_rule_must_be_non_increasing(self):
        with pytest.raises(ValueError):
            ScoringRule(np.array([1, 2, 0]))

    def test_rule_must_be_non_negative(self):
        with pytest.raises(ValueError):
            ScoringRule(np.array([2, 1, -1]))

    def test_rule_must_not_be_constant(self):
        with pytest.raises(ValueError):
            ScoringRule(np.array([1, 1, 1]))

    def test_rule_rejects_fractional(self):
        with pytest.raises(ValueError):
            ScoringRule(np.array([1.5, 1.0, 0.0]))

    def test_approval_detection(self):
        assert ScoringRule.kapproval(5, 2).approval_k() == 2
        assert ScoringRule.plurality(4).approval_k() == 1
        assert ScoringRule.borda(4).approval_k() is None

    def test_profile_rejects_non_permutations(self):
        with pytest.raises(ValueError):
            Profile(np.array([[0, 0, 2]]))

    def test_strategy_psm_validation(self):
        good = np.array([[0, 2, 0], [0, 0, 2], [2, 0, 0]])
        StrategyPSM(good, c=2, d=2)
        with pytest.raises(ValueError):
            StrategyPSM(good, c=2, d=1)  # wrong target row
        bad = good.copy()
        bad[0, 1] = 1
        with pytest.raises(ValueError):
            StrategyPSM(bad, c=2, d=2)  # broken line sums


class TestEnumerateProfiles:
    def test_shape_and_uniqueness(self):
        profiles = enumerate_profiles(3, 3)
        assert profiles.shape == (216, 3, 3)
        flat = {tuple(p.ravel()) for p in profiles}
        assert len(flat) == 216

    def test_refuses_blowup(self):
        with pytest.raises(ValueError):
            enumerate_profiles(5, 12)
