"""Responsiveness vectors and the weighted maximization identity."""

import random
from fractions import Fraction as F

import pytest

from robustvote import (
    Distribution,
    RandomVotingRule,
    VotingRule,
    WeightVector,
    dictatorship_rule,
    majority_rule,
    responsiveness,
    rtf_max_weighted,
    supermajority_rule,
)
from robustvote.respond import (
    SIGN_CLASS_FREE,
    SIGN_CLASS_NONNEGATIVE,
    SIGN_CLASS_POSITIVE,
    ResponsivenessVector,
    agreement_counts,
    mean_responsiveness_by_count,
)

from conftest import random_distribution


class TestResponsiveness:
    def test_majority_uniform(self):
        vector = responsiveness(majority_rule(3), Distribution.uniform(3))
        assert vector.values == (F(3, 4), F(3, 4), F(3, 4))
        assert vector.minimum() == F(3, 4)

    def test_dictator_is_always_one(self):
        rng = random.Random(3)
        rule = dictatorship_rule(3, 2)
        for _ in range(10):
            dist = random_distribution(rng, 3)
            vector = responsiveness(rule, dist)
            assert vector.for_individual(2) == 1

    def test_degenerate_distribution_gives_indicators(self):
        rule = majority_rule(3)
        vector = responsiveness(rule, Distribution.degenerate(3, 0b011))
        # Outcome at ++- is +1, so the two +1 voters agree and the third does not.
        assert vector.values == (F(1), F(1), F(0))

    def test_random_rule_expected_agreement(self):
        rule = RandomVotingRule(3, tuple(map(F, ("-1", "-1/2", "-1/2", "0", "-1/2", "0", "0", "1"))))
        dist = Distribution.from_weights(3, {0b011: F(1, 2), 0b100: F(1, 2)})
        vector = responsiveness(rule, dist)
        assert vector.values == (F(5, 8), F(5, 8), F(3, 8))

    def test_arity_mismatch(self):
        with pytest.raises(ValueError):
            responsiveness(majority_rule(3), Distribution.uniform(2))

    def test_vector_json(self):
        vector = ResponsivenessVector((F(1, 2), F(3, 4)))
        assert vector.to_json() == ["1/2", "3/4"]


class TestAgreementCounts:
    def test_majority_n3(self):
        # With k supporters the winners are the larger camp.
        assert agreement_counts(majority_rule(3)) == (3, 2, 2, 3)

    def test_rejects_non_anonymous(self):
        with pytest.raises(ValueError):
            agreement_counts(dictatorship_rule(3, 1))

    def test_mean_matches_direct_average(self):
        rule = supermajority_rule(3, 2)
        probs = [F(1, 8), F(1, 4), F(1, 4), F(3, 8)]
        mean = mean_responsiveness_by_count(rule, probs)
        from robustvote import count_distribution

        dist = count_distribution(3, probs)
        vector = responsiveness(rule, dist)
        assert mean == sum(vector.values, F(0)) / 3

    def test_two_thirds_under_skewed_counts(self):
        probs = [F(0)] * 5 + [F(1, 4), F(0), F(0), F(0), F(3, 4)]
        assert mean_responsiveness_by_count(supermajority_rule(9, 6), probs) == F(31, 36)


class TestWeightVector:
    def test_sign_class_enforced(self):
        with pytest.raises(ValueError):
            WeightVector((F(-1), F(1)), SIGN_CLASS_NONNEGATIVE)
        with pytest.raises(ValueError):
            WeightVector((F(0), F(1)), SIGN_CLASS_POSITIVE)
        WeightVector((F(-1), F(1)), SIGN_CLASS_FREE)

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError):
            WeightVector((F(0), F(0)), SIGN_CLASS_FREE)

    def test_json(self):
        vector = WeightVector((F(1), F(2)), SIGN_CLASS_NONNEGATIVE)
        data = vector.to_json()
        assert data["weights"] == ["1/1", "2/1"]
        assert data["sign_class"] == "nonnegative"


class TestRtfMaxWeighted:
    def test_equal_weights_uniform(self):
        value, argmax = rtf_max_weighted(
            WeightVector((F(1), F(1), F(1)), SIGN_CLASS_POSITIVE), Distribution.uniform(3)
        )
        assert value == F(9, 4)
        assert argmax == majority_rule(3, tie=1)

    def test_mixed_signs(self):
        weights = WeightVector((F(2), F(-1), F(0)), SIGN_CLASS_FREE)
        dist = Distribution.from_weights(3, {0b011: F(1, 2), 0b100: F(1, 2)})
        value, argmax = rtf_max_weighted(weights, dist)
        assert value == F(1)
        assert argmax.to_table_string() == "-+-+-+-+"

    def test_identity_against_brute_force(self, rng):
        from robustvote import enumerate_rules

        for _ in range(25):
            n = rng.randint(1, 3)
            weights = tuple(F(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n))
            if all(w == 0 for w in weights):
                weights = tuple(list(weights[:-1]) + [F(1)])
            dist = random_distribution(rng, n)
            value, argmax = rtf_max_weighted(weights, dist)
            best = max(
                sum(
                    (w * r for w, r in zip(weights, responsiveness(rule, dist).values)),
                    F(0),
                )
                for rule in enumerate_rules(n)
            )
            assert value == best
            attained = sum(
                (w * r for w, r in zip(weights, responsiveness(argmax, dist).values)),
                F(0),
            )
            assert attained == value

    def test_weight_arity_checked(self):
        with pytest.raises(ValueError):
            rtf_max_weighted((F(1), F(1)), Distribution.uniform(3))
