"""Weighted-majority representation detection in every sign and tie variant."""

from fractions import Fraction as F

import pytest

from robustvote import (
    Distribution,
    VotingRule,
    WmrQuery,
    classify_rule,
    detect_wmr,
    dictatorship_rule,
    enumerate_rules,
    majority_rule,
    parity_rule,
    responsiveness,
    weights_represent,
)
from robustvote.respond import (
    SIGN_CLASS_FREE,
    SIGN_CLASS_NONNEGATIVE,
    SIGN_CLASS_POSITIVE,
)
from robustvote.wmr import TIES_ALLOWED, TIES_FORBIDDEN

from oracles import wmr_exists_by_elimination

ALL_VARIANTS = [
    (sign_class, ties)
    for sign_class in (SIGN_CLASS_FREE, SIGN_CLASS_NONNEGATIVE, SIGN_CLASS_POSITIVE)
    for ties in (TIES_ALLOWED, TIES_FORBIDDEN)
]


class TestWeightsRepresent:
    def test_majority(self):
        rule = majority_rule(3)
        assert weights_represent(rule, [F(1), F(1), F(1)], TIES_FORBIDDEN)
        assert not weights_represent(rule, [F(1), F(0), F(0)], TIES_ALLOWED)

    def test_tie_profile_splits_the_modes(self):
        rule = majority_rule(2, tie=-1)
        assert weights_represent(rule, [F(1), F(1)], TIES_ALLOWED)
        assert not weights_represent(rule, [F(1), F(1)], TIES_FORBIDDEN)

    def test_all_zero_never_represents(self):
        assert not weights_represent(majority_rule(3), [F(0)] * 3, TIES_ALLOWED)

    def test_arity_and_mode_checked(self):
        with pytest.raises(ValueError):
            weights_represent(majority_rule(3), [F(1)], TIES_ALLOWED)
        with pytest.raises(ValueError):
            weights_represent(majority_rule(3), [F(1)] * 3, "sometimes")


class TestDetectWmr:
    def test_status_quo_majority(self):
        rule = majority_rule(2, tie=-1)
        found = detect_wmr(rule, WmrQuery(SIGN_CLASS_NONNEGATIVE, TIES_ALLOWED))
        assert found is not None and found.weights == (F(1), F(1))
        assert detect_wmr(rule, WmrQuery(SIGN_CLASS_NONNEGATIVE, TIES_FORBIDDEN)) is None

    def test_parity_has_no_representation(self):
        rule = parity_rule(2)
        for sign_class, ties in ALL_VARIANTS:
            assert detect_wmr(rule, WmrQuery(sign_class, ties)) is None

    def test_inverse_dictator_needs_free_signs(self):
        # Outcome is the opposite of individual 1's vote.
        rule = VotingRule(2, tuple(-v for v in dictatorship_rule(2, 1).outcomes))
        free = detect_wmr(rule, WmrQuery(SIGN_CLASS_FREE, TIES_FORBIDDEN))
        assert free is not None and free.weights[0] < 0
        assert detect_wmr(rule, WmrQuery(SIGN_CLASS_NONNEGATIVE, TIES_ALLOWED)) is None

    def test_returned_weights_are_integer_direction(self):
        found = detect_wmr(majority_rule(3), WmrQuery(SIGN_CLASS_POSITIVE, TIES_FORBIDDEN))
        assert found is not None
        assert all(w.denominator == 1 for w in found.weights)
        assert weights_represent(majority_rule(3), found.weights, TIES_FORBIDDEN)

    def test_query_validation(self):
        with pytest.raises(ValueError):
            WmrQuery("negative", TIES_ALLOWED)
        with pytest.raises(ValueError):
            WmrQuery(SIGN_CLASS_FREE, "maybe")


class TestExhaustiveAgreement:
    def test_all_rules_n3_match_elimination(self):
        for rule in enumerate_rules(3):
            for sign_class, ties in ALL_VARIANTS:
                found = detect_wmr(rule, WmrQuery(sign_class, ties))
                expected = wmr_exists_by_elimination(
                    rule,
                    {"nonnegative": "nonnegative", "positive": "positive", "free": "free"}[sign_class],
                    ties,
                )
                assert (found is not None) == expected, (
                    f"{rule.to_table_string()} {sign_class}/{ties}"
                )
                if found is not None:
                    assert weights_represent(rule, found.weights, ties)

    def test_nonneg_strict_lifts_to_positive(self):
        # A no-ties representation with nonnegative weights can always be
        # nudged into strictly positive weights.
        for rule in enumerate_rules(3):
            nonneg = detect_wmr(rule, WmrQuery(SIGN_CLASS_NONNEGATIVE, TIES_FORBIDDEN))
            if nonneg is None:
                continue
            positive = detect_wmr(rule, WmrQuery(SIGN_CLASS_POSITIVE, TIES_FORBIDDEN))
            assert positive is not None, rule.to_table_string()

    def test_nonneg_ties_allowed_matches_mean_responsiveness(self):
        # A nonnegative ties-allowed representation exists exactly when the
        # recovered weights hold the weighted mean responsiveness at or
        # above one half on every point mass.
        half = F(1, 2)
        for rule in enumerate_rules(2):
            found = detect_wmr(rule, WmrQuery(SIGN_CLASS_NONNEGATIVE, TIES_ALLOWED))
            if found is None:
                continue
            total = sum(found.weights, F(0))
            for idx in range(4):
                vector = responsiveness(rule, Distribution.degenerate(2, idx))
                weighted = sum(
                    (w * r for w, r in zip(found.weights, vector.values)), F(0)
                )
                assert weighted / total >= half


class TestClassifyRule:
    def test_majority_summary(self):
        report = classify_rule(majority_rule(3))
        assert report["n"] == 3
        assert report["table"] == "---+-+++"
        assert report["anonymous"] is True
        assert report["dictator"] is None
        assert report["monotone"] is True
        assert report["robust"] is True
        assert report["weakly_robust"] is True
        assert report["wmr"]["nonnegative_forbidden"] is not None
        assert "monotone_violation" not in report

    def test_parity_summary(self):
        report = classify_rule(parity_rule(2))
        assert report["robust"] is False
        assert report["monotone"] is False
        assert set(report["wmr"]) == {
            f"{s}_{t}"
            for s in ("free", "nonnegative", "positive")
            for t in ("allowed", "forbidden")
        }
        assert all(entry is None for entry in report["wmr"].values())
        violation = report["monotone_violation"]
        assert set(violation) == {"individual", "others_votes"}

    def test_implication_ladder(self):
        for rule in enumerate_rules(2):
            report = classify_rule(rule)
            if report["robust"]:
                assert report["weakly_robust"]
            if report["weakly_robust"]:
                assert report["wmr"]["nonnegative_allowed"] is not None
