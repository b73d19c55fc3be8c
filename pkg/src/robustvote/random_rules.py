"""Robustness of random voting rules.

A random rule maps each profile to an expected outcome in [-1, 1].  It is
robust when every profile distribution leaves at least one individual with
responsiveness strictly above one half.  The characterization: some
nonnegative weight vector must give the weighted vote sum the same strict
sign as the expected outcome at every single profile.  A zero expected
outcome anywhere is therefore immediately fatal, since the point mass on
that profile pins every responsiveness to exactly one half.
"""

from __future__ import annotations

from fractions import Fraction

from .core import Distribution, RandomVotingRule, VotingRule, enumerate_rules
from .lp import (
    REL_EQ,
    REL_GT,
    SIGN_NONNEG,
    LinearRow,
    LinearSystem,
    alternative_strict,
    solve_feasibility,
)
from .respond import SIGN_CLASS_NONNEGATIVE, WeightVector, responsiveness
from .wmr import _smallest_integer_direction

MAX_DOMINATION_N = 4


def _signed_agreement_matrix(rule: RandomVotingRule) -> list[list[Fraction]]:
    # Row i, column x: expected outcome at x times i's vote in x.
    n = rule.n
    return [
        [
            rule.outcomes[idx] * (1 if idx >> i & 1 else -1)
            for idx in range(2**n)
        ]
        for i in range(n)
    ]


def sign_pattern_holds(
    rule: RandomVotingRule, weights: tuple[Fraction, ...]
) -> bool:
    for idx, outcome in enumerate(rule.outcomes):
        total = Fraction(0)
        for i in range(rule.n):
            total += weights[i] if idx >> i & 1 else -weights[i]
        if outcome * total <= 0:
            return False
    return True


def certify_random(
    rule: RandomVotingRule,
) -> tuple[WeightVector | None, Distribution | None]:
    """Decide robustness of a random rule, one solve, both payloads.

    Exactly one side of the pair is present: weights whose vote sum
    strictly sign-matches the expected outcome everywhere, or a
    distribution holding every individual at or below one half.
    """
    n = rule.n
    for idx, outcome in enumerate(rule.outcomes):
        if outcome == 0:
            # The point mass here is a definitional counterexample.
            return None, Distribution.degenerate(n, idx)
    answer = alternative_strict(_signed_agreement_matrix(rule))
    if answer.weights is not None:
        cleared = _smallest_integer_direction(answer.weights)
        assert sign_pattern_holds(rule, cleared), (
            "recovered weights fail the per-profile sign agreement"
        )
        return WeightVector(cleared, SIGN_CLASS_NONNEGATIVE), None
    counterexample = Distribution(n, answer.mixture)
    r = responsiveness(rule, counterexample)
    assert all(v <= Fraction(1, 2) for v in r.values), (
        "counterexample distribution leaves an individual above one half"
    )
    return None, counterexample


def is_robust_random(rule: RandomVotingRule) -> WeightVector | None:
    """Weights whose vote sum strictly sign-matches the expected outcome
    at every profile, or none when the rule is not robust."""
    return certify_random(rule)[0]


def robust_random_counterexample(rule: RandomVotingRule) -> Distribution | None:
    """A distribution under which no individual clears one half, or none
    when the rule is robust."""
    return certify_random(rule)[1]


def find_dominating_deterministic(
    rule: RandomVotingRule,
) -> tuple[VotingRule, Distribution] | None:
    """First deterministic rule, in truth-table order, that beats the
    random rule for every individual under some distribution.

    The distribution is found per candidate by linear feasibility over the
    probability simplex with a strict improvement row per individual.
    """
    n = rule.n
    if n > MAX_DOMINATION_N:
        raise ValueError(
            f"deterministic domination search is capped at n={MAX_DOMINATION_N}"
        )
    size = 2**n
    simplex_row = LinearRow((Fraction(1),) * size, REL_EQ, Fraction(1))
    for candidate in enumerate_rules(n):
        rows = [simplex_row]
        for i in range(n):
            coeffs = tuple(
                (Fraction(candidate.outcomes[idx]) - rule.outcomes[idx])
                * (1 if idx >> i & 1 else -1)
                for idx in range(size)
            )
            rows.append(LinearRow(coeffs, REL_GT, Fraction(0)))
        result = solve_feasibility(
            LinearSystem(size, tuple(rows), (SIGN_NONNEG,) * size)
        )
        if result.feasible:
            dist = Distribution(n, result.witness)
            base = responsiveness(rule, dist).values
            better = responsiveness(candidate, dist).values
            assert all(b > a for a, b in zip(base, better)), (
                "domination witness fails the strict inequalities"
            )
            return candidate, dist
    return None


def anonymous_even_impossibility(n: int) -> Distribution:
    """The uniform distribution over profiles with an even split.

    Under it every anonymous random rule gives every individual
    responsiveness exactly one half, so none is robust.
    """
    if n % 2 != 0:
        raise ValueError("the even-split distribution needs an even n")
    half = n // 2
    balanced = [idx for idx in range(2**n) if bin(idx).count("1") == half]
    share = Fraction(1, len(balanced))
    probs = [Fraction(0)] * 2**n
    for idx in balanced:
        probs[idx] = share
    return Distribution(n, tuple(probs))
