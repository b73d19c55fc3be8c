"""Pareto comparisons and efficiency of rules under a fixed distribution.

Every random rule within expectation distance of a deterministic rule phi
can be written through per-profile deviations t_x = 1 - phi(x) * other(x),
each in [0, 2].  Responsiveness changes are linear in t, so each efficiency
notion is a feasibility question about the deviation vector: can anyone be
helped without hurting someone (and how strongly).  The deviation witness
converts back to an explicit dominating random rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Distribution,
    RandomVotingRule,
    VotingRule,
    format_rational,
    inverse_rule,
)
from .lp import (
    REL_GE,
    REL_GT,
    SIGN_NONNEG,
    LinearRow,
    LinearSystem,
    solve_feasibility,
)
from .respond import responsiveness

REL_EQUAL = "equal"
REL_STRICTLY_PREFERRED = "strictly_preferred"
REL_PREFERRED = "preferred"
REL_WEAKLY_PREFERRED = "weakly_preferred"
REL_INCOMPARABLE = "incomparable"

DIR_FIRST = "first_over_second"
DIR_SECOND = "second_over_first"
DIR_NONE = "none"

EFFICIENCY_MODES = ("strict", "plain", "weak")


class NoTransportError(ValueError):
    """The two rules agree almost everywhere, so no mass can be moved."""


@dataclass(frozen=True)
class ParetoVerdict:
    """Componentwise comparison of two responsiveness vectors.

    deltas are first minus second.  relation is the strongest applicable
    label; weakly_preferred is subsumed by equal, preferred, and
    strictly_preferred and is never emitted.
    """

    relation: str
    direction: str
    deltas: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {
            "relation": self.relation,
            "direction": self.direction,
            "deltas": [format_rational(d) for d in self.deltas],
        }


def pareto_compare(
    first: VotingRule | RandomVotingRule,
    second: VotingRule | RandomVotingRule,
    dist: Distribution,
) -> ParetoVerdict:
    """Classify which rule serves every individual at least as well."""
    if first.n != second.n or first.n != dist.n:
        raise ValueError("rules and distribution must share the same n")
    ra = responsiveness(first, dist)
    rb = responsiveness(second, dist)
    deltas = tuple(a - b for a, b in zip(ra.values, rb.values))
    has_pos = any(d > 0 for d in deltas)
    has_neg = any(d < 0 for d in deltas)
    if not has_pos and not has_neg:
        return ParetoVerdict(REL_EQUAL, DIR_NONE, deltas)
    if has_pos and has_neg:
        return ParetoVerdict(REL_INCOMPARABLE, DIR_NONE, deltas)
    if has_pos:
        relation = REL_STRICTLY_PREFERRED if all(d > 0 for d in deltas) else REL_PREFERRED
        return ParetoVerdict(relation, DIR_FIRST, deltas)
    relation = REL_STRICTLY_PREFERRED if all(d < 0 for d in deltas) else REL_PREFERRED
    return ParetoVerdict(relation, DIR_SECOND, deltas)


def _deviation_matrix(rule: VotingRule, dist: Distribution) -> list[list[Fraction]]:
    # Row i, column x: how deviating at x moves E[outcome * x_i], per unit
    # of t_x and up to sign (the move is -entry * t_x).
    n = rule.n
    return [
        [
            dist.probs[idx] * rule.outcomes[idx] * (1 if idx >> i & 1 else -1)
            for idx in range(2**n)
        ]
        for i in range(n)
    ]


def _rule_from_deviation(
    rule: VotingRule, deviation: tuple[Fraction, ...]
) -> RandomVotingRule:
    outcomes = tuple(
        Fraction(rule.outcomes[idx]) * (1 - deviation[idx])
        for idx in range(len(deviation))
    )
    return RandomVotingRule(rule.n, outcomes)


def _scaled_into_box(witness: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    top = max(witness)
    if top > 2:
        return tuple(t * 2 / top for t in witness)
    return witness


def _weakly_improves(
    rule: VotingRule, candidate: RandomVotingRule, dist: Distribution
) -> bool:
    base = responsiveness(rule, dist).values
    new = responsiveness(candidate, dist).values
    return all(b >= a for a, b in zip(base, new))


def is_strictly_efficient(
    rule: VotingRule, dist: Distribution
) -> tuple[bool, RandomVotingRule | None]:
    """Whether no other random rule matches the rule for every individual.

    Not strict efficiency is witnessed by a differing random rule whose
    responsiveness is componentwise at least as high.  Deviations are held
    to total at least 2, which any nonzero deviation reaches after scaling
    its largest coordinate to the box ceiling.
    """
    if rule.n != dist.n:
        raise ValueError("rule and distribution must share the same n")
    matrix = _deviation_matrix(rule, dist)
    size = 2**rule.n
    rows = [
        LinearRow(tuple(-entry for entry in row), REL_GE, Fraction(0))
        for row in matrix
    ]
    for idx in range(size):
        cap = tuple(Fraction(-1 if k == idx else 0) for k in range(size))
        rows.append(LinearRow(cap, REL_GE, Fraction(-2)))
    rows.append(LinearRow((Fraction(1),) * size, REL_GE, Fraction(2)))
    result = solve_feasibility(LinearSystem(size, tuple(rows), (SIGN_NONNEG,) * size))
    if not result.feasible:
        return True, None
    candidate = _rule_from_deviation(rule, result.witness)
    assert _weakly_improves(rule, candidate, dist), (
        "internal efficiency error: witness fails the dominance inequalities"
    )
    assert candidate != RandomVotingRule.from_deterministic(rule), (
        "internal efficiency error: witness does not differ"
    )
    return False, candidate


def _plain_witness(rule: VotingRule, dist: Distribution) -> RandomVotingRule | None:
    # Homogeneous system, so box caps are dropped and any witness is
    # rescaled into the box before verification.
    matrix = _deviation_matrix(rule, dist)
    size = 2**rule.n
    rows = [
        LinearRow(tuple(-entry for entry in row), REL_GE, Fraction(0))
        for row in matrix
    ]
    total = tuple(-sum(matrix[i][idx] for i in range(rule.n)) for idx in range(size))
    rows.append(LinearRow(total, REL_GT, Fraction(0)))
    result = solve_feasibility(LinearSystem(size, tuple(rows), (SIGN_NONNEG,) * size))
    if not result.feasible:
        return None
    candidate = _rule_from_deviation(rule, _scaled_into_box(result.witness))
    base = responsiveness(rule, dist).values
    new = responsiveness(candidate, dist).values
    assert all(b >= a for a, b in zip(base, new)) and sum(new) > sum(base), (
        "internal efficiency error: witness fails the improvement inequalities"
    )
    return candidate


def _weak_witness(rule: VotingRule, dist: Distribution) -> RandomVotingRule | None:
    matrix = _deviation_matrix(rule, dist)
    size = 2**rule.n
    rows = [
        LinearRow(tuple(-entry for entry in row), REL_GT, Fraction(0))
        for row in matrix
    ]
    result = solve_feasibility(LinearSystem(size, tuple(rows), (SIGN_NONNEG,) * size))
    if not result.feasible:
        return None
    candidate = _rule_from_deviation(rule, _scaled_into_box(result.witness))
    base = responsiveness(rule, dist).values
    new = responsiveness(candidate, dist).values
    assert all(b > a for a, b in zip(base, new)), (
        "internal efficiency error: witness fails the strict improvement"
    )
    return candidate


def is_efficient(rule: VotingRule, dist: Distribution) -> bool:
    """Whether no random rule helps some individual without hurting any."""
    if rule.n != dist.n:
        raise ValueError("rule and distribution must share the same n")
    return _plain_witness(rule, dist) is None


def is_weakly_efficient(rule: VotingRule, dist: Distribution) -> bool:
    """Whether no random rule helps every individual strictly."""
    if rule.n != dist.n:
        raise ValueError("rule and distribution must share the same n")
    return _weak_witness(rule, dist) is None


def efficiency_verdict(
    rule: VotingRule, dist: Distribution, mode: str
) -> tuple[bool, RandomVotingRule | None]:
    """Decide one of the three efficiency notions, with the dominating
    random rule as witness whenever the answer is negative.

    mode is "strict", "plain", or "weak", ordered from the strongest
    notion to the weakest.
    """
    if mode not in EFFICIENCY_MODES:
        raise ValueError(f"unknown efficiency mode {mode!r}")
    if rule.n != dist.n:
        raise ValueError("rule and distribution must share the same n")
    if mode == "strict":
        return is_strictly_efficient(rule, dist)
    witness = _plain_witness(rule, dist) if mode == "plain" else _weak_witness(rule, dist)
    return witness is None, witness


def transport_distribution(
    dist: Distribution, rule: VotingRule, dominating: RandomVotingRule
) -> Distribution:
    """Reweight the distribution onto the profiles where the dominating
    rule deviates, normalized by the deviated mass.

    Under the result, the inverse rule is weakly preferred to the original.
    Raises NoTransportError when the two rules agree wherever the
    distribution has mass.
    """
    if rule.n != dist.n or dominating.n != dist.n:
        raise ValueError("rules and distribution must share the same n")
    if not _weakly_improves(rule, dominating, dist):
        raise ValueError("the random rule does not weakly dominate the base rule")
    size = 2**rule.n
    alphas = [
        (1 - Fraction(rule.outcomes[idx]) * dominating.outcomes[idx]) / 2
        for idx in range(size)
    ]
    raw = [dist.probs[idx] * alphas[idx] for idx in range(size)]
    mass = sum(raw, Fraction(0))
    if mass == 0:
        raise NoTransportError(
            "the rules agree on every profile with positive probability"
        )
    return Distribution(rule.n, tuple(value / mass for value in raw))
