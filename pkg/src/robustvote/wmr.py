"""Weighted-majority representations of deterministic rules.

A rule is a weighted majority rule for a weight vector w when the outcome
always sides with the sign of the weighted vote sum.  Ties allowed means the
sum may vanish; ties forbidden means it never does.  Detection is a linear
feasibility question over the weights, one inequality per profile.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .core import VotingRule, is_anonymous, is_dictatorship, is_own_vote_monotone
from .lp import (
    REL_EQ,
    REL_GE,
    REL_GT,
    SIGN_FREE,
    SIGN_NONNEG,
    LinearRow,
    LinearSystem,
    solve_feasibility,
)
from .respond import (
    SIGN_CLASS_FREE,
    SIGN_CLASS_NONNEGATIVE,
    SIGN_CLASS_POSITIVE,
    SIGN_CLASSES,
    WeightVector,
)

TIES_ALLOWED = "allowed"
TIES_FORBIDDEN = "forbidden"
TIE_MODES = (TIES_ALLOWED, TIES_FORBIDDEN)


@dataclass(frozen=True)
class WmrQuery:
    """Which representation is being asked for."""

    sign_class: str = SIGN_CLASS_NONNEGATIVE
    ties: str = TIES_ALLOWED

    def __post_init__(self) -> None:
        if self.sign_class not in SIGN_CLASSES:
            raise ValueError(f"unknown sign class {self.sign_class!r}")
        if self.ties not in TIE_MODES:
            raise ValueError(f"unknown tie mode {self.ties!r}")


def weights_represent(
    rule: VotingRule, weights: Sequence[Fraction], ties: str
) -> bool:
    """Exact check that the weighted sum sides with every outcome."""
    if ties not in TIE_MODES:
        raise ValueError(f"unknown tie mode {ties!r}")
    ws = [Fraction(w) for w in weights]
    if len(ws) != rule.n:
        raise ValueError(f"{len(ws)} weights for n={rule.n}")
    if all(w == 0 for w in ws):
        return False
    for idx, outcome in enumerate(rule.outcomes):
        total = Fraction(0)
        for i in range(rule.n):
            total += ws[i] if idx >> i & 1 else -ws[i]
        signed = outcome * total
        if signed < 0 or (signed == 0 and ties == TIES_FORBIDDEN):
            return False
    return True


def _signed_sum_rows(rule: VotingRule, relation: str) -> list[LinearRow]:
    rows = []
    for idx, outcome in enumerate(rule.outcomes):
        coeffs = tuple(
            Fraction(outcome if idx >> i & 1 else -outcome) for i in range(rule.n)
        )
        rows.append(LinearRow(coeffs, relation, Fraction(0)))
    return rows


def _unit_row(n: int, i: int, relation: str, rhs: Fraction) -> LinearRow:
    coeffs = tuple(Fraction(1 if j == i else 0) for j in range(n))
    return LinearRow(coeffs, relation, rhs)


def _smallest_integer_direction(ws: Sequence[Fraction]) -> tuple[Fraction, ...]:
    scale = lcm(*(w.denominator for w in ws)) if ws else 1
    ints = [int(w * scale) for w in ws]
    g = gcd(*ints)
    if g == 0:
        return tuple(Fraction(0) for _ in ints)
    return tuple(Fraction(v // g) for v in ints)


def detect_wmr(rule: VotingRule, query: WmrQuery) -> WeightVector | None:
    """Recover a weight vector of the requested kind, or report none exists.

    The recovered vector is scaled to the smallest integer direction and
    re-checked against every profile before being returned.
    """
    n = rule.n
    relation = REL_GT if query.ties == TIES_FORBIDDEN else REL_GE
    rows = _signed_sum_rows(rule, relation)
    signs = (SIGN_NONNEG,) * n
    if query.sign_class == SIGN_CLASS_FREE:
        signs = (SIGN_FREE,) * n
    elif query.sign_class == SIGN_CLASS_POSITIVE:
        rows.extend(_unit_row(n, i, REL_GT, Fraction(0)) for i in range(n))

    witness = None
    needs_sweep = (
        query.ties == TIES_ALLOWED and query.sign_class == SIGN_CLASS_FREE
    )
    if needs_sweep:
        # Weak rows alone admit w = 0.  Any nonzero solution can be scaled
        # so some coordinate equals +1 or -1, so pinning each in turn
        # decides existence.
        for i in range(n):
            for sign in (1, -1):
                pinned = rows + [_unit_row(n, i, REL_EQ, Fraction(sign))]
                result = solve_feasibility(LinearSystem(n, tuple(pinned), signs))
                if result.feasible:
                    witness = result.witness
                    break
            if witness is not None:
                break
    else:
        if query.ties == TIES_ALLOWED and query.sign_class == SIGN_CLASS_NONNEGATIVE:
            # w != 0 over nonnegative weights is one strict row
            rows.append(LinearRow((Fraction(1),) * n, REL_GT, Fraction(0)))
        result = solve_feasibility(LinearSystem(n, tuple(rows), signs))
        if result.feasible:
            witness = result.witness

    if witness is None:
        return None
    cleared = _smallest_integer_direction(witness)
    assert weights_represent(rule, cleared, query.ties), (
        "recovered weights fail re-verification"
    )
    return WeightVector(cleared, query.sign_class)


def classify_rule(rule: VotingRule) -> dict:
    """Bundle the structural predicates and certificates for one rule."""
    from .robustness import certify_p_robust_full

    wmr_results = {}
    for sign_class in SIGN_CLASSES:
        for ties in TIE_MODES:
            found = detect_wmr(rule, WmrQuery(sign_class, ties))
            wmr_results[f"{sign_class}_{ties}"] = (
                found.to_json() if found is not None else None
            )

    strict_cert = certify_p_robust_full(rule, "strict")
    weak_cert = certify_p_robust_full(rule, "weak")
    robust = strict_cert.verdict == "robust"
    weakly_robust = weak_cert.verdict == "robust"

    nonneg_noties = wmr_results[f"{SIGN_CLASS_NONNEGATIVE}_{TIES_FORBIDDEN}"]
    nonneg_ties = wmr_results[f"{SIGN_CLASS_NONNEGATIVE}_{TIES_ALLOWED}"]
    assert robust == (nonneg_noties is not None), "robustness and representation disagree"
    assert weakly_robust == (nonneg_ties is not None), (
        "weak robustness and representation disagree"
    )
    if robust:
        assert weakly_robust, "robust rule failed the weaker certificate"

    monotone, violation = is_own_vote_monotone(rule)
    dictator = is_dictatorship(rule)
    report = {
        "n": rule.n,
        "table": rule.to_table_string(),
        "anonymous": is_anonymous(rule),
        "dictator": dictator,
        "monotone": monotone,
        "robust": robust,
        "weakly_robust": weakly_robust,
        "wmr": wmr_results,
        "certificates": {
            "robust": strict_cert.to_json(),
            "weakly_robust": weak_cert.to_json(),
        },
    }
    if not monotone:
        individual, others = violation
        report["monotone_violation"] = {
            "individual": individual,
            "others_votes": list(others),
        }
    if dictator is not None:
        assert robust and monotone, "dictatorship must be robust and monotone"
    return report
