"""Responsiveness of rules to individual votes.

The responsiveness of individual i under rule phi and profile distribution p
is the probability that the collective outcome agrees with i's vote.  For
deterministic rules this is a probability mass; the expectation identity
r_i = (E[phi(x) x_i] + 1) / 2 extends it to random rules.  Both forms are
computed for deterministic inputs and must coincide.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (
    Distribution,
    RandomVotingRule,
    VotingRule,
    format_rational,
    is_anonymous,
    popcount,
)

SIGN_CLASS_FREE = "free"
SIGN_CLASS_NONNEGATIVE = "nonnegative"
SIGN_CLASS_POSITIVE = "positive"
SIGN_CLASSES = (SIGN_CLASS_FREE, SIGN_CLASS_NONNEGATIVE, SIGN_CLASS_POSITIVE)


@dataclass(frozen=True)
class ResponsivenessVector:
    """Per-individual agreement probabilities, exact rationals in [0, 1]."""

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        for i, v in enumerate(vals, start=1):
            if not 0 <= v <= 1:
                raise ValueError(f"responsiveness of individual {i} is {v}, outside [0, 1]")

    @property
    def n(self) -> int:
        return len(self.values)

    def for_individual(self, individual: int) -> Fraction:
        if not 1 <= individual <= self.n:
            raise ValueError(f"individual {individual} out of range for n={self.n}")
        return self.values[individual - 1]

    def minimum(self) -> Fraction:
        return min(self.values)

    def to_json(self) -> list[str]:
        return [format_rational(v) for v in self.values]

    def __iter__(self):
        return iter(self.values)


@dataclass(frozen=True)
class WeightVector:
    """A weight per individual together with its declared sign class."""

    weights: tuple[Fraction, ...]
    sign_class: str = SIGN_CLASS_FREE

    def __post_init__(self) -> None:
        ws = tuple(Fraction(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if self.sign_class not in SIGN_CLASSES:
            raise ValueError(f"unknown sign class {self.sign_class!r}")
        if all(w == 0 for w in ws):
            raise ValueError("weight vector must not be all zero")
        if self.sign_class == SIGN_CLASS_NONNEGATIVE and any(w < 0 for w in ws):
            raise ValueError("nonnegative sign class admits no negative weight")
        if self.sign_class == SIGN_CLASS_POSITIVE and any(w <= 0 for w in ws):
            raise ValueError("positive sign class requires every weight > 0")

    @property
    def n(self) -> int:
        return len(self.weights)

    def to_json(self) -> dict:
        return {
            "weights": [format_rational(w) for w in self.weights],
            "sign_class": self.sign_class,
        }


def _coerce_weights(weights: WeightVector | Sequence[Fraction]) -> tuple[Fraction, ...]:
    if isinstance(weights, WeightVector):
        return weights.weights
    ws = tuple(Fraction(w) for w in weights)
    if all(w == 0 for w in ws):
        raise ValueError("weight vector must not be all zero")
    return ws


def responsiveness(
    rule: VotingRule | RandomVotingRule, dist: Distribution
) -> ResponsivenessVector:
    """Agreement probability of the outcome with each individual's vote."""
    if rule.n != dist.n:
        raise ValueError(f"rule has n={rule.n} but distribution has n={dist.n}")
    n = rule.n
    deterministic = isinstance(rule, VotingRule)
    values = []
    for i in range(1, n + 1):
        bit = 1 << (i - 1)
        expectation = Fraction(0)
        mass = Fraction(0)
        for idx, prob in enumerate(dist.probs):
            if prob == 0:
                continue
            vote = 1 if idx & bit else -1
            outcome = rule.outcomes[idx]
            expectation += prob * outcome * vote
            if deterministic and outcome == vote:
                mass += prob
        r = (expectation + 1) / 2
        if deterministic:
            assert r == mass, "agreement mass and expectation identity disagree"
        values.append(r)
    return ResponsivenessVector(tuple(values))


@functools.lru_cache(maxsize=None)
def agreement_counts(rule: VotingRule) -> tuple[int, ...]:
    """d_k for an anonymous rule: individuals agreeing with the outcome
    on any profile where exactly k vote +1."""
    if not is_anonymous(rule):
        raise ValueError("agreement counts are defined for anonymous rules only")
    n = rule.n
    counts = []
    for k in range(n + 1):
        outcome = rule.outcomes[(1 << k) - 1]  # the profile with k leading supporters
        counts.append(k if outcome == 1 else n - k)
    return tuple(counts)


def mean_responsiveness_by_count(
    rule: VotingRule, count_probs: Sequence[Fraction]
) -> Fraction:
    """Average responsiveness over individuals, driven only by the
    distribution of how many vote +1."""
    n = rule.n
    if len(count_probs) != n + 1:
        raise ValueError(f"need {n + 1} count probabilities, got {len(count_probs)}")
    probs = [Fraction(p) for p in count_probs]
    if any(p < 0 for p in probs) or sum(probs) != 1:
        raise ValueError("count probabilities must be nonnegative and sum to 1")
    d = agreement_counts(rule)
    return sum((d[k] * probs[k] for k in range(n + 1)), Fraction(0)) / n


def rtf_max_weighted(
    weights: WeightVector | Sequence[Fraction], dist: Distribution
) -> tuple[Fraction, VotingRule]:
    """Maximum of the weighted responsiveness sum over all rules.

    The pointwise maximizer signs the weighted vote sum, so the maximum of
    sum_i w_i E[phi(x) x_i] is E[|sum_i w_i x_i|].  The value returned is in
    responsiveness terms, (E[|sum w_i x_i|] + sum w_i) / 2, together with an
    argmax rule that maps ties to +1.
    """
    ws = _coerce_weights(weights)
    n = dist.n
    if len(ws) != n:
        raise ValueError(f"{len(ws)} weights for n={n}")
    abs_expectation = Fraction(0)
    outcomes = []
    for idx in range(2**n):
        total = Fraction(0)
        for i in range(n):
            total += ws[i] if idx >> i & 1 else -ws[i]
        outcomes.append(1 if total >= 0 else -1)
        abs_expectation += dist.probs[idx] * abs(total)
    value = (abs_expectation + sum(ws)) / 2
    argmax = VotingRule(n, tuple(outcomes))
    r = responsiveness(argmax, dist)
    attained = sum((w * ri for w, ri in zip(ws, r.values)), Fraction(0))
    assert attained == value, "argmax rule does not attain the closed-form maximum"
    return value, argmax
