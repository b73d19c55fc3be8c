"""Robustness certification for deterministic rules.

A rule is robust with respect to a polytope of profile distributions when
every distribution in it leaves some individual with responsiveness above
one half (at least one half for the weak variant).  With the polytope given
by finitely many extreme points, both variants reduce to a theorem of the
alternative on the matrix of expected vote-outcome agreements, so every
verdict carries a finite certificate: weights on individuals when robust, a
mixture over extreme points when not.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Distribution,
    DistributionSet,
    VotingRule,
    format_rational,
    is_anonymous,
    permute_profile_index,
)
from .lp import alternative_strict, alternative_weak, matrix_game
from .respond import responsiveness

MODE_STRICT = "strict"
MODE_WEAK = "weak"
MODES = (MODE_STRICT, MODE_WEAK)

VERDICT_ROBUST = "robust"
VERDICT_NOT_ROBUST = "not_robust"

MAX_PERMUTATION_N = 6


@dataclass(frozen=True)
class RobustnessCertificate:
    """A verdict together with the vector that proves it.

    weights is a nonnegative sum-one vector over individuals whose weighted
    responsiveness sum clears one half at every extreme point.  mixture is a
    nonnegative sum-one vector over extreme points under whose blend no
    individual clears one half.  Exactly one of the two is present.
    """

    verdict: str
    mode: str
    weights: tuple[Fraction, ...] | None = None
    mixture: tuple[Fraction, ...] | None = None

    def __post_init__(self) -> None:
        if self.verdict not in (VERDICT_ROBUST, VERDICT_NOT_ROBUST):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if (self.weights is None) == (self.mixture is None):
            raise ValueError("exactly one of weights and mixture must be present")
        if (self.verdict == VERDICT_ROBUST) != (self.weights is not None):
            raise ValueError("verdict does not match the certificate kind")

    def to_json(self) -> dict:
        payload: dict = {"verdict": self.verdict, "mode": self.mode}
        if self.weights is not None:
            payload["weights"] = [format_rational(w) for w in self.weights]
        if self.mixture is not None:
            payload["mixture"] = [format_rational(m) for m in self.mixture]
        return payload


def agreement_matrix(rule: VotingRule, pset: DistributionSet) -> list[list[Fraction]]:
    """Expected outcome-vote products, one row per individual, one column
    per extreme point."""
    if rule.n != pset.n:
        raise ValueError(f"rule has n={rule.n} but distribution set has n={pset.n}")
    n = rule.n
    matrix = [[Fraction(0)] * len(pset.extreme_points) for _ in range(n)]
    for j, dist in enumerate(pset.extreme_points):
        for idx, prob in enumerate(dist.probs):
            if prob == 0:
                continue
            value = prob * rule.outcomes[idx]
            for i in range(n):
                matrix[i][j] += value if idx >> i & 1 else -value
    return matrix


def _degenerate_agreement_matrix(rule: VotingRule) -> list[list[Fraction]]:
    # The column for the point mass at profile x is just phi(x) * x.
    n = rule.n
    return [
        [
            Fraction(rule.outcomes[idx] if idx >> i & 1 else -rule.outcomes[idx])
            for idx in range(2**n)
        ]
        for i in range(n)
    ]


def _verify_weights(
    matrix: list[list[Fraction]], weights: tuple[Fraction, ...], mode: str
) -> None:
    assert all(w >= 0 for w in weights) and sum(weights) == 1, (
        "internal certification error: weights are not a distribution"
    )
    for j in range(len(matrix[0])):
        dot = sum((weights[i] * matrix[i][j] for i in range(len(matrix))), Fraction(0))
        ok = dot > 0 if mode == MODE_STRICT else dot >= 0
        assert ok, "internal certification error: weights fail an extreme point"


def _verify_mixture(
    matrix: list[list[Fraction]], mixture: tuple[Fraction, ...], mode: str
) -> None:
    assert all(m >= 0 for m in mixture) and sum(mixture) == 1, (
        "internal certification error: mixture is not a distribution"
    )
    for i in range(len(matrix)):
        dot = sum((matrix[i][j] * mixture[j] for j in range(len(mixture))), Fraction(0))
        ok = dot <= 0 if mode == MODE_STRICT else dot < 0
        assert ok, "internal certification error: mixture leaves an individual above half"


def _certify_from_matrix(matrix: list[list[Fraction]], mode: str) -> RobustnessCertificate:
    if mode == MODE_STRICT:
        answer = alternative_strict(matrix)
    else:
        answer = alternative_weak(matrix)
    if answer.weights is not None:
        _verify_weights(matrix, answer.weights, mode)
        return RobustnessCertificate(VERDICT_ROBUST, mode, weights=answer.weights)
    mixture = answer.mixture
    total = sum(mixture)
    if total != 1:
        mixture = tuple(m / total for m in mixture)
    _verify_mixture(matrix, mixture, mode)
    return RobustnessCertificate(VERDICT_NOT_ROBUST, mode, mixture=mixture)


def certify_p_robust(
    rule: VotingRule, pset: DistributionSet, mode: str = MODE_STRICT
) -> RobustnessCertificate:
    """Decide robustness over the polytope spanned by the given extreme
    points and return the proving vector."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if not pset.extreme_points:
        raise ValueError("distribution set must have at least one extreme point")
    return _certify_from_matrix(agreement_matrix(rule, pset), mode)


def certify_p_robust_full(rule: VotingRule, mode: str = MODE_STRICT) -> RobustnessCertificate:
    """Robustness over all distributions: the extreme points are the 2^n
    point masses and the matrix columns come straight off the truth table."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    return _certify_from_matrix(_degenerate_agreement_matrix(rule), mode)


def is_robust(rule: VotingRule) -> RobustnessCertificate:
    """Robustness over every distribution, certified."""
    return certify_p_robust_full(rule, MODE_STRICT)


def responsiveness_game(rule: VotingRule, pset: DistributionSet):
    """Solve the game where an adversary blends extreme points to hold
    every individual's responsiveness down.

    Rows are individuals, columns are the extreme points, payoffs are
    responsiveness values. The returned solution carries both optimal
    strategies alongside the value.
    """
    matrix = agreement_matrix(rule, pset)
    responsive = [
        [(entry + 1) / 2 for entry in row] for row in matrix
    ]
    return matrix_game(responsive)


def min_max_responsiveness(rule: VotingRule, pset: DistributionSet) -> Fraction:
    """Value of the responsiveness game.

    Robustness in the strict sense is value > 1/2, weak is value >= 1/2.
    """
    return responsiveness_game(rule, pset).value


def permute_distribution(dist: Distribution, permutation) -> Distribution:
    """The distribution of the relabeled profile."""
    n = dist.n
    probs = [Fraction(0)] * 2**n
    for idx in range(2**n):
        probs[idx] = dist.probs[permute_profile_index(idx, n, permutation)]
    return Distribution(n, tuple(probs))


def is_permutation_invariant(pset: DistributionSet) -> bool:
    """Whether relabeling individuals maps the extreme-point set onto itself."""
    n = pset.n
    if n > MAX_PERMUTATION_N:
        raise ValueError(
            f"exhaustive permutation check is capped at n={MAX_PERMUTATION_N}"
        )
    members = set(pset.extreme_points)
    for perm in itertools.permutations(range(1, n + 1)):
        for dist in pset.extreme_points:
            if permute_distribution(dist, perm) not in members:
                return False
    return True


def _is_count_symmetric(dist: Distribution) -> bool:
    by_count: dict[int, Fraction] = {}
    for idx, prob in enumerate(dist.probs):
        count = bin(idx).count("1")
        if count in by_count:
            if by_count[count] != prob:
                return False
        else:
            by_count[count] = prob
    return True


def _orbit_mixture(
    pset: DistributionSet, index: int
) -> tuple[Fraction, ...]:
    """Mixture weights that average the orbit of one extreme point over all
    relabelings, expressed over the input extreme points."""
    n = pset.n
    position = {dist: k for k, dist in enumerate(pset.extreme_points)}
    counts = [0] * len(pset.extreme_points)
    total = 0
    for perm in itertools.permutations(range(1, n + 1)):
        permuted = permute_distribution(pset.extreme_points[index], perm)
        if permuted not in position:
            raise ValueError(
                "distribution set is not permutation invariant: "
                "an orbit member is missing"
            )
        counts[position[permuted]] += 1
        total += 1
    return tuple(Fraction(c, total) for c in counts)


def certify_anonymous(
    rule: VotingRule, pset: DistributionSet, mode: str = MODE_STRICT
) -> RobustnessCertificate:
    """Robustness of an anonymous rule over a relabeling-closed set, decided
    by the mean responsiveness at each extreme point alone.

    Positive verdicts carry the uniform weight vector.  Negative verdicts
    carry the orbit average of a violating extreme point, which is its own
    point mass when that distribution depends only on the support count.
    For n past the exhaustive permutation bound with an asymmetric violator,
    the certificate falls back to the general construction.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if not is_anonymous(rule):
        raise ValueError("rule is not anonymous")
    if not pset.extreme_points:
        raise ValueError("distribution set must have at least one extreme point")
    n = rule.n
    if n <= MAX_PERMUTATION_N and not is_permutation_invariant(pset):
        raise ValueError("distribution set is not permutation invariant")

    matrix = agreement_matrix(rule, pset)
    violator = None
    for j in range(len(pset.extreme_points)):
        mean = sum((matrix[i][j] for i in range(n)), Fraction(0)) / n
        cleared = mean > 0 if mode == MODE_STRICT else mean >= 0
        if not cleared:
            violator = j
            break
    if violator is None:
        weights = tuple(Fraction(1, n) for _ in range(n))
        _verify_weights(matrix, weights, mode)
        return RobustnessCertificate(VERDICT_ROBUST, mode, weights=weights)

    if _is_count_symmetric(pset.extreme_points[violator]):
        mixture = tuple(
            Fraction(1 if k == violator else 0)
            for k in range(len(pset.extreme_points))
        )
    elif n <= MAX_PERMUTATION_N:
        mixture = _orbit_mixture(pset, violator)
    else:
        return certify_p_robust(rule, pset, mode)
    _verify_mixture(matrix, mixture, mode)
    return RobustnessCertificate(VERDICT_NOT_ROBUST, mode, mixture=mixture)
