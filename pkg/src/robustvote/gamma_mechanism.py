"""Expected-utility robustness thresholds and the dictatorship collapse.

When voters weigh decisions by utility gains rather than raw agreement,
robustness depends on how lopsided the conditional gains may be.  Below a
rule-dependent positive threshold the requirement coincides with plain
responsiveness robustness; above 2^n - 2 it forces a dictator.  Both
thresholds are computable exactly, and the collapse direction comes with an
explicit utility table showing that without a dictator nobody expects to
gain from the rule over its inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Distribution,
    DistributionSet,
    VotingRule,
    enumerate_rules,
    format_rational,
    is_dictatorship,
    is_own_vote_monotone,
    is_self_dual,
)
from .respond import responsiveness
from .robustness import VERDICT_ROBUST, is_robust, responsiveness_game

MAX_THRESHOLD_N = 4


@dataclass(frozen=True, order=False)
class ExtendedRational:
    """A rational or positive infinity; infinity compares above everything."""

    value: Fraction | None = None

    @classmethod
    def finite(cls, value: Fraction) -> "ExtendedRational":
        return cls(Fraction(value))

    @classmethod
    def infinity(cls) -> "ExtendedRational":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def _coerce(self, other) -> "ExtendedRational":
        if isinstance(other, ExtendedRational):
            return other
        return ExtendedRational.finite(Fraction(other))

    def __lt__(self, other) -> bool:
        other = self._coerce(other)
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.value < other.value

    def __le__(self, other) -> bool:
        other = self._coerce(other)
        return self == other or self < other

    def __gt__(self, other) -> bool:
        return self._coerce(other) < self

    def __ge__(self, other) -> bool:
        other = self._coerce(other)
        return other == self or other < self

    def format(self) -> str:
        return "inf" if self.is_infinite else format_rational(self.value)


def gain_ratio(r: Fraction) -> ExtendedRational:
    """The heterogeneity bound (2r - 1) / (1 - r), infinite at r = 1."""
    r = Fraction(r)
    if not 0 <= r <= 1:
        raise ValueError(f"responsiveness {r} outside [0, 1]")
    if r == 1:
        return ExtendedRational.infinity()
    return ExtendedRational.finite((2 * r - 1) / (1 - r))


def is_strategy_proof(rule: VotingRule) -> bool:
    """Sincere voting is a best response exactly when no individual can
    flip the outcome toward their vote by misreporting, which is own-vote
    monotonicity."""
    return is_own_vote_monotone(rule)[0]


def epsilon_lower_witness(n: int):
    """The lower threshold together with the rule attaining it.

    Returns (level, rule, game) where game solves the responsiveness
    game for the binding rule, so the level can be re-derived from the
    game value without repeating the search. Ties go to the rule that
    enumerates first.
    """
    if not 1 <= n <= MAX_THRESHOLD_N:
        raise ValueError(f"threshold enumeration is capped at n={MAX_THRESHOLD_N}")
    degenerates = DistributionSet.degenerates(n)
    best: ExtendedRational | None = None
    binding = None
    binding_game = None
    for rule in enumerate_rules(n):
        # Robust rules are monotone and self-dual; screen cheaply first.
        if not is_self_dual(rule):
            continue
        if not is_own_vote_monotone(rule)[0]:
            continue
        if is_robust(rule).verdict != VERDICT_ROBUST:
            continue
        game = responsiveness_game(rule, degenerates)
        level = gain_ratio(game.value)
        if best is None or level < best:
            best = level
            binding = rule
            binding_game = game
    assert best is not None, "dictators are always robust, the minimum exists"
    assert best > 0, "the threshold must be strictly positive"
    return best, binding, binding_game


def epsilon_lower(n: int) -> ExtendedRational:
    """Largest heterogeneity level certain to preserve the robustness
    characterization, as the worst gain ratio over robust rules."""
    level, _, _ = epsilon_lower_witness(n)
    return level


def epsilon_upper(n: int) -> Fraction:
    """Heterogeneity level beyond which robustness forces a dictator."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return Fraction(2**n - 2)


@dataclass(frozen=True)
class GammaWitness:
    """Utility table showing a dictatorless rule is beatable by its inverse.

    utilities[x][i] is the pair (payoff if the decision is +1, payoff if
    -1) for individual i in the state tied to profile x.  Under the uniform
    mixture over states, net_gains[i] is what i expects from the rule over
    its inverse; every entry is nonpositive.
    """

    n: int
    utilities: tuple[tuple[tuple[Fraction, Fraction], ...], ...]
    mixture: tuple[Fraction, ...]
    net_gains: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "utilities": [
                [[format_rational(hi), format_rational(lo)] for hi, lo in row]
                for row in self.utilities
            ],
            "mixture": [format_rational(m) for m in self.mixture],
            "net_gains": [format_rational(g) for g in self.net_gains],
        }


def gamma_utilities(
    rule: VotingRule,
) -> tuple[tuple[tuple[Fraction, Fraction], ...], ...]:
    """The per-state utility pairs: the favored decision pays, a small
    amount when the rule already agrees with the vote and a full unit when
    it does not."""
    n = rule.n
    small = Fraction(1, 2**n - 1)
    table = []
    for idx, outcome in enumerate(rule.outcomes):
        row = []
        for i in range(n):
            vote = 1 if idx >> i & 1 else -1
            amount = small if outcome == vote else Fraction(1)
            row.append((amount, Fraction(0)) if vote == 1 else (Fraction(0), amount))
        table.append(tuple(row))
    return tuple(table)


def gamma_counterexample(rule: VotingRule) -> GammaWitness:
    """Build the utility mixture under which no individual gains from a
    dictatorless rule relative to its inverse."""
    if is_dictatorship(rule) is not None:
        raise ValueError("the construction requires a rule with no dictator")
    n = rule.n
    size = 2**n
    utilities = gamma_utilities(rule)
    share = Fraction(1, size)
    mixture = tuple(share for _ in range(size))

    gains = []
    for i in range(n):
        total = Fraction(0)
        for idx, outcome in enumerate(rule.outcomes):
            hi, lo = utilities[idx][i]
            won, lost = (hi, lo) if outcome == 1 else (lo, hi)
            total += share * (won - lost)
        gains.append(total)

    r = responsiveness(rule, Distribution.uniform(n))
    small = Fraction(1, size - 1)
    for i in range(n):
        closed_form = r.values[i] * small - (1 - r.values[i])
        assert gains[i] == closed_form, (
            "utility-table net gain disagrees with the responsiveness form"
        )
        assert gains[i] <= 0, "net gain must be nonpositive without a dictator"
    return GammaWitness(n, utilities, mixture, tuple(gains))
