"""Independent re-checking of emitted reports.

Every command report embeds its inputs next to the certificates and
witnesses backing its verdicts.  The checks here replay each claimed
inequality by direct substitution into those embedded pieces.  Nothing
in this module solves a feasibility problem, so a tampered certificate
fails because the arithmetic it promises does not hold, not because a
solver disagrees.

Affirmative claims are re-derived in full.  Claims of nonexistence (no
weight vector, no dominating rule) carry no finite certificate; they are
accepted after structural checks, which is the strongest guarantee a
certificate-only audit can give.
"""

from __future__ import annotations

from fractions import Fraction

from .core import (
    Distribution,
    DistributionSet,
    FormatError,
    RandomVotingRule,
    VotingRule,
    enumerate_rules,
    is_anonymous,
    is_dictatorship,
    is_own_vote_monotone,
    is_self_dual,
    load_rule,
    parse_rational,
)
from .efficiency import (
    EFFICIENCY_MODES,
    NoTransportError,
    pareto_compare,
    transport_distribution,
)
from .gamma_mechanism import gamma_utilities
from .random_rules import sign_pattern_holds
from .respond import (
    SIGN_CLASS_FREE,
    SIGN_CLASS_NONNEGATIVE,
    SIGN_CLASS_POSITIVE,
    SIGN_CLASSES,
    responsiveness,
)
from .robustness import (
    MODE_STRICT,
    MODE_WEAK,
    MODES,
    VERDICT_NOT_ROBUST,
    VERDICT_ROBUST,
    agreement_matrix,
)
from .wmr import TIE_MODES, weights_represent

SCHEMA = "robustvote/1"

# Predicates whose enumerations can be recounted without any solving.
RECOUNTABLE_PREDICATES = {
    "all": lambda rule: True,
    "anonymous": is_anonymous,
    "monotone": lambda rule: is_own_vote_monotone(rule)[0],
    "self_dual": is_self_dual,
    "dictatorship": lambda rule: is_dictatorship(rule) is not None,
}

CERTIFIED_PREDICATES = ("robust", "weakly_robust")


class Mismatch(Exception):
    """A report field does not survive re-derivation."""


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise Mismatch(message)


def _field(data: dict, key: str, context: str):
    if not isinstance(data, dict) or key not in data:
        raise Mismatch(f"{context}: missing field {key!r}")
    return data[key]


def _rational_list(values, field: str, length: int | None = None) -> list[Fraction]:
    if not isinstance(values, list):
        raise Mismatch(f"{field}: expected a list of rationals")
    if length is not None and len(values) != length:
        raise Mismatch(f"{field}: expected {length} entries, got {len(values)}")
    return [parse_rational(v, f"{field}[{k}]") for k, v in enumerate(values)]


def _is_distribution_vector(values: list[Fraction]) -> bool:
    return all(v >= 0 for v in values) and sum(values) == 1


def _weights_in_class(ws: list[Fraction], sign_class: str) -> bool:
    if sign_class not in SIGN_CLASSES:
        raise Mismatch(f"unknown sign class {sign_class!r}")
    if all(w == 0 for w in ws):
        return False
    if sign_class == SIGN_CLASS_NONNEGATIVE:
        return all(w >= 0 for w in ws)
    if sign_class == SIGN_CLASS_POSITIVE:
        return all(w > 0 for w in ws)
    return True


def _check_robustness_certificate(
    rule: VotingRule,
    pset: DistributionSet,
    mode: str,
    certificate: dict,
    context: str,
) -> str:
    """Replay one robustness certificate and return its verdict."""
    _expect(mode in MODES, f"{context}: unknown mode {mode!r}")
    verdict = _field(certificate, "verdict", context)
    _expect(
        certificate.get("mode") == mode,
        f"{context}: certificate mode does not match the query",
    )
    matrix = agreement_matrix(rule, pset)
    columns = len(pset.extreme_points)
    if verdict == VERDICT_ROBUST:
        ws = _rational_list(_field(certificate, "weights", context),
                            f"{context}.weights", rule.n)
        _expect(_is_distribution_vector(ws),
                f"{context}: weights are not a distribution over individuals")
        for j in range(columns):
            dot = sum((ws[i] * matrix[i][j] for i in range(rule.n)), Fraction(0))
            cleared = dot > 0 if mode == MODE_STRICT else dot >= 0
            _expect(cleared, f"{context}: weights fail extreme point {j}")
    elif verdict == VERDICT_NOT_ROBUST:
        mix = _rational_list(_field(certificate, "mixture", context),
                             f"{context}.mixture", columns)
        _expect(_is_distribution_vector(mix),
                f"{context}: mixture is not a distribution over extreme points")
        for i in range(rule.n):
            dot = sum((matrix[i][j] * mix[j] for j in range(columns)), Fraction(0))
            held = dot <= 0 if mode == MODE_STRICT else dot < 0
            _expect(held, f"{context}: mixture leaves individual {i + 1} responsive")
    else:
        raise Mismatch(f"{context}: unknown verdict {verdict!r}")
    return verdict


def _check_certify(report: dict) -> None:
    inputs = _field(report, "inputs", "certify")
    rule = VotingRule.from_json(_field(inputs, "rule", "certify.inputs"))
    pset = DistributionSet.from_json(_field(inputs, "pset", "certify.inputs"))
    mode = _field(inputs, "mode", "certify.inputs")
    # The certificate fields sit at the top level of a certify report.
    _check_robustness_certificate(rule, pset, mode, report, "certify")


def _check_classify(report: dict) -> None:
    inputs = _field(report, "inputs", "classify")
    rule = VotingRule.from_json(_field(inputs, "rule", "classify.inputs"))
    inner = _field(report, "report", "classify")
    _expect(inner.get("n") == rule.n and inner.get("table") == rule.to_table_string(),
            "classify: echoed rule does not match the input")

    _expect(inner.get("anonymous") == is_anonymous(rule),
            "classify: anonymity claim is wrong")
    _expect(inner.get("dictator") == is_dictatorship(rule),
            "classify: dictator claim is wrong")
    monotone, _ = is_own_vote_monotone(rule)
    _expect(inner.get("monotone") == monotone,
            "classify: monotonicity claim is wrong")
    if not monotone:
        violation = _field(inner, "monotone_violation", "classify")
        _check_monotone_violation(rule, violation)

    wmr_map = _field(inner, "wmr", "classify")
    for key, entry in wmr_map.items():
        if entry is None:
            continue
        sign_class, _, ties = key.rpartition("_")
        _expect(ties in TIE_MODES, f"classify: malformed representation key {key!r}")
        ws = _rational_list(_field(entry, "weights", f"classify.wmr.{key}"),
                            f"classify.wmr.{key}.weights", rule.n)
        _expect(entry.get("sign_class") == sign_class,
                f"classify: representation {key} declares the wrong sign class")
        _expect(_weights_in_class(ws, sign_class),
                f"classify: representation {key} weights leave the sign class")
        _expect(weights_represent(rule, ws, ties),
                f"classify: representation {key} weights fail a profile")

    certificates = _field(inner, "certificates", "classify")
    degenerates = DistributionSet.degenerates(rule.n)
    strict_verdict = _check_robustness_certificate(
        rule, degenerates, MODE_STRICT,
        _field(certificates, "robust", "classify.certificates"),
        "classify.certificates.robust",
    )
    weak_verdict = _check_robustness_certificate(
        rule, degenerates, MODE_WEAK,
        _field(certificates, "weakly_robust", "classify.certificates"),
        "classify.certificates.weakly_robust",
    )
    robust = inner.get("robust")
    weakly_robust = inner.get("weakly_robust")
    _expect(robust == (strict_verdict == VERDICT_ROBUST),
            "classify: robustness flag disagrees with its certificate")
    _expect(weakly_robust == (weak_verdict == VERDICT_ROBUST),
            "classify: weak robustness flag disagrees with its certificate")
    _expect(not robust or weakly_robust,
            "classify: robust without weakly robust is impossible")
    found_strict = wmr_map.get(f"{SIGN_CLASS_NONNEGATIVE}_forbidden") is not None
    found_weak = wmr_map.get(f"{SIGN_CLASS_NONNEGATIVE}_allowed") is not None
    _expect(robust == found_strict,
            "classify: robustness flag disagrees with the tie-free representation")
    _expect(weakly_robust == found_weak,
            "classify: weak robustness flag disagrees with the tie-allowed representation")


def _check_monotone_violation(rule: VotingRule, violation: dict) -> None:
    individual = _field(violation, "individual", "monotone_violation")
    others = _field(violation, "others_votes", "monotone_violation")
    _expect(isinstance(individual, int) and 1 <= individual <= rule.n,
            "monotone_violation: individual out of range")
    _expect(isinstance(others, list) and len(others) == rule.n - 1
            and all(v in (-1, 1) for v in others),
            "monotone_violation: malformed companion votes")
    positions = [p for p in range(rule.n) if p != individual - 1]
    base = 0
    for vote, pos in zip(others, positions):
        if vote == 1:
            base |= 1 << pos
    bit = 1 << (individual - 1)
    _expect(rule.outcomes[base] == 1 and rule.outcomes[base | bit] == -1,
            "monotone_violation: the cited profiles do not violate monotonicity")


def _check_respond(report: dict) -> None:
    inputs = _field(report, "inputs", "respond")
    rule = load_rule(_field(inputs, "rule", "respond.inputs"))
    dist = Distribution.from_json(_field(inputs, "dist", "respond.inputs"))
    values = responsiveness(rule, dist).values
    reported = _rational_list(_field(report, "responsiveness", "respond"),
                              "respond.responsiveness", rule.n)
    _expect(list(values) == reported,
            "respond: responsiveness does not match a recomputation")
    minimum = parse_rational(_field(report, "minimum", "respond"), "respond.minimum")
    _expect(minimum == min(values), "respond: minimum entry is wrong")


def _check_rtf(report: dict) -> None:
    inputs = _field(report, "inputs", "rtf")
    ws = _rational_list(_field(inputs, "weights", "rtf.inputs"), "rtf.inputs.weights")
    sign_class = inputs.get("sign_class", SIGN_CLASS_FREE)
    _expect(_weights_in_class(ws, sign_class),
            "rtf: weights leave their declared sign class")
    dist = Distribution.from_json(_field(inputs, "dist", "rtf.inputs"))
    n = dist.n
    _expect(len(ws) == n, "rtf: weight count does not match the distribution")

    abs_expectation = Fraction(0)
    for idx, prob in enumerate(dist.probs):
        total = sum((ws[i] if idx >> i & 1 else -ws[i] for i in range(n)), Fraction(0))
        abs_expectation += prob * abs(total)
    closed_form = (abs_expectation + sum(ws)) / 2

    value = parse_rational(_field(report, "value", "rtf"), "rtf.value")
    _expect(value == closed_form, "rtf: value disagrees with the closed form")
    argmax = VotingRule.from_json(_field(report, "argmax", "rtf"))
    attained = sum(
        (w * r for w, r in zip(ws, responsiveness(argmax, dist).values)),
        Fraction(0),
    )
    _expect(attained == value, "rtf: the argmax rule does not attain the value")


def _check_wmr(report: dict) -> None:
    inputs = _field(report, "inputs", "wmr")
    rule = VotingRule.from_json(_field(inputs, "rule", "wmr.inputs"))
    sign_class = _field(inputs, "sign_class", "wmr.inputs")
    ties = _field(inputs, "ties", "wmr.inputs")
    _expect(ties in TIE_MODES, f"wmr: unknown tie mode {ties!r}")
    found = _field(report, "found", "wmr")
    entry = report.get("weights")
    _expect(found == (entry is not None),
            "wmr: found flag disagrees with the weight payload")
    if entry is None:
        return
    ws = _rational_list(_field(entry, "weights", "wmr.weights"),
                        "wmr.weights.weights", rule.n)
    _expect(entry.get("sign_class") == sign_class,
            "wmr: weight payload declares the wrong sign class")
    _expect(_weights_in_class(ws, sign_class), "wmr: weights leave the sign class")
    _expect(weights_represent(rule, ws, ties), "wmr: weights fail a profile")


def _check_efficiency(report: dict) -> None:
    inputs = _field(report, "inputs", "efficiency")
    rule = VotingRule.from_json(_field(inputs, "rule", "efficiency.inputs"))
    dist = Distribution.from_json(_field(inputs, "dist", "efficiency.inputs"))
    mode = _field(inputs, "mode", "efficiency.inputs")
    _expect(mode in EFFICIENCY_MODES, f"efficiency: unknown mode {mode!r}")
    efficient = _field(report, "efficient", "efficiency")
    witness_json = report.get("witness")
    _expect(efficient == (witness_json is None),
            "efficiency: verdict disagrees with the witness payload")
    if witness_json is None:
        _expect(report.get("transport") is None,
                "efficiency: transport without a witness")
        return
    witness = RandomVotingRule.from_json(witness_json)
    base = responsiveness(rule, dist).values
    new = responsiveness(witness, dist).values
    if mode == "strict":
        _expect(all(b >= a for a, b in zip(base, new)),
                "efficiency: witness drops below the rule somewhere")
        _expect(witness.outcomes != RandomVotingRule.from_deterministic(rule).outcomes,
                "efficiency: witness does not differ from the rule")
    elif mode == "plain":
        _expect(all(b >= a for a, b in zip(base, new)) and sum(new) > sum(base),
                "efficiency: witness fails the improvement inequalities")
    else:
        _expect(all(b > a for a, b in zip(base, new)),
                "efficiency: witness fails the strict improvement")

    transport_json = report.get("transport")
    if transport_json is not None:
        try:
            expected = transport_distribution(dist, rule, witness)
        except NoTransportError as exc:
            raise Mismatch("efficiency: transport reported where none exists") from exc
        _expect(Distribution.from_json(transport_json) == expected,
                "efficiency: transport distribution does not match a recomputation")


def _check_dominance(report: dict) -> None:
    inputs = _field(report, "inputs", "dominance")
    first = load_rule(_field(inputs, "a", "dominance.inputs"))
    second = load_rule(_field(inputs, "b", "dominance.inputs"))
    dist = Distribution.from_json(_field(inputs, "dist", "dominance.inputs"))
    verdict = pareto_compare(first, second, dist)
    _expect(report.get("relation") == verdict.relation,
            "dominance: relation does not match a recomputation")
    _expect(report.get("direction") == verdict.direction,
            "dominance: direction does not match a recomputation")
    deltas = _rational_list(_field(report, "deltas", "dominance"),
                            "dominance.deltas", first.n)
    _expect(deltas == list(verdict.deltas),
            "dominance: deltas do not match a recomputation")


def _check_random_certify(report: dict) -> None:
    inputs = _field(report, "inputs", "random-certify")
    rule = load_rule(_field(inputs, "rule", "random-certify.inputs"))
    if isinstance(rule, VotingRule):
        rule = RandomVotingRule.from_deterministic(rule)
    robust = _field(report, "robust", "random-certify")
    weights_json = report.get("weights")
    counterexample_json = report.get("counterexample")
    _expect(robust == (weights_json is not None),
            "random-certify: verdict disagrees with the weight payload")
    _expect(robust == (counterexample_json is None),
            "random-certify: verdict disagrees with the counterexample payload")
    if robust:
        ws = _rational_list(_field(weights_json, "weights", "random-certify.weights"),
                            "random-certify.weights.weights", rule.n)
        _expect(_weights_in_class(ws, weights_json.get("sign_class", SIGN_CLASS_FREE)),
                "random-certify: weights leave their declared sign class")
        _expect(sign_pattern_holds(rule, ws),
                "random-certify: weights fail the outcome sign pattern")
    else:
        cx = Distribution.from_json(counterexample_json)
        values = responsiveness(rule, cx).values
        _expect(all(r <= Fraction(1, 2) for r in values),
                "random-certify: counterexample leaves someone responsive")


def _check_random_dominate(report: dict) -> None:
    inputs = _field(report, "inputs", "random-dominate")
    rule = RandomVotingRule.from_json(_field(inputs, "rule", "random-dominate.inputs"))
    found = _field(report, "found", "random-dominate")
    dominator_json = report.get("dominator")
    dist_json = report.get("distribution")
    _expect(found == (dominator_json is not None) == (dist_json is not None),
            "random-dominate: found flag disagrees with the payload")
    if not found:
        return
    dominator = VotingRule.from_json(dominator_json)
    dist = Distribution.from_json(dist_json)
    base = responsiveness(rule, dist).values
    new = responsiveness(dominator, dist).values
    _expect(all(b > a for a, b in zip(base, new)),
            "random-dominate: the cited rule does not strictly dominate")


def _check_enumerate(report: dict) -> None:
    inputs = _field(report, "inputs", "enumerate")
    n = _field(inputs, "n", "enumerate.inputs")
    predicate = _field(inputs, "predicate", "enumerate.inputs")
    count = _field(report, "count", "enumerate")
    _expect(isinstance(count, int) and count >= 0, "enumerate: malformed count")
    tables = report.get("tables")
    if tables is not None:
        _expect(isinstance(tables, list) and len(tables) == count,
                "enumerate: count disagrees with the table list")
        seen = set()
        for table in tables:
            VotingRule.from_table_string(n, table)
            _expect(table not in seen, f"enumerate: table {table} listed twice")
            seen.add(table)
    if predicate in RECOUNTABLE_PREDICATES:
        check = RECOUNTABLE_PREDICATES[predicate]
        matches = [r.to_table_string() for r in enumerate_rules(n) if check(r)]
        _expect(count == len(matches), "enumerate: count disagrees with a recount")
        if tables is not None:
            _expect(tables == matches,
                    "enumerate: table list disagrees with a recount")
    elif predicate not in CERTIFIED_PREDICATES:
        raise Mismatch(f"enumerate: unknown predicate {predicate!r}")
    # Certified predicates would need the solver to recount; the structural
    # checks above are all a certificate-only audit can replay.


def _check_epsilon(report: dict) -> None:
    inputs = _field(report, "inputs", "epsilon")
    n = _field(inputs, "n", "epsilon.inputs")
    _expect(isinstance(n, int) and n >= 1, "epsilon: malformed n")
    upper = parse_rational(_field(report, "upper", "epsilon"), "epsilon.upper")
    _expect(upper == 2**n - 2, "epsilon: upper threshold disagrees with 2^n - 2")

    binding = _field(report, "binding", "epsilon")
    rule = VotingRule.from_json(_field(binding, "rule", "epsilon.binding"))
    _expect(rule.n == n, "epsilon: binding rule has the wrong n")
    value = parse_rational(_field(binding, "value", "epsilon.binding"),
                           "epsilon.binding.value")
    size = 2**n
    ws = _rational_list(_field(binding, "individual_weights", "epsilon.binding"),
                        "epsilon.binding.individual_weights", n)
    mix = _rational_list(_field(binding, "adversary_mixture", "epsilon.binding"),
                         "epsilon.binding.adversary_mixture", size)
    _expect(_is_distribution_vector(ws) and _is_distribution_vector(mix),
            "epsilon: game strategies are not distributions")

    # Payoff at (i, x) is individual i's responsiveness under the point
    # mass at profile x.
    payoff = [
        [
            Fraction(rule.outcomes[idx] if idx >> i & 1 else -rule.outcomes[idx]) / 2
            + Fraction(1, 2)
            for idx in range(size)
        ]
        for i in range(n)
    ]
    for idx in range(size):
        got = sum((ws[i] * payoff[i][idx] for i in range(n)), Fraction(0))
        _expect(got >= value, "epsilon: individual weights fail to guarantee the value")
    for i in range(n):
        got = sum((payoff[i][idx] * mix[idx] for idx in range(size)), Fraction(0))
        _expect(got <= value, "epsilon: adversary mixture fails to hold the value")
    _expect(value > Fraction(1, 2), "epsilon: binding rule is not robust at its value")

    lower = _field(report, "lower", "epsilon")
    if value == 1:
        _expect(lower == "inf", "epsilon: lower threshold must be infinite at value 1")
    else:
        parsed = parse_rational(lower, "epsilon.lower")
        _expect(parsed == (2 * value - 1) / (1 - value),
                "epsilon: lower threshold disagrees with the gain ratio")
    # Minimality of the binding rule over all robust rules is a property of
    # the search, not of any finite certificate; the checks above confirm
    # the reported level is exactly attained by a robust rule.


def _check_gamma(report: dict) -> None:
    inputs = _field(report, "inputs", "gamma-witness")
    rule = VotingRule.from_json(_field(inputs, "rule", "gamma-witness.inputs"))
    _expect(is_dictatorship(rule) is None,
            "gamma-witness: the construction requires a dictatorless rule")
    witness = _field(report, "witness", "gamma-witness")
    _expect(witness.get("n") == rule.n, "gamma-witness: witness has the wrong n")
    size = 2**rule.n

    raw = _field(witness, "utilities", "gamma-witness")
    _expect(isinstance(raw, list) and len(raw) == size,
            "gamma-witness: utility table has the wrong height")
    utilities = []
    for idx, row in enumerate(raw):
        _expect(isinstance(row, list) and len(row) == rule.n
                and all(isinstance(pair, list) and len(pair) == 2 for pair in row),
                f"gamma-witness: malformed utility row {idx}")
        utilities.append(
            [
                (
                    parse_rational(pair[0], f"utilities[{idx}][{i}][0]"),
                    parse_rational(pair[1], f"utilities[{idx}][{i}][1]"),
                )
                for i, pair in enumerate(row)
            ]
        )
    expected = gamma_utilities(rule)
    _expect(all(tuple(utilities[idx]) == expected[idx] for idx in range(size)),
            "gamma-witness: utility table does not match the construction")

    mixture = _rational_list(_field(witness, "mixture", "gamma-witness"),
                             "gamma-witness.mixture", size)
    _expect(all(m == Fraction(1, size) for m in mixture),
            "gamma-witness: mixture is not uniform over states")

    gains = _rational_list(_field(witness, "net_gains", "gamma-witness"),
                           "gamma-witness.net_gains", rule.n)
    for i in range(rule.n):
        total = Fraction(0)
        for idx, outcome in enumerate(rule.outcomes):
            hi, lo = utilities[idx][i]
            won, lost = (hi, lo) if outcome == 1 else (lo, hi)
            total += mixture[idx] * (won - lost)
        _expect(total == gains[i],
                f"gamma-witness: net gain for individual {i + 1} is wrong")
        _expect(gains[i] <= 0,
                f"gamma-witness: individual {i + 1} would gain from the rule")


_CHECKS = {
    "classify": _check_classify,
    "certify": _check_certify,
    "respond": _check_respond,
    "rtf": _check_rtf,
    "wmr": _check_wmr,
    "efficiency": _check_efficiency,
    "dominance": _check_dominance,
    "random-certify": _check_random_certify,
    "random-dominate": _check_random_dominate,
    "enumerate": _check_enumerate,
    "epsilon": _check_epsilon,
    "gamma-witness": _check_gamma,
}


def verify_report(report) -> list[str]:
    """Re-derive every checkable claim in a report.

    Returns the list of problems found, empty when everything holds.  Any
    structural damage (missing fields, malformed rationals) is reported as
    a problem rather than raised.
    """
    if not isinstance(report, dict):
        return ["report: expected a JSON object"]
    if report.get("schema") != SCHEMA:
        return [f"schema: expected {SCHEMA!r}, got {report.get('schema')!r}"]
    command = report.get("command")
    if command == "verify":
        return ["verify reports carry no certificate to re-check"]
    check = _CHECKS.get(command)
    if check is None:
        return [f"command: unknown report kind {command!r}"]
    try:
        check(report)
    except Mismatch as exc:
        return [str(exc)]
    except FormatError as exc:
        return [str(exc)]
    except (KeyError, TypeError, ValueError, AttributeError, IndexError) as exc:
        return [f"{command}: malformed report: {exc}"]
    return []
