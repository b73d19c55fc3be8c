"""Independent desk-scale oracles for cross-checking the package.

Everything here decides small problems by elimination or enumeration,
deliberately sharing no code path with the simplex engine under test.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

STRICT = ">"
WEAK = ">="


def _normalize(coeffs, strict, rhs):
    # Scale so the first nonzero coefficient (or the rhs) has absolute
    # value one, keeping direction; lets duplicates collapse.
    for c in coeffs:
        if c != 0:
            scale = abs(c)
            return tuple(v / scale for v in coeffs), strict, rhs / scale
    if rhs != 0:
        return coeffs, strict, rhs / abs(rhs)
    return coeffs, strict, rhs


def fm_feasible(constraints, num_vars: int) -> bool:
    """Fourier-Motzkin feasibility over the reals.

    constraints is an iterable of (coeffs, rel, rhs) with rel in {">", ">="},
    meaning sum(coeffs[k] * x[k]) rel rhs.  Equalities must be passed as two
    opposite weak rows.  Exact rationals throughout.
    """
    rows = set()
    for coeffs, rel, rhs in constraints:
        if rel not in (STRICT, WEAK):
            raise ValueError(f"unknown relation {rel!r}")
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != num_vars:
            raise ValueError("coefficient length mismatch")
        rows.add(_normalize(coeffs, rel == STRICT, Fraction(rhs)))

    for var in range(num_vars):
        lowers = []   # rows giving x_var >= or > something
        uppers = []   # rows giving x_var <= or < something
        others = set()
        for coeffs, strict, rhs in rows:
            c = coeffs[var]
            if c == 0:
                others.add((coeffs, strict, rhs))
            elif c > 0:
                lowers.append((coeffs, strict, rhs))
            else:
                uppers.append((coeffs, strict, rhs))
        rows = set(others)
        for (lc, ls, lr), (uc, us, ur) in itertools.product(lowers, uppers):
            # Combine with positive multipliers cancelling x_var. The
            # result is strict iff either parent is.
            a = lc[var]
            b = -uc[var]
            coeffs = tuple(b * lc[k] + a * uc[k] for k in range(num_vars))
            rows.add(_normalize(coeffs, ls or us, b * lr + a * ur))

    for coeffs, strict, rhs in rows:
        assert all(c == 0 for c in coeffs)
        if strict:
            if not 0 > rhs:
                return False
        elif not 0 >= rhs:
            return False
    return True


def _solve_square(matrix, vector):
    """Gaussian elimination over Fractions; None when singular."""
    size = len(matrix)
    aug = [list(matrix[i]) + [vector[i]] for i in range(size)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        scale = aug[col][col]
        aug[col] = [v / scale for v in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[col])]
    return [aug[r][size] for r in range(size)]


def game_value_by_supports(matrix) -> Fraction:
    """Value of a zero-sum game (row maximizer) by support enumeration.

    Exact and independent of any LP code; intended for a handful of rows.
    For each candidate pair of equal-size supports, solve the equalization
    systems and keep the first pair whose strategies are nonnegative and
    undominated outside the supports.
    """
    rows = len(matrix)
    cols = len(matrix[0])
    grid = [[Fraction(v) for v in row] for row in matrix]

    for size in range(1, min(rows, cols) + 1):
        for srow in itertools.combinations(range(rows), size):
            for scol in itertools.combinations(range(cols), size):
                # Row strategy w on srow with w.R equal to v on scol,
                # sum w = 1. Unknowns: w (size entries) and v.
                a = []
                b = []
                for j in scol:
                    a.append([grid[i][j] for i in srow] + [Fraction(-1)])
                    b.append(Fraction(0))
                a.append([Fraction(1)] * size + [Fraction(0)])
                b.append(Fraction(1))
                row_solution = _solve_square(a, b)
                if row_solution is None:
                    continue
                w = row_solution[:size]
                value = row_solution[size]
                if any(x < 0 for x in w):
                    continue

                a = []
                b = []
                for i in srow:
                    a.append([grid[i][j] for j in scol] + [Fraction(-1)])
                    b.append(Fraction(0))
                a.append([Fraction(1)] * size + [Fraction(0)])
                b.append(Fraction(1))
                col_solution = _solve_square(a, b)
                if col_solution is None:
                    continue
                lam = col_solution[:size]
                if col_solution[size] != value or any(x < 0 for x in lam):
                    continue

                full_w = [Fraction(0)] * rows
                for k, i in enumerate(srow):
                    full_w[i] = w[k]
                full_lam = [Fraction(0)] * cols
                for k, j in enumerate(scol):
                    full_lam[j] = lam[k]
                if any(
                    sum(full_w[i] * grid[i][j] for i in range(rows)) < value
                    for j in range(cols)
                ):
                    continue
                if any(
                    sum(grid[i][j] * full_lam[j] for j in range(cols)) > value
                    for i in range(rows)
                ):
                    continue
                return value
    raise AssertionError("support enumeration found no equilibrium")


def wmr_exists_by_elimination(rule, sign_class: str, ties: str) -> bool:
    """Weight-vector existence decided by Fourier-Motzkin alone.

    Builds the per-profile sign constraints plus the sign-class rows and
    eliminates the n weight variables.  The all-zero vector satisfies every
    weak homogeneous system, so the tie-allowed variants need a nonzero
    guard; scaling invariance lets a single normalization row serve, but
    only per orthant, so the free tie-allowed query is decided by pinning
    each coordinate to each sign in turn.
    """
    n = rule.n
    rows = []
    relation = STRICT if ties == "forbidden" else WEAK
    for idx, outcome in enumerate(rule.outcomes):
        coeffs = tuple(
            Fraction(outcome if idx >> i & 1 else -outcome) for i in range(n)
        )
        rows.append((coeffs, relation, Fraction(0)))

    def unit(i):
        return tuple(Fraction(1 if k == i else 0) for k in range(n))

    if sign_class == "positive":
        for i in range(n):
            rows.append((unit(i), STRICT, Fraction(0)))
        return fm_feasible(rows, n)
    if sign_class == "nonnegative":
        for i in range(n):
            rows.append((unit(i), WEAK, Fraction(0)))
        if ties == "forbidden":
            return fm_feasible(rows, n)
        guard = (tuple(Fraction(1) for _ in range(n)), STRICT, Fraction(0))
        return fm_feasible(rows + [guard], n)
    if sign_class == "free":
        if ties == "forbidden":
            return fm_feasible(rows, n)
        for i in range(n):
            for sign in (1, -1):
                pin = (unit(i), STRICT, Fraction(0)) if sign == 1 else (
                    tuple(-v for v in unit(i)), STRICT, Fraction(0)
                )
                if fm_feasible(rows + [pin], n):
                    return True
        return False
    raise ValueError(f"unknown sign class {sign_class!r}")
