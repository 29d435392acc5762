"""Exact Gaussian elimination over the rationals for small systems."""

from __future__ import annotations

from fractions import Fraction


class InconsistentSystemError(Exception):
    """The linear system has no solution."""


def solve_linear(equations, variables):
    """Solve sum_v coeff[v] * v = rhs for each (coeff, rhs) in ``equations``.

    Returns (solution, free) where solution maps pivot variables to exact
    rationals and ``free`` lists the variables the system leaves
    undetermined (their value is taken as 0 in ``solution``).  Raises
    InconsistentSystemError when no solution exists.
    """
    variables = list(variables)
    index = {v: i for i, v in enumerate(variables)}
    rows = []
    for coeff, rhs in equations:
        row = [Fraction(0)] * len(variables) + [Fraction(rhs)]
        for v, c in coeff.items():
            row[index[v]] = Fraction(c)
        rows.append(row)

    pivots = {}
    r = 0
    for col in range(len(variables)):
        pivot_row = None
        for k in range(r, len(rows)):
            if rows[k][col]:
                pivot_row = k
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        factor = rows[r][col]
        rows[r] = [v / factor for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col]:
                f = rows[k][col]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots[col] = r
        r += 1

    for row in rows[r:]:
        if row[-1]:
            raise InconsistentSystemError("linear system has no solution")

    free = [v for i, v in enumerate(variables) if i not in pivots]
    solution = {}
    for col, prow in pivots.items():
        solution[variables[col]] = rows[prow][-1]
    for v in free:
        solution[v] = Fraction(0)
    return solution, free
