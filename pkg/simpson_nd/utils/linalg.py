"""Exact Gauss-Jordan elimination and determinants over Scalars."""
import logging
from typing import List, Sequence, Tuple

from simpson_nd.models.report import Infeasible, LinearSolveOutcome, UniqueSolution, Underdetermined
from simpson_nd.models.scalar import ONE, ZERO, Scalar, as_scalar, is_zero

logger = logging.getLogger(__name__)

Matrix = List[List[Scalar]]


def _copy(rows: Sequence[Sequence]) -> Matrix:
    return [[as_scalar(x) for x in row] for row in rows]


def row_reduce(rows: Sequence[Sequence], pivot_columns: int = None) -> Tuple[Matrix, List[int], Matrix]:
    """Reduced row echelon form.

    Returns (reduced, pivots, multipliers) with reduced == multipliers @ rows.
    Only the first `pivot_columns` columns are used as pivots, so an augmented
    right-hand side is carried along without being pivoted on.
    """
    m = _copy(rows)
    n_rows = len(m)
    if n_rows == 0:
        return m, [], []
    n_cols = len(m[0]) if pivot_columns is None else pivot_columns
    y = [[ONE if i == j else ZERO for j in range(n_rows)] for i in range(n_rows)]
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        found = next((i for i in range(r, n_rows) if not is_zero(m[i][c])), None)
        if found is None:
            continue
        m[r], m[found] = m[found], m[r]
        y[r], y[found] = y[found], y[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        y[r] = [x / p for x in y[r]]
        for i in range(n_rows):
            if i == r or is_zero(m[i][c]):
                continue
            f = m[i][c]
            m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            y[i] = [a - f * b for a, b in zip(y[i], y[r])]
        logger.debug("pivot at row %d column %d", r, c)
        pivots.append(c)
        r += 1
    return m, pivots, y


def determinant(rows: Sequence[Sequence]) -> Scalar:
    m = _copy(rows)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    det: Scalar = ONE
    for c in range(n):
        found = next((i for i in range(c, n) if not is_zero(m[i][c])), None)
        if found is None:
            return ZERO
        if found != c:
            m[c], m[found] = m[found], m[c]
            det = -det
        p = m[c][c]
        det = det * p
        for i in range(c + 1, n):
            if is_zero(m[i][c]):
                continue
            f = m[i][c] / p
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def solve_linear(rows: Sequence[Sequence], rhs: Sequence, labels: Sequence[str] = None) -> LinearSolveOutcome:
    """Solve rows @ w = rhs exactly.

    An inconsistent system comes back as Infeasible with the multipliers that
    combine the equations into 0 = mismatch.
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    labels = list(labels) if labels is not None else [f"eq{i}" for i in range(n_rows)]
    augmented = [list(row) + [value] for row, value in zip(rows, rhs)]
    reduced, pivots, y = row_reduce(augmented, pivot_columns=n_cols)
    for i in range(len(pivots), n_rows):
        if not is_zero(reduced[i][-1]):
            multipliers = y[i]
            used = tuple(label for label, k in zip(labels, multipliers) if not is_zero(k))
            logger.info("inconsistent system: %s", ", ".join(used))
            return Infeasible(
                reason="inconsistent",
                equations=used,
                multipliers=tuple(multipliers),
                mismatch=reduced[i][-1],
            )
    solution = [ZERO] * n_cols
    for r, c in enumerate(pivots):
        solution[c] = reduced[r][-1]
    if len(pivots) == n_cols:
        return UniqueSolution(tuple(solution))
    return Underdetermined(tuple(solution), n_cols - len(pivots))
