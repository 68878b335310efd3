"""Dense polynomial matrices and exact linear algebra over Q."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm

from ...errors import IntegrityError, UsageError
from .poly import Poly

logger = logging.getLogger(__name__)


class PolyMatrix:
    """Immutable rectangular matrix of polynomials over one variable list.

    Args:
        rows: Row-major entries; ints and Fractions are promoted to constants.
        variables: Ambient variables. Inferred from the first Poly entry when omitted.
    """

    __slots__ = ('_rows', '_variables')

    def __init__(self, rows: Sequence[Sequence[object]], variables: Sequence[str] | None = None):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise UsageError("a matrix needs at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise UsageError("matrix rows have different lengths")
        if variables is None:
            first = next((e for r in rows for e in r if isinstance(e, Poly)), None)
            if first is None:
                raise UsageError("cannot infer variables from a matrix without polynomial entries")
            variables = first.variables
        variables = tuple(variables)
        grid = []
        for r in rows:
            out = []
            for entry in r:
                if isinstance(entry, Poly):
                    if entry.variables != variables:
                        raise UsageError(
                            f"entry variables {list(entry.variables)} differ from {list(variables)}"
                        )
                    out.append(entry)
                else:
                    out.append(Poly.constant(variables, entry))
            grid.append(tuple(out))
        self._rows = tuple(grid)
        self._variables = variables

    @classmethod
    def identity(cls, n: int, variables: Sequence[str]) -> PolyMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], variables)

    @classmethod
    def diagonal(cls, entries: Sequence[Poly]) -> PolyMatrix:
        variables = entries[0].variables
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], variables)

    @property
    def rows(self) -> int:
        return len(self._rows)

    @property
    def cols(self) -> int:
        return len(self._rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def variables(self) -> tuple[str, ...]:
        return self._variables

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: tuple[int, int]) -> Poly:
        i, j = index
        return self._rows[i][j]

    def row(self, i: int) -> tuple[Poly, ...]:
        return self._rows[i]

    def to_lists(self) -> list[list[Poly]]:
        return [list(r) for r in self._rows]

    def map(self, fn: Callable[[Poly], Poly]) -> PolyMatrix:
        rows = [[fn(e) for e in r] for r in self._rows]
        return PolyMatrix(rows, rows[0][0].variables)

    def subs(self, assignment) -> PolyMatrix:
        return self.map(lambda e: e.subs(assignment))

    def transpose(self) -> PolyMatrix:
        return PolyMatrix([list(col) for col in zip(*self._rows)], self._variables)

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if other.shape != self.shape:
            raise UsageError(f"shape mismatch {self.shape} vs {other.shape}")
        return PolyMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)],
                          self._variables)

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise UsageError(f"cannot multiply {self.shape} by {other.shape}")
        zero = Poly.zero(self._variables)
        rows = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    acc = acc + self._rows[i][k] * other._rows[k][j]
                row.append(acc)
            rows.append(row)
        return PolyMatrix(rows, self._variables)

    matmul = __matmul__

    def scale(self, factor: object) -> PolyMatrix:
        return self.map(lambda e: e.scale(factor))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self._variables == other._variables and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self._rows) + "]"

    def __repr__(self) -> str:
        return f"PolyMatrix({self}, variables={list(self._variables)!r})"

    # ------------------------------------------------------------------
    # Determinants
    # ------------------------------------------------------------------

    def _require_square(self) -> None:
        if not self.is_square():
            raise UsageError(f"determinant needs a square matrix, got {self.rows}x{self.cols}")

    def principal_minor(self, indices: Sequence[int]) -> PolyMatrix:
        return PolyMatrix([[self._rows[i][j] for j in indices] for i in indices], self._variables)

    def det(self) -> Poly:
        """Determinant by fraction-free (Bareiss) elimination.

        Tower entries fall back to cofactor expansion, as do matrices up to 2x2.
        """
        self._require_square()
        if self.rows <= 2 or not all(e.is_flat for r in self._rows for e in r):
            return self.cofactor_det()
        return self._bareiss()

    def cofactor_det(self) -> Poly:
        """Determinant by Laplace expansion along the first row."""
        self._require_square()
        return _cofactor(self.to_lists(), self._variables)

    def _bareiss(self) -> Poly:
        n = self.rows
        m = self.to_lists()
        sign = 1
        previous = Poly.constant(self._variables, 1)
        for k in range(n - 1):
            if m[k][k].is_zero():
                swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
                if swap is None:
                    return Poly.zero(self._variables)
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            pivot = m[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    numerator = m[i][j] * pivot - m[i][k] * m[k][j]
                    quotient = numerator.divide_exact(previous)
                    if quotient is None:
                        raise IntegrityError(f"Bareiss step {k} left a remainder dividing by {previous}")
                    m[i][j] = quotient
                m[i][k] = Poly.zero(self._variables)
            previous = pivot
        result = m[n - 1][n - 1]
        return -result if sign < 0 else result

    def charpoly_coeffs(self) -> list[Poly]:
        """``[c1, ..., cn]`` with ``det(tI + M) = sum_j c_j t^(n-j)`` and ``c0 = 1``.

        c_j is the sum of the j-by-j principal minors, so c1 is the trace and
        cn the determinant.
        """
        self._require_square()
        n = self.rows
        coeffs = []
        for size in range(1, n + 1):
            acc = Poly.zero(self._variables)
            for indices in combinations(range(n), size):
                acc = acc + self.principal_minor(indices).det()
            coeffs.append(acc)
        return coeffs


def _cofactor(m: list[list[Poly]], variables: tuple[str, ...]) -> Poly:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = Poly.zero(variables)
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _cofactor(minor, variables)
        total = total + term if j % 2 == 0 else total - term
    return total


def solve_linear_system(
    matrix: Sequence[Sequence[Fraction | int]],
    rhs: Sequence[Sequence[Fraction | int]],
) -> list[list[Fraction] | None]:
    """Solve ``A x = b`` exactly for several right-hand sides.

    Rows are cleared to integers and reduced by fraction-free elimination,
    dividing each row by the gcd of its entries. Pivots are taken in column
    order and free variables are set to zero, so the answer is deterministic.

    Args:
        matrix: m x k coefficient rows.
        rhs: m x r right-hand sides, one column per system.

    Returns:
        One solution vector per right-hand-side column, or None for an
        inconsistent column.
    """
    rows = len(matrix)
    if len(rhs) != rows:
        raise UsageError(f"{rows} equations but {len(rhs)} right-hand-side rows")
    unknowns = len(matrix[0]) if rows else 0
    columns = len(rhs[0]) if rows else 0

    work: list[list[int]] = []
    for a_row, b_row in zip(matrix, rhs):
        if len(a_row) != unknowns or len(b_row) != columns:
            raise UsageError("ragged linear system")
        entries = [Fraction(x) for x in a_row] + [Fraction(x) for x in b_row]
        scale = lcm(*(x.denominator for x in entries)) if entries else 1
        work.append(_primitive([int(x * scale) for x in entries]))

    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(unknowns):
        if r == rows:
            break
        pivot_row = next((i for i in range(r, rows) if work[i][c]), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        p = work[r][c]
        for i in range(rows):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = _primitive([p * x - f * y for x, y in zip(work[i], work[r])])
        pivots.append((r, c))
        r += 1

    logger.debug("linear system %dx%d reduced to rank %d", rows, unknowns, len(pivots))
    solutions: list[list[Fraction] | None] = []
    for k in range(columns):
        col = unknowns + k
        if any(work[i][col] for i in range(r, rows)):
            solutions.append(None)
            continue
        x = [Fraction(0)] * unknowns
        for row_index, c in pivots:
            x[c] = Fraction(work[row_index][col], work[row_index][c])
        solutions.append(x)
    return solutions


def _primitive(row: list[int]) -> list[int]:
    g = gcd(*row)
    if g > 1:
        return [x // g for x in row]
    return row
