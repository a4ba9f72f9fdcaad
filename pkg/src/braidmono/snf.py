"""Exact integer matrices, Smith normal form, and abelian invariants.

All arithmetic uses Python integers, so nothing can overflow silently.
"""

from __future__ import annotations

import dataclasses
from math import gcd
from typing import Sequence


@dataclasses.dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", tuple(tuple(int(x) for x in r) for r in self.rows))

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]]) -> IntMatrix:
        return IntMatrix(tuple(tuple(r) for r in rows))

    @staticmethod
    def identity(n: int) -> IntMatrix:
        return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __mul__(self, other: IntMatrix) -> IntMatrix:
        m, k = self.shape
        k2, n = other.shape
        if k != k2:
            raise ValueError("shape mismatch")
        return IntMatrix(
            tuple(
                tuple(sum(self.rows[i][t] * other.rows[t][j] for t in range(k)) for j in range(n))
                for i in range(m)
            )
        )

    def determinant(self) -> int:
        m, n = self.shape
        if m != n:
            raise ValueError("determinant of a nonsquare matrix")
        a = [list(r) for r in self.rows]
        det = 1
        for col in range(n):
            pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
            if pivot is None:
                return 0
            if pivot != col:
                a[col], a[pivot] = a[pivot], a[col]
                det = -det
            # Fraction-free elimination via exact gcd steps.
            for r in range(col + 1, n):
                while a[r][col] != 0:
                    q = a[col][col] // a[r][col]
                    a[col] = [x - q * y for x, y in zip(a[col], a[r])]
                    a[col], a[r] = a[r], a[col]
                    det = -det
            det_pivot = a[col][col]
            if det_pivot == 0:
                return 0
        for i in range(n):
            det *= a[i][i]
        return det


@dataclasses.dataclass(frozen=True)
class SmithNormalForm:
    """U * M * V = diag(factors), with U and V unimodular."""

    factors: tuple[int, ...]
    left: IntMatrix
    right: IntMatrix


def smith_normal_form(m: IntMatrix) -> SmithNormalForm:
    """Diagonalize by unimodular row/column operations; d1 | d2 | ... holds."""
    rows, cols = m.shape
    a = [list(r) for r in m.rows]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for r in a:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        # Find a pivot of minimal absolute value in the remaining block.
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        clean = False
        while not clean:
            clean = True
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        clean = False
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        clean = False
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    # Enforce the divisibility chain d_i | d_{i+1}.
    k = t
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            if a[i][i] != 0 and a[i + 1][i + 1] % a[i][i] != 0:
                add_col(i, i + 1, 1)
                # Re-clear the 2x2 corner with gcd steps.
                while a[i + 1][i] != 0:
                    q = a[i][i] // a[i + 1][i] if a[i + 1][i] != 0 else 0
                    if abs(a[i + 1][i]) <= abs(a[i][i]) and a[i + 1][i] != 0:
                        add_row(i, i + 1, -(a[i][i] // a[i + 1][i]))
                        swap_rows(i, i + 1)
                    else:
                        add_row(i + 1, i, -(a[i + 1][i] // a[i][i]))
                while a[i][i + 1] != 0:
                    add_col(i + 1, i, -(a[i][i + 1] // a[i][i]))
                if a[i][i] < 0:
                    negate_row(i)
                if a[i + 1][i + 1] < 0:
                    negate_row(i + 1)
                changed = True
    factors = tuple(a[i][i] for i in range(min(rows, cols)))
    return SmithNormalForm(factors, IntMatrix.from_rows(u), IntMatrix.from_rows(v))


@dataclasses.dataclass(frozen=True)
class AbelianGroup:
    """Invariant factors d1 | d2 | ... (each >= 2) plus a free rank."""

    invariant_factors: tuple[int, ...]
    free_rank: int

    def __post_init__(self):
        for d, e in zip(self.invariant_factors, self.invariant_factors[1:]):
            if e % d != 0:
                raise ValueError("invariant factors must form a divisibility chain")
        if any(d < 2 for d in self.invariant_factors):
            raise ValueError("invariant factors must be >= 2")

    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return not self.invariant_factors and self.free_rank == 0

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "trivial"


def quotient_group(relations: Sequence[Sequence[int]], rank: int) -> AbelianGroup:
    """The quotient of Z^rank by the span of the given relation vectors."""
    relations = [list(r) for r in relations]
    if not relations:
        return AbelianGroup((), rank)
    snf = smith_normal_form(IntMatrix.from_rows(relations))
    nonzero = [d for d in snf.factors if d != 0]
    return AbelianGroup(tuple(d for d in nonzero if d > 1), rank - len(nonzero))


def in_integer_span(vectors: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    """Whether target lies in the integer span of the given vectors."""
    vecs = [list(v) for v in vectors if any(v)]
    if not any(target):
        return True
    if not vecs:
        return False
    # Solve x * A = target via the Smith form of A (rows = vectors).
    a = IntMatrix.from_rows(vecs)
    snf = smith_normal_form(a)
    rows, cols = a.shape
    # U A V = D, so x A = t  <=>  (x U^-1) D = t V, i.e. y D = t V.
    tv = [sum(int(target[i]) * snf.right.rows[i][j] for i in range(cols)) for j in range(cols)]
    for j in range(cols):
        d = snf.factors[j] if j < len(snf.factors) else 0
        if d == 0:
            if tv[j] != 0:
                return False
        elif tv[j] % d != 0:
            return False
    return True


def invariant_factors_by_minors(m: IntMatrix) -> tuple[int, ...]:
    """Independent oracle: d_k = gcd(k-minors) / gcd((k-1)-minors).

    Exponential in the matrix size; use on desk-scale matrices only.
    """
    import itertools

    rows, cols = m.shape
    limit = min(rows, cols)
    prev = 1
    out = []
    for k in range(1, limit + 1):
        g = 0
        for rset in itertools.combinations(range(rows), k):
            for cset in itertools.combinations(range(cols), k):
                sub = IntMatrix.from_rows([[m.rows[i][j] for j in cset] for i in rset])
                g = gcd(g, sub.determinant())
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return tuple(out)
