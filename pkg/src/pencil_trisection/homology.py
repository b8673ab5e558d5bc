"""Exact integer linear algebra for surface homology.

Everything here works on Python ints, so no product of transvections can
overflow.  Matrices are immutable; all functions are pure.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

HomologyClass = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("entry count does not match rows x cols")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], cols: int | None = None) -> IntMatrix:
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            if not data:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        for c in columns:
            if len(c) != rows:
                raise ValueError(f"column length {len(c)} does not match ambient rank {rows}")
        data = tuple(tuple(int(c[i]) for c in columns) for i in range(rows))
        return cls(rows, len(columns), data)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.data[i][j]

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ocols = list(zip(*other.data)) if other.rows else [()] * other.cols
        data = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ocols) for row in self.data
        )
        return IntMatrix(self.rows, other.cols, data)

    def apply(self, v: Sequence[int]) -> HomologyClass:
        if len(v) != self.cols:
            raise ValueError(f"vector length {len(v)} does not match {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.data)

    def transpose(self) -> IntMatrix:
        if not self.rows:
            return IntMatrix(self.cols, 0, tuple(() for _ in range(self.cols)))
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.data)))

    def column(self, j: int) -> HomologyClass:
        return tuple(r[j] for r in self.data)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == IntMatrix.identity(self.rows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]


def pairing(form: IntMatrix, u: Sequence[int], v: Sequence[int]) -> int:
    """Algebraic intersection <u, v> = u^T form v."""
    if not (len(u) == len(v) == form.rows == form.cols):
        raise ValueError("dimension mismatch between classes and intersection form")
    return sum(ui * sum(f * vj for f, vj in zip(row, v)) for ui, row in zip(u, form.data) if ui)


def is_primitive_or_zero(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = _gcd(g, x)
    return g in (0, 1)


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


# -- fiber homology ---------------------------------------------------------

@dataclass(frozen=True)
class FiberBasis:
    """Ordered basis a1, b1, ..., ah, bh, delta1, ..., delta_{b-1} of H1(F_{h,b}).

    The last boundary class is omitted; it equals minus the sum of the others.
    """

    h: int
    b: int
    labels: tuple[str, ...]

    @property
    def rank(self) -> int:
        return 2 * self.h + self.b - 1


def fiber_basis(h: int, b: int) -> FiberBasis:
    if h < 0:
        raise ValueError("fiber genus must be non-negative")
    if b < 1:
        raise ValueError("pencil fiber must have boundary")
    labels = []
    for i in range(1, h + 1):
        labels += [f"a{i}", f"b{i}"]
    labels += [f"delta{j}" for j in range(1, b)]
    return FiberBasis(h, b, tuple(labels))


def symplectic_form(pairs: int, extra: int = 0) -> IntMatrix:
    """Block-diagonal form with `pairs` copies of [[0,1],[-1,0]] followed by an
    `extra`-dimensional radical."""
    n = 2 * pairs + extra
    rows = [[0] * n for _ in range(n)]
    for p in range(pairs):
        rows[2 * p][2 * p + 1] = 1
        rows[2 * p + 1][2 * p] = -1
    return IntMatrix.from_rows(rows, n)


def fiber_intersection_form(basis: FiberBasis) -> IntMatrix:
    # boundary classes sit in the radical
    return symplectic_form(basis.h, basis.b - 1)


def transvection_matrix(form: IntMatrix, c: Sequence[int], chirality: int = 1) -> IntMatrix:
    """Matrix of x -> x + chirality * <x, c> c, the homological Dehn twist about c."""
    if chirality not in (1, -1):
        raise ValueError("chirality must be +1 or -1")
    n = form.rows
    if form.cols != n or len(c) != n:
        raise ValueError(f"dimension mismatch: form is {form.rows}x{form.cols}, class has length {len(c)}")
    # <e_j, c> = (form c)_j
    fc = form.apply(c)
    return IntMatrix(
        n, n,
        tuple(tuple(int(i == j) + chirality * c[i] * fc[j] for j in range(n)) for i in range(n)),
    )


# -- Smith normal form ------------------------------------------------------

def _pick_pivot(a: list[list[int]], t: int) -> tuple[int, int] | None:
    best = None
    best_abs = 0
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            x = row[j]
            if x and (best is None or abs(x) < best_abs):
                best, best_abs = (i, j), abs(x)
                if best_abs == 1:
                    return best
    return best


def _diagonalize(m: IntMatrix, track: bool):
    a = [list(r) for r in m.data]
    nr, nc = m.rows, m.cols
    u = [[int(i == j) for j in range(nr)] for i in range(nr)] if track else None
    v = [[int(i == j) for j in range(nc)] for i in range(nc)] if track else None

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        if track:
            u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        if track:
            for row in v:
                row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):  # row dst += q * row src
        ad, asrc = a[dst], a[src]
        for j in range(nc):
            if asrc[j]:
                ad[j] += q * asrc[j]
        if track:
            ud, us = u[dst], u[src]
            for j in range(nr):
                if us[j]:
                    ud[j] += q * us[j]

    def add_col(dst, src, q):  # col dst += q * col src
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        if track:
            for row in v:
                if row[src]:
                    row[dst] += q * row[src]

    for t in range(min(nr, nc)):
        while True:
            piv = _pick_pivot(a, t)
            if piv is None:
                return a, u, v
            i, j = piv
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = a[t][t]
            clean = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if track:
                u[t] = [-x for x in u[t]]
    return a, u, v


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with D = U @ m @ V, U and V unimodular, D diagonal with
    non-negative entries d_i dividing d_{i+1}.

    Pivots are the smallest nonzero absolute value, ties to the lowest row and
    then the lowest column.
    """
    a, u, v = _diagonalize(m, track=True)
    return (
        IntMatrix.from_rows(u, m.rows),
        IntMatrix.from_rows(a, m.cols),
        IntMatrix.from_rows(v, m.cols),
    )


def elementary_divisors(m: IntMatrix) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form."""
    a, _, _ = _diagonalize(m, track=False)
    return [a[i][i] for i in range(min(m.rows, m.cols)) if a[i][i]]


def cokernel_divisors(ambient_rank: int, columns: Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    """Structure of Z^ambient_rank / <columns> as (free rank, torsion divisors > 1)."""
    m = IntMatrix.from_columns(list(columns), ambient_rank)
    divs = elementary_divisors(m)
    return ambient_rank - len(divs), [d for d in divs if d > 1]


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    a = [list(r) for r in m.data]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1
