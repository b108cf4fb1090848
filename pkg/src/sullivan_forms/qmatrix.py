"""Exact rational square matrices.

Matrices act on column coordinate vectors.  Determinants use fraction-free
(Bareiss) elimination on a common-denominator integer matrix; inverses use
Gauss-Jordan elimination over :class:`~fractions.Fraction`.

Text format: one row per line, entries separated by whitespace, each entry
an integer or ``p/q``.  A group file is a blank-line-separated list of such
matrices.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotInvertible, PolySyntaxError
from .polycore import format_coefficient


class QMatrix:
    __slots__ = ("_rows", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix must be square and nonempty")
        self._rows = rows
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries: Sequence) -> "QMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def permutation(cls, perm: Sequence[int], signs: Sequence[int] | None = None) -> "QMatrix":
        """Matrix sending basis vector ``e_j`` to ``signs[j] * e_{perm[j]}``."""
        n = len(perm)
        signs = signs or [1] * n
        rows = [[0] * n for _ in range(n)]
        for j, i in enumerate(perm):
            rows[i][j] = signs[j]
        return cls(rows)

    @classmethod
    def random_invertible(cls, n: int, rng: random.Random, bound: int = 3) -> "QMatrix":
        while True:
            m = cls(
                [
                    [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(n)]
                    for _ in range(n)
                ]
            )
            if m.det() != 0:
                return m

    @property
    def n(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._rows)
        return self._hash

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if other.n != self.n:
            raise DimensionMismatch(f"{self.n} vs {other.n}")
        cols = list(zip(*other._rows))
        return QMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._rows])

    def __mul__(self, c) -> "QMatrix":
        return QMatrix([[x * c for x in r] for r in self._rows])

    __rmul__ = __mul__

    def __neg__(self) -> "QMatrix":
        return self * -1

    def transpose(self) -> "QMatrix":
        return QMatrix(zip(*self._rows))

    @property
    def T(self) -> "QMatrix":
        return self.transpose()

    def apply(self, vec: Sequence) -> tuple[Fraction, ...]:
        return tuple(sum(a * Fraction(x) for a, x in zip(r, vec)) for r in self._rows)

    def is_identity(self) -> bool:
        return self == QMatrix.identity(self.n)

    def det(self) -> Fraction:
        """Determinant via Bareiss elimination on the integer matrix ``L*self``."""
        n = self.n
        scale = lcm(*(x.denominator for r in self._rows for x in r))
        m = [[int(x * scale) for x in r] for r in self._rows]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return Fraction(0)
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return Fraction(sign * m[n - 1][n - 1], scale**n)

    def inverse(self) -> "QMatrix":
        n = self.n
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self._rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if aug[r][col]), None)
            if pivot is None:
                raise NotInvertible("singular matrix")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            p = aug[col][col]
            aug[col] = [x / p for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        return QMatrix(row[n:] for row in aug)

    def __str__(self) -> str:
        return format_matrix(self)

    def __repr__(self) -> str:
        return f"QMatrix({[[format_coefficient(x) for x in r] for r in self._rows]})"


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q of an arbitrary (not necessarily square) matrix."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, len(m)):
            if m[i][col]:
                f = m[i][col] / m[r][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def _parse_entry(tok: str, line: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise PolySyntaxError(f"bad matrix entry {tok!r} on line {line}", 0) from None


def parse_matrix(text: str) -> QMatrix:
    rows = []
    for lineno, line in enumerate(text.strip().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append([_parse_entry(t, lineno) for t in line.split()])
    if not rows or any(len(r) != len(rows) for r in rows):
        raise PolySyntaxError("matrix must be square", 0)
    return QMatrix(rows)


def parse_matrix_list(text: str) -> list[QMatrix]:
    blocks, cur = [], []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            cur.append(line)
        elif cur:
            blocks.append(cur)
            cur = []
    if cur:
        blocks.append(cur)
    return [parse_matrix("\n".join(b)) for b in blocks]


def format_matrix(m: QMatrix) -> str:
    return "\n".join(" ".join(format_coefficient(x) for x in r) for r in m.rows)


def format_matrix_list(ms: Iterable[QMatrix]) -> str:
    return "\n\n".join(format_matrix(m) for m in ms) + "\n"
