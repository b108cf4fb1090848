"""Finite rational matrix groups acting on polynomial forms.

The action on polynomials is ``(g . p)(u) = p(g^{-1} u)``; with the
coordinate convention of :func:`~sullivan_forms.polycore.substitute_linear`
this is ``substitute_linear(p, g.inverse())``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Sequence

from .errors import (
    Degenerate,
    DimensionMismatch,
    NonHomogeneous,
    NotInvertible,
    NotQuadratic,
    OrderBoundExceeded,
    VarSpaceMismatch,
)
from .polycore import Poly, VarSpace, monomials_of_degree, substitute_linear
from .qmatrix import QMatrix

DEFAULT_MAX_ORDER = 10_000


@dataclass(frozen=True)
class FiniteMatrixGroup:
    generators: tuple[QMatrix, ...]
    elements: tuple[QMatrix, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def n(self) -> int:
        return self.elements[0].n

    def __contains__(self, g: QMatrix) -> bool:
        return g in set(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class FormFamily:
    """Ordered nonzero homogeneous forms over one variable space."""

    forms: tuple[Poly, ...]

    def __post_init__(self):
        forms = tuple(self.forms)
        object.__setattr__(self, "forms", forms)
        if forms:
            space = forms[0].space
            for i, q in enumerate(forms):
                if q.space != space:
                    raise VarSpaceMismatch(f"form {i} lives over {q.space.names}")
                if q.is_zero():
                    raise ValueError(f"form {i} is zero")
                if not q.is_homogeneous():
                    raise NonHomogeneous(f"form {i} is not homogeneous")

    @property
    def space(self) -> VarSpace:
        return self.forms[0].space

    @property
    def n(self) -> int:
        return len(self.space)

    def degrees(self) -> list[int]:
        return [q.weighted_degree() for q in self.forms]

    def __len__(self) -> int:
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def __getitem__(self, i):
        return self.forms[i]


def group_closure(generators: Sequence[QMatrix], max_order: int = DEFAULT_MAX_ORDER) -> FiniteMatrixGroup:
    """Enumerate the group generated by ``generators`` breadth-first.

    Raises :class:`OrderBoundExceeded` once more than ``max_order`` distinct
    elements have been found, which is how infinite groups show up.
    """
    generators = tuple(generators)
    if not generators:
        raise ValueError("at least one generator is required")
    n = generators[0].n
    for g in generators:
        if g.n != n:
            raise DimensionMismatch("generators of different sizes")
        if g.det() == 0:
            raise NotInvertible(f"generator is singular:\n{g}")
    identity = QMatrix.identity(n)
    seen = {identity}
    elements = [identity]
    queue = deque([identity])
    # for a finite group, closing under right multiplication by generators suffices
    while queue:
        h = queue.popleft()
        for g in generators:
            hg = h @ g
            if hg not in seen:
                seen.add(hg)
                elements.append(hg)
                if len(elements) > max_order:
                    raise OrderBoundExceeded(f"more than {max_order} elements; group is likely infinite")
                queue.append(hg)
    return FiniteMatrixGroup(generators, tuple(elements))


def act(g: QMatrix, p: Poly) -> Poly:
    return substitute_linear(p, g.inverse())


def _forms_of(F) -> tuple[Poly, ...]:
    return tuple(F.forms) if hasattr(F, "forms") else tuple(F)


def is_orthogonal(f: QMatrix, F) -> bool:
    """True iff ``q o f == q`` for every form of ``F`` (exact)."""
    forms = _forms_of(F)
    if not forms:
        return True
    if f.n != len(forms[0].space):
        raise DimensionMismatch(f"{f.n}x{f.n} matrix for {len(forms[0].space)} variables")
    # cheapest forms first, so most non-members are rejected early
    for q in sorted(forms, key=lambda q: (q.degree(), len(q))):
        if substitute_linear(q, f) != q:
            return False
    return True


def reynolds(G: FiniteMatrixGroup | Iterable[QMatrix], p: Poly) -> Poly:
    """Unnormalized orbit sum ``sum_{g in G} g . p``."""
    total = Poly.zero(p.space)
    # g -> g^{-1} permutes G, so summing p o g avoids computing inverses
    for g in G:
        total = total + substitute_linear(p, g)
    return total


def invariant_monomials(G: FiniteMatrixGroup, degree_bound: int) -> FormFamily:
    """Distinct nonzero orbit sums of all monomials of degree 1..degree_bound.

    Outputs are normalized with :meth:`Poly.primitive` and deduplicated up to
    scalars.  With ``degree_bound = |G|`` they generate the invariant ring.
    """
    if degree_bound < 1:
        raise ValueError("degree_bound must be >= 1")
    space = VarSpace.standard(G.n)
    seen: set[Poly] = set()
    out = []
    for t in range(1, degree_bound + 1):
        for exps in sorted(monomials_of_degree(space, t), reverse=True):
            r = reynolds(G, Poly.monomial(space, exps))
            if r.is_zero():
                continue
            r = r.primitive()
            if r not in seen:
                seen.add(r)
                out.append(r)
    return FormFamily(tuple(out))


class _Echelon:
    """Incrementally maintained row-echelon basis of a space of polynomials."""

    def __init__(self):
        self.rows: dict = {}  # pivot monomial -> row (dict), pivot = max monomial

    def reduce(self, vec: dict) -> dict:
        vec = dict(vec)
        for piv in sorted(self.rows, reverse=True):
            c = vec.get(piv)
            if c:
                row = self.rows[piv]
                f = c / row[piv]
                for m, a in row.items():
                    s = vec.get(m, 0) - f * a
                    if s:
                        vec[m] = s
                    else:
                        vec.pop(m, None)
        return vec

    def add(self, vec: dict) -> bool:
        vec = self.reduce(vec)
        if not vec:
            return False
        self.rows[max(vec)] = vec
        return True


def minimal_generators(forms: Sequence[Poly]) -> list[Poly]:
    """Drop every form lying in the algebra generated by the forms kept so far.

    Forms are processed by increasing degree.  The kept forms generate the
    same subalgebra as the input, so they have the same stabilizer in GL.
    """
    by_degree: dict[int, list[Poly]] = {}
    for q in forms:
        by_degree.setdefault(q.weighted_degree(), []).append(q)
    kept: list[Poly] = []
    for t in sorted(by_degree):
        basis = _Echelon()
        for prod_ in _products_of_degree(kept, t):
            basis.add(dict(prod_.terms))
        for q in by_degree[t]:
            if basis.add(dict(q.terms)):
                kept.append(q)
    return kept


def _products_of_degree(gens: Sequence[Poly], t: int) -> Iterable[Poly]:
    degs = [g.weighted_degree() for g in gens]
    if not gens:
        return

    def rec(i: int, remaining: int, acc: Poly):
        if remaining == 0:
            yield acc
            return
        if i == len(gens):
            return
        k = 0
        cur = acc
        while k * degs[i] <= remaining:
            yield from rec(i + 1, remaining - k * degs[i], cur)
            cur = cur * gens[i]
            k += 1

    yield from rec(0, t, Poly.const(gens[0].space, 1))


def gram_matrix(q: Poly) -> QMatrix:
    """Symmetric matrix ``S`` with ``q(u) = u^T S u``."""
    if q.is_zero() or q.weighted_degree() != 2 or any(w != 1 for w in q.space.weights):
        raise NotQuadratic("expected a nonzero quadratic form in weight-1 variables")
    n = len(q.space)
    S = [[Fraction(0)] * n for _ in range(n)]
    for m, c in q.terms.items():
        idx = [i for i, e in enumerate(m) for _ in range(e)]
        i, j = idx
        if i == j:
            S[i][i] += c
        else:
            S[i][j] += c / 2
            S[j][i] += c / 2
    return QMatrix(S)


def diagonalize_quadratic(q: Poly) -> tuple[list[Fraction], QMatrix]:
    """Lagrange congruence over Q.

    Returns ``(lambdas, C)`` with ``substitute_linear(q, C) == sum lambdas[i]*v_i^2``.
    """
    n = len(q.space)
    S = [list(r) for r in gram_matrix(q).rows]
    C = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def col_add(dst: int, src: int, f: Fraction):
        # column dst += f * column src, applied as S -> E^T S E and C -> C E
        for M in (S, C):
            for r in M:
                r[dst] += f * r[src]
        S[dst] = [a + f * b for a, b in zip(S[dst], S[src])]

    def swap(a: int, b: int):
        for M in (S, C):
            for r in M:
                r[a], r[b] = r[b], r[a]
        S[a], S[b] = S[b], S[a]

    for k in range(n):
        if S[k][k] == 0:
            j = next((j for j in range(k + 1, n) if S[j][j] != 0), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if S[k][j] != 0), None)
                if j is None:
                    raise Degenerate(f"quadratic form is degenerate (direction {k})")
                col_add(k, j, Fraction(1))
        for j in range(k + 1, n):
            if S[k][j]:
                col_add(j, k, -S[k][j] / S[k][k])
    return [S[i][i] for i in range(n)], QMatrix(C)


def diagonal_form(space: VarSpace, lambdas: Sequence, d: int = 2) -> Poly:
    n = len(space)
    return Poly(space, {tuple(d if j == i else 0 for j in range(n)): lam for i, lam in enumerate(lambdas)})


def permutation_matrices(n: int) -> list[QMatrix]:
    return [QMatrix.permutation(p) for p in permutations(range(n))]


def signed_permutation_matrices(n: int) -> list[QMatrix]:
    return [
        QMatrix.permutation(p, s)
        for p in permutations(range(n))
        for s in product((1, -1), repeat=n)
    ]


def conjugate(g: QMatrix, C: QMatrix) -> QMatrix:
    """``C^{-1} g C``: the matrix of ``g`` in the basis given by the columns of ``C``."""
    return C.inverse() @ g @ C
