"""Realizable families of forms and the constructions that produce them.

A family ``q_0, ..., q_{r+1}`` is *pre-realizable* when

1. ``q_{r+1} = q_0^s`` with ``s >= max(n, ceil(deg q_r / deg q_0) + 1)``, and
2. consecutive degrees differ by more than one;

it is *realizable* when moreover ``q_0 = sum lambda_i v_i^d`` with ``d > 1``
and every ``lambda_i`` nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Sequence

from .errors import BadS, DegreeTooSmall, NotRealizable, PolySyntaxError
from .groups import (
    FiniteMatrixGroup,
    FormFamily,
    _forms_of,
    diagonalize_quadratic,
    invariant_monomials,
    minimal_generators,
    reynolds,
)
from .polycore import Poly, VarSpace, format_poly, parse_poly, substitute_linear
from .qmatrix import QMatrix


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def minimal_s(n: int, deg_qr: int, deg_q0: int) -> int:
    """Smallest exponent allowed for the closing power ``q_0^s``."""
    return max(n, _ceil_div(deg_qr, deg_q0) + 1)


@dataclass(frozen=True)
class RealizableFamily:
    """Forms ``q_0..q_{r+1}`` together with their witnesses ``s``, ``d``, ``lambdas``.

    ``lambdas`` is ``None`` when the family is only known to be pre-realizable.
    """

    forms: tuple[Poly, ...]
    s: int
    d: int
    lambdas: tuple[Fraction, ...] | None = None

    @property
    def space(self) -> VarSpace:
        return self.forms[0].space

    @property
    def n(self) -> int:
        return len(self.space)

    @property
    def q0(self) -> Poly:
        return self.forms[0]

    @property
    def r(self) -> int:
        return len(self.forms) - 2

    def degrees(self) -> list[int]:
        return [q.weighted_degree() for q in self.forms]

    @property
    def is_realizable(self) -> bool:
        return self.lambdas is not None

    def __len__(self) -> int:
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def __getitem__(self, i):
        return self.forms[i]


@dataclass(frozen=True)
class RealizabilityReport:
    """Outcome of a realizability check: witnesses on success, first violation otherwise."""

    ok: bool
    s: int | None = None
    d: int | None = None
    lambdas: tuple[Fraction, ...] | None = None
    condition: int | None = None
    index: int | None = None
    message: str = ""
    degrees: list[int] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def check_prerealizable(F) -> RealizabilityReport:
    forms = _forms_of(F)
    if len(forms) < 2:
        return RealizabilityReport(False, condition=1, message="need at least q_0 and q_{r+1}")
    degs = [q.weighted_degree() for q in forms]
    n = len(forms[0].space)
    d0, last = degs[0], degs[-1]
    if d0 == 0 or last % d0:
        return RealizabilityReport(
            False, condition=1, index=len(forms) - 1, degrees=degs,
            message=f"deg q_{len(forms) - 1} = {last} is not a multiple of deg q_0 = {d0}",
        )
    s = last // d0
    if forms[0] ** s != forms[-1]:
        return RealizabilityReport(
            False, condition=1, index=len(forms) - 1, degrees=degs,
            message=f"q_{len(forms) - 1} is not q_0^{s}",
        )
    need = minimal_s(n, degs[-2], d0)
    if s < need:
        return RealizabilityReport(
            False, s=s, condition=1, index=len(forms) - 1, degrees=degs,
            message=f"s = {s} < max(n, ceil(deg q_r / deg q_0) + 1) = {need}",
        )
    for i in range(len(forms) - 1):
        if degs[i + 1] - degs[i] <= 1:
            return RealizabilityReport(
                False, s=s, condition=2, index=i, degrees=degs,
                message=f"deg q_{i + 1} - deg q_{i} = {degs[i + 1] - degs[i]} <= 1",
            )
    return RealizabilityReport(True, s=s, d=d0, degrees=degs)


def diagonal_coefficients(q0: Poly) -> tuple[Fraction, ...] | None:
    """``(lambda_1..lambda_n)`` if ``q0 = sum lambda_i v_i^d`` with d > 1, else ``None``."""
    n = len(q0.space)
    if q0.is_zero() or not q0.is_homogeneous():
        return None
    d = q0.weighted_degree()
    if d <= 1 or len(q0) != n:
        return None
    lambdas = [None] * n
    for m, c in q0.terms.items():
        support = [i for i, e in enumerate(m) if e]
        if len(support) != 1 or m[support[0]] != d:
            return None
        lambdas[support[0]] = c
    if any(lam is None for lam in lambdas):
        return None
    return tuple(lambdas)


def check_realizable(F) -> RealizabilityReport:
    rep = check_prerealizable(F)
    if not rep:
        return rep
    lambdas = diagonal_coefficients(_forms_of(F)[0])
    if lambdas is None:
        return RealizabilityReport(
            False, s=rep.s, d=rep.d, condition=3, index=0, degrees=rep.degrees,
            message="q_0 is not of the form sum lambda_i v_i^d with all lambda_i != 0",
        )
    return RealizabilityReport(True, s=rep.s, d=rep.d, lambdas=lambdas, degrees=rep.degrees)


def family_from_forms(forms: Sequence[Poly]) -> RealizableFamily:
    """Wrap already-built forms, verifying pre-realizability."""
    rep = check_realizable(forms)
    if not rep and rep.condition == 3:
        rep = check_prerealizable(forms)
    if not rep:
        raise NotRealizable(f"condition ({rep.condition}) fails: {rep.message}")
    return RealizableFamily(tuple(forms), rep.s, rep.d, rep.lambdas)


def make_prerealizable(P, s: int | None = None) -> RealizableFamily:
    """``q_0 = p_0``, ``q_i = p_i q_{i-1} q_0``, ``q_{r+1} = q_0^s``.

    ``s`` defaults to the smallest legal exponent; a smaller explicit value
    raises :class:`BadS`.  Requires ``deg p_0 >= 2``.
    """
    ps = _forms_of(P)
    if not ps:
        raise ValueError("empty family")
    q0 = ps[0]
    d0 = q0.weighted_degree()
    if d0 < 2:
        raise DegreeTooSmall(f"deg p_0 = {d0}; the degree-gap condition needs deg p_0 >= 2")
    qs = [q0]
    for p in ps[1:]:
        qs.append(p * qs[-1] * q0)
    need = minimal_s(len(q0.space), qs[-1].weighted_degree(), d0)
    if s is None:
        s = need
    elif s < need:
        raise BadS(f"s = {s} is below the required {need}")
    qs.append(q0**s)
    return RealizableFamily(tuple(qs), s, d0, diagonal_coefficients(q0))


def orthogonal_presentation(
    G: FiniteMatrixGroup, prune: bool = True, s: int | None = None
) -> tuple[RealizableFamily, QMatrix]:
    """Realizable family with ``deg q_0 = 2`` whose orthogonal group is ``G``.

    Returns ``(family, C)`` where the family lives in the diagonalizing basis:
    ``g`` fixes the original invariants iff ``C^{-1} g C`` fixes the family.
    With ``prune`` the invariant orbit sums are cut down to a minimal
    generating set of the algebra they span (same stabilizer, smaller degrees).
    """
    invariants = list(invariant_monomials(G, G.order).forms)
    if prune:
        invariants = minimal_generators(invariants)
    space = invariants[0].space if invariants else VarSpace.standard(G.n)
    sum_sq = sum((Poly.var(space, i) ** 2 for i in range(len(space))), Poly.zero(space))
    q0_std = reynolds(G, sum_sq)
    lambdas, C = diagonalize_quadratic(q0_std)
    q0 = substitute_linear(q0_std, C)
    rewritten = [substitute_linear(p, C) for p in invariants]
    return make_prerealizable([q0] + rewritten, s=s), C


def elementary_symmetric(space: VarSpace, j: int) -> Poly:
    n = len(space)
    terms = {}
    for idx in combinations(range(n), j):
        terms[tuple(int(i in idx) for i in range(n))] = 1
    return Poly(space, terms)


def symmetric_default_s(n: int) -> int:
    return _ceil_div((n + 4) * (n + 1), 4) + 1


def symmetric_family(n: int, s: int | None = None) -> RealizableFamily:
    """``q_0 = n! sum x_i^2``, ``q_j = e_j q_{j-1} q_0``, ``q_{n+1} = q_0^s``."""
    if n < 2:
        raise ValueError("symmetric family needs n >= 2")
    bound = symmetric_default_s(n)
    if s is None:
        s = bound
    elif s < bound:
        raise BadS(f"s = {s} is below ceil((n+4)(n+1)/4) + 1 = {bound}")
    space = VarSpace.standard(n, "x")
    q0 = sum((Poly.var(space, i) ** 2 for i in range(n)), Poly.zero(space)) * factorial(n)
    qs = [q0]
    for j in range(1, n + 1):
        qs.append(elementary_symmetric(space, j) * qs[-1] * q0)
    qs.append(q0**s)
    return family_from_forms(qs)


G2_ORIGINAL = VarSpace(("x0", "x1", "x1p", "x2", "x2p", "x3", "x3p"))


def g2_forms() -> FormFamily:
    """The quadratic form and Dickson's alternating trilinear form, in the x-coordinates."""
    f0 = parse_poly("-2*x0^2 + x1*x1p + x2*x2p + x3*x3p", G2_ORIGINAL)
    f1 = parse_poly("x0*x1*x1p + x0*x2*x2p + x0*x3*x3p + x1*x2*x3 + x1p*x2p*x3p", G2_ORIGINAL)
    return FormFamily((f0, f1))


def g2_change() -> QMatrix:
    """``x = C v`` for ``v1 = x0``, ``v_{2i} = x_i + x_i'``, ``v_{2i+1} = x_i - x_i'``."""
    h = Fraction(1, 2)
    rows = [[0] * 7 for _ in range(7)]
    rows[0][0] = 1
    for i in (1, 2, 3):
        a, b = 2 * i - 1, 2 * i  # positions of v_{2i}, v_{2i+1}; also of x_i, x_i'
        rows[a][a], rows[a][b] = h, h
        rows[b][a], rows[b][b] = h, -h
    return QMatrix(rows)


def g2_family(literal: bool = False) -> tuple[RealizableFamily, FormFamily, QMatrix]:
    """The G2 family in the v-coordinates.

    The rewritten quadratic and cubic forms differ in degree by one, which
    breaks the degree-gap condition; by default the family is therefore
    closed with :func:`make_prerealizable`, giving ``q_1 = f_1 q_0^2`` and
    ``q_2 = q_0^7`` (same orthogonal group).  ``literal=True`` returns the
    unmodified ``{f_0, f_1, f_0^7}``, which is *not* pre-realizable.
    """
    original = g2_forms()
    C = g2_change()
    vspace = VarSpace.standard(7)
    f0, f1 = (substitute_linear(f, C).rename(vspace) for f in original.forms)
    if literal:
        fam = RealizableFamily((f0, f1, f0**7), 7, 2, diagonal_coefficients(f0))
    else:
        fam = make_prerealizable([f0, f1])
    return fam, original, C


# ---------------------------------------------------------------------------
# family files


def format_family(F) -> str:
    forms = _forms_of(F)
    lines = ["vars: " + " ".join(forms[0].space.names)]
    lines += [format_poly(q) for q in forms]
    if isinstance(F, RealizableFamily):
        lines.append(f"s: {F.s}  d: {F.d}")
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> RealizableFamily | FormFamily:
    """Read a family file; a trailing ``s: .. d: ..`` line marks a realizable family."""
    space = None
    forms = []
    trailer = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vars:"):
            space = VarSpace(tuple(line[5:].split()))
        elif line.startswith("s:"):
            fields = line.replace(":", " ").split()
            try:
                trailer = dict(zip(fields[::2], map(int, fields[1::2])))
            except ValueError:
                raise PolySyntaxError(f"bad trailer on line {lineno}", 0) from None
        else:
            if space is None:
                raise PolySyntaxError("missing 'vars:' header", 0)
            forms.append(parse_poly(line, space))
    if space is None or not forms:
        raise PolySyntaxError("family file needs a 'vars:' header and at least one form", 0)
    if trailer is None:
        return FormFamily(tuple(forms))
    fam = family_from_forms(forms)
    if trailer.get("s") != fam.s or trailer.get("d") != fam.d:
        raise NotRealizable(f"trailer {trailer} disagrees with computed s={fam.s}, d={fam.d}")
    return fam
