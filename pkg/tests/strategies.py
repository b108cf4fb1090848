"""Hypothesis strategies shared by the test modules."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from sullivan_forms.polycore import Poly, VarSpace
from sullivan_forms.qmatrix import QMatrix

SPACE3 = VarSpace.standard(3)

small_fracs = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))
nonzero_fracs = small_fracs.filter(bool)


@st.composite
def polys(draw, space: VarSpace = SPACE3, max_exp: int = 3, max_terms: int = 5) -> Poly:
    n = len(space)
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_exp)] * n),
            small_fracs,
            max_size=max_terms,
        )
    )
    return Poly(space, terms)


@st.composite
def forms(draw, space: VarSpace = SPACE3, degree: int | None = None, max_terms: int = 4) -> Poly:
    """Nonzero homogeneous polynomial (weight-1 variables)."""
    from sullivan_forms.polycore import monomials_of_degree

    t = draw(st.integers(1, 4)) if degree is None else degree
    monos = monomials_of_degree(space, t)
    chosen = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=max_terms, unique=True))
    coefs = draw(st.lists(nonzero_fracs, min_size=len(chosen), max_size=len(chosen)))
    return Poly(space, dict(zip(chosen, coefs)))


@st.composite
def matrices(draw, n: int = 3) -> QMatrix:
    return QMatrix(draw(st.lists(st.lists(small_fracs, min_size=n, max_size=n), min_size=n, max_size=n)))


@st.composite
def invertible_matrices(draw, n: int = 3) -> QMatrix:
    m = draw(matrices(n))
    if m.det() == 0:
        # nudge onto the diagonal until invertible; keeps the draw deterministic
        m = QMatrix([[x + (7 if i == j else 0) for j, x in enumerate(r)] for i, r in enumerate(m.rows)])
    if m.det() == 0:
        m = QMatrix.identity(n)
    return m
