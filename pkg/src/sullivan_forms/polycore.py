"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Poly` is a map from exponent tuples to :class:`fractions.Fraction`
over a fixed :class:`VarSpace`.  Zero coefficients are never stored, so two
polynomials are equal exactly when their term maps are equal.

Variables may carry positive integer weights; the weighted degree of a
monomial is ``sum(weight[i] * exponent[i])``.  Plain forms use weight 1;
the polynomial subring of the Sullivan model uses weights 8, 10, 40.

Text grammar (whitespace insignificant)::

    poly   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := INT ['/' INT] | NAME ['^' INT]
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from operator import add
from types import MappingProxyType
from typing import TYPE_CHECKING, Iterable, Iterator, Mapping, Sequence, Union

from .errors import (
    DimensionMismatch,
    NonHomogeneous,
    PolySyntaxError,
    UnknownVariable,
    VarSpaceMismatch,
    ZeroPolynomial,
)

if TYPE_CHECKING:
    from .qmatrix import QMatrix

Scalar = Union[int, Fraction]
Exponent = tuple[int, ...]


@dataclass(frozen=True)
class VarSpace:
    """Ordered, distinct variable names with positive integer weights."""

    names: tuple[str, ...]
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be distinct: {names}")
        weights = self.weights
        if weights is None:
            weights = (1,) * len(names)
        weights = tuple(int(w) for w in weights)
        if len(weights) != len(names):
            raise ValueError("one weight per variable required")
        if any(w < 1 for w in weights):
            raise ValueError("weights must be >= 1")
        object.__setattr__(self, "weights", weights)

    @classmethod
    def standard(cls, n: int, prefix: str = "v") -> "VarSpace":
        return cls(tuple(f"{prefix}{i}" for i in range(1, n + 1)))

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    def monomial_degree(self, exps: Exponent) -> int:
        return sum(w * e for w, e in zip(self.weights, exps))


def _mul_terms(a: Mapping[Exponent, Fraction], b: Mapping[Exponent, Fraction]) -> dict:
    out: dict[Exponent, Fraction] = {}
    get = out.get
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(map(add, ma, mb))
            out[m] = get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def _sort_key(space: VarSpace):
    weights = space.weights

    def key(m: Exponent):
        return (sum(w * e for w, e in zip(weights, m)), m)

    return key


class Poly:
    """Immutable sparse polynomial over ``space``."""

    __slots__ = ("_space", "_terms", "_hash")

    def __init__(self, space: VarSpace, terms: Mapping[Sequence[int], Scalar] | None = None):
        clean: dict[Exponent, Fraction] = {}
        n = len(space)
        for mono, coef in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != n or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent vector {mono} for {n} variables")
            c = Fraction(coef)
            if c:
                clean[mono] = clean.get(mono, 0) + c
        self._space = space
        self._terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, space: VarSpace, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p._space = space
        p._terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, space: VarSpace) -> "Poly":
        return cls._raw(space, {})

    @classmethod
    def const(cls, space: VarSpace, c: Scalar) -> "Poly":
        c = Fraction(c)
        return cls._raw(space, {(0,) * len(space): c} if c else {})

    @classmethod
    def var(cls, space: VarSpace, which: str | int) -> "Poly":
        i = space.index(which) if isinstance(which, str) else which
        exps = [0] * len(space)
        exps[i] = 1
        return cls._raw(space, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, space: VarSpace, exps: Sequence[int], coef: Scalar = 1) -> "Poly":
        return cls(space, {tuple(exps): coef})

    # accessors
    @property
    def space(self) -> VarSpace:
        return self._space

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self.sorted_terms())

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending graded-lex order (weighted degree, then exponents)."""
        key = _sort_key(self._space)
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        key = _sort_key(self._space)
        m = max(self._terms, key=key)
        return m, self._terms[m]

    # arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other._space != self._space:
                raise VarSpaceMismatch(f"{self._space.names} vs {other._space.names}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self._space, other)
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(self._space, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self._space, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly.zero(self._space)
            return Poly._raw(self._space, {m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self._space, _mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def __pow__(self, s: int) -> "Poly":
        if s < 0:
            raise ValueError("negative exponent")
        result = Poly.const(self._space, 1)
        base = self
        while s:
            if s & 1:
                result = result * base
            s >>= 1
            if s:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._space == other._space and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Poly.const(self._space, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._space, frozenset(self._terms.items())))
        return self._hash

    # degrees
    def weighted_degree(self) -> int:
        """Common weighted degree of all terms."""
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no degree")
        degs = {self._space.monomial_degree(m) for m in self._terms}
        if len(degs) != 1:
            raise NonHomogeneous(f"terms of degrees {sorted(degs)}")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({self._space.monomial_degree(m) for m in self._terms}) <= 1

    def degree(self) -> int:
        """Maximum weighted degree; -1 for the zero polynomial."""
        return max((self._space.monomial_degree(m) for m in self._terms), default=-1)

    # transforms
    def primitive(self) -> "Poly":
        """Scale to coprime integer coefficients with positive leading coefficient."""
        if not self._terms:
            return self
        den = 1
        for c in self._terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self._terms.values():
            num = gcd(num, c.numerator * (den // c.denominator))
        scale = Fraction(den, num)
        if self.leading_term()[1] < 0:
            scale = -scale
        return self * scale

    def rename(self, space: VarSpace) -> "Poly":
        if len(space) != len(self._space):
            raise DimensionMismatch("rename needs the same number of variables")
        return Poly._raw(space, dict(self._terms))

    def embed(self, space: VarSpace, positions: Sequence[int]) -> "Poly":
        """Map variable ``i`` to variable ``positions[i]`` of a larger space."""
        n = len(space)
        out = {}
        for m, c in self._terms.items():
            e = [0] * n
            for i, k in zip(positions, m):
                e[i] += k
            out[tuple(e)] = c
        return Poly._raw(space, out)

    def substitute_linear(self, A: "QMatrix", indices: Sequence[int] | None = None) -> "Poly":
        return substitute_linear(self, A, indices)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            term = c
            for x, e in zip(point, m):
                if e:
                    term *= Fraction(x) ** e
            total += term
        return total

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"


def poly_add(a: Poly, b: Poly) -> Poly:
    return a + b


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def poly_pow(a: Poly, s: int) -> Poly:
    return a**s


def weighted_degree(a: Poly) -> int:
    return a.weighted_degree()


def substitute_linear(q: Poly, A: "QMatrix", indices: Sequence[int] | None = None) -> Poly:
    """Return ``q`` with ``v_i -> sum_j A[i][j] v_j``, i.e. ``u -> q(A u)``.

    ``indices`` selects which variables of ``q.space`` the matrix acts on
    (default: all of them); the remaining variables are left fixed.
    """
    space = q.space
    n = len(space)
    if indices is None:
        indices = range(n)
    indices = list(indices)
    if A.n != len(indices):
        raise DimensionMismatch(f"{A.n}x{A.n} matrix on {len(indices)} variables")
    unit = [0] * n
    linear: dict[int, dict] = {}
    for row, i in enumerate(indices):
        form = {}
        for col, j in enumerate(indices):
            a = A[row, col]
            if a:
                e = list(unit)
                e[j] = 1
                form[tuple(e)] = a
        linear[i] = form
    moved = set(indices)
    powers: dict[tuple[int, int], dict] = {}

    def power(i: int, k: int) -> dict:
        key = (i, k)
        if key not in powers:
            powers[key] = linear[i] if k == 1 else _mul_terms(power(i, k - 1), linear[i])
        return powers[key]

    out: dict[Exponent, Fraction] = {}
    for m, c in q._terms.items():
        fixed = tuple(e if i not in moved else 0 for i, e in enumerate(m))
        acc = {fixed: c}
        for i in indices:
            if m[i]:
                acc = _mul_terms(acc, power(i, m[i]))
                if not acc:
                    break
        for mm, cc in acc.items():
            out[mm] = out.get(mm, 0) + cc
    return Poly._raw(space, {m: c for m, c in out.items() if c})


def monomials_of_degree(space: VarSpace, degree: int) -> list[Exponent]:
    """All exponent vectors of the given weighted degree (brute force)."""
    return [tuple(e) for e in enumerate_weighted_exponents(degree, space.weights)]


def enumerate_weighted_exponents(target: int, weights: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Every nonnegative integer vector ``e`` with ``sum(w*e) == target``."""
    weights = tuple(weights)
    if target < 0:
        return
    if not weights:
        if target == 0:
            yield ()
        return
    w, rest = weights[0], weights[1:]
    for e in range(target // w, -1, -1):
        for tail in enumerate_weighted_exponents(target - w * e, rest):
            yield (e,) + tail


# ---------------------------------------------------------------------------
# text format

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^]))")

Factor = tuple[str, int, int]  # (name, exponent, position)


def _tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            where = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise PolySyntaxError(f"unexpected character {text[where]!r}", where)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return out


def parse_terms(text: str) -> list[tuple[Fraction, list[Factor]]]:
    """Tokenize ``text`` into (coefficient, ordered factor list) pairs.

    Factor order is preserved so that graded-commutative callers can
    compute Koszul signs themselves.
    """
    toks = _tokens(text)
    if not toks:
        raise PolySyntaxError("empty expression", 0)
    i = 0
    terms = []

    def expect_int(j: int) -> tuple[int, int]:
        if j >= len(toks) or toks[j][0] != "num":
            where = toks[j][2] if j < len(toks) else len(text)
            raise PolySyntaxError("expected integer", where)
        return int(toks[j][1]), j + 1

    sign = 1
    if toks[0][0] == "op" and toks[0][1] in "+-":
        sign, i = (-1 if toks[0][1] == "-" else 1), 1
    while True:
        coef = Fraction(sign)
        factors: list[Factor] = []
        while True:
            if i >= len(toks):
                raise PolySyntaxError("expected a factor", len(text))
            kind, val, pos = toks[i]
            if kind == "num":
                num, i = expect_int(i)
                if i < len(toks) and toks[i][1] == "/":
                    den, i = expect_int(i + 1)
                    if den == 0:
                        raise PolySyntaxError("zero denominator", toks[i - 1][2])
                    coef *= Fraction(num, den)
                else:
                    coef *= num
            elif kind == "name":
                i += 1
                exp = 1
                if i < len(toks) and toks[i][1] == "^":
                    exp, i = expect_int(i + 1)
                factors.append((val, exp, pos))
            else:
                raise PolySyntaxError(f"unexpected {val!r}", pos)
            if i < len(toks) and toks[i][1] == "*":
                i += 1
                continue
            break
        terms.append((coef, factors))
        if i >= len(toks):
            return terms
        kind, val, pos = toks[i]
        if val not in "+-" or kind != "op":
            raise PolySyntaxError(f"unexpected {val!r}", pos)
        sign = 1 if val == "+" else -1
        i += 1


def parse_poly(text: str, space: VarSpace) -> Poly:
    n = len(space)
    out: dict[Exponent, Fraction] = {}
    for coef, factors in parse_terms(text):
        e = [0] * n
        for name, exp, pos in factors:
            if name not in space.names:
                raise UnknownVariable(f"unknown variable {name!r} at position {pos}")
            e[space.names.index(name)] += exp
        m = tuple(e)
        out[m] = out.get(m, 0) + coef
    return Poly(space, out)


def format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(names: Sequence[str], exps: Iterable[int]) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_signed_terms(pieces: Iterable[tuple[Fraction, str]]) -> str:
    """Join ``(coefficient, monomial-text)`` pairs; empty monomial means constant."""
    out = []
    for c, mono in pieces:
        mag = abs(c)
        if not mono:
            body = format_coefficient(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_coefficient(mag)}*{mono}"
        if not out:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out) if out else "0"


def format_poly(p: Poly) -> str:
    names = p.space.names
    return format_signed_terms((c, format_monomial(names, m)) for m, c in p.sorted_terms())
