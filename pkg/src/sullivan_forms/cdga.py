"""Free graded-commutative algebras over Q and their differentials.

An element is a map ``(odd_word, even_exponents) -> Fraction``.  The odd
word is a strictly increasing tuple of indices into the algebra's odd
generators; any Koszul sign produced by reordering is absorbed into the
coefficient, and a repeated odd generator kills the term.  Even generators
commute with everything and are stored as an exponent vector.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from operator import add
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import AlgebraMismatch, NonHomogeneous, PolySyntaxError, UnknownVariable, ZeroPolynomial
from .polycore import Poly, VarSpace, format_monomial, format_signed_terms, parse_terms

Key = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int

    def __post_init__(self):
        if self.degree < 2:
            raise ValueError(f"generator {self.name} has degree {self.degree} < 2")

    @property
    def is_odd(self) -> bool:
        return self.degree % 2 == 1


def _merge_sign(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Sign and sorted union of two increasing odd words (sign 0 on overlap)."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    inversions = 0
    for y in b:
        pos = bisect_right(a, y)
        if pos and a[pos - 1] == y:
            return 0, ()
        inversions += len(a) - pos
    return (-1 if inversions & 1 else 1), tuple(sorted(a + b))


class FreeGCA:
    """The free graded-commutative algebra on an ordered list of generators."""

    def __init__(self, generators: Sequence[Generator]):
        self.generators = tuple(generators)
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        self.odd = tuple(g for g in self.generators if g.is_odd)
        self.even = tuple(g for g in self.generators if not g.is_odd)
        self._odd_index = {g.name: i for i, g in enumerate(self.odd)}
        self._even_index = {g.name: i for i, g in enumerate(self.even)}
        self._by_name = {g.name: g for g in self.generators}
        self.even_space = VarSpace(tuple(g.name for g in self.even), tuple(g.degree for g in self.even))

    def __eq__(self, other) -> bool:
        return isinstance(other, FreeGCA) and self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def __getitem__(self, name: str) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownVariable(f"unknown generator {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def zero(self) -> "GcaElement":
        return GcaElement._raw(self, {})

    def one(self) -> "GcaElement":
        return self.scalar(1)

    def scalar(self, c) -> "GcaElement":
        c = Fraction(c)
        return GcaElement._raw(self, {((), (0,) * len(self.even)): c} if c else {})

    def gen(self, name: str) -> "GcaElement":
        g = self[name]
        if g.is_odd:
            key = ((self._odd_index[name],), (0,) * len(self.even))
        else:
            e = [0] * len(self.even)
            e[self._even_index[name]] = 1
            key = ((), tuple(e))
        return GcaElement._raw(self, {key: Fraction(1)})

    def even_index(self, name: str) -> int:
        return self._even_index[name]

    def odd_index(self, name: str) -> int:
        return self._odd_index[name]

    def monomial(self, odd: Sequence[str] = (), **even: int) -> "GcaElement":
        """``odd[0]*odd[1]*...*prod(name^exp)`` with the sign of the given odd order."""
        out = self.one()
        for name in odd:
            out = out * self.gen(name)
        e = [0] * len(self.even)
        for name, k in even.items():
            e[self._even_index[name]] += k
        return out * GcaElement._raw(self, {((), tuple(e)): Fraction(1)})

    def from_poly(self, p: Poly) -> "GcaElement":
        """Embed a polynomial whose variables are even generators (matched by name)."""
        pos = [self._even_index[name] for name in p.space.names]
        n = len(self.even)
        out = {}
        for m, c in p.terms.items():
            e = [0] * n
            for i, k in zip(pos, m):
                e[i] += k
            out[((), tuple(e))] = c
        return GcaElement._raw(self, out)

    def key_degree(self, key: Key) -> int:
        odd, even = key
        return sum(self.odd[i].degree for i in odd) + sum(g.degree * k for g, k in zip(self.even, even))

    def parse(self, text: str) -> "GcaElement":
        total = self.zero()
        for coef, factors in parse_terms(text):
            term = self.scalar(coef)
            for name, exp, pos in factors:
                if name not in self._by_name:
                    raise UnknownVariable(f"unknown generator {name!r} at position {pos}")
                term = term * self.gen(name) ** exp
            total = total + term
        return total


class GcaElement:
    __slots__ = ("algebra", "_terms", "_hash")

    def __init__(self, algebra: FreeGCA, terms: Mapping[Key, object] | None = None):
        """Build from raw keys; odd words are normalized with their Koszul sign."""
        self.algebra = algebra
        out: dict[Key, Fraction] = {}
        for (odd, even), c in (terms or {}).items():
            sign, word = 1, ()
            for i in odd:
                s, word = _merge_sign(word, (i,))
                sign *= s
            c = Fraction(c) * sign
            if c:
                key = (word, tuple(even))
                out[key] = out.get(key, 0) + c
        self._terms = {k: c for k, c in out.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, algebra: FreeGCA, terms: dict) -> "GcaElement":
        e = cls.__new__(cls)
        e.algebra = algebra
        e._terms = terms
        e._hash = None
        return e

    @property
    def terms(self) -> Mapping[Key, Fraction]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "GcaElement"):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatch("elements of different algebras")

    def _lift(self, other):
        if isinstance(other, GcaElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.algebra.scalar(other)
        return NotImplemented

    def __add__(self, other) -> "GcaElement":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return GcaElement._raw(self.algebra, out)

    __radd__ = __add__

    def __neg__(self) -> "GcaElement":
        return GcaElement._raw(self.algebra, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "GcaElement":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "GcaElement":
        return (-self) + other

    def __mul__(self, other) -> "GcaElement":
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.algebra.zero()
            return GcaElement._raw(self.algebra, {k: c * other for k, c in self._terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return gca_mul(self, other)

    def __rmul__(self, other) -> "GcaElement":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> "GcaElement":
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
            if out.is_zero():
                break
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, GcaElement):
            return self.algebra == other.algebra and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == self.algebra.scalar(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def degree(self) -> int:
        if not self._terms:
            raise ZeroPolynomial("zero element has no degree")
        degs = {self.algebra.key_degree(k) for k in self._terms}
        if len(degs) != 1:
            raise NonHomogeneous(f"element has terms in degrees {sorted(degs)}")
        return degs.pop()

    def degrees(self) -> set[int]:
        return {self.algebra.key_degree(k) for k in self._terms}

    def coefficient(self, other: "GcaElement") -> Fraction:
        """Coefficient of the single-term element ``other`` in ``self``."""
        ((k, c),) = other._terms.items()
        return self._terms.get(k, Fraction(0)) / c

    def odd_parts(self) -> dict[tuple[str, ...], "GcaElement"]:
        """Split as ``sum_w w * P_w`` with ``P_w`` even-only; keys are odd-name words."""
        parts: dict[tuple[int, ...], dict] = {}
        n = len(self.algebra.even)
        for (odd, even), c in self._terms.items():
            parts.setdefault(odd, {})[((), even)] = c
        names = self.algebra.odd
        return {
            tuple(names[i].name for i in odd): GcaElement._raw(self.algebra, t)
            for odd, t in parts.items()
        }

    def is_even_only(self) -> bool:
        return all(not odd for odd, _ in self._terms)

    def to_poly(self) -> Poly:
        """The element as a polynomial in the even generators (weights = degrees)."""
        if not self.is_even_only():
            raise ValueError("element involves odd generators")
        return Poly(self.algebra.even_space, {even: c for (_, even), c in self._terms.items()})

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"GcaElement({format_element(self)!r})"


def gca_mul(a: GcaElement, b: GcaElement) -> GcaElement:
    """Graded-commutative product in Koszul normal form."""
    a._check(b)
    out: dict[Key, Fraction] = {}
    get = out.get
    for (oa, ea), ca in a._terms.items():
        for (ob, eb), cb in b._terms.items():
            sign, word = _merge_sign(oa, ob)
            if not sign:
                continue
            k = (word, tuple(map(add, ea, eb)))
            v = ca * cb
            out[k] = get(k, 0) + (v if sign > 0 else -v)
    return GcaElement._raw(a.algebra, {k: c for k, c in out.items() if c})


def format_element(e: GcaElement) -> str:
    alg = e.algebra
    odd_names = [g.name for g in alg.odd]
    even_names = [g.name for g in alg.even]
    pieces = []
    for (odd, even), c in sorted(e.terms.items(), reverse=True):
        parts = [odd_names[i] for i in odd]
        mono = format_monomial(even_names, even)
        if mono:
            parts.append(mono)
        pieces.append((c, "*".join(parts)))
    return format_signed_terms(pieces)


@dataclass(frozen=True)
class Check:
    """Boolean verdict with an optional counterexample."""

    ok: bool
    generator: str | None = None
    residue: GcaElement | None = None

    def __bool__(self) -> bool:
        return self.ok


class Cdga:
    """A free GCA with a degree +1 derivation fixed on generators."""

    def __init__(self, algebra: FreeGCA, differential: Mapping[str, GcaElement]):
        self.algebra = algebra
        d = {}
        for g in algebra.generators:
            img = differential.get(g.name, algebra.zero())
            if img.algebra != algebra:
                raise AlgebraMismatch(f"d({g.name}) lives in another algebra")
            if not img.is_zero() and img.degrees() != {g.degree + 1}:
                raise NonHomogeneous(f"d({g.name}) must have degree {g.degree + 1}, got {sorted(img.degrees())}")
            d[g.name] = img
        for name in differential:
            algebra[name]
        self.differential = MappingProxyType(d)
        self._odd_d = [d[g.name] for g in algebra.odd]
        self._even_d = [(i, d[g.name]) for i, g in enumerate(algebra.even) if not d[g.name].is_zero()]

    @property
    def generators(self) -> tuple[Generator, ...]:
        return self.algebra.generators

    def gen(self, name: str) -> GcaElement:
        return self.algebra.gen(name)

    def d(self, e: GcaElement) -> GcaElement:
        return apply_differential(self, e)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cdga)
            and self.algebra == other.algebra
            and dict(self.differential) == dict(other.differential)
        )

    __hash__ = None


def apply_differential(A: Cdga, e: GcaElement) -> GcaElement:
    """Extend ``d`` as a derivation: ``d(ab) = d(a) b + (-1)^|a| a d(b)``."""
    alg = A.algebra
    if e.algebra != alg:
        raise AlgebraMismatch("element is not in this algebra")
    zero_even = (0,) * len(alg.even)
    total: dict[Key, Fraction] = {}

    def accumulate(x: GcaElement, coef: Fraction):
        for k, c in x._terms.items():
            total[k] = total.get(k, 0) + coef * c

    for (odd, even), c in e._terms.items():
        # odd generators: d(w_0 ... w_m) = sum_i (-1)^i w_0..d(w_i)..w_m
        for i, gi in enumerate(odd):
            dgi = A._odd_d[gi]
            if dgi.is_zero():
                continue
            left = GcaElement._raw(alg, {(odd[:i], zero_even): Fraction(1)})
            right = GcaElement._raw(alg, {(odd[i + 1:], even): Fraction(1)})
            accumulate(gca_mul(gca_mul(left, dgi), right), -c if i & 1 else c)
        # even generators commute past everything; the word contributes (-1)^len(odd)
        sign = -1 if len(odd) & 1 else 1
        for j, dxj in A._even_d:
            k = even[j]
            if not k:
                continue
            rest = list(even)
            rest[j] -= 1
            base = GcaElement._raw(alg, {(odd, tuple(rest)): Fraction(1)})
            accumulate(gca_mul(base, dxj), sign * c * k)
    return GcaElement._raw(alg, {k: c for k, c in total.items() if c})


def check_d_squared(A: Cdga) -> Check:
    for g in A.generators:
        dd = A.d(A.differential[g.name])
        if not dd.is_zero():
            return Check(False, g.name, dd)
    return Check(True)


def word_length(key: Key) -> int:
    odd, even = key
    return len(odd) + sum(even)


def is_minimal(A: Cdga) -> bool:
    """Every ``d(generator)`` is decomposable (word length >= 2)."""
    return all(word_length(k) >= 2 for img in A.differential.values() for k in img.terms)


class DgaMorphism:
    """Algebra map determined by generator images; unspecified generators map to themselves."""

    def __init__(self, source: Cdga, target: Cdga, assignment: Mapping[str, GcaElement]):
        self.source = source
        self.target = target
        images = {}
        for g in source.generators:
            if g.name in assignment:
                img = assignment[g.name]
            elif g.name in target.algebra:
                img = target.gen(g.name)
            else:
                raise ValueError(f"no image given for generator {g.name}")
            if img.algebra != target.algebra:
                raise AlgebraMismatch(f"image of {g.name} is not in the target algebra")
            if not img.is_zero() and img.degrees() != {g.degree}:
                raise NonHomogeneous(f"image of {g.name} must have degree {g.degree}")
            images[g.name] = img
        for name in assignment:
            source.algebra[name]
        self.assignment = MappingProxyType(images)
        alg = source.algebra
        self._odd_img = [images[g.name] for g in alg.odd]
        self._even_img = [images[g.name] for g in alg.even]

    def __call__(self, e: GcaElement) -> GcaElement:
        if e.algebra != self.source.algebra:
            raise AlgebraMismatch("element is not in the source algebra")
        tgt = self.target.algebra
        powers: dict[tuple[int, int], GcaElement] = {}

        def power(j: int, k: int) -> GcaElement:
            key = (j, k)
            if key not in powers:
                powers[key] = self._even_img[j] if k == 1 else gca_mul(power(j, k - 1), self._even_img[j])
            return powers[key]

        total: dict[Key, Fraction] = {}
        for (odd, even), c in e._terms.items():
            acc = tgt.scalar(c)
            for i in odd:
                acc = gca_mul(acc, self._odd_img[i])
                if acc.is_zero():
                    break
            else:
                for j, k in enumerate(even):
                    if k:
                        acc = gca_mul(acc, power(j, k))
                        if acc.is_zero():
                            break
            for kk, cc in acc._terms.items():
                total[kk] = total.get(kk, 0) + cc
        return GcaElement._raw(tgt, {k: c for k, c in total.items() if c})

    def compose(self, inner: "DgaMorphism") -> "DgaMorphism":
        """``self o inner``."""
        return DgaMorphism(inner.source, self.target, {n: self(img) for n, img in inner.assignment.items()})

    def __matmul__(self, inner: "DgaMorphism") -> "DgaMorphism":
        return self.compose(inner)

    def __eq__(self, other) -> bool:
        return isinstance(other, DgaMorphism) and dict(self.assignment) == dict(other.assignment)

    __hash__ = None

    @classmethod
    def identity(cls, A: Cdga) -> "DgaMorphism":
        return cls(A, A, {})


def is_chain_map(f: DgaMorphism) -> Check:
    """``f(d g) == d(f g)`` on every generator."""
    for g in f.source.generators:
        lhs = f(f.source.differential[g.name])
        rhs = f.target.d(f.assignment[g.name])
        if lhs != rhs:
            return Check(False, g.name, lhs - rhs)
    return Check(True)


# ---------------------------------------------------------------------------
# serialization


def format_cdga(A: Cdga) -> str:
    lines = ["generators:"]
    lines += [f"{g.name} {g.degree}" for g in A.generators]
    lines.append("differential:")
    lines += [f"d({g.name}) = {format_element(A.differential[g.name])}" for g in A.generators]
    return "\n".join(lines) + "\n"


def _sections(text: str) -> tuple[list[Generator], list[tuple[str, str, int]]]:
    gens: list[Generator] = []
    body: list[tuple[str, str, int]] = []
    mode = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line in ("generators:", "differential:", "morphism:"):
            mode = line
            continue
        if mode == "generators:":
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise PolySyntaxError(f"bad generator line {lineno}: {line!r}", 0)
            gens.append(Generator(parts[0], int(parts[1])))
        elif mode is not None and "=" in line:
            lhs, rhs = line.split("=", 1)
            lhs = lhs.strip()
            if not (lhs.endswith(")") and "(" in lhs):
                raise PolySyntaxError(f"bad left-hand side on line {lineno}: {lhs!r}", 0)
            body.append((lhs[lhs.index("(") + 1 : -1].strip(), rhs.strip(), lineno))
        else:
            raise PolySyntaxError(f"unexpected line {lineno}: {line!r}", 0)
    return gens, body


def parse_cdga(text: str) -> Cdga:
    gens, body = _sections(text)
    if not gens:
        raise PolySyntaxError("no generators", 0)
    alg = FreeGCA(gens)
    diff = {name: alg.parse(rhs) for name, rhs, _ in body}
    return Cdga(alg, diff)


def format_morphism(f: DgaMorphism) -> str:
    lines = ["morphism:"]
    lines += [f"f({g.name}) = {format_element(f.assignment[g.name])}" for g in f.source.generators]
    return "\n".join(lines) + "\n"


def parse_morphism(text: str, source: Cdga, target: Cdga | None = None) -> DgaMorphism:
    """Read ``f(name) = element`` lines; missing generators map to themselves."""
    target = target or source
    _, body = _sections(text if "morphism:" in text else "morphism:\n" + text)
    return DgaMorphism(source, target, {name: target.algebra.parse(rhs) for name, rhs, _ in body})
