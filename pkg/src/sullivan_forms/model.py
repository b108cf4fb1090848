"""The minimal Sullivan model M(Q, k) of a realizable family and its automorphisms.

Generators and degrees::

    x1 (8)   x2 (10)   y1 (33)   y2 (35)   y3 (37)   v1..vn (40)   z (80k + 40d - 41)

with ``d(y1) = x1^3 x2``, ``d(y2) = x1^2 x2^2``, ``d(y3) = x1 x2^3``, closed x's and v's,
and ``d(z)`` assembled from the family (see :func:`dz_summands`).

The family's i-th variable becomes the generator ``v{i+1}`` whatever its name.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .cdga import Cdga, Check, DgaMorphism, FreeGCA, GcaElement, Generator, check_d_squared, is_chain_map, is_minimal
from .errors import (
    DegreeBoundViolated,
    DivisibilityFailure,
    NotChainMap,
    NotClosed,
    NotOrthogonal,
    NotRealizable,
    SullivanFormsError,
    WrongDegree,
    WrongShape,
)
from .families import RealizableFamily, family_from_forms
from .groups import is_orthogonal
from .polycore import Poly, VarSpace, substitute_linear
from .qmatrix import QMatrix, rank

X1, X2 = 8, 10
Y_DEGREES = (33, 35, 37)
V_DEGREE = 40
# (x1, x2) exponents stripped from A_i by the divisibility rules, and the degree offsets
LEMMA_FACTORS = {1: (2, 3), 2: (3, 2), 3: (4, 1)}
LEMMA_OFFSETS = {1: 74, 2: 76, 3: 78}
SCALAR_NAMES = ("a1", "a2", "b1", "b2", "b3", "c")


@dataclass(frozen=True)
class ModelSpec:
    family: RealizableFamily
    k: int

    @property
    def n(self) -> int:
        return self.family.n

    @property
    def d(self) -> int:
        return self.family.d

    @property
    def z_degree(self) -> int:
        return 80 * self.k + 40 * self.d - 41

    def x1_exponent(self, q_degree: int) -> int:
        """Power of x1 attached to a form of the given degree in d(z)."""
        return 10 * self.k + 5 * (self.d - 1) - 5 * q_degree

    def x1_exponents(self) -> list[int]:
        """The exponent formula evaluated at every q_i, i = 0..r+1 (d(z) uses i >= 1)."""
        return [self.x1_exponent(t) for t in self.family.degrees()]

    def violations(self) -> list[str]:
        fam, k, d = self.family, self.k, self.d
        out = []
        if d < 2:
            out.append(f"deg q_0 = {d} < 2")
        top = fam.degrees()[-1]
        if not top < 2 * k + (d - 1):
            out.append(f"deg q_{len(fam) - 1} = {top} is not < 2k + (d - 1) = {2 * k + d - 1}")
        for i, t in enumerate(fam.degrees()):
            if self.x1_exponent(t) < 0:
                out.append(f"negative x1 exponent for q_{i}")
        if 10 * k + 5 * (d - 4) < 0 or 8 * k - 4 < 0:
            out.append("k too small for the y-term exponents")
        return out

    def check(self) -> None:
        if not self.family.is_realizable:
            raise NotRealizable("q_0 is not diagonal with nonzero coefficients")
        problems = self.violations()
        if problems:
            raise DegreeBoundViolated(f"k = {self.k}: " + "; ".join(problems))


class SullivanModel(Cdga):
    """A :class:`Cdga` that remembers the ModelSpec it was built from."""

    def __init__(self, algebra: FreeGCA, differential, spec: ModelSpec):
        super().__init__(algebra, differential)
        self.spec = spec


def model_algebra(n: int, z_degree: int) -> FreeGCA:
    gens = [Generator("x1", X1), Generator("x2", X2)]
    gens += [Generator(f"y{i}", deg) for i, deg in enumerate(Y_DEGREES, 1)]
    gens += [Generator(f"v{j}", V_DEGREE) for j in range(1, n + 1)]
    gens.append(Generator("z", z_degree))
    return FreeGCA(gens)


def p_space(n: int) -> VarSpace:
    """The polynomial subring P = Q[x1, x2, v1..vn] with its degrees as weights."""
    return VarSpace(("x1", "x2") + tuple(f"v{j}" for j in range(1, n + 1)), (X1, X2) + (V_DEGREE,) * n)


def embed_form(alg: FreeGCA, q: Poly, x1: int = 0, x2: int = 0) -> GcaElement:
    """``q(v1..vn) * x1^x1 * x2^x2`` as an element of the model algebra."""
    # even generators are ordered x1, x2, v1..vn
    return GcaElement._raw(alg, {((), (x1, x2) + m): c for m, c in q.terms.items()})


def dz_summands(spec: ModelSpec, alg: FreeGCA) -> list[tuple[str, GcaElement]]:
    fam, k, d = spec.family, spec.k, spec.d
    x1, x2 = alg.gen("x1"), alg.gen("x2")
    y1, y2, y3 = (alg.gen(f"y{i}") for i in (1, 2, 3))
    out = []
    for i in range(1, len(fam)):
        out.append((f"q{i}*x1^e", embed_form(alg, fam[i], x1=spec.x1_exponent(fam.degrees()[i]))))
    out.append(("q0*x1^(10k-5)", embed_form(alg, fam.q0, x1=10 * k - 5)))
    out.append(("q0*x2^(8k-4)", embed_form(alg, fam.q0, x2=8 * k - 4)))
    ycore = y1 * y2 * x1**4 * x2**2 - y1 * y3 * x1**5 * x2 + y2 * y3 * x1**6
    out.append(("y-term", x1 ** (10 * k + 5 * (d - 4)) * ycore))
    out.append(("x1-power", x1 ** (10 * k + 5 * (d - 1))))
    out.append(("x2-power", x2 ** (8 * k + 4 * (d - 1))))
    return out


def build_model(spec: ModelSpec) -> SullivanModel:
    spec.check()
    alg = model_algebra(spec.n, spec.z_degree)
    x1, x2 = alg.gen("x1"), alg.gen("x2")
    summands = dz_summands(spec, alg)
    for label, s in summands:
        if s.degrees() != {spec.z_degree + 1}:
            raise WrongDegree(f"summand {label} has degrees {sorted(s.degrees())}, expected {spec.z_degree + 1}")
    dz = alg.zero()
    for _, s in summands:
        dz = dz + s
    diff = {
        "y1": x1**3 * x2,
        "y2": x1**2 * x2**2,
        "y3": x1 * x2**3,
        "z": dz,
    }
    model = SullivanModel(alg, diff, spec)
    dd = check_d_squared(model)
    if not dd:
        raise AssertionError(f"d^2 != 0 on {dd.generator}: {dd.residue}")
    if not is_minimal(model):
        raise AssertionError("model is not minimal")
    return model


def degree_audit(model: Cdga) -> Check:
    """Every term of every ``d(g)`` has degree ``|g| + 1``."""
    for g in model.generators:
        img = model.differential[g.name]
        if not img.is_zero() and img.degrees() != {g.degree + 1}:
            return Check(False, g.name, img)
    return Check(True)


def realize_all(specs: Iterable[ModelSpec]) -> list[SullivanModel]:
    """One model per spec; the error for a bad entry carries its index."""
    models = []
    for i, spec in enumerate(specs):
        try:
            models.append(build_model(spec))
        except DegreeBoundViolated as exc:
            raise DegreeBoundViolated(f"entry {i}: {exc}", index=i) from exc
    return models


def lift_group_element(g: QMatrix, model: SullivanModel) -> DgaMorphism:
    """``f_g``: fixes x, y, z and sends ``v_j`` to the linear form ``g . v_j``."""
    fam = model.spec.family
    if g.n != fam.n or not is_orthogonal(g, fam):
        raise NotOrthogonal("matrix does not preserve every form of the family")
    ginv = g.inverse()
    alg = model.algebra
    images = {}
    for j in range(fam.n):
        img = alg.zero()
        for k in range(fam.n):
            if ginv[j, k]:
                img = img + alg.gen(f"v{k + 1}") * ginv[j, k]
        images[f"v{j + 1}"] = img
    return DgaMorphism(model, model, images)


# ---------------------------------------------------------------------------
# divisibility and the homotopy witness


def lemma_degree(i: int, k: int, d: int) -> int:
    return 80 * k + 40 * d - LEMMA_OFFSETS[i]


def decompose_A(i: int, A: GcaElement, spec: ModelSpec) -> GcaElement:
    """Write ``A_i = x1^a x2^b B_i`` with (a, b) = (2,3), (3,2), (4,1) for i = 1, 2, 3."""
    if i not in LEMMA_FACTORS:
        raise ValueError("i must be 1, 2 or 3")
    alg = A.algebra
    a, b = LEMMA_FACTORS[i]
    target = lemma_degree(i, spec.k, spec.d)
    ix1, ix2 = alg.even_index("x1"), alg.even_index("x2")
    out = {}
    for key, c in A.terms.items():
        odd, even = key
        if odd:
            raise WrongShape(f"A_{i} must lie in the polynomial subring")
        if alg.key_degree(key) != target:
            raise WrongDegree(f"A_{i} has a term of degree {alg.key_degree(key)}, expected {target}")
        if even[ix1] < a or even[ix2] < b:
            raise DivisibilityFailure(f"term of A_{i} not divisible by x1^{a}*x2^{b}")
        e = list(even)
        e[ix1] -= a
        e[ix2] -= b
        out[((), tuple(e))] = c
    return GcaElement._raw(alg, out)


def split_y_part(omega: GcaElement) -> tuple[GcaElement, GcaElement, GcaElement]:
    """``(A_1, A_2, A_3)`` with ``omega = y1 A_1 + y2 A_2 + y3 A_3``."""
    parts = omega.odd_parts()
    allowed = {("y1",): 0, ("y2",): 1, ("y3",): 2}
    for word in parts:
        if word not in allowed:
            raise WrongShape(f"term with odd part {'*'.join(word) or '1'} outside y1*P + y2*P + y3*P")
    zero = omega.algebra.zero()
    return tuple(parts.get(w, zero) for w in allowed)  # type: ignore[return-value]


def homotopy_witness(omega: GcaElement, spec: ModelSpec) -> GcaElement:
    """``m`` with ``d(m) = omega`` for a closed ``omega = sum y_i A_i`` of degree |z|.

    With ``A_i = x1^a x2^b B_i`` closedness is ``B_1 + B_2 + B_3 = 0`` and
    ``m = y1 y2 x2 B_2 + y1 y3 x1 B_3``.
    """
    alg = omega.algebra
    A1, A2, A3 = split_y_part(omega)
    B1, B2, B3 = (decompose_A(i, A, spec) for i, A in zip((1, 2, 3), (A1, A2, A3)))
    total = B1 + B2 + B3
    if not total.is_zero():
        raise NotClosed(f"d(omega) = x1^5*x2^4*({total}) != 0")
    y1, y2, y3 = (alg.gen(f"y{i}") for i in (1, 2, 3))
    return y1 * y2 * (alg.gen("x2") * B2) + y1 * y3 * (alg.gen("x1") * B3)


# ---------------------------------------------------------------------------
# scalar constraints


@dataclass(frozen=True)
class MonomialEquation:
    """``prod u_i^lhs_i == prod u_i^rhs_i`` over the nonzero rationals."""

    label: str
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]

    def holds(self, values: Sequence[Fraction]) -> bool:
        def ev(exps):
            out = Fraction(1)
            for v, e in zip(values, exps):
                out *= Fraction(v) ** e
            return out

        return ev(self.lhs) == ev(self.rhs)


def _mono(**exps: int) -> tuple[int, ...]:
    return tuple(exps.get(n, 0) for n in SCALAR_NAMES)


def scalar_equations(k: int, d: int = 2, include_q0_ratio: bool = True) -> list[MonomialEquation]:
    """Constraints on ``(a1, a2, b1, b2, b3, c)`` imposed by the chain-map condition.

    The ``b_i`` equations come from ``f(d y_i) = d f(y_i)``; the ``c`` equations
    from matching the y-term and the pure x-powers of ``d(z)``.  With
    ``include_q0_ratio`` the two q_0 summands add ``a1^(10k-5) = a2^(8k-4)``,
    which is what excludes ``a1 = -1`` when d is odd.
    """
    e = 10 * k + 5 * (d - 4)
    eqs = [
        MonomialEquation("b1 = a1^3 a2", _mono(b1=1), _mono(a1=3, a2=1)),
        MonomialEquation("b2 = a1^2 a2^2", _mono(b2=1), _mono(a1=2, a2=2)),
        MonomialEquation("b3 = a1 a2^3", _mono(b3=1), _mono(a1=1, a2=3)),
        MonomialEquation("c = a1^(e+4) a2^2 b1 b2", _mono(c=1), _mono(a1=e + 4, a2=2, b1=1, b2=1)),
        MonomialEquation("c = a1^(e+5) a2 b1 b3", _mono(c=1), _mono(a1=e + 5, a2=1, b1=1, b3=1)),
        MonomialEquation("c = a1^(e+6) b2 b3", _mono(c=1), _mono(a1=e + 6, b2=1, b3=1)),
        MonomialEquation("c = a1^(10k+5(d-1))", _mono(c=1), _mono(a1=10 * k + 5 * (d - 1))),
        MonomialEquation("c = a2^(8k+4(d-1))", _mono(c=1), _mono(a2=8 * k + 4 * (d - 1))),
    ]
    if include_q0_ratio:
        eqs.append(MonomialEquation("a1^(10k-5) = a2^(8k-4)", _mono(a1=10 * k - 5), _mono(a2=8 * k - 4)))
    return eqs


def solve_monomial_system(equations: Sequence[MonomialEquation], nvars: int) -> list[tuple[Fraction, ...]]:
    """All solutions in nonzero rationals of a system of monomial equations.

    Writing each unknown as ``sign * prod p^(nu_p)``, every prime's valuation
    vector lies in the kernel of the exponent matrix.  Full column rank forces
    every ``|u_i| = 1``; the signs then solve the system mod 2.
    """
    M = [[l - r for l, r in zip(eq.lhs, eq.rhs)] for eq in equations]
    if rank(M) < nvars:
        raise ValueError("exponent matrix is rank deficient: infinitely many solutions")
    sols = []
    for signs in product((0, 1), repeat=nvars):
        if all(sum(m * s for m, s in zip(row, signs)) % 2 == 0 for row in M):
            sols.append(tuple(Fraction(-1 if s else 1) for s in signs))
    return sols


def scalar_constraints(k: int | ModelSpec, d: int = 2, include_q0_ratio: bool = True) -> list[tuple[Fraction, ...]]:
    """Solution set of :func:`scalar_equations` as tuples ``(a1, a2, b1, b2, b3, c)``."""
    if isinstance(k, ModelSpec):
        k, d = k.k, k.d
    return solve_monomial_system(scalar_equations(k, d, include_q0_ratio), len(SCALAR_NAMES))


# ---------------------------------------------------------------------------
# classification of automorphisms


@dataclass
class Step:
    name: str
    ok: bool
    residue_terms: int = 0
    detail: str = ""

    @property
    def failure(self) -> str:
        return FAILURE_LABELS.get(self.name, f"{self.name} violated")


FAILURE_LABELS = {
    "shape": "generator images not of the admissible shape",
    "odd scalars": "b_i != a1^* a2^*",
    "D = 0": "D != 0",
    "a2(j) = 0": "a2(j) != 0",
    "a1(j) = 0": "a1(j) != 0",
    "y-part exact": "y1 A1 + y2 A2 + y3 A3 not exact",
    "scalars": "scalars != 1",
    "orthogonal": "transpose of linear part not orthogonal",
    "chain map": "not a chain map",
}


@dataclass
class ClassificationResult:
    scalars: dict[str, Fraction] = field(default_factory=dict)
    linear_part: QMatrix | None = None
    corrections_x1: tuple[Fraction, ...] = ()
    corrections_x2: tuple[Fraction, ...] = ()
    D: GcaElement | None = None
    group_element: QMatrix | None = None
    homotopy_witness: GcaElement | None = None
    steps: list[Step] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.group_element is not None

    @property
    def failed_step(self) -> Step | None:
        return next((s for s in self.steps if not s.ok), None)

    @property
    def diagnostic(self) -> str:
        s = self.failed_step
        return "ok" if s is None else s.failure

    def report(self) -> str:
        lines = [
            f"{'PASS' if s.ok else 'FAIL'}  {s.name:<13} residue monomials: {s.residue_terms}"
            + (f"  ({s.detail})" if s.detail else "")
            for s in self.steps
        ]
        if self.ok:
            lines.append("group element g = (A^t)^-1:")
            lines += ["  " + row for row in str(self.group_element).splitlines()]
            lines.append(f"homotopy witness m = {self.homotopy_witness}")
        else:
            lines.append(f"rejected: {self.diagnostic}")
        return "\n".join(lines) + "\n"


def _single_coefficient(img: GcaElement, gen: GcaElement) -> Fraction | None:
    """``a`` if ``img == a * gen`` with ``a != 0``; otherwise ``None``."""
    if len(img) != 1:
        return None
    ((key, c),) = img.terms.items()
    ((gkey, _),) = gen.terms.items()
    return c if key == gkey else None


def classify(f: DgaMorphism) -> ClassificationResult:
    """Run the proof pipeline that identifies ``f`` with ``f_g + d m`` on z.

    Each step checks one extracted quantity and records how many monomials of
    the relevant slice of ``f(dz) - d f(z)`` witness it.  The first failing
    step names the violation; the group element is only returned when all
    steps pass.
    """
    model = f.source
    if not isinstance(model, SullivanModel) or f.target.algebra != model.algebra:
        raise TypeError("classify expects an endomorphism of a built model")
    spec = model.spec
    fam = spec.family
    n, k, d = spec.n, spec.k, spec.d
    alg = model.algebra
    res = ClassificationResult()
    img = f.assignment

    # generator images
    shape_problems = []
    scal: dict[str, Fraction] = {}
    for name in ("x1", "x2", "y1", "y2", "y3"):
        a = _single_coefficient(img[name], alg.gen(name))
        if a is None:
            shape_problems.append(f"f({name}) is not a multiple of {name}")
        else:
            scal[{"x1": "a1", "x2": "a2"}.get(name, "b" + name[1:])] = a
    ix1, ix2 = alg.even_index("x1"), alg.even_index("x2")
    vidx = {alg.even_index(f"v{j}"): j - 1 for j in range(1, n + 1)}
    L = [[Fraction(0)] * n for _ in range(n)]
    c1 = [Fraction(0)] * n
    c2 = [Fraction(0)] * n
    for j in range(n):
        for (odd, even), c in img[f"v{j + 1}"].terms.items():
            support = [(i, e) for i, e in enumerate(even) if e]
            if odd or len(support) != 1:
                shape_problems.append(f"f(v{j + 1}) has a term outside span(v, x1^5, x2^4)")
                continue
            (i, e), = support
            if i in vidx and e == 1:
                L[vidx[i]][j] = c
            elif i == ix1 and e == 5:
                c1[j] = c
            elif i == ix2 and e == 4:
                c2[j] = c
            else:
                shape_problems.append(f"f(v{j + 1}) has a term outside span(v, x1^5, x2^4)")
    parts = img["z"].odd_parts()
    zero = alg.zero()
    zpart = parts.pop(("z",), zero)
    cz = _single_coefficient(zpart, alg.one()) if not zpart.is_zero() else Fraction(0)
    if cz is None:
        shape_problems.append("coefficient of z in f(z) is not a scalar")
        cz = Fraction(0)
    scal["c"] = cz
    D = parts.pop(("y1", "y2", "y3"), zero)
    omega_parts = {w: parts.pop(w, zero) for w in (("y1",), ("y2",), ("y3",))}
    if parts:
        shape_problems.append("f(z) has terms outside cz + sum y_i A_i + y1 y2 y3 D")
    linear = QMatrix(L)
    if linear.det() == 0:
        shape_problems.append("linear part A is singular")
    res.scalars = {name: scal.get(name, Fraction(0)) for name in SCALAR_NAMES}
    res.linear_part = linear
    res.corrections_x1 = tuple(c1)
    res.corrections_x2 = tuple(c2)
    res.D = D
    if shape_problems:
        res.steps.append(Step("shape", False, 0, shape_problems[0]))
        return res
    res.steps.append(Step("shape", True))

    a1, a2, b1, b2, b3, c = (res.scalars[nm] for nm in SCALAR_NAMES)
    # odd scalars from f(d y_i) = d f(y_i)
    y_res = sum(len(f(model.differential[y]) - model.d(img[y])) for y in ("y1", "y2", "y3"))
    eqs = scalar_equations(k, d)
    ok = all(eq.holds((a1, a2, b1, b2, b3, c)) for eq in eqs[:3])
    res.steps.append(Step("odd scalars", ok, y_res))

    R = f(model.differential["z"]) - model.d(img["z"])
    iy2, iy3 = alg.odd_index("y2"), alg.odd_index("y3")
    v_positions = sorted(vidx)

    def vdeg(even):
        return sum(even[i] for i in v_positions)

    slice_D = sum(1 for (odd, even) in R.terms if odd == (iy2, iy3) and even[ix2] > 0)
    res.steps.append(Step("D = 0", D.is_zero(), slice_D))

    slice_a2 = sum(1 for (odd, even) in R.terms if not odd and even[ix1] == 0 and vdeg(even) == 1)
    res.steps.append(Step("a2(j) = 0", not any(c2), slice_a2))

    top = fam.degrees()[-1]
    e_top = spec.x1_exponent(top)
    slice_a1 = sum(
        1 for (odd, even) in R.terms if not odd and even[ix1] == e_top + 5 and vdeg(even) == top - 1
    )
    res.steps.append(Step("a1(j) = 0", not any(c1), slice_a1))

    omega = sum((alg.gen(w[0]) * A for w, A in omega_parts.items()), alg.zero())
    d_omega = model.d(omega)
    try:
        m = homotopy_witness(omega, spec)
        res.steps.append(Step("y-part exact", True, len(d_omega)))
    except SullivanFormsError as exc:
        m = None
        res.steps.append(Step("y-part exact", False, len(d_omega), str(exc)))

    sols = scalar_constraints(k, d)
    values = (a1, a2, b1, b2, b3, c)
    bad = sum(1 for eq in scalar_equations(k, d) if not eq.holds(values))
    res.steps.append(Step("scalars", values in sols, bad))

    At = linear.transpose()
    orth_res = sum(len(substitute_linear(q, At) - q) for q in fam.forms)
    res.steps.append(Step("orthogonal", orth_res == 0, orth_res))

    chain = is_chain_map(f)
    if all(s.ok for s in res.steps) and not chain:
        raise NotChainMap(
            f"all proof steps pass but f(d {chain.generator}) != d f({chain.generator})",
            chain.generator,
            chain.residue,
        )
    res.steps.append(Step("chain map", chain.ok, len(chain.residue) if chain.residue is not None else 0))
    if not all(s.ok for s in res.steps):
        return res

    g = At.inverse()
    fg = lift_group_element(g, model)
    if f(alg.gen("z")) - fg(alg.gen("z")) != model.d(m):
        raise AssertionError("f(z) - f_g(z) != d(m)")
    res.group_element = g
    res.homotopy_witness = m
    return res


# ---------------------------------------------------------------------------
# recovering the ModelSpec from a bare model


def spec_from_model(A: Cdga) -> ModelSpec:
    """Reconstruct (family, k) from the generators and d(z) of a model.

    Raises :class:`WrongShape` if ``A`` is not of the expected form; callers
    should rebuild the model from the result and compare for a full check.
    """
    alg = A.algebra
    names = alg.names
    n = sum(1 for nm in names if nm.startswith("v"))
    expected = model_algebra(n, alg["z"].degree if "z" in alg else 0)
    if "z" not in alg or alg != expected:
        raise WrongShape("generators are not x1, x2, y1, y2, y3, v1..vn, z with the standard degrees")
    dz = A.differential["z"]
    ix1, ix2 = alg.even_index("x1"), alg.even_index("x2")
    vspace = VarSpace.standard(n)
    q0_terms = {}
    by_exp: dict[int, dict] = {}
    for (odd, even), c in dz.terms.items():
        mono = even[2:]
        if odd or not any(mono):
            continue
        if even[ix1] == 0:
            q0_terms[mono] = c
        elif even[ix2] == 0:
            by_exp.setdefault(even[ix1], {})[mono] = c
    if not q0_terms:
        raise WrongShape("no q0*x2^(8k-4) summand in d(z)")
    q0 = Poly(vspace, q0_terms)
    dq = q0.weighted_degree()
    num = alg["z"].degree + 41 - 40 * dq
    if num % 80:
        raise WrongShape("z has a degree incompatible with deg q0")
    k = num // 80
    by_exp.pop(10 * k - 5, None)
    forms = [q0] + [Poly(vspace, t) for _, t in sorted(by_exp.items(), reverse=True)]
    try:
        fam = family_from_forms(forms)
    except NotRealizable as exc:
        raise WrongShape(f"recovered forms are not a family: {exc}") from exc
    return ModelSpec(fam, k)
