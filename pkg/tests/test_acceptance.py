"""Acceptance suite: one check per headline property, each printing a PASS/FAIL line.

Run under pytest (``pytest tests/test_acceptance.py -v``) or directly
(``python3 tests/test_acceptance.py``) for the bare summary.
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction

import pytest

from sullivan_forms.cdga import DgaMorphism, check_d_squared, is_chain_map
from sullivan_forms.errors import NotClosed
from sullivan_forms.families import elementary_symmetric, g2_family, make_prerealizable, symmetric_family
from sullivan_forms.groups import is_orthogonal, permutation_matrices, signed_permutation_matrices
from sullivan_forms.model import (
    LEMMA_FACTORS,
    ModelSpec,
    build_model,
    classify,
    homotopy_witness,
    lemma_degree,
    lift_group_element,
    realize_all,
    scalar_constraints,
)
from sullivan_forms.polycore import VarSpace, enumerate_weighted_exponents, parse_poly
from sullivan_forms.qmatrix import QMatrix

SEED = 20240611


def _sigma3_model():
    return build_model(ModelSpec(symmetric_family(3), 8))


def criterion_1():
    timings = []
    ok = True
    for fam in (symmetric_family(3), g2_family()[0]):
        t = time.perf_counter()
        ok &= bool(check_d_squared(build_model(ModelSpec(fam, 8))))
        timings.append(time.perf_counter() - t)
    ok &= all(t < 60 for t in timings)
    return ok, "d^2 = 0 on the S3 and G2 models at k = 8 ({:.2f}s, {:.2f}s)".format(*timings)


def criterion_2():
    t = time.perf_counter()
    M = _sigma3_model()
    perms = permutation_matrices(3)
    lifts = {g: lift_group_element(g, M) for g in perms}
    chain = sum(bool(is_chain_map(f)) for f in lifts.values())
    mult = sum(lifts[g] @ lifts[h] == lifts[g @ h] for g, h in itertools.product(perms, repeat=2))
    elapsed = time.perf_counter() - t
    ok = chain == 6 and mult == 36 and elapsed < 120
    return ok, f"{chain}/6 lifts are chain maps, {mult}/36 pairs multiplicative ({elapsed:.2f}s)"


def criterion_3():
    fam = symmetric_family(3)
    x = fam.space
    q0 = fam.q0
    P = [q0] + [elementary_symmetric(x, j) for j in (1, 2, 3)]
    Q = make_prerealizable(P)
    perms = permutation_matrices(3)
    signed = [g for g in signed_permutation_matrices(3) if g not in set(perms)]
    rng = random.Random(SEED)
    rand = [QMatrix.random_invertible(3, rng) for _ in range(50)]
    pool = perms + signed + rand
    agree = sum(is_orthogonal(f, P) == is_orthogonal(f, Q) for f in pool)
    sizes = (len(perms), len(signed), len(rand))
    ok = agree == len(pool) and sizes == (6, 42, 50) and Q.degrees() == [2, 5, 9, 14, 16]
    return ok, f"O(P) and O(make_prerealizable(P)) agree on {agree}/{len(pool)} pool matrices {sizes}"


def criterion_4():
    t = time.perf_counter()
    fam = symmetric_family(3)
    hits = [g for g in signed_permutation_matrices(3) if is_orthogonal(g, fam)]
    elapsed = time.perf_counter() - t
    ok = len(hits) == 6 and set(hits) == set(permutation_matrices(3)) and elapsed < 10
    return ok, f"{len(hits)}/48 signed permutations preserve the S3 family ({elapsed:.2f}s)"


def criterion_5():
    t = time.perf_counter()
    checked = 0
    ok = True
    for k, d in itertools.product((2, 3), repeat=2):
        for i, (a0, b0) in LEMMA_FACTORS.items():
            sols = list(enumerate_weighted_exponents(lemma_degree(i, k, d), (8, 10, 40)))
            ok &= bool(sols)
            for a, b, _ in sols:
                ok &= a >= a0 and b >= b0
                checked += 1
    elapsed = time.perf_counter() - t
    ok &= elapsed < 5
    return ok, f"{checked} monomials over (k, d) in {{2,3}}^2 divisible by x1^2x2^3 / x1^3x2^2 / x1^4x2 ({elapsed:.2f}s)"


def criterion_6():
    M = _sigma3_model()
    spec = M.spec
    alg = M.algebra
    rng = random.Random(SEED)
    names = ("x1", "x2", "v1", "v2", "v3")
    monos = list(enumerate_weighted_exponents(80 * spec.k + 40 * spec.d - 120, (8, 10, 40, 40, 40)))

    def random_B():
        out = alg.zero()
        for _ in range(rng.randint(1, 4)):
            exps = rng.choice(monos)
            c = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            out = out + alg.monomial((), **dict(zip(names, exps))) * c
        return out

    y1, y2, y3, x1, x2 = (alg.gen(n) for n in ("y1", "y2", "y3", "x1", "x2"))
    exact = 0
    rejected = 0
    for _ in range(50):
        B2, B3 = random_B(), random_B()
        B1 = -B2 - B3
        omega = y1 * x1**2 * x2**3 * B1 + y2 * x1**3 * x2**2 * B2 + y3 * x1**4 * x2 * B3
        exact += M.d(homotopy_witness(omega, spec)) == omega
        bad = omega + y1 * x1**2 * x2**3 * random_B()
        try:
            homotopy_witness(bad, spec)
        except NotClosed:
            rejected += 1
    ok = exact == 50 and rejected == 50
    return ok, f"d(m) = omega for {exact}/50 random closed omega; NotClosed on {rejected}/50 open ones"


def criterion_7():
    M = _sigma3_model()
    alg = M.algebra
    E = alg.parse
    perms = permutation_matrices(3)
    round_trip = sum(classify(lift_group_element(g, M)).group_element == g for g in perms)

    m = E("y1*y2*x2*v1^15")
    perturbed_ok = 0
    for g in perms:
        f = lift_group_element(g, M)
        h = DgaMorphism(M, M, {**f.assignment, "z": f.assignment["z"] + M.d(m)})
        res = classify(h)
        perturbed_ok += res.group_element == g and res.homotopy_witness == m and not m.is_zero()

    faults = {
        "D = 0": {"z": E("z + y1*y2*y3*x1^3*x2^3*v1^13")},
        "a2(j) = 0": {"v1": E("v1 + x2^4")},
        "a1(j) = 0": {"v1": E("v1 + x1^5")},
    }
    named = 0
    for step, images in faults.items():
        res = classify(DgaMorphism(M, M, images))
        named += res.group_element is None and res.failed_step is not None and res.failed_step.name == step
    ok = round_trip == 6 and perturbed_ok == 6 and named == 3
    return ok, (
        f"round trip {round_trip}/6, d-exact perturbation {perturbed_ok}/6, "
        f"faults named at the right step {named}/3"
    )


def criterion_8():
    ks = range(2, 11)
    good = [k for k in ks if scalar_constraints(k, 2) == [(1, 1, 1, 1, 1, 1)]]
    return len(good) == len(ks), f"scalar system has the unique all-ones solution for {len(good)}/9 k in 2..10"


def criterion_9():
    fam, _, _ = g2_family(literal=True)
    V7 = VarSpace.standard(7)
    f1 = parse_poly(
        "v1*v2^2 - v1*v3^2 + v1*v4^2 - v1*v5^2 + v1*v6^2 - v1*v7^2 + v2*v5*v7 + v3*v4*v7 + v3*v5*v6 + v2*v4*v6", V7
    ) * Fraction(1, 4)
    f0 = parse_poly("-2*v1^2 + 1/4*v2^2 - 1/4*v3^2 + 1/4*v4^2 - 1/4*v5^2 + 1/4*v6^2 - 1/4*v7^2", V7)
    ok1, ok0 = fam[1] == f1, fam[0] == f0
    return ok1 and ok0, f"rewritten f1 exact: {ok1}; rewritten f0 (with -2v1^2) exact: {ok0}"


def criterion_10():
    models = realize_all([ModelSpec(symmetric_family(3), k) for k in (8, 9, 10)])
    degs = [m.spec.z_degree for m in models]
    ok = degs == [679, 759, 839] and len(set(degs)) == 3
    return ok, f"z-degrees {'/'.join(map(str, degs))}"


CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
]


def _line(n: int, ok: bool, detail: str) -> str:
    return f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"


@pytest.mark.parametrize("n", range(1, len(CRITERIA) + 1))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n - 1]()
    line = _line(n, ok, detail)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = []
    for n, crit in enumerate(CRITERIA, 1):
        ok, detail = crit()
        results.append(ok)
        print(_line(n, ok, detail))
    print(f"{sum(results)}/{len(results)} criteria passed")
    raise SystemExit(0 if all(results) else 1)
