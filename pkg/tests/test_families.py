from __future__ import annotations

import random
from fractions import Fraction

import pytest

from sullivan_forms.errors import BadS, DegreeTooSmall, NotRealizable, PolySyntaxError
from sullivan_forms.families import (
    RealizableFamily,
    check_prerealizable,
    check_realizable,
    family_from_forms,
    format_family,
    g2_family,
    make_prerealizable,
    minimal_s,
    orthogonal_presentation,
    parse_family,
    symmetric_family,
)
from sullivan_forms.groups import (
    FormFamily,
    conjugate,
    group_closure,
    is_orthogonal,
    permutation_matrices,
    signed_permutation_matrices,
)
from sullivan_forms.polycore import VarSpace, parse_poly
from sullivan_forms.qmatrix import QMatrix

V1, V2, V3 = (VarSpace.standard(n) for n in (1, 2, 3))


def forms_(texts, space):
    return [parse_poly(t, space) for t in texts]


class TestChecks:
    def test_symmetric_three(self):
        rep = check_realizable(symmetric_family(3).forms)
        assert rep.ok and rep.d == 2 and rep.s == 8
        assert rep.lambdas == (6, 6, 6)

    def test_single_variable_power(self):
        rep = check_prerealizable(forms_(["v1^2", "v1^4"], V1))
        assert rep.ok and rep.s == 2

    def test_not_diagonal(self):
        fam = forms_(["v1*v2", "v1^3*v2^3"], V2)
        assert check_prerealizable(fam).ok
        rep = check_realizable(fam)
        assert not rep.ok and rep.condition == 3

    def test_tail_not_a_power(self):
        rep = check_prerealizable(forms_(["v1^2 + v2^2", "v1^5", "v1^8"], V2))
        assert not rep.ok and rep.condition == 1

    def test_s_too_small(self):
        # q_r has degree 5, so s >= ceil(5/2) + 1 = 4
        q0 = "v1^2 + v2^2"
        fam = [parse_poly(q0, V2), parse_poly("v1^5", V2), parse_poly(q0, V2) ** 3]
        rep = check_prerealizable(fam)
        assert not rep.ok and rep.condition == 1

    def test_degree_gap(self):
        fam = forms_(["v1^2 + v2^2", "v1^3"], V2) + [parse_poly("v1^2 + v2^2", V2) ** 3]
        rep = check_prerealizable(fam)
        assert not rep.ok and rep.condition == 2 and rep.index == 0

    def test_minimal_s(self):
        assert minimal_s(3, 14, 2) == 8
        assert minimal_s(7, 7, 2) == 7


class TestMakePrerealizable:
    def test_single_form(self):
        fam = make_prerealizable(forms_(["v1^2"], V1))
        assert [str(q) for q in fam] == ["v1^2", "v1^4"]
        assert fam.s == 2

    def test_product_rule(self):
        p0, p1 = forms_(["v1^2 + v2^2", "v1*v2"], V2)
        fam = make_prerealizable([p0, p1])
        assert fam[1] == p1 * p0 * p0
        # deg q_1 = 2 + 2 + 2, and s = max(2, ceil(6/2) + 1)
        assert fam.degrees() == [2, 6, 8] and fam.s == 4
        assert check_prerealizable(fam.forms).ok

    def test_symmetric_degrees(self):
        fam = symmetric_family(3)
        assert fam.degrees() == [2, 5, 9, 14, 16]

    def test_errors(self):
        with pytest.raises(DegreeTooSmall):
            make_prerealizable(forms_(["v1 + v2", "v1*v2"], V2))
        with pytest.raises(BadS):
            make_prerealizable(forms_(["v1^2 + v2^2", "v1*v2"], V2), s=3)

    def test_orthogonal_group_unchanged(self):
        base = forms_(["v1^2 + v2^2 + v3^2", "v1 + v2 + v3", "v1*v2 + v1*v3 + v2*v3", "v1*v2*v3"], V3)
        fam = make_prerealizable(base)
        rng = random.Random(11)
        pool = signed_permutation_matrices(3) + [QMatrix.random_invertible(3, rng) for _ in range(60)]
        assert len(pool) >= 100
        for f in pool:
            assert is_orthogonal(f, base) == is_orthogonal(f, fam)


class TestSymmetricFamily:
    def test_two(self):
        fam = symmetric_family(2)
        assert fam.s == 6
        assert fam.degrees() == [2, 5, 9, 12]

    def test_bad(self):
        with pytest.raises(BadS):
            symmetric_family(3, s=7)
        with pytest.raises(ValueError):
            symmetric_family(1)

    def test_permutations_preserve(self):
        fam = symmetric_family(3)
        assert all(is_orthogonal(g, fam) for g in permutation_matrices(3))

    def test_q0(self):
        assert str(symmetric_family(3).q0) == "6*x1^2 + 6*x2^2 + 6*x3^2"


class TestPresentation:
    def test_s3_degrees(self):
        G = group_closure([QMatrix.permutation([1, 0, 2]), QMatrix.permutation([1, 2, 0])])
        fam, C = orthogonal_presentation(G)
        assert fam.degrees() == [2, 5, 9, 14, 16] and fam.s == 8
        assert all(is_orthogonal(conjugate(g, C), fam) for g in G)

    def test_minus_identity(self):
        G = group_closure([QMatrix.diag([-1, -1])])
        fam, C = orthogonal_presentation(G, prune=False)
        assert fam.q0 == parse_poly("2*v1^2 + 2*v2^2", V2)
        p = parse_poly("v1*v2", V2)
        assert any(fam[i] == p * fam[i - 1] * fam.q0 for i in range(1, len(fam) - 1))
        assert is_orthogonal(conjugate(QMatrix.diag([-1, -1]), C), fam)

    def test_trivial_group_in_one_variable(self):
        fam, _ = orthogonal_presentation(group_closure([QMatrix.identity(1)]))
        # the degree-one invariant v1 survives, so -1 is excluded
        assert not is_orthogonal(QMatrix.diag([-1]), fam)
        assert check_prerealizable(fam.forms).ok

    @pytest.mark.parametrize(
        "gens",
        [
            [QMatrix.permutation([1, 0])],
            [QMatrix.permutation([1, 0], [1, -1])],
            [QMatrix([[0, -1], [1, -1]])],  # order 3, not orthogonal in the standard basis
        ],
    )
    def test_forward_inclusion_and_positivity(self, gens):
        G = group_closure(gens)
        fam, C = orthogonal_presentation(G)
        assert all(lam > 0 for lam in fam.lambdas)
        assert all(is_orthogonal(conjugate(g, C), fam) for g in G)
        # pruning does not change the stabilizer on signed permutations
        full, C2 = orthogonal_presentation(G, prune=False)
        for f in signed_permutation_matrices(2):
            assert is_orthogonal(f, fam) == is_orthogonal(f, full)


class TestG2:
    def test_rewritten_forms(self):
        _, original, C = g2_family()
        fam_lit, _, _ = g2_family(literal=True)
        V7 = VarSpace.standard(7)
        f0 = parse_poly("-2*v1^2 + 1/4*v2^2 - 1/4*v3^2 + 1/4*v4^2 - 1/4*v5^2 + 1/4*v6^2 - 1/4*v7^2", V7)
        inner = parse_poly(
            "v1*v2^2 - v1*v3^2 + v1*v4^2 - v1*v5^2 + v1*v6^2 - v1*v7^2 + v2*v5*v7 + v3*v4*v7 + v3*v5*v6 + v2*v4*v6",
            V7,
        )
        assert fam_lit[0] == f0
        assert fam_lit[1] == inner * Fraction(1, 4)

    def test_literal_family_violates_gap(self):
        fam, _, _ = g2_family(literal=True)
        rep = check_prerealizable(fam.forms)
        assert not rep.ok and rep.condition == 2

    def test_default_family(self):
        fam, _, _ = g2_family()
        assert fam.degrees() == [2, 7, 14] and fam.s == 7 and fam.d == 2
        assert check_realizable(fam.forms).ok

    def test_change_of_variables(self):
        _, original, C = g2_family()
        # v1 = x0, v_{2i} = x_i + x_i', v_{2i+1} = x_i - x_i'
        Cinv = C.inverse()
        assert Cinv.rows[1][1:3] == (1, 1) and Cinv.rows[2][1:3] == (1, -1)


class TestFiles:
    @pytest.mark.parametrize("fam", [symmetric_family(3), g2_family()[0], symmetric_family(2, s=7)])
    def test_round_trip(self, fam):
        assert parse_family(format_family(fam)) == fam

    def test_plain_family(self):
        got = parse_family("vars: a b\na^2 + b^2\na*b\n")
        assert isinstance(got, FormFamily) and len(got) == 2

    def test_trailer_mismatch(self):
        text = format_family(symmetric_family(3)).replace("s: 8", "s: 9")
        with pytest.raises(NotRealizable):
            parse_family(text)

    def test_missing_header(self):
        with pytest.raises(PolySyntaxError):
            parse_family("v1^2\n")

    def test_family_from_forms_rejects(self):
        with pytest.raises(NotRealizable):
            family_from_forms(forms_(["v1^2", "v1^3"], V1))
