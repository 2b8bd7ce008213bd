import random

import pytest

from skewbrack.bracket import BracketError, square_bracket
from skewbrack.cochain import Cochain
from skewbrack.cyclo import CycNum
from skewbrack.hecke import (
    constant_cocycle_space,
    hecke_parameter_space,
    kappa_from_mu1,
    mu1,
    mu1_degree_shift,
    pbw_relations,
    relation_strings,
)
from skewbrack.poly import Poly, STD

rng = random.Random(61)


def test_dimension_agreement(d8, z4, klein, z2_trivial, trivial3):
    """Two independent code paths: invariance kernel vs per-class decomposition."""
    for group in (d8, z4, klein, z2_trivial, trivial3):
        basis = constant_cocycle_space(group)
        report = hecke_parameter_space(group)
        assert report.total == len(basis)


def test_trivial_action_dimension(z2_trivial, trivial3):
    assert hecke_parameter_space(trivial3).total == 3  # all two-forms on C^3
    assert hecke_parameter_space(z2_trivial).total == 2 * 3


def test_bireflection_determinant_condition(d8):
    report = hecke_parameter_space(d8)
    by_word = {c.word: c for c in report.classes}
    # the twisted swap passes the determinant condition, the others fail it
    assert by_word["g"].dimension == 1
    assert by_word["h"].dimension == 0
    assert by_word["g^2"].dimension == 0
    assert by_word["g*h"].dimension == 0
    assert by_word["1"].dimension == 0


def test_nontrivial_codim_contributes_nothing(z4_c4):
    report = hecke_parameter_space(z4_c4)
    for c in report.classes:
        if c.codim not in (0, 2):
            assert c.dimension == 0


def test_constant_cocycles_are_poisson(d8, z4, klein, z2_trivial):
    for group in (d8, z4, klein, z2_trivial):
        for alpha in constant_cocycle_space(group):
            assert square_bracket(group, alpha).is_zero()


def test_pbw_relations_zero_parameter(d8):
    zero = Cochain.zero(3, 2, STD)
    rels = pbw_relations(d8, zero)
    assert all(not rhs for _, rhs in rels)
    lines = relation_strings(d8, rels)
    assert lines == [
        "x1*x2 - x2*x1 = 0",
        "x1*x3 - x3*x1 = 0",
        "x2*x3 - x3*x2 = 0",
    ]


def test_pbw_relations_weyl_style(z2_trivial):
    """A parameter supported on the identity with value 1 on one wedge gives the
    classical commutation relation."""
    alpha = Cochain.build(3, 2, [(0, Poly.const(3, 1), (0, 1))], STD)
    rels = dict(pbw_relations(z2_trivial, alpha))
    assert rels[(0, 1)] == [(0, CycNum.rational(1))]
    assert rels[(0, 2)] == [] and rels[(1, 2)] == []


def test_pbw_relations_group_valued(d8):
    alpha = constant_cocycle_space(d8)[0]
    rels = dict(pbw_relations(d8, alpha))
    rhs = rels[(0, 1)]
    assert rhs, "the moved-plane relation must be group-algebra valued"
    supports = {g for g, _ in rhs}
    assert supports == {d8.parse_word("g"), d8.parse_word("g^3")}


def test_pbw_rejects_nonconstant(d8):
    bad = Cochain.build(3, 2, [(0, Poly.variable(3, 2, STD, 4), (0, 1))], STD)
    with pytest.raises(BracketError):
        pbw_relations(d8, bad)


def test_mu1_recovers_kappa(d8, z4, klein):
    for group in (d8, z4, klein):
        n = group.dim
        for alpha in constant_cocycle_space(group):
            std = alpha.to_std(group)
            kap = kappa_from_mu1(group, alpha)
            for i in range(n):
                for j in range(i + 1, n):
                    want = {
                        g: f
                        for g, w, f in std.iter_terms()
                        if w == (i, j) and f
                    }
                    got = kap.get((i, j), {})
                    assert set(got) == set(want)
                    for t in got:
                        assert got[t] == want[t]


def test_mu1_lowers_degree_by_two(d8):
    alpha = constant_cocycle_space(d8)[0]
    shift, constant_case = mu1_degree_shift(alpha)
    assert shift == -2 and constant_case
    n = 3
    for _ in range(8):
        e1 = tuple(rng.randrange(3) for _ in range(n))
        e2 = tuple(rng.randrange(3) for _ in range(n))
        f1 = Poly.monomial(n, e1, CycNum.rational(1, 4))
        f2 = Poly.monomial(n, e2, CycNum.rational(1, 4))
        h1 = rng.randrange(d8.order)
        h2 = rng.randrange(d8.order)
        values = mu1(d8, alpha, (f1, h1), (f2, h2))
        total = sum(e1) + sum(e2)
        for _, f in values.items():
            assert {sum(e) for e in f.terms} == {total - 2}


def test_mu1_constant_input_vanishes(d8):
    alpha = constant_cocycle_space(d8)[0]
    c = Poly.const(3, 5)
    f = Poly.monomial(3, (1, 2, 0), CycNum.rational(1, 4))
    assert mu1(d8, alpha, (c, 0), (f, 2)) == {}
    assert mu1(d8, alpha, (f, 1), (c, 0)) == {}


def test_mu1_rejects_noninvariant(d8):
    gi = d8.generators[0]
    ed = d8.frame.base[gi]
    alpha = Cochain.build(
        3,
        2,
        [(gi, Poly.monomial(3, (0, 0, 1), CycNum.rational(1, 4), ed.key), (0, 1))],
        d8.frame,
    )
    with pytest.raises(BracketError):
        mu1(d8, alpha, (Poly.variable(3, 0, STD, 4), 0), (Poly.variable(3, 1, STD, 4), 0))


def test_mu1_any_degree(z2_trivial):
    """The multiplication map is defined for invariant cocycles of any
    polynomial degree and shifts degree accordingly."""
    n = 3
    alpha = Cochain.build(
        n, 2, [(1, Poly.monomial(n, (1, 1, 0), CycNum.rational(1)), (0, 1))], STD
    )
    shift, constant_case = mu1_degree_shift(alpha)
    assert shift == 0 and not constant_case
    f1 = Poly.monomial(n, (1, 0, 0), CycNum.rational(1))
    f2 = Poly.monomial(n, (0, 1, 0), CycNum.rational(1))
    values = mu1(z2_trivial, alpha, (f1, 0), (f2, 0))
    assert values and all(sum(e) == 2 for f in values.values() for e in f.terms)
