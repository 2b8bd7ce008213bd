import random

import pytest

from skewbrack.cyclo import CycNum
from skewbrack.poly import (
    BasisMismatch,
    Poly,
    STD,
    change_coords,
    divides_linear,
    group_act,
    poly_to_std,
    quantum_partial,
    twisted_partial,
)

rng = random.Random(23)


def rational(p, q=1):
    from gmpy2 import mpq

    return CycNum.rational(mpq(p, q))


def random_poly(n, conductor, dmax=3, terms=3, basis=STD):
    out = Poly.zero(n, basis)
    for _ in range(terms):
        exps = tuple(rng.randrange(dmax + 1) for _ in range(n))
        c = CycNum.rational(rng.randrange(-3, 4), conductor)
        out = out + Poly.monomial(n, exps, c, basis)
    return out


def test_ring_ops():
    f = random_poly(3, 4)
    one = Poly.const(3, 1)
    assert f * one == f
    v1 = Poly.variable(3, 0)
    v2 = Poly.variable(3, 1)
    sq = (v1 + v2) * (v1 + v2)
    assert sq == v1 * v1 + v1 * v2 * rational(2) + v2 * v2


def test_basis_mismatch_is_an_error():
    f = Poly.variable(3, 0, STD)
    g = Poly.variable(3, 0, "other")
    with pytest.raises(BasisMismatch):
        f + g


def test_eigenvector_square_sum_factors(d8):
    """w1^2 + w2^2 rewrites to 2*(v1 + i v2)(v1 - i v2); oracle by expansion."""
    gi = d8.generators[0]
    ed = d8.frame.base[gi]
    w_poly = Poly.monomial(3, (2, 0, 0), rational(1), ed.key) + Poly.monomial(
        3, (0, 2, 0), rational(1), ed.key
    )
    in_std = poly_to_std(w_poly, ed)
    i = CycNum.zeta(4)
    a = Poly.linear(3, (rational(1).promote(4), i, CycNum.rational(0, 4)), STD)
    b = Poly.linear(3, (rational(1).promote(4), -i, CycNum.rational(0, 4)), STD)
    assert in_std == (a * b).scale(rational(2))


def test_group_act_identity_and_diagonal(d8, z4):
    f = random_poly(3, 4)
    assert group_act(d8.elements[d8.identity], f) == f
    t = z4.generators[0]
    eps = z4.elements[t][0][0]
    v1k = Poly.monomial(3, (3, 0, 0), rational(1).promote(4), STD)
    assert group_act(z4.elements[t], v1k) == v1k.scale(eps ** 3)


def test_group_act_is_action_and_ring_hom(d8):
    for _ in range(12):
        f = random_poly(3, 4)
        h2 = random_poly(3, 4)
        a = rng.randrange(d8.order)
        b = rng.randrange(d8.order)
        ab = d8.mul_table[a][b]
        assert group_act(d8.elements[a], group_act(d8.elements[b], f)) == group_act(
            d8.elements[ab], f
        )
        assert group_act(d8.elements[a], f * h2) == group_act(
            d8.elements[a], f
        ) * group_act(d8.elements[a], h2)


def test_change_coords_round_trip(d8):
    gi, hi = d8.generators
    ed_g = d8.frame.base[gi]
    ed_h = d8.frame.base[hi]
    f = random_poly(3, 4, basis=ed_g.key)
    assert change_coords(f, ed_g, ed_g) == f
    over = change_coords(f, ed_g, ed_h)
    back = change_coords(over, ed_h, ed_g)
    assert back == f
    # v3 is shared by both eigenbases (it is w3 in the twisted-swap basis)
    zero = CycNum.rational(0, 4)
    one = CycNum.rational(1, 4)
    pos_h = ed_h.vectors.index((zero, zero, one))
    v3_h = Poly.variable(3, pos_h, ed_h.key, 4)
    moved = change_coords(v3_h, ed_h, ed_g)
    assert moved == Poly.variable(3, 2, ed_g.key, 4)


def test_quantum_partial_monomial_rule(z4):
    t = z4.generators[0]
    ed = z4.frame.base[t]
    eps = ed.eigenvalues[0]
    from skewbrack.cyclo import quantum_integer

    for k1 in range(5):
        for k2 in range(3):
            mono = Poly.monomial(3, (k1, k2, 0), rational(1).promote(4), ed.key)
            got = quantum_partial(mono, 0, ed)
            if k1 == 0:
                assert not got
            else:
                want = Poly.monomial(3, (k1 - 1, k2, 0), quantum_integer(k1, eps), ed.key)
                assert got == want


def test_quantum_partial_constants_and_classical(trivial3):
    ed = trivial3.frame.base[0]
    const = Poly.const(3, 5, ed.key)
    assert not quantum_partial(const, 0, ed)
    cube = Poly.monomial(3, (3, 0, 0), rational(1), ed.key)
    assert quantum_partial(cube, 0, ed) == Poly.monomial(3, (2, 0, 0), rational(3), ed.key)


def test_twisted_partial(z4):
    t = z4.generators[0]
    ed = z4.frame.base[t]
    eps1, eps2 = ed.eigenvalues[0], ed.eigenvalues[1]
    from skewbrack.cyclo import quantum_integer

    # no reflections are applied ahead of the first slot
    f = random_poly(3, 4, basis=ed.key)
    assert twisted_partial(f, 0, ed) == quantum_partial(f, 0, ed)
    # monomial: v1^a v2^b -> eps1^a [b] v1^a v2^(b-1)
    for a in range(3):
        for b in range(1, 3):
            mono = Poly.monomial(3, (a, b, 0), rational(1).promote(4), ed.key)
            want = Poly.monomial(
                3,
                (a, b - 1, 0),
                eps1 ** a * quantum_integer(b, eps2),
                ed.key,
            )
            assert twisted_partial(mono, 1, ed) == want


def test_twisted_partial_trivial_eigenvalues(trivial3):
    ed = trivial3.frame.base[0]
    f = random_poly(3, 1, basis=ed.key)
    for j in range(3):
        assert twisted_partial(f, j, ed) == quantum_partial(f, j, ed)


def test_demazure_quotient_identity(d8):
    """(1 - eps_i) v_i * partial_i(f) == f - s_i(f), exactly, for moved slots."""
    gi = d8.generators[0]
    ed = d8.frame.base[gi]
    one = CycNum.rational(1, 4)
    for _ in range(10):
        f = random_poly(3, 4, basis=ed.key)
        for i in ed.perp:
            eps = ed.eigenvalues[i]
            lhs = Poly.variable(3, i, ed.key, 4) * quantum_partial(f, i, ed)
            lhs = lhs.scale(one - eps)
            # s_i scales the i-th variable by eps_i
            reflected = f.map_coeffs(lambda e, c, i=i, eps=eps: c * eps ** e[i])
            assert lhs == f - reflected


def test_divides_linear():
    i = CycNum.zeta(4)
    u = Poly.linear(3, (rational(1).promote(4), -i, CycNum.rational(0, 4)), STD)
    v = Poly.linear(3, (rational(1).promote(4), i, CycNum.rational(0, 4)), STD)
    prod = u * v * (random_poly(3, 4, terms=2) + Poly.const(3, 1))
    assert divides_linear(u, prod)
    assert not divides_linear(u, prod + Poly.const(3, 1))
    assert divides_linear(u, Poly.zero(3, STD))
