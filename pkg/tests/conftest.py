import pytest

from skewbrack.cyclo import CycNum
from skewbrack.group import Group


def diag_matrix(entries, conductor=1):
    zero = CycNum.rational(0, conductor)
    n = len(entries)
    return tuple(
        tuple(entries[r] if r == c else zero for c in range(n)) for r in range(n)
    )


def identity_matrix(n, conductor=1):
    return diag_matrix([CycNum.rational(1, conductor)] * n, conductor)


@pytest.fixture(scope="session")
def d8():
    """Dihedral group of order 8 in GL_3: a zeta_4-twisted swap and a double sign flip."""
    i = CycNum.zeta(4)
    zero = CycNum.rational(0, 4)
    one = CycNum.rational(1, 4)
    mone = CycNum.rational(-1, 4)
    g = ((zero, i, zero), (i, zero, zero), (zero, zero, one))
    h = ((one, zero, zero), (zero, mone, zero), (zero, zero, mone))
    return Group.close([g, h], 4)


@pytest.fixture(scope="session")
def z4():
    i = CycNum.zeta(4)
    one = CycNum.rational(1, 4)
    return Group.close([diag_matrix([i, i ** 3, one], 4)], 4)


@pytest.fixture(scope="session")
def z4_c4():
    """Z/4 diagonal on C^4 with a kernel-free action and bireflection powers."""
    i = CycNum.zeta(4)
    one = CycNum.rational(1, 4)
    return Group.close([diag_matrix([i, i ** 3, one, one], 4)], 4)


@pytest.fixture(scope="session")
def klein():
    one = CycNum.rational(1)
    m = CycNum.rational(-1)
    return Group.close(
        [diag_matrix([m, m, one]), diag_matrix([one, m, m])], 2
    )


@pytest.fixture(scope="session")
def z2_trivial():
    """Z/2 acting trivially on C^3 (a non-faithful action given by its table)."""
    e = identity_matrix(3)
    return Group.from_table(3, 1, [e, e], [[0, 1], [1, 0]])


@pytest.fixture(scope="session")
def trivial3():
    return Group.close([identity_matrix(3)], 1)


@pytest.fixture(scope="session")
def z3():
    w = CycNum.zeta(3)
    one = CycNum.rational(1, 3)
    return Group.close([diag_matrix([w, w ** 2, one], 3)], 3)


@pytest.fixture(scope="session")
def z2m():
    one = CycNum.rational(1)
    m = CycNum.rational(-1)
    return Group.close([diag_matrix([m, m, one])], 2)
