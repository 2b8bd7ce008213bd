"""Small exact linear algebra over Q(zeta_N).

Matrices are tuples of row tuples of CycNum.  Everything is done by
fraction-free-enough Gaussian elimination with exact pivot tests; there is
no numerical tolerance anywhere.
"""

from __future__ import annotations

from .cyclo import CycNum, ExactError


def zeros(rows, cols, n=1):
    z = CycNum.rational(0, n)
    return tuple(tuple(z for _ in range(cols)) for _ in range(rows))


def identity(size, n=1):
    one = CycNum.rational(1, n)
    zero = CycNum.rational(0, n)
    return tuple(
        tuple(one if i == j else zero for j in range(size)) for i in range(size)
    )


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = a[i][0] * b[0][j]
            for k in range(1, inner):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(a, v):
    out = []
    for row in a:
        acc = row[0] * v[0]
        for k in range(1, len(v)):
            acc = acc + row[k] * v[k]
        out.append(acc)
    return tuple(out)


def transpose(a):
    return tuple(zip(*a))


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_eq(a, b):
    if len(a) != len(b) or len(a[0]) != len(b[0]):
        return False
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def column(a, j):
    return tuple(row[j] for row in a)


def from_columns(cols):
    return tuple(zip(*[tuple(c) for c in cols]))


def rref(a):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    m = [list(row) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return tuple(tuple(row) for row in m), pivots


def rank(a):
    return len(rref(a)[1])


def kernel_basis(a, n_field=1):
    """Basis of the right kernel from the reduced echelon form.

    For each free column the basis vector has entry 1 there and the negated
    pivot-row entries elsewhere; this is the deterministic normal form used
    for eigenvector bases.
    """
    red, pivots = rref(a)
    cols = len(a[0])
    free = [c for c in range(cols) if c not in pivots]
    zero = CycNum.rational(0, n_field)
    one = CycNum.rational(1, n_field)
    out = []
    for fc in free:
        vec = [zero] * cols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        out.append(tuple(vec))
    return out


def column_space_basis(a):
    """Deterministic basis of the column space (reduced column echelon form)."""
    red, pivots = rref(transpose(a))
    return [red[i] for i in range(len(pivots))]


def solve(a, b):
    """One exact solution x of a x = b, or None if inconsistent."""
    rows = len(a)
    aug = tuple(tuple(a[i]) + (b[i],) for i in range(rows))
    red, pivots = rref(aug)
    cols = len(a[0])
    if cols in pivots:
        return None
    zero = b[0] - b[0]
    x = [zero] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    return tuple(x)


def inverse(a):
    size = len(a)
    aug = tuple(
        tuple(a[i]) + tuple(identity(size, _conductor(a))[i]) for i in range(size)
    )
    red, pivots = rref(aug)
    if pivots != list(range(size)):
        raise ExactError("matrix is singular")
    return tuple(tuple(red[i][size:]) for i in range(size))


def det(a):
    m = [list(row) for row in a]
    size = len(m)
    sign = 1
    result = CycNum.rational(1, _conductor(a))
    for c in range(size):
        piv = next((i for i in range(c, size) if m[i][c]), None)
        if piv is None:
            return CycNum.rational(0, _conductor(a))
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        pivot = m[c][c]
        result = result * pivot
        inv = pivot.inverse()
        for i in range(c + 1, size):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return -result if sign < 0 else result


def submatrix_det(a, rows, cols):
    """Determinant of the submatrix with the given row/column index orders.

    Indices are kept in the order supplied (not sorted); the empty selection
    has determinant 1.
    """
    if len(rows) != len(cols):
        raise ExactError("submatrix determinant needs |rows| == |cols|")
    if not rows:
        return CycNum.rational(1, _conductor(a))
    sub = tuple(tuple(a[i][j] for j in cols) for i in rows)
    return det(sub)


def _conductor(a):
    return a[0][0].n if a and a[0] else 1


def perm_parity(seq):
    """Sign of the permutation sorting seq ascending; 0 on repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign
