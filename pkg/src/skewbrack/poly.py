"""Sparse multivariate polynomials over Q(zeta_N) with quantum differentiation.

A polynomial remembers which coordinate basis its variables refer to
(``basis`` key), so cross-basis arithmetic is a hard error rather than a
silent bug; rewriting into another basis is always an explicit substitution.
Exponent vectors are dense tuples; the number of variables is small.
"""

from __future__ import annotations

from .cyclo import CycNum, ExactError

STD = "std"


class BasisMismatch(ExactError):
    pass


class Poly:
    __slots__ = ("n", "basis", "terms")

    def __init__(self, n, basis, terms):
        self.n = n
        self.basis = basis
        self.terms = terms  # dict exponent-tuple -> nonzero CycNum

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(n, basis=STD):
        return Poly(n, basis, {})

    @staticmethod
    def const(n, c, basis=STD):
        if isinstance(c, int):
            c = CycNum.rational(c)
        if not c:
            return Poly(n, basis, {})
        return Poly(n, basis, {(0,) * n: c})

    @staticmethod
    def variable(n, i, basis=STD, conductor=1):
        e = tuple(1 if j == i else 0 for j in range(n))
        return Poly(n, basis, {e: CycNum.rational(1, conductor)})

    @staticmethod
    def monomial(n, exps, coeff, basis=STD):
        if not coeff:
            return Poly(n, basis, {})
        return Poly(n, basis, {tuple(exps): coeff})

    @staticmethod
    def linear(n, coeffs, basis=STD):
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = tuple(1 if j == i else 0 for j in range(n))
                terms[e] = c
        return Poly(n, basis, terms)

    # -- ring structure --------------------------------------------------------

    def _check(self, other):
        if self.basis != other.basis:
            raise BasisMismatch(
                f"polynomials live in different bases: {self.basis!r} vs {other.basis!r}"
            )

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            prev = terms.get(e)
            s = c if prev is None else prev + c
            if s:
                terms[e] = s
            elif prev is not None:
                del terms[e]
        return Poly(self.n, self.basis, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Poly(self.n, self.basis, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (CycNum, int)):
            return self.scale(other)
        self._check(other)
        if not self.terms or not other.terms:
            return Poly(self.n, self.basis, {})
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                prev = terms.get(e)
                s = c if prev is None else prev + c
                if s:
                    terms[e] = s
                elif prev is not None:
                    del terms[e]
        return Poly(self.n, self.basis, terms)

    __rmul__ = __mul__

    def scale(self, c):
        if isinstance(c, int):
            c = CycNum.rational(c)
        if not c:
            return Poly(self.n, self.basis, {})
        return Poly(self.n, self.basis, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, k):
        out = Poly.const(self.n, 1, self.basis)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.basis == other.basis and self.terms == other.terms

    def __hash__(self):
        return hash((self.basis, frozenset(self.terms.items())))

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def coefficient(self, exps):
        c = self.terms.get(tuple(exps))
        return c if c is not None else CycNum.rational(0)

    def constant_term(self):
        return self.coefficient((0,) * self.n)

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def monomials(self):
        """Deterministically ordered (exponents, coefficient) pairs."""
        return sorted(self.terms.items())

    # -- substitution and actions ------------------------------------------------

    def substitute(self, images, basis):
        """Replace variable i by the polynomial images[i] (all in the target basis)."""
        out = Poly.zero(self.n, basis)
        pow_cache = [{} for _ in range(self.n)]

        def power(i, k):
            cache = pow_cache[i]
            got = cache.get(k)
            if got is None:
                got = images[i] ** k
                cache[k] = got
            return got

        for e, c in self.terms.items():
            term = Poly.const(self.n, 1, basis).scale(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def map_coeffs(self, fn):
        terms = {}
        for e, c in self.terms.items():
            v = fn(e, c)
            if v:
                terms[e] = v
        return Poly(self.n, self.basis, terms)

    def __str__(self):
        return self.render()

    def render(self, var="x"):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.monomials():
            vs = "*".join(
                f"{var}{i + 1}" if k == 1 else f"{var}{i + 1}^{k}"
                for i, k in enumerate(e)
                if k
            )
            cs = str(c)
            if " " in cs:
                cs = f"({cs})"
            parts.append(f"{cs}*{vs}" if vs and cs != "1" else (vs or cs))
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly[{self.basis!r}]({self})"


# -- group action and coordinate changes -----------------------------------------


def group_act(matrix, f):
    """Apply the linear substitution v_i -> sum_j matrix[j][i] v_j multiplicatively."""
    n = f.n
    images = [Poly.linear(n, tuple(matrix[j][i] for j in range(n)), f.basis) for i in range(n)]
    return f.substitute(images, f.basis)


def substitute_matrix(f, columns_matrix, target_basis):
    """Rewrite f where variable i maps to the linear form in column i of the matrix."""
    n = f.n
    # scaled-permutation fast path: every column has at most one nonzero entry,
    # so monomials map to monomials
    cols = []
    sparse = True
    for i in range(n):
        nz = [(j, columns_matrix[j][i]) for j in range(n) if columns_matrix[j][i]]
        if len(nz) > 1:
            sparse = False
            break
        cols.append(nz[0] if nz else None)
    if sparse:
        terms = {}
        for e, c in f.terms.items():
            e2 = [0] * n
            v = c
            dead = False
            for i, k in enumerate(e):
                if not k:
                    continue
                if cols[i] is None:
                    dead = True
                    break
                j, s = cols[i]
                e2[j] += k
                if not (s.is_rational() and s.c[0] == 1):
                    v = v * s ** k
            if dead:
                continue
            key = tuple(e2)
            prev = terms.get(key)
            sv = v if prev is None else prev + v
            if sv:
                terms[key] = sv
            elif prev is not None:
                del terms[key]
        return Poly(n, target_basis, terms)
    images = [
        Poly.linear(n, tuple(columns_matrix[j][i] for j in range(n)), target_basis)
        for i in range(n)
    ]
    return f.substitute(images, target_basis)


def change_coords(f, from_ed, to_ed):
    """Exact rewrite of f from one eigenbasis coordinate system into another."""
    if from_ed.key == to_ed.key:
        return f
    if f.basis != from_ed.key:
        raise BasisMismatch("polynomial is not expressed in the source basis")
    from .linalg import mat_mul

    m = mat_mul(to_ed.inv, to_std_matrix(from_ed))
    return substitute_matrix(f, m, to_ed.key)


def to_std_matrix(ed):
    return ed.mat


def poly_to_basis(f, ed):
    """Standard coordinates -> eigenbasis coordinates."""
    if f.basis == ed.key:
        return f
    if f.basis != STD:
        raise BasisMismatch("expected a polynomial in standard coordinates")
    return substitute_matrix(f, ed.inv, ed.key)


def poly_to_std(f, ed):
    """Eigenbasis coordinates -> standard coordinates."""
    if f.basis == STD:
        return f
    if f.basis != ed.key:
        raise BasisMismatch("polynomial does not belong to this basis")
    return substitute_matrix(f, ed.mat, STD)


# -- quantum (Demazure) differentiation ----------------------------------------------


def quantum_partial(f, i, ed):
    """Scaled divided-difference derivative in the i-th eigenbasis direction.

    On a monomial it multiplies by the quantum integer of the i-th exponent
    at the i-th eigenvalue and lowers that exponent by one; for eigenvalue 1
    this is the ordinary partial derivative.
    """
    if f.basis != ed.key:
        raise BasisMismatch("quantum partial needs the polynomial in this eigenbasis")
    terms = {}
    for e, c in f.terms.items():
        k = e[i]
        if k == 0:
            continue
        q = ed.qint(i, k)
        if not q:
            continue
        v = c * q
        if v:
            e2 = e[:i] + (k - 1,) + e[i + 1 :]
            prev = terms.get(e2)
            s = v if prev is None else prev + v
            if s:
                terms[e2] = s
            elif prev is not None:
                del terms[e2]
    return Poly(f.n, f.basis, terms)


def eigen_twist(f, j, ed):
    """Scale every variable of index < j by its eigenvalue (a diagonal substitution)."""
    if j == 0:
        return f
    terms = {}
    for e, c in f.terms.items():
        v = c
        for t in range(j):
            k = e[t]
            if k:
                v = v * ed.eig_power(t, k)
        if v:
            terms[e] = v
    return Poly(f.n, f.basis, terms)


def twisted_partial(f, j, ed):
    """The j-th quantum partial followed by the diagonal twist on lower indices."""
    return eigen_twist(quantum_partial(f, j, ed), j, ed)


def divides_linear(u, f):
    """True iff the nonzero linear form u divides f exactly in the polynomial ring."""
    if not f:
        return True
    if not u:
        raise ExactError("division by the zero form")
    coeffs = [CycNum.rational(0)] * u.n
    for e, c in u.terms.items():
        if sum(e) != 1:
            raise ExactError("divisor must be linear with no constant term")
        coeffs[e.index(1)] = c
    pivot = next(i for i, c in enumerate(coeffs) if c)
    inv = coeffs[pivot].inverse()
    # substitute v_pivot = (y_pivot - sum_{j != pivot} c_j y_j) / c_pivot, v_j = y_j;
    # then u becomes the single variable y_pivot and divisibility is visible on exponents
    images = []
    for i in range(u.n):
        if i != pivot:
            images.append(Poly.variable(u.n, i, f.basis, conductor=coeffs[pivot].n))
        else:
            lin = {tuple(1 if j == pivot else 0 for j in range(u.n)): inv}
            for j, cj in enumerate(coeffs):
                if j != pivot and cj:
                    e = tuple(1 if t == j else 0 for t in range(u.n))
                    lin[e] = -cj * inv
            images.append(Poly(u.n, f.basis, lin))
    g = f.substitute(images, f.basis)
    return all(e[pivot] >= 1 for e in g.terms)
