"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A value is stored as a dense coefficient vector over the power basis
{1, z, ..., z^(phi(N)-1)} of Q(zeta_N), fully reduced modulo the N-th
cyclotomic polynomial.  Coefficients are arbitrary-precision rationals
(gmpy2.mpq); there is no floating point anywhere.

Values are immutable and all operations are pure, so they can be shared
freely between threads.
"""

from __future__ import annotations

import math
from functools import lru_cache

from gmpy2 import mpq

Q0 = mpq(0)
Q1 = mpq(1)


class ExactError(ArithmeticError):
    """Violated precondition in exact arithmetic (e.g. division by zero)."""


@lru_cache(maxsize=None)
def _int_cyclotomic(n):
    """Integer coefficient list (low to high, monic) of the n-th cyclotomic polynomial."""
    if n == 1:
        return (-1, 1)
    # divide x^n - 1 by the product of all lower cyclotomic factors
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            phi_d = _int_cyclotomic(d)
            num = _int_poly_div_exact(num, phi_d)
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


def _int_poly_div_exact(num, den):
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q, r = divmod(c, den[dd])
        assert r == 0
        out[i - dd] = q
        for j in range(dd + 1):
            num[i - dd + j] -= q * den[j]
    assert all(c == 0 for c in num)
    return out


@lru_cache(maxsize=None)
def euler_phi(n):
    out = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out -= out // m
    return out


class _Tab:
    """Per-conductor reduction table: z^k mod Phi_n for k >= 0, extended on demand."""

    __slots__ = ("n", "phi", "rows")

    def __init__(self, n):
        self.n = n
        self.phi = euler_phi(n)
        phi = self.phi
        cyc = _int_cyclotomic(n)
        rows = [tuple(Q1 if j == k else Q0 for j in range(phi)) for k in range(phi)]
        # z^phi = -(c_0 + c_1 z + ... + c_{phi-1} z^{phi-1})
        rows.append(tuple(mpq(-cyc[j]) for j in range(phi)))
        self.rows = rows

    def power(self, k):
        rows = self.rows
        phi = self.phi
        while len(rows) <= k:
            prev = rows[-1]
            top = prev[phi - 1]
            shifted = [Q0] + list(prev[: phi - 1])
            if top:
                over = rows[phi]
                shifted = [shifted[j] + top * over[j] for j in range(phi)]
            rows.append(tuple(shifted))
        return rows[k]


_TABS = {}


def _tab(n):
    t = _TABS.get(n)
    if t is None:
        t = _Tab(n)
        _TABS[n] = t
    return t


@lru_cache(maxsize=None)
def _embed_rows(n_from, n_to):
    """Power-basis images of z_{n_from}^j inside Q(zeta_{n_to}) for n_from | n_to."""
    step = n_to // n_from
    tab = _tab(n_to)
    return tuple(tab.power(j * step) for j in range(euler_phi(n_from)))


class CycNum:
    """An element of Q(zeta_N), exact."""

    __slots__ = ("n", "c", "_hash")

    def __init__(self, n, coeffs):
        self.n = n
        self.c = coeffs
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def rational(value, n=1):
        q = mpq(value)
        phi = euler_phi(n)
        return CycNum(n, (q,) + (Q0,) * (phi - 1))

    @staticmethod
    def zeta(n, k=1):
        """The root of unity zeta_n^k."""
        if n < 1:
            raise ExactError("conductor must be positive")
        k %= n
        tab = _tab(n)
        return CycNum(n, tab.power(k))

    # -- representation management ----------------------------------------

    def promote(self, n_to):
        if n_to == self.n:
            return self
        if n_to % self.n != 0:
            raise ExactError(f"cannot promote conductor {self.n} to {n_to}")
        rows = _embed_rows(self.n, n_to)
        phi = euler_phi(n_to)
        out = [Q0] * phi
        for j, cj in enumerate(self.c):
            if cj:
                row = rows[j]
                for t in range(phi):
                    if row[t]:
                        out[t] += cj * row[t]
        return CycNum(n_to, tuple(out))

    @staticmethod
    def align(a, b):
        if a.n == b.n:
            return a, b
        m = math.lcm(a.n, b.n)
        return a.promote(m), b.promote(m)

    # -- predicates ---------------------------------------------------------

    def __bool__(self):
        return any(self.c)

    def is_rational(self):
        return not any(self.c[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ExactError("not a rational number")
        return self.c[0]

    # -- field operations ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, CycNum) and other.n == self.n:
            return CycNum(self.n, tuple(x + y for x, y in zip(self.c, other.c)))
        other = _coerce(other, self.n)
        if other is NotImplemented:
            return NotImplemented
        a, b = CycNum.align(self, other)
        return CycNum(a.n, tuple(x + y for x, y in zip(a.c, b.c)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.n, tuple(-x for x in self.c))

    def __sub__(self, other):
        other = _coerce(other, self.n)
        if other is NotImplemented:
            return NotImplemented
        a, b = CycNum.align(self, other)
        return CycNum(a.n, tuple(x - y for x, y in zip(a.c, b.c)))

    def __rsub__(self, other):
        other = _coerce(other, self.n)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, CycNum) and other.n == self.n:
            a, b = self, other
            c = a.c
            if not any(c[1:]):
                q = c[0]
                if not q:
                    return a
                return CycNum(a.n, tuple(q * y for y in b.c))
            return a._mul_general(b)
        other = _coerce(other, self.n)
        if other is NotImplemented:
            return NotImplemented
        a, b = CycNum.align(self, other)
        return a._mul_general(b)

    def _mul_general(self, other):
        a, b = self, other
        if a.is_rational():
            q = a.c[0]
            if not q:
                return CycNum(a.n, a.c)
            return CycNum(a.n, tuple(q * y for y in b.c))
        if b.is_rational():
            q = b.c[0]
            if not q:
                return CycNum(b.n, b.c)
            return CycNum(a.n, tuple(q * x for x in a.c))
        phi = len(a.c)
        conv = [Q0] * (2 * phi - 1)
        for i, x in enumerate(a.c):
            if x:
                for j, y in enumerate(b.c):
                    if y:
                        conv[i + j] += x * y
        tab = _tab(a.n)
        out = list(conv[:phi])
        for k in range(phi, 2 * phi - 1):
            ck = conv[k]
            if ck:
                row = tab.power(k)
                for t in range(phi):
                    if row[t]:
                        out[t] += ck * row[t]
        return CycNum(a.n, tuple(out))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ExactError("division by zero")
        if self.is_rational():
            return CycNum(self.n, (Q1 / self.c[0],) + (Q0,) * (len(self.c) - 1))
        # extended Euclid of the coefficient polynomial with Phi_n over Q
        phi_poly = [mpq(c) for c in _int_cyclotomic(self.n)]
        a = list(self.c)
        inv = _poly_modinv(a, phi_poly)
        phi = len(self.c)
        inv = inv + [Q0] * (phi - len(inv))
        return CycNum(self.n, tuple(inv[:phi]))

    def __truediv__(self, other):
        other = _coerce(other, self.n)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other, self.n)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNum.rational(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other, self.n)
        if other is NotImplemented:
            return NotImplemented
        a, b = CycNum.align(self, other)
        return a.c == b.c

    def __hash__(self):
        if self._hash is None:
            d, coeffs = self._canonical()
            self._hash = hash((d,) + coeffs)
        return self._hash

    def _canonical(self):
        """Representation at the minimal conductor containing this value."""
        n, coeffs = self.n, self.c
        changed = True
        while changed:
            changed = False
            for p in sorted(_prime_factors(n)):
                d = n // p
                demoted = _try_demote(n, coeffs, d)
                if demoted is not None:
                    n, coeffs = d, demoted
                    changed = True
                    break
        return n, coeffs

    # -- roots of unity --------------------------------------------------------

    def order_of_unity(self):
        """Smallest m >= 1 with self**m == 1, or None if not a root of unity."""
        if not self:
            raise ExactError("zero is not a root of unity")
        bound = math.lcm(2, self.n)
        one = CycNum.rational(1, self.n)
        for m in sorted(_divisors(bound)):
            if self ** m == one:
                return m
        return None

    # -- display -----------------------------------------------------------------

    def __repr__(self):
        return f"CycNum({self.n}, {self})"

    def __str__(self):
        parts = []
        for k, q in enumerate(self.c):
            if not q:
                continue
            if k == 0:
                parts.append(_fmt_q(q))
            else:
                zk = "z" if k == 1 else f"z^{k}"
                if q == 1:
                    parts.append(zk)
                elif q == -1:
                    parts.append(f"-{zk}")
                else:
                    parts.append(f"{_fmt_q(q)}*{zk}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def _fmt_q(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _coerce(x, n):
    if isinstance(x, CycNum):
        return x
    if isinstance(x, int) or isinstance(x, type(Q0)):
        return CycNum.rational(x, n)
    return NotImplemented


def _poly_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    db = len(b) - 1
    lead = b[db]
    q = [Q0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i]:
            f = a[i] / lead
            q[i - db] = f
            for j in range(db + 1):
                a[i - db + j] -= f * b[j]
    return q, _poly_trim(a[:db] if len(a) >= db else a)


def _poly_modinv(a, mod):
    """Inverse of the polynomial a modulo mod over Q (both coefficient lists)."""
    r0, r1 = list(mod), _poly_trim(list(a))
    t0, t1 = [], [Q1]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        # t0 - q*t1
        prod = [Q0] * (len(q) + len(t1) - 1) if q and t1 else []
        for i, qi in enumerate(q):
            if qi:
                for j, tj in enumerate(t1):
                    if tj:
                        prod[i + j] += qi * tj
        nt = [Q0] * max(len(t0), len(prod))
        for i, c in enumerate(t0):
            nt[i] += c
        for i, c in enumerate(prod):
            nt[i] -= c
        t0, t1 = t1, _poly_trim(nt)
    if len(r0) != 1:
        raise ExactError("element is a zero divisor (not invertible)")
    lead = r0[0]
    return [c / lead for c in t0]


@lru_cache(maxsize=None)
def _prime_factors(n):
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return tuple(out)


@lru_cache(maxsize=None)
def _divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return tuple(out)


def _try_demote(n, coeffs, d):
    """Coefficients of the value at conductor d if it lies in Q(zeta_d), else None."""
    rows = _embed_rows(d, n)
    phi_n, phi_d = euler_phi(n), euler_phi(d)
    # solve sum_j y_j * rows[j] = coeffs by Gaussian elimination over mpq
    aug = [[rows[j][t] for j in range(phi_d)] + [coeffs[t]] for t in range(phi_n)]
    r = 0
    pivots = []
    for col in range(phi_d):
        piv = next((i for i in range(r, phi_n) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = Q1 / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(phi_n):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    for i in range(r, phi_n):
        if aug[i][phi_d]:
            return None
    sol = [Q0] * phi_d
    for i, col in enumerate(pivots):
        sol[col] = aug[i][phi_d]
    return tuple(sol)


# -- module-level operation surface ------------------------------------------


def root_of_unity(k, n):
    """zeta_n^k as an exact value."""
    return CycNum.zeta(n, k)


def order_of_unity(a):
    return a.order_of_unity()


def quantum_integer(k, eps):
    """1 + eps + ... + eps^(k-1); zero when k == 0."""
    if k < 0:
        raise ExactError("quantum integer needs k >= 0")
    if isinstance(eps, CycNum) and eps.is_rational() and eps.c[0] == 1:
        return CycNum.rational(k, eps.n)
    total = CycNum.rational(0, eps.n)
    power = CycNum.rational(1, eps.n)
    for _ in range(k):
        total = total + power
        power = power * eps
    return total


ZERO = CycNum.rational(0)
ONE = CycNum.rational(1)
