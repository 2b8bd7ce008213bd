"""Finite matrix groups: closure from generators, conjugacy structure,
fixed spaces and per-element eigenbases.

The session conductor is fixed once the group is closed: every scalar is
promoted to lcm(input conductor, group exponent), which is exactly large
enough to diagonalize every element.  All tables built here are immutable
and memoized eagerly, so everything downstream can share them freely.
"""

from __future__ import annotations

import itertools
import math

from . import linalg
from .cyclo import CycNum, quantum_integer

DEFAULT_CLOSURE_CAP = 10000

_basis_counter = itertools.count(1)


class GroupError(Exception):
    """Invalid group input: non-invertible generator, runaway closure, bad table."""


def _mat_key(m):
    return tuple(tuple(x.c for x in row) for row in m)


class EigenData:
    """An ordered eigenbasis of one group element with its diagonal reflection data.

    ``perp`` lists the positions whose eigenvalue is not 1; for bases built
    by the group those positions come first and span the image of (1 - g).
    """

    __slots__ = (
        "owner",
        "vectors",
        "eigenvalues",
        "mat",
        "inv",
        "perp",
        "fixed",
        "key",
        "n",
        "conductor",
        "_qints",
        "_epows",
    )

    def __init__(self, owner, vectors, eigenvalues, conductor):
        self.owner = owner
        self.vectors = tuple(tuple(v) for v in vectors)
        self.eigenvalues = tuple(eigenvalues)
        self.n = len(self.vectors)
        self.conductor = conductor
        self.mat = linalg.from_columns(self.vectors)
        self.inv = linalg.inverse(self.mat)
        one = CycNum.rational(1, conductor)
        self.perp = tuple(i for i, e in enumerate(self.eigenvalues) if e != one)
        self.fixed = tuple(i for i in range(self.n) if i not in self.perp)
        self.key = next(_basis_counter)
        self._qints = {}
        self._epows = {}

    def qint(self, i, k):
        got = self._qints.get((i, k))
        if got is None:
            got = quantum_integer(k, self.eigenvalues[i])
            self._qints[(i, k)] = got
        return got

    def eig_power(self, i, k):
        got = self._epows.get((i, k))
        if got is None:
            got = self.eigenvalues[i] ** k
            self._epows[(i, k)] = got
        return got

    def codim(self):
        return len(self.perp)

    def reflection_matrices(self):
        """The diagonal reflections s_1..s_n (standard coordinates) whose product is g."""
        out = []
        for i in range(self.n):
            d = [
                [
                    (self.eigenvalues[i] if r == c == i else CycNum.rational(1 if r == c else 0, self.conductor))
                    for c in range(self.n)
                ]
                for r in range(self.n)
            ]
            out.append(linalg.mat_mul(linalg.mat_mul(self.mat, tuple(map(tuple, d))), self.inv))
        return out

    def __repr__(self):
        return f"EigenData(owner={self.owner}, eigenvalues={[str(e) for e in self.eigenvalues]})"


class ConjClassData:
    __slots__ = ("representatives", "class_of", "class_members", "centralizers", "kernel")

    def __init__(self, representatives, class_of, class_members, centralizers, kernel):
        self.representatives = representatives
        self.class_of = class_of
        self.class_members = class_members
        self.centralizers = centralizers
        self.kernel = kernel


class Group:
    def __init__(self, dim, conductor, elements, mul_table, generators, gen_names, words):
        self.dim = dim
        self.conductor = conductor
        self.elements = tuple(elements)
        self.mul_table = tuple(tuple(row) for row in mul_table)
        self.generators = tuple(generators)
        self.gen_names = tuple(gen_names)
        self.words = tuple(words)
        self.identity = 0
        self.order = len(self.elements)
        self.inv_table = self._build_inverses()
        self.element_orders = tuple(self._element_order(i) for i in range(self.order))
        self.exponent = math.lcm(*self.element_orders) if self.order else 1
        self._conjugacy = None
        self._frame = None

    # -- construction -----------------------------------------------------------

    @staticmethod
    def close(generators, conductor, cap=DEFAULT_CLOSURE_CAP, gen_names=None):
        """Breadth-first closure of a finite set of invertible matrices."""
        if not generators:
            raise GroupError("need at least one generator")
        n = len(generators[0])
        mats = []
        for g in generators:
            if len(g) != n or any(len(row) != n for row in g):
                raise GroupError("generators must be square matrices of one size")
            m = tuple(tuple(_as_cyc(x, conductor) for x in row) for row in g)
            if not linalg.det(m):
                raise GroupError("generator is not invertible")
            mats.append(m)
        if gen_names is None:
            gen_names = _default_names(len(mats))
        ident = linalg.identity(n, conductor)
        elements = [ident]
        index = {_mat_key(ident): 0}
        words = [()]
        i = 0
        while i < len(elements):
            for j, gen in enumerate(mats):
                prod = linalg.mat_mul(elements[i], gen)
                key = _mat_key(prod)
                if key not in index:
                    if len(elements) >= cap:
                        raise GroupError("group too large or infinite")
                    index[key] = len(elements)
                    elements.append(prod)
                    words.append(words[i] + (j,))
            i += 1
        order = len(elements)
        # with all elements known, the exponent fixes the session conductor
        mul = [[0] * order for _ in range(order)]
        for a in range(order):
            for b in range(order):
                mul[a][b] = index[_mat_key(linalg.mat_mul(elements[a], elements[b]))]
        probe = Group(n, conductor, elements, mul, [index[_mat_key(m)] for m in mats], gen_names, words)
        n_star = math.lcm(conductor, probe.exponent)
        if n_star != conductor:
            elements = [
                tuple(tuple(x.promote(n_star) for x in row) for row in m) for m in elements
            ]
            probe = Group(n, n_star, elements, mul, probe.generators, gen_names, words)
        return probe

    @staticmethod
    def from_table(dim, conductor, matrices, mul_table, gen_names=None, generators=None):
        """Group given abstractly by a multiplication table together with its
        (possibly non-faithful) matrix action; index 0 must be the identity."""
        order = len(matrices)
        mats = [tuple(tuple(_as_cyc(x, conductor) for x in row) for row in m) for m in matrices]
        ident = linalg.identity(dim, conductor)
        if not linalg.mat_eq(mats[0], ident):
            raise GroupError("element 0 must act as the identity")
        for a in range(order):
            for b in range(order):
                c = mul_table[a][b]
                if not linalg.mat_eq(linalg.mat_mul(mats[a], mats[b]), mats[c]):
                    raise GroupError("matrix action does not respect the table")
        if generators is None:
            generators = list(range(1, order)) or [0]
        if gen_names is None:
            gen_names = _default_names(len(generators))
        words = [(i,) for i in range(len(generators))]
        all_words = [()] + [None] * (order - 1)
        for gi, g in enumerate(generators):
            if all_words[g] is None:
                all_words[g] = (gi,)
        # breadth-first words for the remaining elements
        frontier = [0]
        while any(w is None for w in all_words):
            new_frontier = []
            for e in frontier:
                for gi, g in enumerate(generators):
                    t = mul_table[e][g]
                    if all_words[t] is None:
                        all_words[t] = all_words[e] + (gi,)
                        new_frontier.append(t)
            if not new_frontier:
                raise GroupError("generators do not generate the group")
            frontier = new_frontier
        probe = Group(dim, conductor, mats, mul_table, generators, gen_names, all_words)
        n_star = math.lcm(conductor, probe.exponent)
        if n_star != conductor:
            mats = [tuple(tuple(x.promote(n_star) for x in row) for row in m) for m in mats]
            probe = Group(dim, n_star, mats, mul_table, generators, gen_names, all_words)
        return probe

    # -- basic structure -------------------------------------------------------------

    def _build_inverses(self):
        inv = [None] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self.mul_table[a][b] == self.identity:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise GroupError("multiplication table has no inverse for an element")
        return tuple(inv)

    def _element_order(self, i):
        k, cur = 1, i
        while cur != self.identity:
            cur = self.mul_table[cur][i]
            k += 1
        return k

    def mul(self, a, b):
        return self.mul_table[a][b]

    def inv(self, a):
        return self.inv_table[a]

    def conj(self, a, g):
        """Index of a g a^{-1}."""
        return self.mul_table[self.mul_table[a][g]][self.inv_table[a]]

    def matrix(self, i):
        return self.elements[i]

    def is_diagonal(self):
        zero = CycNum.rational(0, self.conductor)
        return all(
            m[r][c] == zero
            for m in self.elements
            for r in range(self.dim)
            for c in range(self.dim)
            if r != c
        )

    def kernel_indices(self):
        ident = linalg.identity(self.dim, self.conductor)
        return tuple(i for i in range(self.order) if linalg.mat_eq(self.elements[i], ident))

    def word_str(self, i):
        w = self.words[i]
        if not w:
            return "1"
        parts = []
        for gi, run in itertools.groupby(w):
            k = len(list(run))
            name = self.gen_names[gi]
            parts.append(name if k == 1 else f"{name}^{k}")
        return "*".join(parts)

    def parse_word(self, text):
        """Resolve '1', 'g*h^2', or a bare integer index to an element index."""
        text = str(text).strip()
        if text in ("1", "e", ""):
            return self.identity
        if text.lstrip("-").isdigit():
            i = int(text)
            if not 0 <= i < self.order:
                raise GroupError(f"element index {i} out of range")
            return i
        cur = self.identity
        for token in text.split("*"):
            token = token.strip()
            if "^" in token:
                name, power = token.split("^", 1)
                k = int(power)
            else:
                name, k = token, 1
            name = name.strip()
            if name not in self.gen_names:
                raise GroupError(f"unknown generator name {name!r}")
            gi = self.generators[self.gen_names.index(name)]
            step = gi if k >= 0 else self.inv_table[gi]
            for _ in range(abs(k)):
                cur = self.mul_table[cur][step]
        return cur

    # -- conjugacy ------------------------------------------------------------------------

    def conjugacy(self):
        if self._conjugacy is None:
            class_of = [None] * self.order
            reps = []
            members = {}
            for i in range(self.order):
                if class_of[i] is not None:
                    continue
                orbit = sorted({self.conj(a, i) for a in range(self.order)})
                for m in orbit:
                    class_of[m] = i
                reps.append(i)
                members[i] = tuple(orbit)
            centralizers = {
                r: tuple(
                    a
                    for a in range(self.order)
                    if self.mul_table[a][r] == self.mul_table[r][a]
                )
                for r in reps
            }
            for r in reps:
                assert len(members[r]) * len(centralizers[r]) == self.order
            self._conjugacy = ConjClassData(
                tuple(reps), tuple(class_of), members, centralizers, self.kernel_indices()
            )
        return self._conjugacy

    def centralizer(self, g):
        return tuple(
            a for a in range(self.order) if self.mul_table[a][g] == self.mul_table[g][a]
        )

    # -- fixed spaces and eigendata ------------------------------------------------------

    def fixed_and_perp(self, g):
        """Bases of the fixed space of g and of its complement, the image of (1 - g)."""
        m = self.elements[g]
        ident = linalg.identity(self.dim, self.conductor)
        fixed = linalg.kernel_basis(linalg.mat_sub(m, ident), self.conductor)
        perp = linalg.column_space_basis(linalg.mat_sub(ident, m))
        assert len(fixed) + len(perp) == self.dim
        return fixed, perp

    def eigen_data(self, g):
        """Deterministic eigenbasis: nontrivial eigenvalues ordered by increasing
        power of the session root of unity, eigenvalue 1 last, echelon-normalized
        eigenvectors inside each eigenspace."""
        m = self.elements[g]
        n_star = self.conductor
        order = self.element_orders[g]
        step = n_star // order
        vectors = []
        values = []
        for s in list(range(1, order)) + [0]:
            eps = CycNum.zeta(n_star, s * step)
            shifted = tuple(
                tuple(
                    m[r][c] - eps if r == c else m[r][c]
                    for c in range(self.dim)
                )
                for r in range(self.dim)
            )
            for vec in linalg.kernel_basis(shifted, n_star):
                vectors.append(vec)
                values.append(eps)
        if len(vectors) != self.dim:
            raise GroupError("element is not diagonalizable over the session field")
        return EigenData(g, vectors, values, n_star)

    @property
    def frame(self):
        if self._frame is None:
            self._frame = Frame(self)
        return self._frame


class Frame:
    """One fixed eigenbasis per group element, plus memoized conjugated views
    and change-of-coordinates data.  A single frame is used for the entirety
    of any bracket computation."""

    def __init__(self, group, overrides=None):
        self.group = group
        self.base = []
        overrides = overrides or {}
        for g in range(group.order):
            ed = overrides.get(g)
            if ed is None:
                ed = group.eigen_data(g)
            else:
                _validate_eigendata(group, g, ed)
            self.base.append(ed)
        self._conj = {}
        self._chg = {}
        self._chg_pool = {}
        self._acted = {}
        self._wedge_to_std = {}
        self._wedge_from_std = {}

    def conj(self, a, g):
        """The eigenbasis of a g a^{-1} obtained by pushing the basis of g through a."""
        if a == self.group.identity:
            return self.base[g]
        got = self._conj.get((a, g))
        if got is None:
            ed = self.base[g]
            amat = self.group.elements[a]
            vectors = [linalg.mat_vec(amat, v) for v in ed.vectors]
            got = EigenData(self.group.conj(a, g), vectors, ed.eigenvalues, ed.conductor)
            self._conj[(a, g)] = got
        return got

    def basis_change(self, ed1, ed2):
        """Matrix whose column i holds the coordinates of the i-th vector of ed2 in ed1.

        Equal matrices arising from different conjugation pairs are pooled to a
        single object, so downstream caches can key on object identity.
        """
        got = self._chg.get((ed1.key, ed2.key))
        if got is None:
            got = linalg.mat_mul(ed1.inv, ed2.mat)
            pooled = self._chg_pool.get(_mat_key(got))
            if pooled is None:
                self._chg_pool[_mat_key(got)] = got
            else:
                got = pooled
            self._chg[(ed1.key, ed2.key)] = got
        return got

    def acted_coords(self, ed, h):
        """Coordinates in the basis of ed of the standard basis pushed through h."""
        got = self._acted.get((ed.key, h))
        if got is None:
            got = linalg.mat_mul(ed.inv, self.group.elements[h])
            self._acted[(ed.key, h)] = got
        return got

    def wedge_to_std(self, ed, wedge):
        """Expansion of an eigenbasis covector wedge over standard covector wedges."""
        got = self._wedge_to_std.get((ed.key, wedge))
        if got is None:
            got = _wedge_expand(ed.inv, wedge)
            self._wedge_to_std[(ed.key, wedge)] = got
        return got

    def wedge_from_std(self, ed, wedge):
        """Expansion of a standard covector wedge over eigenbasis covector wedges."""
        got = self._wedge_from_std.get((ed.key, wedge))
        if got is None:
            got = _wedge_expand(ed.mat, wedge)
            self._wedge_from_std[(ed.key, wedge)] = got
        return got


def _wedge_expand(t, wedge):
    """For covectors c_i = sum_j T[i][j] d_j, expand c_wedge over increasing d-wedges."""
    n = len(t)
    out = {}
    for target in itertools.combinations(range(n), len(wedge)):
        d = linalg.submatrix_det(t, wedge, target)
        if d:
            out[target] = d
    return out


def change_of_basis(ed1, ed2):
    """Column i expresses the i-th vector of ed2 in ed1 coordinates."""
    return linalg.mat_mul(ed1.inv, ed2.mat)


def conjugated_eigen_data(group, ed, a):
    amat = group.elements[a]
    vectors = [linalg.mat_vec(amat, v) for v in ed.vectors]
    return EigenData(group.conj(a, ed.owner), vectors, ed.eigenvalues, ed.conductor)


def _validate_eigendata(group, g, ed):
    m = group.elements[g]
    for v, eps in zip(ed.vectors, ed.eigenvalues):
        got = linalg.mat_vec(m, v)
        want = tuple(eps * x for x in v)
        if got != want:
            raise GroupError("override basis is not an eigenbasis of its element")


def _as_cyc(x, conductor):
    if isinstance(x, CycNum):
        return x.promote(math.lcm(x.n, conductor)) if conductor % x.n == 0 else x
    return CycNum.rational(x, conductor)


def _default_names(k):
    if k == 1:
        return ("g",)
    if k == 2:
        return ("g", "h")
    return tuple(f"g{i + 1}" for i in range(k))
