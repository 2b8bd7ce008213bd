"""Group-tagged vector forms, their canonical cohomology representatives,
projections, averaging, and the dual Koszul differential.

A cochain of degree p assigns to some group elements a sum of terms
(polynomial coefficient) x (strictly increasing covector wedge).  Terms are
stored either in standard coordinates ("std") or per-tag eigenbasis
coordinates relative to a Frame; all public operations normalize wedge
order with the permutation sign at construction time.
"""

from __future__ import annotations

import itertools

from . import linalg
from .cyclo import CycNum
from .poly import STD, Poly, group_act, poly_to_basis, poly_to_std


def _norm_wedge(wedge):
    sign = linalg.perm_parity(wedge)
    if sign == 0:
        return None, 0
    return tuple(sorted(wedge)), sign


class Cochain:
    __slots__ = ("n", "degree", "coords", "terms")

    def __init__(self, n, degree, coords, terms):
        self.n = n
        self.degree = degree
        self.coords = coords  # "std" or a Frame
        self.terms = terms  # dict g -> dict wedge -> Poly

    # -- construction ----------------------------------------------------------

    @staticmethod
    def zero(n, degree, coords=STD):
        return Cochain(n, degree, coords, {})

    @staticmethod
    def build(n, degree, raw_terms, coords=STD):
        """Assemble from (group element, coefficient, wedge) triples, normalizing
        wedge order by permutation parity and dropping repeated indices."""
        out = Cochain.zero(n, degree, coords)
        for g, f, wedge in raw_terms:
            if len(wedge) != degree:
                raise ValueError("wedge length does not match the degree")
            w, sign = _norm_wedge(wedge)
            if sign == 0 or not f:
                continue
            out._add_term(g, f if sign == 1 else -f, w)
        return out.prune()

    def _add_term(self, g, f, wedge):
        by_wedge = self.terms.setdefault(g, {})
        prev = by_wedge.get(wedge)
        by_wedge[wedge] = f if prev is None else prev + f

    def prune(self):
        terms = {}
        for g, by_wedge in self.terms.items():
            kept = {w: f for w, f in by_wedge.items() if f}
            if kept:
                terms[g] = kept
        self.terms = terms
        return self

    def iter_terms(self):
        for g in sorted(self.terms):
            for w in sorted(self.terms[g]):
                yield g, w, self.terms[g][w]

    def support(self):
        return tuple(sorted(self.terms))

    # -- linear structure ----------------------------------------------------------

    def _compatible(self, other):
        if self.degree != other.degree or self.coords is not other.coords and self.coords != other.coords:
            raise ValueError("cochains have different degree or coordinate systems")

    def __add__(self, other):
        self._compatible(other)
        out = Cochain(self.n, self.degree, self.coords, {g: dict(bw) for g, bw in self.terms.items()})
        for g, w, f in other.iter_terms():
            out._add_term(g, f, w)
        return out.prune()

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        if isinstance(c, int):
            c = CycNum.rational(c)
        if not c:
            return Cochain.zero(self.n, self.degree, self.coords)
        return Cochain(
            self.n,
            self.degree,
            self.coords,
            {g: {w: f.scale(c) for w, f in bw.items()} for g, bw in self.terms.items()},
        ).prune()

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        if self.degree != other.degree:
            return False
        if not (self.coords is other.coords or self.coords == other.coords):
            return False
        return self.terms == other.terms

    def __repr__(self):
        inner = ", ".join(f"{g}:{len(bw)}" for g, bw in sorted(self.terms.items()))
        return f"Cochain(p={self.degree}, coords={'std' if self.coords == STD else 'eigen'}, [{inner}])"

    # -- coordinate conversions ----------------------------------------------------

    def to_std(self, group):
        if self.coords == STD:
            return self
        frame = self.coords
        out = Cochain.zero(self.n, self.degree, STD)
        for g, w, f in self.iter_terms():
            ed = frame.base[g]
            f_std = poly_to_std(f, ed)
            for target, d in frame.wedge_to_std(ed, w).items():
                out._add_term(g, f_std.scale(d), target)
        return out.prune()

    def to_frame(self, group, frame):
        if self.coords is frame:
            return self
        src = self if self.coords == STD else self.to_std(group)
        out = Cochain.zero(self.n, self.degree, frame)
        for g, w, f in src.iter_terms():
            ed = frame.base[g]
            f_b = poly_to_basis(f, ed)
            for target, d in frame.wedge_from_std(ed, w).items():
                out._add_term(g, f_b.scale(d), target)
        return out.prune()


# -- group action and averaging ------------------------------------------------------


def act_on_cochain(group, a, coch):
    """Conjugation action: the tag moves to a g a^{-1} and both the polynomial
    part and the covectors are pushed through a.  Result in standard coordinates."""
    src = coch.to_std(group)
    if a == group.identity:
        return src
    amat = group.elements[a]
    out = Cochain.zero(src.n, src.degree, STD)
    for g, w, f in src.iter_terms():
        g2 = group.conj(a, g)
        f2 = group_act(amat, f)
        for target, d in _covector_push(group, a, w).items():
            out._add_term(g2, f2.scale(d), target)
    return out.prune()


def _covector_push(group, a, wedge):
    cache = getattr(group, "_cov_cache", None)
    if cache is None:
        cache = {}
        group._cov_cache = cache
    got = cache.get((a, wedge))
    if got is None:
        t = group.elements[group.inv(a)]
        got = {}
        for target in itertools.combinations(range(group.dim), len(wedge)):
            d = linalg.submatrix_det(t, wedge, target)
            if d:
                got[target] = d
        cache[(a, wedge)] = got
    return got


def reynolds(group, coch, subset=None):
    """Average the conjugation action over the group (or a subgroup)."""
    members = range(group.order) if subset is None else subset
    members = list(members)
    total = Cochain.zero(coch.n, coch.degree, STD)
    for a in members:
        total = total + act_on_cochain(group, a, coch)
    return total.scale(CycNum.rational(1, 1) / CycNum.rational(len(members)))


def is_invariant(group, coch):
    std = coch.to_std(group)
    return all(act_on_cochain(group, a, std) == std for a in range(group.order))


# -- projections ----------------------------------------------------------------------


def proj_Vg(group, coch, frame=None):
    """Kill every monomial involving a non-fixed eigenbasis direction of its tag."""
    frame = frame or group.frame
    cf = coch.to_frame(group, frame)
    out = Cochain.zero(cf.n, cf.degree, frame)
    for g, w, f in cf.iter_terms():
        perp = frame.base[g].perp
        kept = {e: c for e, c in f.terms.items() if all(e[i] == 0 for i in perp)}
        if kept:
            out._add_term(g, Poly(f.n, f.basis, kept), w)
    return out.prune()


def proj_H(group, coch, frame=None):
    """Project onto the canonical representative subspace: per tag, the polynomial
    part must avoid non-fixed directions and the wedge must contain every one of
    them.  Idempotent, and the identity on representatives."""
    frame = frame or group.frame
    cf = coch.to_frame(group, frame)
    out = Cochain.zero(cf.n, cf.degree, frame)
    for g, w, f in cf.iter_terms():
        perp = frame.base[g].perp
        if not set(perp) <= set(w):
            continue
        kept = {e: c for e, c in f.terms.items() if all(e[i] == 0 for i in perp)}
        if kept:
            out._add_term(g, Poly(f.n, f.basis, kept), w)
    return out.prune()


def in_H(group, coch, frame=None):
    frame = frame or group.frame
    cf = coch.to_frame(group, frame)
    return proj_H(group, cf, frame) == cf


# -- the dual Koszul differential --------------------------------------------------------


def koszul_dual_diff(group, coch, frame=None):
    """Degree-raising differential of the tagged de Rham-type complex: insert a
    direction e with (v_e - g v_e) = (1 - eps_e) v_e as the new coefficient factor,
    alternating signs over the insertion position.  Squares to zero."""
    frame = frame or group.frame
    cf = coch.to_frame(group, frame)
    out = Cochain.zero(cf.n, cf.degree + 1, frame)
    one = CycNum.rational(1, group.conductor)
    for g, w, f in cf.iter_terms():
        ed = frame.base[g]
        for e in range(cf.n):
            if e in w:
                continue
            eps = ed.eigenvalues[e]
            if eps == one:
                continue
            pos = sum(1 for j in w if j < e)
            factor = (one - eps) if pos % 2 == 0 else (eps - one)
            v_e = Poly.variable(cf.n, e, ed.key, conductor=group.conductor)
            new_w = tuple(sorted(w + (e,)))
            out._add_term(g, (v_e * f).scale(factor), new_w)
    return out.prune()


# -- representative spaces ------------------------------------------------------------------


class HSpace:
    __slots__ = ("g", "degree", "basis")

    def __init__(self, g, degree, basis):
        self.g = g
        self.degree = degree
        self.basis = basis

    def __len__(self):
        return len(self.basis)


def h_space_basis(group, g, p, d, frame=None):
    """Monomial generators of the degree-p representative space at tag g, up to
    polynomial degree d: fixed-direction monomials times wedges containing the
    full set of non-fixed directions."""
    frame = frame or group.frame
    ed = frame.base[g]
    n = group.dim
    perp = ed.perp
    extra = p - len(perp)
    gens = []
    if extra < 0:
        return HSpace(g, p, gens)
    one = CycNum.rational(1, group.conductor)
    for rest in itertools.combinations(ed.fixed, extra):
        wedge = tuple(sorted(perp + rest))
        for mono in _monomials_up_to(ed.fixed, n, d):
            f = Poly.monomial(n, mono, one, ed.key)
            gens.append(Cochain.build(n, p, [(g, f, wedge)], frame))
    return HSpace(g, p, gens)


def _monomials_up_to(indices, n, d):
    out = []
    for total in range(d + 1):
        for combo in _compositions(total, len(indices)):
            e = [0] * n
            for i, k in zip(indices, combo):
                e[i] = k
            out.append(tuple(e))
    return out


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def invariant_basis(group, p, d, frame=None):
    """Basis of the invariant representatives up to polynomial degree d: average
    the per-class generators over the centralizer, reduce to an independent set,
    then spread each survivor over its conjugacy class."""
    frame = frame or group.frame
    conj = group.conjugacy()
    out = []
    inv_order = CycNum.rational(1, 1)
    for rep in conj.representatives:
        gens = h_space_basis(group, rep, p, d, frame).basis
        if not gens:
            continue
        zc = conj.centralizers[rep]
        averaged = []
        for gen in gens:
            total = Cochain.zero(group.dim, p, STD)
            for z in zc:
                total = total + act_on_cochain(group, z, gen)
            total = total.scale(inv_order / CycNum.rational(len(zc)))
            if total:
                averaged.append(total.to_frame(group, frame))
        for gamma in _independent_set(group, averaged, frame):
            spread = Cochain.zero(group.dim, p, STD)
            for c in _coset_reps(group, zc):
                spread = spread + act_on_cochain(group, c, gamma)
            out.append(spread.to_frame(group, frame))
    return out


def _coset_reps(group, subgroup):
    seen = set()
    reps = []
    for a in range(group.order):
        if a in seen:
            continue
        reps.append(a)
        seen.update(group.mul_table[a][z] for z in subgroup)
    return reps


def _independent_set(group, cochains, frame):
    """Echelonize over the (wedge, monomial) coordinates; deterministic output."""
    if not cochains:
        return []
    keys = sorted(
        {(g, w, e) for c in cochains for g, w, f in c.iter_terms() for e in f.terms}
    )
    key_index = {k: i for i, k in enumerate(keys)}
    zero = CycNum.rational(0, group.conductor)
    rows = []
    for c in cochains:
        row = [zero] * len(keys)
        for g, w, f in c.iter_terms():
            for e, coeff in f.terms.items():
                row[key_index[(g, w, e)]] = coeff
        rows.append(tuple(row))
    red, pivots = linalg.rref(tuple(rows))
    degree = cochains[0].degree
    out = []
    for r in range(len(pivots)):
        raw = []
        for idx, coeff in enumerate(red[r]):
            if coeff:
                g, w, e = keys[idx]
                raw.append((g, Poly.monomial(group.dim, e, coeff, frame.base[g].key), w))
        out.append(Cochain.build(group.dim, degree, raw, frame))
    return out
