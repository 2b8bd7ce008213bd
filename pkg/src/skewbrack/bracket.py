"""The graded Lie bracket engine for tagged vector forms.

Two independent implementations of the chain-level composition are kept:
a direct evaluation that splices inner values into the outer evaluator over
all argument permutations, and a determinant form that contracts minors of
the change-of-basis matrix between the two eigenbases.  They must agree
exactly, and the test suite enforces that.

The full bracket conjugates both eigenbases over all group element pairs,
averages exactly, and projects onto canonical representatives.  One frame
(a fixed eigenbasis per element) is used throughout a computation; the
conjugated bases are derived views of it, never re-diagonalizations.
"""

from __future__ import annotations

import itertools

from . import linalg
from .cochain import Cochain, is_invariant, proj_H, reynolds
from .cyclo import CycNum, quantum_integer
from .poly import (
    STD,
    Poly,
    divides_linear,
    eigen_twist,
    group_act,
    poly_to_basis,
    poly_to_std,
    quantum_partial,
    substitute_matrix,
)


class BracketError(Exception):
    """Violated bracket precondition (wrong space, wrong group shape, ...)."""


# -- evaluators -------------------------------------------------------------------


def upsilon_eval(f_g, wedge, ed, args):
    """Evaluate one tagged term on polynomial arguments given in its eigenbasis:
    the product over slots of the twisted quantum partial of each argument,
    times the coefficient polynomial.  Vanishes as soon as one slot does."""
    acc = None
    for j, arg in zip(wedge, args):
        d = quantum_partial(arg, j, ed)
        if not d:
            return Poly.zero(f_g.n, ed.key)
        d = eigen_twist(d, j, ed)
        acc = d if acc is None else acc * d
    return f_g if acc is None else acc * f_g


class TauImage:
    """Evaluator for a single tagged term; remembers its eigenbasis and tag."""

    __slots__ = ("group", "f", "wedge", "ed")

    def __init__(self, group, f, wedge, ed):
        self.group = group
        self.f = f
        self.wedge = wedge
        self.ed = ed

    def __call__(self, args):
        return upsilon_eval(self.f, self.wedge, self.ed, args)

    def eval_std(self, args_std):
        """Evaluate on standard-coordinate arguments; value in standard coordinates."""
        args = [poly_to_basis(x, self.ed) for x in args_std]
        return poly_to_std(self(args), self.ed)


class BarMultiplier:
    """Multilinear map on tensor powers of the skew group algebra.  Arguments
    are (polynomial, element index) pairs; values are formal sums stored as a
    map from output tag to standard-coordinate polynomial."""

    __slots__ = ("group", "degree", "fn")

    def __init__(self, group, degree, fn):
        self.group = group
        self.degree = degree
        self.fn = fn

    def __call__(self, args):
        if len(args) != self.degree:
            raise BracketError(f"evaluator expects {self.degree} tensor factors")
        return self.fn(args)


# -- chain-level composition, direct form -------------------------------------------


_PERMS = {}


def _signed_perms(m):
    got = _PERMS.get(m)
    if got is None:
        got = [
            (pi, linalg.perm_parity(pi)) for pi in itertools.permutations(range(m))
        ]
        _PERMS[m] = got
    return got


def _partial_products(group, frame, f1, J, ed1, f2, ed2, pp_cache=None):
    """f2 rewritten into the outer basis, then for each distinct outer slot j the
    product (twisted quantum partial_j of f2) * f1.  Slots with zero partial are
    simply absent.

    The result depends on the pair of conjugated bases only through the pooled
    change-of-basis matrix and the outer eigenvalue list, which is what the
    optional per-computation cache keys on.
    """
    if f2.basis != ed1.key:
        s = frame.basis_change(ed1, ed2)
    else:
        s = None
    if pp_cache is not None:
        key = (id(s), id(f1.terms), id(f2.terms), J, id(ed1.eigenvalues))
        got = pp_cache.get(key)
        if got is not None:
            return {j: Poly(f1.n, ed1.key, terms) for j, terms in got}
    f2_1 = substitute_matrix(f2, s, ed1.key) if s is not None else f2
    products = {}
    for j in J:
        if j in products:
            continue
        d = quantum_partial(f2_1, j, ed1)
        if d:
            products[j] = eigen_twist(d, j, ed1) * f1
    if pp_cache is not None:
        pp_cache[key] = tuple((j, p.terms) for j, p in products.items())
    return products


def _circ_raw(group, frame, f1, J, ed1, f2, L, ed2, pp_cache=None):
    """Composition (first o second) evaluated on every increasing standard wedge.

    Yields (polynomial in the coordinates of ed1, standard wedge).  The output
    tag is owner(ed1) * owner(ed2) and is attached by the caller.
    """
    n = group.dim
    p, q = len(J), len(L)
    m = p + q - 1
    out = []
    if p == 0 or m < 0 or m > n:
        return out
    products = _partial_products(group, frame, f1, J, ed1, f2, ed2, pp_cache)
    if not products:
        return out
    e1 = ed1.inv
    e2 = ed2.inv
    h1 = frame.acted_coords(ed1, ed2.owner)
    e1_rows = [e1[j] for j in J]
    e2_rows = [e2[l] for l in L]
    h1_rows = [h1[j] for j in J]
    live = [k for k in range(p) if J[k] in products]
    zero = CycNum.rational(0, group.conductor)
    perms = _signed_perms(m)
    for wedge in itertools.combinations(range(n), m):
        acc = dict.fromkeys(products, zero)
        hit = False
        for pi, sgn in perms:
            seq = tuple(wedge[t] for t in pi)
            for k in live:
                scalar = _circ_scalar(e1_rows, e2_rows, h1_rows, seq, k, p, q)
                if scalar is None:
                    continue
                if (q - 1) * k % 2:
                    sign = -sgn
                else:
                    sign = sgn
                j = J[k]
                acc[j] = acc[j] + (scalar if sign == 1 else -scalar)
                hit = True
        if not hit:
            continue
        poly = None
        for j, c in acc.items():
            if c:
                piece = products[j].scale(c)
                poly = piece if poly is None else poly + piece
        if poly:
            out.append((poly, wedge))
    return out


def _circ_scalar(e1_rows, e2_rows, h1_rows, seq, k, p, q):
    """Scalar factor of one (permutation, splice position) summand: coordinates
    of the inner arguments, the leading outer arguments, and the twisted tail."""
    scalar = None
    for t in range(q):
        c = e2_rows[t][seq[k + t]]
        if not c:
            return None
        scalar = c if scalar is None else scalar * c
    for t in range(k):
        c = e1_rows[t][seq[t]]
        if not c:
            return None
        scalar = c if scalar is None else scalar * c
    for t in range(k + 1, p):
        c = h1_rows[t][seq[t + q - 1]]
        if not c:
            return None
        scalar = c if scalar is None else scalar * c
    if scalar is None:
        scalar = CycNum.rational(1)  # p == 1, q == 0: the splice is the only slot
    return scalar


def circ_permutation_terms(group, frame, f1, J, ed1, f2, L, ed2, wedge):
    """Per-permutation contributions of the direct composition at one wedge,
    in the coordinates of ed1 (regression hook for pinned intermediates)."""
    n = group.dim
    p, q = len(J), len(L)
    m = p + q - 1
    assert len(wedge) == m
    products = _partial_products(group, frame, f1, J, ed1, f2, ed2)
    e1, e2 = ed1.inv, ed2.inv
    e1_rows = [e1[j] for j in J]
    e2_rows = [e2[l] for l in L]
    h1_rows = [frame.acted_coords(ed1, ed2.owner)[j] for j in J]
    out = {}
    for pi, sgn in _signed_perms(m):
        seq = tuple(wedge[t] for t in pi)
        poly = Poly.zero(group.dim, ed1.key)
        for k in range(p):
            j = J[k]
            if j not in products:
                continue
            scalar = _circ_scalar(e1_rows, e2_rows, h1_rows, seq, k, p, q)
            if scalar is None:
                continue
            if (q - 1) * k % 2:
                scalar = -scalar
            poly = poly + products[j].scale(scalar if sgn == 1 else -scalar)
        out[pi] = poly
    return out


# -- chain-level composition, determinant form --------------------------------------------


def _circ_det_raw(group, frame, f1, J, ed1, f2, L, ed2, pp_cache=None):
    """Minor-contraction form of the same composition.  Output wedges are taken
    in the eigenbasis of ed2 and converted to standard wedges by the caller."""
    n = group.dim
    p, q = len(J), len(L)
    m = p + q - 1
    out = []
    if p == 0 or m < 0 or m > n:
        return out
    products = _partial_products(group, frame, f1, J, ed1, f2, ed2, pp_cache)
    if not products:
        return out
    mchg = frame.basis_change(ed1, ed2)
    lset = set(L)
    comb2 = (q * (q - 1)) // 2
    for wedge in itertools.combinations(range(n), m):
        if not lset <= set(wedge):
            continue
        rest = tuple(i for i in wedge if i not in lset)
        lam_sum = sum(wedge.index(l) + 1 for l in L)
        nu_base = 1 - q + lam_sum - comb2
        poly = None
        for k1 in range(1, p + 1):
            j = J[k1 - 1]
            if j not in products:
                continue
            jk = J[: k1 - 1] + J[k1:]
            dk = linalg.submatrix_det(mchg, jk, rest)
            if not dk:
                continue
            if (nu_base - k1) % 2:
                dk = -dk
            piece = products[j].scale(dk)
            poly = piece if poly is None else poly + piece
        if poly:
            out.append((poly, wedge))
    return out


def _raw_to_std(group, frame, raw, ed1, tag, wedge_basis_ed=None):
    """Convert raw (poly-in-ed1, wedge) pairs to standard-coordinate triples."""
    triples = []
    for poly, wedge in raw:
        f_std = poly_to_std(poly, ed1)
        if wedge_basis_ed is None:
            triples.append((tag, f_std, wedge))
        else:
            for target, d in frame.wedge_to_std(wedge_basis_ed, wedge).items():
                triples.append((tag, f_std.scale(d), target))
    return triples


def circ_direct(group, f1, J, ed1, f2, L, ed2, frame=None):
    """Composition (first o second) as a standard-coordinate cochain on the
    product tag, evaluated on standard wedges."""
    frame = frame or group.frame
    tag = group.mul_table[ed1.owner][ed2.owner]
    raw = _circ_raw(group, frame, f1, J, ed1, f2, L, ed2)
    m = len(J) + len(L) - 1
    return Cochain.build(group.dim, m, _raw_to_std(group, frame, raw, ed1, tag), STD)


def circ_det(group, f1, J, ed1, f2, L, ed2, frame=None):
    """Determinant form of the composition; exactly equal to circ_direct."""
    frame = frame or group.frame
    tag = group.mul_table[ed1.owner][ed2.owner]
    raw = _circ_det_raw(group, frame, f1, J, ed1, f2, L, ed2)
    m = len(J) + len(L) - 1
    return Cochain.build(
        group.dim, m, _raw_to_std(group, frame, raw, ed1, tag, wedge_basis_ed=ed2), STD
    )


def _term_prebracket_triples(group, frame, f1, J, ed1, f2, L, ed2, impl="direct", pp_cache=None):
    p, q = len(J), len(L)
    fn = _circ_raw if impl == "direct" else _circ_det_raw
    tag_ab = group.mul_table[ed1.owner][ed2.owner]
    tag_ba = group.mul_table[ed2.owner][ed1.owner]
    fwd = fn(group, frame, f1, J, ed1, f2, L, ed2, pp_cache)
    bwd = fn(group, frame, f2, L, ed2, f1, J, ed1, pp_cache)
    sign = -1 if ((p - 1) * (q - 1)) % 2 == 0 else 1
    wb_fwd = None if impl == "direct" else ed2
    wb_bwd = None if impl == "direct" else ed1
    triples = _raw_to_std(group, frame, fwd, ed1, tag_ab, wb_fwd)
    for tg, f, w in _raw_to_std(group, frame, bwd, ed2, tag_ba, wb_bwd):
        triples.append((tg, f.scale(sign), w))
    return triples


def prebracket(group, alpha, beta, ed1=None, ed2=None, frame=None, impl="direct"):
    """Chain-level bilinear bracket of two single-tag cochains with respect to a
    chosen pair of eigenbases; the output lives on both product tags."""
    frame = frame or group.frame
    af = alpha.to_frame(group, frame)
    bf = beta.to_frame(group, frame)
    if len(af.support()) != 1 or len(bf.support()) != 1:
        raise BracketError("prebracket acts on single-tag cochains")
    g = af.support()[0]
    h = bf.support()[0]
    ed1 = ed1 or frame.base[g]
    ed2 = ed2 or frame.base[h]
    p, q = af.degree, bf.degree
    m = p + q - 1
    out = Cochain.zero(group.dim, m, STD)
    for _, J, f1 in af.iter_terms():
        for _, L, f2 in bf.iter_terms():
            f1v = f1 if f1.basis == ed1.key else Poly(f1.n, ed1.key, f1.terms)
            f2v = f2 if f2.basis == ed2.key else Poly(f2.n, ed2.key, f2.terms)
            for tg, f, w in _term_prebracket_triples(
                group, frame, f1v, J, ed1, f2v, L, ed2, impl
            ):
                ws, sgn = tuple(sorted(w)), linalg.perm_parity(w)
                if sgn == 0 or not f:
                    continue
                out._add_term(tg, f if sgn == 1 else -f, ws)
    return out.prune()


# -- the full bracket ---------------------------------------------------------------------


def gerstenhaber_bracket(group, alpha, beta, frame=None, check_H=True, trace=None):
    """Exact graded Lie bracket of two representative cochains: conjugate both
    eigenbases over all pairs of group elements, combine the two compositions
    with the graded sign, average by 1/|G|^2, and project onto representatives.

    The result does not depend on the frame; the intermediate prebrackets do.
    """
    frame = frame or group.frame
    af = alpha.to_frame(group, frame)
    bf = beta.to_frame(group, frame)
    if check_H:
        for name, c in (("first", af), ("second", bf)):
            if proj_H(group, c, frame) != c:
                raise BracketError(
                    f"{name} argument is not a canonical representative; apply proj_H"
                )
    p, q = af.degree, bf.degree
    m = p + q - 1
    order = group.order
    total = Cochain.zero(group.dim, m, STD)
    pp_cache = {}
    for g, J, f1 in af.iter_terms():
        for h, L, f2 in bf.iter_terms():
            for a in range(order):
                ed1 = frame.conj(a, g)
                f1v = Poly(f1.n, ed1.key, f1.terms)
                for b in range(order):
                    ed2 = frame.conj(b, h)
                    f2v = Poly(f2.n, ed2.key, f2.terms)
                    triples = _term_prebracket_triples(
                        group, frame, f1v, J, ed1, f2v, L, ed2, pp_cache=pp_cache
                    )
                    if trace is not None and triples:
                        trace(a, b, g, h, Cochain.build(group.dim, m, triples, STD))
                    for tg, f, w in triples:
                        ws, sgn = tuple(sorted(w)), linalg.perm_parity(w)
                        if sgn == 0 or not f:
                            continue
                        total._add_term(tg, f if sgn == 1 else -f, ws)
    total.prune()
    scale = CycNum.rational(1) / CycNum.rational(order * order)
    return proj_H(group, total.scale(scale), frame)


def square_bracket(group, alpha, frame=None):
    return gerstenhaber_bracket(group, alpha, alpha, frame=frame)


def poisson_check(group, alpha, frame=None):
    """True iff the square bracket vanishes; non-invariant input is averaged
    first and the averaging is reported in the second component."""
    if alpha.degree != 2:
        raise BracketError("Poisson candidates live in degree 2")
    averaged = False
    if not is_invariant(group, alpha):
        alpha = reynolds(group, alpha)
        averaged = True
    if not alpha:
        return True, averaged
    return square_bracket(group, alpha, frame=frame).is_zero(), averaged


# -- classical and abelian fast paths ----------------------------------------------------------


def _ordinary_partial(f, i):
    terms = {}
    for e, c in f.terms.items():
        k = e[i]
        if k:
            e2 = e[:i] + (k - 1,) + e[i + 1 :]
            v = c * k
            prev = terms.get(e2)
            s = v if prev is None else prev + v
            if s:
                terms[e2] = s
            elif prev is not None:
                del terms[e2]
    return Poly(f.n, f.basis, terms)


def sn_bracket(group, alpha, beta):
    """Classical polyvector-field bracket with ordinary partials.  Requires
    every support element to act trivially; agrees with the full engine for a
    trivial group, and for invariant inputs supported on the kernel."""
    a_std = alpha.to_std(group)
    b_std = beta.to_std(group)
    kernel = set(group.kernel_indices())
    if not (set(a_std.support()) | set(b_std.support())) <= kernel:
        raise BracketError(
            "classical bracket requires supports acting trivially on the space"
        )
    p, q = a_std.degree, b_std.degree
    m = p + q - 1
    out = Cochain.zero(group.dim, m, STD)
    sign_pq = -1 if ((p - 1) * (q - 1)) % 2 == 0 else 1
    for g, J, f1 in a_std.iter_terms():
        for h, L, f2 in b_std.iter_terms():
            gh = group.mul_table[g][h]
            hg = group.mul_table[h][g]
            for k in range(p):
                df = _ordinary_partial(f2, J[k])
                if not df:
                    continue
                ik = J[:k] + L + J[k + 1 :]
                ws, sgn = tuple(sorted(ik)), linalg.perm_parity(ik)
                if sgn == 0:
                    continue
                coeff = sgn if (q - 1) * k % 2 == 0 else -sgn
                out._add_term(gh, (df * f1).scale(coeff), ws)
            for k in range(q):
                df = _ordinary_partial(f1, L[k])
                if not df:
                    continue
                ik = L[:k] + J + L[k + 1 :]
                ws, sgn = tuple(sorted(ik)), linalg.perm_parity(ik)
                if sgn == 0:
                    continue
                coeff = sgn if (p - 1) * k % 2 == 0 else -sgn
                out._add_term(hg, (df * f2).scale(coeff * sign_pq), ws)
    return out.prune()


def _char_ip(group, exps):
    """Inner product of the diagonal character with exponent vector exps against
    the trivial character: (1/|G|) sum_g prod_i chi_i(g)^exps[i]."""
    cache = getattr(group, "_chi_ip_cache", None)
    if cache is None:
        cache = {}
        group._chi_ip_cache = cache
    exps = tuple(exps)
    got = cache.get(exps)
    if got is not None:
        return got
    total = CycNum.rational(0, group.conductor)
    for g in range(group.order):
        m = group.elements[g]
        val = CycNum.rational(1, group.conductor)
        for i, k in enumerate(exps):
            if k:
                val = val * m[i][i] ** k
        total = total + val
    got = total / CycNum.rational(group.order)
    cache[exps] = got
    return got


def abelian_bracket(group, alpha, beta, frame=None):
    """Degree-2 bracket for a simultaneously diagonalized abelian group, via
    character inner products.  Exactly equal to the full engine's output.

    Per pair of monomial terms with wedge overlap 2, 1 or 0, the output is
    zero, the single shared-direction term, or the four-term expansion; each
    surviving term carries the averaging factor <psi_alpha,1><psi_beta,1>.
    """
    frame = frame or group.frame
    if not group.is_diagonal():
        raise BracketError("character formula requires a diagonalized abelian group")
    for a in range(group.order):
        for b in range(group.order):
            if group.mul_table[a][b] != group.mul_table[b][a]:
                raise BracketError("character formula requires an abelian group")
    a_std = alpha.to_std(group)
    b_std = beta.to_std(group)
    if a_std.degree != 2 or b_std.degree != 2:
        raise BracketError("character formula is stated in degree 2")
    n = group.dim
    out = Cochain.zero(n, 3, STD)
    for g, J, fa in a_std.iter_terms():
        for h, L, fb in b_std.iter_terms():
            gh = group.mul_table[g][h]
            for ca, coeff_a in fa.monomials():
                for cb, coeff_b in fb.monomials():
                    shared = set(J) & set(L)
                    if len(shared) == 2:
                        continue  # identical exterior parts: every splice repeats
                    psi_a = tuple(ca[i] - (1 if i in J else 0) for i in range(n))
                    psi_b = tuple(cb[i] - (1 if i in L else 0) for i in range(n))
                    factor = _char_ip(group, psi_a) * _char_ip(group, psi_b)
                    if not factor:
                        continue
                    factor = factor * coeff_a * coeff_b
                    if len(shared) == 1:
                        pieces = _abelian_overlap_terms(group, g, h, J, L, ca, cb)
                    else:
                        pieces = _abelian_disjoint_terms(group, g, h, J, L, ca, cb)
                    for q_scalar, slot, wedge in pieces:
                        val = q_scalar * factor
                        if not val:
                            continue
                        ws, sgn = tuple(sorted(wedge)), linalg.perm_parity(wedge)
                        if sgn == 0:
                            continue
                        mono = tuple(
                            ca[i] + cb[i] - (1 if i == slot else 0) for i in range(n)
                        )
                        out._add_term(
                            gh,
                            Poly.monomial(n, mono, val if sgn == 1 else -val, STD),
                            ws,
                        )
    return proj_H(group, out.prune(), frame)


def _chi(group, g, i):
    return group.elements[g][i][i]


def _twist_value(group, g, exps, upto):
    val = CycNum.rational(1, group.conductor)
    for t in range(upto):
        if exps[t]:
            val = val * _chi(group, g, t) ** exps[t]
    return val


def _abelian_overlap_terms(group, g, h, J, L, ca, cb):
    """Shared-direction case: one splice survives on each side, always
    differentiating the shared slot."""
    (s,) = set(J) & set(L)
    u = J[0] if J[1] == s else J[1]
    w = L[0] if L[1] == s else L[1]
    out = []
    if cb[s]:
        q_g = quantum_integer(cb[s], _chi(group, g, s)) * _twist_value(group, g, cb, s)
        if s < u:
            out.append((q_g, s, (L[0], L[1], u)))
        else:
            out.append((-q_g, s, (u, L[0], L[1])))
    if ca[s]:
        q_h = quantum_integer(ca[s], _chi(group, h, s)) * _twist_value(group, h, ca, s)
        if s < w:
            out.append((q_h, s, (J[0], J[1], w)))
        else:
            out.append((-q_h, s, (w, J[0], J[1])))
    return out


def _abelian_disjoint_terms(group, g, h, J, L, ca, cb):
    """Disjoint wedges: all four splices survive."""
    out = []
    if cb[J[0]]:
        q1 = quantum_integer(cb[J[0]], _chi(group, g, J[0])) * _twist_value(group, g, cb, J[0])
        out.append((q1, J[0], (L[0], L[1], J[1])))
    if cb[J[1]]:
        q2 = quantum_integer(cb[J[1]], _chi(group, g, J[1])) * _twist_value(group, g, cb, J[1])
        out.append((-q2, J[1], (J[0], L[0], L[1])))
    if ca[L[0]]:
        q3 = quantum_integer(ca[L[0]], _chi(group, h, L[0])) * _twist_value(group, h, ca, L[0])
        out.append((q3, L[0], (J[0], J[1], L[1])))
    if ca[L[1]]:
        q4 = quantum_integer(ca[L[1]], _chi(group, h, L[1])) * _twist_value(group, h, ca, L[1])
        out.append((-q4, L[1], (L[0], J[0], J[1])))
    return out


# -- conversions between complexes -----------------------------------------------------------------


def phi_star(group, evaluator, p):
    """Antisymmetrize a tensor evaluator over standard wedges into a cochain.
    ``evaluator`` maps a list of p standard-coordinate polynomials to an
    iterable of (tag, polynomial) pairs."""
    n = group.dim
    out = Cochain.zero(n, p, STD)
    variables = [
        Poly.variable(n, i, STD, conductor=group.conductor) for i in range(n)
    ]
    for wedge in itertools.combinations(range(n), p):
        for pi, sgn in _signed_perms(p):
            args = [variables[wedge[t]] for t in pi]
            for tag, val in evaluator(args):
                if val:
                    out._add_term(tag, val if sgn == 1 else -val, wedge)
    return out.prune()


def tau_evaluator(group, coch, frame=None):
    """The tensor evaluator of a cochain: per tag, the twisted-partial product."""
    frame = frame or group.frame
    cf = coch.to_frame(group, frame)
    terms = [(g, w, f, frame.base[g]) for g, w, f in cf.iter_terms()]

    def evaluate(args_std):
        results = []
        for g, w, f, ed in terms:
            args = [poly_to_basis(x, ed) for x in args_std]
            val = upsilon_eval(f, w, ed, args)
            if val:
                results.append((g, poly_to_std(val, ed)))
        return results

    return evaluate


def gamma(group, alpha, frame=None):
    """Averaged conversion of a representative cochain into a multiplier on
    tensor powers of the skew group algebra."""
    frame = frame or group.frame
    cf = alpha.to_frame(group, frame)
    p = cf.degree
    terms = [(g, w, f, frame.base[g]) for g, w, f in cf.iter_terms()]
    order = group.order
    inv_order = CycNum.rational(1) / CycNum.rational(order)

    def fn(args):
        twisted = []
        acc_tag = group.identity
        for f_arg, t in args:
            if f_arg.basis != STD:
                raise BracketError("multiplier arguments must be standard-coordinate")
            twisted.append(
                f_arg if acc_tag == group.identity else group_act(group.elements[acc_tag], f_arg)
            )
            acc_tag = group.mul_table[acc_tag][t]
        out = {}
        for a in range(order):
            ainv = group.elements[group.inv(a)]
            pre = [x if a == group.identity else group_act(ainv, x) for x in twisted]
            for g, w, f, ed in terms:
                args_b = [poly_to_basis(x, ed) for x in pre]
                val = upsilon_eval(f, w, ed, args_b)
                if not val:
                    continue
                val_std = poly_to_std(val, ed)
                if a != group.identity:
                    val_std = group_act(group.elements[a], val_std)
                tag = group.mul_table[group.conj(a, g)][acc_tag]
                prev = out.get(tag)
                out[tag] = val_std if prev is None else prev + val_std
        return {t: f.scale(inv_order) for t, f in out.items() if f}

    return BarMultiplier(group, p, fn)


def gamma_prime(group, mult, p=None, frame=None):
    """Inverse conversion: restrict a multiplier to plain polynomial inputs,
    antisymmetrize over wedges, and project onto representatives."""
    frame = frame or group.frame
    p = mult.degree if p is None else p
    if p > 3:
        raise BracketError("conversion from multipliers is implemented for degree <= 3")

    def evaluate(polys):
        return mult([(x, group.identity) for x in polys]).items()

    return proj_H(group, phi_star(group, evaluate, p), frame)


# -- divisibility invariant -------------------------------------------------------------------------


def divisibility_check(group, alpha, w_coeffs, m, frame=None):
    """For a degree-2 representative on a tag of codimension 2, test whether
    (w - g w) divides the evaluator's commutator on (w^m, w).  Exact division."""
    frame = frame or group.frame
    cf = alpha.to_frame(group, frame)
    if cf.degree != 2 or len(cf.support()) != 1:
        raise BracketError("divisibility test needs a single-tag degree-2 cochain")
    g = cf.support()[0]
    ed = frame.base[g]
    if ed.codim() != 2:
        raise BracketError("divisibility test needs a codimension-2 tag")
    n = group.dim
    w_std = Poly.linear(n, [_as_c(x, group.conductor) for x in w_coeffs], STD)
    gw_std = Poly.linear(
        n, linalg.mat_vec(group.elements[g], tuple(_as_c(x, group.conductor) for x in w_coeffs)), STD
    )
    w_b = poly_to_basis(w_std, ed)
    u_b = poly_to_basis(w_std - gw_std, ed)
    wm = w_b ** m
    diff = Poly.zero(n, ed.key)
    for _, wedge, f in cf.iter_terms():
        diff = diff + upsilon_eval(f, wedge, ed, [wm, w_b])
        diff = diff - upsilon_eval(f, wedge, ed, [w_b, wm])
    if not u_b:
        return True
    return divides_linear(u_b, diff)


def _as_c(x, conductor):
    return x if isinstance(x, CycNum) else CycNum.rational(x, conductor)
