"""Deformation layer: constant 2-cocycle parameter spaces, commutation
relations of the deformed algebra, and the first multiplication map of the
induced infinitesimal deformation.
"""

from __future__ import annotations

from . import linalg
from .bracket import BracketError, gamma
from .cochain import invariant_basis, is_invariant
from .cyclo import CycNum
from .poly import STD, Poly


def constant_cocycle_space(group, frame=None):
    """Basis of the invariant constant degree-2 representatives, the parameter
    space of the PBW deformations."""
    return invariant_basis(group, 2, 0, frame)


class ClassReport:
    __slots__ = ("rep", "word", "codim", "summand", "dimension")

    def __init__(self, rep, word, codim, summand, dimension):
        self.rep = rep
        self.word = word
        self.codim = codim
        self.summand = summand
        self.dimension = dimension


class ParamSpaceReport:
    __slots__ = ("classes", "total")

    def __init__(self, classes):
        self.classes = classes
        self.total = sum(c.dimension for c in classes)


def hecke_parameter_space(group, frame=None):
    """Per-conjugacy-class decomposition of the constant parameter space.

    A class contributes through its volume-form summand when its representative
    moves exactly two directions and every centralizer element has determinant 1
    on the moved plane, and through the invariant two-forms summand when it acts
    trivially.  The total must equal the size of constant_cocycle_space, which is
    computed by an independent path.
    """
    frame = frame or group.frame
    conj = group.conjugacy()
    classes = []
    for rep in conj.representatives:
        ed = frame.base[rep]
        codim = ed.codim()
        word = group.word_str(rep)
        if codim == 2:
            ok = all(
                _perp_plane_det(group, frame, rep, z) == CycNum.rational(1, group.conductor)
                for z in conj.centralizers[rep]
            )
            classes.append(
                ClassReport(rep, word, codim, "volume-form", 1 if ok else 0)
            )
        elif codim == 0:
            dim = _invariant_two_form_dim(group, rep, conj.centralizers[rep])
            classes.append(ClassReport(rep, word, codim, "two-forms", dim))
        else:
            classes.append(ClassReport(rep, word, codim, "none", 0))
    return ParamSpaceReport(classes)


def _perp_plane_det(group, frame, rep, z):
    """Determinant of z restricted to the moved plane of rep (z centralizes rep,
    so the plane is z-stable)."""
    ed = frame.base[rep]
    plane = [ed.vectors[i] for i in ed.perp]
    rows = []
    for v in plane:
        coords = linalg.mat_vec(ed.inv, linalg.mat_vec(group.elements[z], v))
        rows.append(tuple(coords[i] for i in ed.perp))
    return linalg.det(linalg.transpose(tuple(rows)))


def _invariant_two_form_dim(group, rep, centralizer):
    """Rank of the centralizer average acting on constant two-forms at a
    trivially-acting tag (an independent path: plain exterior-square action)."""
    import itertools

    n = group.dim
    pairs = list(itertools.combinations(range(n), 2))
    k = len(pairs)
    zero = CycNum.rational(0, group.conductor)
    acc = [[zero] * k for _ in range(k)]
    for z in centralizer:
        zinv = group.elements[group.inv(z)]
        for col, w in enumerate(pairs):
            for row, target in enumerate(pairs):
                acc[row][col] = acc[row][col] + linalg.submatrix_det(zinv, w, target)
    avg = tuple(
        tuple(x / CycNum.rational(len(centralizer)) for x in row) for row in acc
    )
    return linalg.rank(avg)


def pbw_relations(group, param):
    """Commutation relations of the deformed algebra attached to a constant
    invariant 2-cocycle: for i < j, x_i x_j - x_j x_i equals the group-algebra
    value of the cocycle on the corresponding wedge."""
    std = param.to_std(group)
    if std.degree != 2:
        raise BracketError("relations need a degree-2 parameter")
    for _, _, f in std.iter_terms():
        if not f.is_constant():
            raise BracketError("relations need a constant parameter")
    n = group.dim
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            rhs = []
            for g in sorted(std.terms):
                c = std.terms[g].get((i, j))
                if c is not None:
                    val = c.constant_term()
                    if val:
                        rhs.append((g, val))
            out.append(((i, j), rhs))
    return out


def relation_strings(group, relations):
    lines = []
    for (i, j), rhs in relations:
        left = f"x{i + 1}*x{j + 1} - x{j + 1}*x{i + 1}"
        if not rhs:
            lines.append(f"{left} = 0")
            continue
        parts = []
        for g, val in rhs:
            word = group.word_str(g)
            vs = str(val)
            if " " in vs:
                vs = f"({vs})"
            parts.append(f"{vs}*[{word}]")
        lines.append(f"{left} = " + " + ".join(parts))
    return lines


def mu1(group, alpha, left, right, frame=None):
    """First multiplication map of the infinitesimal deformation attached to an
    invariant 2-cocycle, evaluated on a pair of algebra elements (poly, tag).
    Returns a map from output tag to polynomial, plus the degree shift."""
    if alpha.degree != 2:
        raise BracketError("the multiplication map needs a degree-2 cocycle")
    if not is_invariant(group, alpha):
        raise BracketError("the multiplication map needs an invariant cocycle; average first")
    mult = gamma(group, alpha, frame)
    return mult([left, right])


def mu1_degree_shift(alpha):
    """Polynomial-degree shift of the induced multiplication on homogeneous
    inputs; the constant case is the classical, integrable one."""
    degs = {f.degree() for _, _, f in alpha.iter_terms()}
    if degs == {0}:
        return -2, True
    if len(degs) == 1:
        return degs.pop() - 2, False
    return None, False


def kappa_from_mu1(group, alpha, frame=None):
    """Antisymmetrization of the multiplication map on vector inputs: the
    skew bilinear form with group-algebra values defining the relations."""
    mult = gamma(group, alpha, frame)
    n = group.dim
    ident = group.identity
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            vi = Poly.variable(n, i, STD, conductor=group.conductor)
            vj = Poly.variable(n, j, STD, conductor=group.conductor)
            fwd = mult([(vi, ident), (vj, ident)])
            bwd = mult([(vj, ident), (vi, ident)])
            acc = dict(fwd)
            for t, f in bwd.items():
                acc[t] = acc.get(t, Poly.zero(n, STD)) - f
            acc = {t: f for t, f in acc.items() if f}
            if acc:
                out[(i, j)] = acc
    return out
