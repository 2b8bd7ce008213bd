"""Built-in verification suites: structural identities the engine must satisfy
on any group.  Used by the command line (`verify`) and by the test suite.

Every check is exact; a suite reports (name, runs, failures).
"""

from __future__ import annotations

import random

from .bracket import (
    circ_det,
    circ_direct,
    gerstenhaber_bracket,
    phi_star,
    tau_evaluator,
)
from .cochain import Cochain, koszul_dual_diff, proj_H
from .cyclo import CycNum
from .group import EigenData, Frame
from .poly import STD, Poly
from .util import parallel_map


def random_scalar(rng, conductor):
    z = CycNum.zeta(conductor, rng.randrange(conductor))
    return CycNum.rational(rng.randrange(-3, 4), conductor) + z * CycNum.rational(
        rng.randrange(-2, 3), conductor
    )


def random_cochain(group, rng, p, dmax, nterms=2, nonzero=True):
    n = group.dim
    raws = []
    for _ in range(nterms):
        g = rng.randrange(group.order)
        wedge = tuple(rng.sample(range(n), p))
        exps = tuple(rng.randrange(dmax + 1) for _ in range(n))
        c = random_scalar(rng, group.conductor)
        if not c:
            c = CycNum.rational(1, group.conductor)
        raws.append((g, Poly.monomial(n, exps, c, STD), wedge))
    out = Cochain.build(n, p, raws, STD)
    if nonzero and out.is_zero():
        return random_cochain(group, rng, p, dmax, nterms, nonzero)
    return out


def random_h_element(group, rng, p, dmax, frame=None, support=None):
    """A random element of the representative space, optionally restricted to
    tags from `support`."""
    frame = frame or group.frame
    from .cochain import h_space_basis

    tags = list(support if support is not None else range(group.order))
    rng.shuffle(tags)
    for g in tags:
        gens = h_space_basis(group, g, p, dmax, frame).basis
        if gens:
            picks = rng.sample(gens, min(len(gens), 2))
            total = None
            for c in picks:
                c = c.scale(random_scalar(rng, group.conductor))
                total = c if total is None else total + c
            if total and not total.is_zero():
                return total
    return None


def perturbed_frame(group, rng):
    """A frame with every eigenbasis rescaled by random nonzero scalars and the
    (vector, eigenvalue) pairs randomly reordered."""
    overrides = {}
    for g in range(group.order):
        ed = group.eigen_data(g)
        order = list(range(group.dim))
        rng.shuffle(order)
        vectors = []
        values = []
        for i in order:
            s = CycNum.zeta(group.conductor, rng.randrange(group.conductor))
            s = s + s  # scale by 2*zeta^k: nonzero, not a pure root of unity
            vectors.append(tuple(s * x for x in ed.vectors[i]))
            values.append(ed.eigenvalues[i])
        overrides[g] = EigenData(g, vectors, values, group.conductor)
    return Frame(group, overrides)


class SuiteResult:
    __slots__ = ("name", "runs", "failures")

    def __init__(self, name, runs, failures):
        self.name = name
        self.runs = runs
        self.failures = failures

    @property
    def ok(self):
        return self.failures == 0

    def line(self):
        status = "pass" if self.ok else "FAIL"
        return f"{status}  {self.name}: {self.runs - self.failures}/{self.runs}"


def suite_phi_tau_identity(group, rng, runs=60):
    fails = 0
    for _ in range(runs):
        p = rng.choice([1, 2, min(3, group.dim)])
        c = random_cochain(group, rng, p, 3, nterms=1)
        if phi_star(group, tau_evaluator(group, c), p).to_std(group) != c.to_std(group):
            fails += 1
    return SuiteResult("phi* after tau is the identity on cochains", runs, fails)


def random_h_term(group, rng, p, dmax, frame=None, tags=None):
    """One representative term (tag, poly, wedge): the wedge carries the full
    set of moved directions and the polynomial avoids them."""
    frame = frame or group.frame
    n = group.dim
    tags = list(tags if tags is not None else range(group.order))
    rng.shuffle(tags)
    for g in tags:
        ed = frame.base[g]
        extra = p - len(ed.perp)
        if extra < 0 or extra > len(ed.fixed):
            continue
        wedge = tuple(sorted(ed.perp + tuple(rng.sample(ed.fixed, extra))))
        exps = [0] * n
        for i in ed.fixed:
            exps[i] = rng.randrange(dmax + 1)
        c = random_scalar(rng, group.conductor)
        if not c:
            c = CycNum.rational(1, group.conductor)
        return g, Poly.monomial(n, tuple(exps), c, ed.key), wedge
    return None


def suite_circ_agreement(group, rng, runs=80, jobs=1):
    frame = group.frame
    cases = []
    for _ in range(runs):
        p, q = rng.choice([(2, 2), (1, 2), (2, 1)])
        if p + q - 1 > group.dim:
            p = q = 1
        ta = random_h_term(group, rng, p, 3, frame)
        tb = random_h_term(group, rng, q, 3, frame)
        if ta is None or tb is None:
            continue
        cases.append((ta, tb))

    def check(case):
        (g, f1, J), (h, f2, L) = case
        ed1, ed2 = frame.base[g], frame.base[h]
        a = circ_direct(group, f1, J, ed1, f2, L, ed2, frame)
        b = circ_det(group, f1, J, ed1, f2, L, ed2, frame)
        return a == b

    results = parallel_map(check, cases, jobs)
    fails = sum(1 for r in results if not r)
    return SuiteResult(
        "direct and determinant compositions agree", len(cases), fails
    )


def suite_differential(group, rng, runs=40):
    fails = 0
    for _ in range(runs):
        p = rng.choice([0, 1, min(2, group.dim - 1)])
        c = random_cochain(group, rng, p, 3)
        if not koszul_dual_diff(group, koszul_dual_diff(group, c)).is_zero():
            fails += 1
    return SuiteResult("the dual differential squares to zero", runs, fails)


def suite_projector(group, rng, runs=40):
    fails = 0
    for _ in range(runs):
        c = random_cochain(group, rng, min(2, group.dim), 3)
        ph = proj_H(group, c)
        if proj_H(group, ph) != ph:
            fails += 1
    return SuiteResult("the representative projection is idempotent", runs, fails)


def suite_antisymmetry(group, rng, runs=12, jobs=1):
    cases = []
    for _ in range(runs):
        p, q = rng.choice([(2, 2), (1, 2), (2, 1), (1, 1)])
        a = random_h_element(group, rng, p, 2)
        b = random_h_element(group, rng, q, 2)
        cases.append((p, q, a, b))

    def check(case):
        p, q, a, b = case
        if a is None or b is None:
            return True
        fwd = gerstenhaber_bracket(group, a, b)
        bwd = gerstenhaber_bracket(group, b, a)
        sign = -1 if ((p - 1) * (q - 1)) % 2 == 0 else 1
        return fwd == bwd.scale(sign)

    results = parallel_map(check, cases, jobs)
    fails = sum(1 for r in results if not r)
    return SuiteResult("graded antisymmetry of the bracket", runs, fails)


def suite_basis_independence(group, rng, runs=6, jobs=1):
    frame2 = perturbed_frame(group, rng)
    cases = []
    for _ in range(runs):
        a = random_h_element(group, rng, 2, 1)
        b = random_h_element(group, rng, 2, 1)
        cases.append((a, b))

    def check(case):
        a, b = case
        if a is None or b is None:
            return True
        r1 = gerstenhaber_bracket(group, a, b).to_std(group)
        r2 = gerstenhaber_bracket(group, a, b, frame=frame2).to_std(group)
        return r1 == r2

    results = parallel_map(check, cases, jobs)
    fails = sum(1 for r in results if not r)
    return SuiteResult("bracket output is eigenbasis independent", runs, fails)


def suite_vanishing_brackets(group, rng, constant_runs=40, offk_runs=20, jobs=1):
    kernel = set(group.kernel_indices())
    off_k = [g for g in range(group.order) if g not in kernel]
    cases = []
    for _ in range(constant_runs):
        a = random_h_element(group, rng, 2, 0)
        b = random_h_element(group, rng, min(2, group.dim), 0)
        cases.append(("const", a, b))
    if off_k:
        for _ in range(offk_runs):
            a = random_h_element(group, rng, 2, 3, support=off_k)
            b = random_h_element(group, rng, 2, 3, support=off_k)
            cases.append(("offk", a, b))

    def check(case):
        _, a, b = case
        if a is None or b is None:
            return True
        return gerstenhaber_bracket(group, a, b).is_zero()

    results = parallel_map(check, cases, jobs)
    fails = sum(1 for r in results if not r)
    return SuiteResult(
        "constant and off-kernel degree-2 brackets vanish", len(cases), fails
    )


def run_all(group, seed=12345, jobs=1):
    rng = random.Random(seed)
    suites = [
        suite_phi_tau_identity(group, rng),
        suite_circ_agreement(group, rng, jobs=jobs),
        suite_differential(group, rng),
        suite_projector(group, rng),
        suite_antisymmetry(group, rng, jobs=jobs),
        suite_basis_independence(group, rng, jobs=jobs),
        suite_vanishing_brackets(group, rng, jobs=jobs),
    ]
    return suites
