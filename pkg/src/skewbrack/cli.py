"""Command line front end.

Commands: group-info, cohomology-basis, bracket, square, poisson-scan,
hecke-params, mu1, verify.  Exit codes: 0 success, 2 parse error, 3 group
error, 4 math precondition error, 5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import io as sio
from .bracket import (
    BracketError,
    gerstenhaber_bracket,
    poisson_check,
    square_bracket,
)
from .cochain import in_H, invariant_basis, is_invariant, proj_H, reynolds
from .cyclo import ExactError
from .group import GroupError
from .hecke import (
    constant_cocycle_space,
    hecke_parameter_space,
    mu1,
    mu1_degree_shift,
    pbw_relations,
    relation_strings,
)
from .poly import BasisMismatch
from .util import parallel_map
from .verify import run_all

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_GROUP = 3
EXIT_MATH = 4
EXIT_VERIFY = 5


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except sio.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GroupError as exc:
        print(f"group error: {exc}", file=sys.stderr)
        return EXIT_GROUP
    except (BracketError, BasisMismatch, ExactError) as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return EXIT_MATH


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="skewbrack",
        description=(
            "Exact graded Lie brackets, Poisson structures and deformation "
            "parameter spaces for finite linear group actions on polynomial rings."
        ),
    )
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.add_argument("--verbosity", type=int, choices=(0, 1, 2), default=0)
    parser.add_argument("--jobs", type=int, default=1, help="parallel pool width")
    parser.add_argument(
        "--closure-cap", type=int, default=10000, help="maximum group size"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **flags):
        p = sub.add_parser(name)
        p.add_argument("--group", required=True, help="group JSON file")
        for flag, kw in flags.items():
            p.add_argument(flag, **kw)
        p.set_defaults(handler=handler)
        return p

    add("group-info", cmd_group_info)
    add(
        "cohomology-basis",
        cmd_cohomology_basis,
        **{
            "--degree": dict(type=int, required=True),
            "--poly-degree": dict(type=int, required=True, dest="poly_degree"),
        },
    )
    p = add("bracket", cmd_bracket)
    p.add_argument("--cocycle", action="append", required=True, help="two files")
    p = add("square", cmd_square)
    p.add_argument("--cocycle", action="append", required=True, help="one file")
    add(
        "poisson-scan",
        cmd_poisson_scan,
        **{
            "--poly-degree": dict(type=int, required=True, dest="poly_degree"),
            "--samples": dict(type=int, default=8),
            "--seed": dict(type=int, default=12345),
        },
    )
    add("hecke-params", cmd_hecke_params)
    p = add(
        "mu1",
        cmd_mu1,
        **{
            "--left": dict(required=True, help="'poly @ word', e.g. 'x1 @ g'"),
            "--right": dict(required=True, help="'poly @ word'"),
        },
    )
    p.add_argument("--cocycle", action="append", required=True, help="one file")
    add(
        "verify",
        cmd_verify,
        **{"--seed": dict(type=int, default=12345)},
    )
    return parser


def _load_group(args):
    return sio.load_group(args.group, cap=args.closure_cap)


def _emit(args, payload, text_lines):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)
    return EXIT_OK


def cmd_group_info(args):
    group = _load_group(args)
    data = sio.group_to_json(group)
    lines = [
        f"order {data['order']}, dim {data['dim']}, conductor {data['conductor']}, exponent {data['exponent']}",
        f"kernel of the action: {{{', '.join(data['kernel'])}}}",
        f"{len(data['classes'])} conjugacy classes:",
    ]
    for c in data["classes"]:
        lines.append(
            f"  [{c['representative']}] size {c['size']}, centralizer {c['centralizer_order']}, "
            f"codim fixed {c['codim_fixed_space']}, eigenvalues ({', '.join(c['eigenvalues'])})"
        )
    return _emit(args, data, lines)


def cmd_cohomology_basis(args):
    if args.degree < 0 or args.poly_degree < 0:
        raise BracketError("degree and poly-degree must be nonnegative")
    group = _load_group(args)
    basis = invariant_basis(group, args.degree, args.poly_degree)
    payload = {
        "degree": args.degree,
        "poly_degree": args.poly_degree,
        "dimension": len(basis),
        "basis": [sio.cochain_to_json(group, c) for c in basis],
    }
    lines = [f"dimension {len(basis)}"]
    for k, c in enumerate(basis):
        lines.append(f"-- basis vector {k + 1}")
        lines.append(sio.cochain_to_text(group, c))
    return _emit(args, payload, lines)


def _load_cochain_in_H(args, group, path):
    coch = sio.load_cochain(path, group)
    if not in_H(group, coch):
        print(
            f"warning: cocycle from {path} is not a canonical representative; projecting",
            file=sys.stderr,
        )
        coch = proj_H(group, coch)
    return coch


def cmd_bracket(args):
    if len(args.cocycle) != 2:
        raise sio.ParseError("bracket needs exactly two --cocycle files")
    group = _load_group(args)
    alpha = _load_cochain_in_H(args, group, args.cocycle[0])
    beta = _load_cochain_in_H(args, group, args.cocycle[1])
    if not (is_invariant(group, alpha) and is_invariant(group, beta)):
        print(
            "note: inputs are not invariant; the result is meaningful as a "
            "cohomology class only",
            file=sys.stderr,
        )
    trace = None
    if args.verbosity >= 2:
        def trace(a, b, g, h, cochain):
            print(
                f"# pair a={group.word_str(a)} b={group.word_str(b)} "
                f"on tags ({group.word_str(g)}, {group.word_str(h)}):",
                file=sys.stderr,
            )
            print(sio.cochain_to_text(group, cochain), file=sys.stderr)
    result = gerstenhaber_bracket(group, alpha, beta, trace=trace)
    payload = {
        "zero_in_cohomology": result.is_zero(),
        "bracket": sio.cochain_to_json(group, result),
    }
    lines = [f"zero in cohomology: {result.is_zero()}"]
    if not result.is_zero():
        lines.append(sio.cochain_to_text(group, result))
        if args.verbosity >= 1:
            conj = group.conjugacy()
            std = result.to_std(group)
            for rep in conj.representatives:
                members = set(conj.class_members[rep]) & set(std.support())
                if members:
                    lines.append(
                        f"# class [{group.word_str(rep)}]: "
                        f"{sum(len(std.terms[m]) for m in members)} term(s)"
                    )
    return _emit(args, payload, lines)


def cmd_square(args):
    if len(args.cocycle) != 1:
        raise sio.ParseError("square needs exactly one --cocycle file")
    group = _load_group(args)
    alpha = _load_cochain_in_H(args, group, args.cocycle[0])
    zero, averaged = poisson_check(group, alpha)
    sq = square_bracket(group, reynolds(group, alpha) if averaged else alpha)
    payload = {
        "averaged_first": averaged,
        "poisson": zero,
        "square": sio.cochain_to_json(group, sq),
    }
    lines = [f"poisson structure: {zero}" + (" (after averaging)" if averaged else "")]
    if not zero:
        lines.append(sio.cochain_to_text(group, sq))
    return _emit(args, payload, lines)


def cmd_poisson_scan(args):
    group = _load_group(args)
    basis = invariant_basis(group, 2, args.poly_degree)
    kernel = set(group.kernel_indices())
    rng = random.Random(args.seed)
    candidates = [("basis", k, c) for k, c in enumerate(basis)]
    from .verify import random_scalar

    for k in range(args.samples):
        if len(basis) < 2:
            break
        pair = rng.sample(range(len(basis)), 2)
        combo = basis[pair[0]] + basis[pair[1]].scale(random_scalar(rng, group.conductor))
        if combo.is_zero():
            continue
        candidates.append(("combo", k, combo))

    def classify(c):
        supp = set(c.to_std(group).support())
        if supp <= kernel:
            return "on-kernel"
        if not (supp & kernel):
            return "off-kernel"
        return "mixed"

    def check(item):
        kind, k, c = item
        zero = square_bracket(group, c).is_zero()
        return (kind, k, classify(c), zero)

    rows = parallel_map(check, candidates, args.jobs)
    payload = {
        "poly_degree": args.poly_degree,
        "results": [
            {"kind": kind, "index": k, "support": cls, "square_zero": zero}
            for kind, k, cls, zero in rows
        ],
    }
    lines = [f"{len(rows)} candidates at poly degree <= {args.poly_degree}"]
    for kind, k, cls, zero in rows:
        lines.append(
            f"  {kind}[{k}] support {cls}: square bracket {'zero' if zero else 'NONZERO'}"
        )
    nonzero = [r for r in rows if not r[3]]
    lines.append(f"{len(nonzero)} candidate(s) with nonzero square bracket")
    return _emit(args, payload, lines)


def cmd_hecke_params(args):
    group = _load_group(args)
    report = hecke_parameter_space(group)
    basis = constant_cocycle_space(group)
    if report.total != len(basis):
        raise BracketError(
            "internal disagreement between parameter-space code paths"
        )
    payload = {
        "total_dimension": report.total,
        "classes": [
            {
                "representative": c.word,
                "codim_fixed_space": c.codim,
                "summand": c.summand,
                "dimension": c.dimension,
            }
            for c in report.classes
        ],
        "relations": [
            relation_strings(group, pbw_relations(group, b)) for b in basis
        ],
    }
    lines = [f"parameter space dimension {report.total}"]
    for c in report.classes:
        lines.append(
            f"  class [{c.word}] codim {c.codim}: {c.summand}, dimension {c.dimension}"
        )
    if args.verbosity >= 1:
        for k, rel in enumerate(payload["relations"]):
            lines.append(f"-- relations for basis vector {k + 1}")
            lines.extend("  " + r for r in rel)
    return _emit(args, payload, lines)


def _parse_algebra_element(group, text):
    if "@" in text:
        poly_text, word = text.split("@", 1)
    else:
        poly_text, word = text, "1"
    f, kind = sio.parse_poly(poly_text.strip(), group.dim, group.conductor)
    if kind == "w":
        raise sio.ParseError("algebra elements are written in standard coordinates")
    return f, group.parse_word(word.strip())


def cmd_mu1(args):
    if len(args.cocycle) != 1:
        raise sio.ParseError("mu1 needs exactly one --cocycle file")
    group = _load_group(args)
    alpha = _load_cochain_in_H(args, group, args.cocycle[0])
    if not is_invariant(group, alpha):
        raise BracketError("mu1 needs an invariant cocycle; average it first")
    left = _parse_algebra_element(group, args.left)
    right = _parse_algebra_element(group, args.right)
    values = mu1(group, alpha, left, right)
    shift, constant_case = mu1_degree_shift(alpha)
    payload = {
        "constant_parameter": constant_case,
        "poly_degree_shift": shift,
        "value": [
            {"support_word": group.word_str(t), "poly": f.render("x")}
            for t, f in sorted(values.items())
        ],
    }
    lines = []
    if constant_case:
        lines.append("constant parameter: first multiplication map of a PBW deformation (degree shift -2)")
    else:
        lines.append(f"polynomial degree shift: {shift}")
    if values:
        for t, f in sorted(values.items()):
            lines.append(f"  [{group.word_str(t)}] {f.render('x')}")
    else:
        lines.append("  0")
    return _emit(args, payload, lines)


def cmd_verify(args):
    group = _load_group(args)
    suites = run_all(group, seed=args.seed, jobs=args.jobs)
    payload = {
        "suites": [
            {"name": s.name, "runs": s.runs, "failures": s.failures} for s in suites
        ],
        "ok": all(s.ok for s in suites),
    }
    lines = [s.line() for s in suites]
    ok = all(s.ok for s in suites)
    lines.append("all invariants hold" if ok else "INVARIANT VIOLATIONS FOUND")
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
