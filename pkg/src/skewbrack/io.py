"""Text and JSON interchange: scalar syntax, polynomial syntax, group and
cochain records, and deterministic serialization of results.

Scalar syntax: rationals as ``p/q``, the session root of unity as ``z``,
e.g. ``1/2*z^3 - 2``; the conductor is declared once per file.  Polynomial
variables are ``x1..xn`` in standard coordinates or ``w1..wn`` in the
eigenbasis of the term's own tag.
"""

from __future__ import annotations

import json
import re

from .cochain import Cochain
from .cyclo import CycNum
from .group import Group, GroupError
from .poly import STD, Poly, poly_to_std
from gmpy2 import mpq


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(\(|\)|\+|-|\*|\^|z|[A-Za-z][A-Za-z0-9]*|\d+|/)")


def parse_cyc(text, conductor):
    """Parse a scalar like ``1/2*z^3 - 2`` at the given conductor."""
    value, pos = _parse_cyc_expr(str(text), 0, conductor)
    if _peek(text, pos) is not None:
        raise ParseError(f"trailing input in scalar: {text[pos:]!r}")
    return value


def _peek(text, pos):
    m = _TOKEN.match(text, pos)
    return m.group(1) if m else None


def _take(text, pos):
    m = _TOKEN.match(text, pos)
    if not m:
        raise ParseError(f"bad token at {text[pos:]!r}")
    return m.group(1), m.end()


def _parse_cyc_expr(text, pos, conductor):
    total = CycNum.rational(0, conductor)
    sign = 1
    first = True
    while True:
        tok = _peek(text, pos)
        if tok is None or tok == ")":
            if first:
                raise ParseError("empty scalar expression")
            return total, pos
        if tok in "+-":
            _, pos = _take(text, pos)
            sign = 1 if tok == "+" else -1
        elif not first:
            raise ParseError(f"expected + or - at {text[pos:]!r}")
        term, pos = _parse_cyc_term(text, pos, conductor)
        total = total + (term if sign == 1 else -term)
        sign = 1
        first = False


def _parse_cyc_term(text, pos, conductor):
    value = CycNum.rational(1, conductor)
    need_factor = True
    while True:
        tok = _peek(text, pos)
        if tok is None or tok in "+-)":
            if need_factor:
                raise ParseError("dangling operator in scalar")
            return value, pos
        if tok == "*":
            _, pos = _take(text, pos)
            need_factor = True
            continue
        if not need_factor:
            return value, pos
        factor, pos = _parse_cyc_factor(text, pos, conductor)
        value = value * factor
        need_factor = False


def _parse_cyc_factor(text, pos, conductor):
    tok, pos = _take(text, pos)
    if tok == "z":
        k = 1
        if _peek(text, pos) == "^":
            _, pos = _take(text, pos)
            num, pos = _take(text, pos)
            if not num.isdigit():
                raise ParseError("exponent must be an integer")
            k = int(num)
        return CycNum.zeta(conductor, k), pos
    if tok.isdigit():
        num = int(tok)
        if _peek(text, pos) == "/":
            _, pos = _take(text, pos)
            den, pos = _take(text, pos)
            if not den.isdigit() or int(den) == 0:
                raise ParseError("bad rational denominator")
            return CycNum.rational(mpq(num, int(den)), conductor), pos
        return CycNum.rational(num, conductor), pos
    raise ParseError(f"unexpected token {tok!r} in scalar")


def format_cyc(value):
    return str(value)


_VAR = re.compile(r"([xw])(\d+)$")


def parse_poly(text, n, conductor, var_kind=None):
    """Parse a polynomial; variables are x1..xn or w1..wn (one kind per string).
    Returns (Poly over exponent tuples, kind) where kind is 'x' or 'w'."""
    text = str(text).strip()
    pos = 0
    total = {}
    sign = 1
    first = True
    kind = var_kind
    while pos < len(text) or first:
        tok = _peek(text, pos)
        if tok is None:
            if first:
                raise ParseError("empty polynomial")
            break
        if tok in "+-":
            _, pos = _take(text, pos)
            sign = 1 if tok == "+" else -1
        elif not first:
            raise ParseError(f"expected + or - at {text[pos:]!r}")
        coeff, exps, kind, pos = _parse_poly_term(text, pos, n, conductor, kind)
        key = tuple(exps)
        cur = total.get(key)
        add = coeff if sign == 1 else -coeff
        total[key] = add if cur is None else cur + add
        sign = 1
        first = False
        if _peek(text, pos) is None:
            break
    terms = {e: c for e, c in total.items() if c}
    return Poly(n, STD, terms), (kind or "x")


def _parse_poly_term(text, pos, n, conductor, kind):
    coeff = CycNum.rational(1, conductor)
    exps = [0] * n
    saw = False
    while True:
        tok = _peek(text, pos)
        if tok is None or tok in "+-":
            if not saw:
                raise ParseError("empty term in polynomial")
            return coeff, exps, kind, pos
        if tok == "*":
            _, pos = _take(text, pos)
            continue
        if tok == "(":
            _, pos = _take(text, pos)
            inner, pos = _parse_cyc_expr(text, pos, conductor)
            closer, pos = _take(text, pos)
            if closer != ")":
                raise ParseError("unbalanced parenthesis")
            coeff = coeff * inner
            saw = True
            continue
        m = _VAR.match(tok)
        if m:
            vkind, num = m.group(1), int(m.group(2))
            if kind is None:
                kind = vkind
            elif kind != vkind:
                raise ParseError("cannot mix x- and w-variables in one polynomial")
            if not 1 <= num <= n:
                raise ParseError(f"variable index {num} out of range 1..{n}")
            _, pos = _take(text, pos)
            k = 1
            if _peek(text, pos) == "^":
                _, pos = _take(text, pos)
                numtok, pos = _take(text, pos)
                if not numtok.isdigit():
                    raise ParseError("exponent must be an integer")
                k = int(numtok)
            exps[num - 1] += k
            saw = True
            continue
        if tok.isdigit() or tok == "z":
            val, pos = _parse_cyc_factor(text, pos, conductor)
            coeff = coeff * val
            saw = True
            continue
        raise ParseError(f"unexpected token {tok!r} in polynomial")


# -- group records --------------------------------------------------------------------


def load_group(source, cap=None):
    """Build a group from a JSON record {"conductor", "dim", "generators"}."""
    data = _as_json(source)
    try:
        conductor = int(data["conductor"])
        dim = int(data["dim"])
        gens_raw = data["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed group record: {exc}") from exc
    if conductor < 1 or dim < 1:
        raise ParseError("conductor and dim must be positive")
    gens = []
    for m in gens_raw:
        if len(m) != dim or any(len(row) != dim for row in m):
            raise ParseError("generator is not a square matrix of the declared size")
        gens.append(
            tuple(tuple(parse_cyc(x, conductor) for x in row) for row in m)
        )
    names = data.get("names")
    kwargs = {}
    if cap is not None:
        kwargs["cap"] = cap
    return Group.close(gens, conductor, gen_names=names, **kwargs)


def _as_json(source):
    if isinstance(source, (dict, list)):
        return source
    text = source
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, str) and "\n" not in source and source.endswith(".json"):
        with open(source) as f:
            text = f.read()
    elif isinstance(source, str) and not source.lstrip().startswith(("{", "[")):
        with open(source) as f:
            text = f.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


# -- cochain records ------------------------------------------------------------------------


def load_cochain(source, group, frame=None):
    """Build a cochain from a JSON list of term records.

    Each record: {"support": word or index, "poly": str, "wedge": [1-based ints]};
    x-variables and "standard" mean standard coordinates, w-variables and
    "eigen" mean the eigenbasis of the record's own tag.
    """
    frame = frame or group.frame
    data = _as_json(source)
    if isinstance(data, dict):
        data = [data]
    n = group.dim
    degree = None
    std_terms = []
    for rec in data:
        try:
            support = rec["support"]
            if isinstance(support, int):
                if not 0 <= support < group.order:
                    raise ParseError(f"element index {support} out of range")
                g = support
            else:
                g = group.parse_word(support)
            wedge = tuple(int(i) - 1 for i in rec["wedge"])
            poly_text = rec["poly"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed cochain record: {exc}") from exc
        except GroupError as exc:
            raise ParseError(str(exc)) from exc
        if degree is None:
            degree = len(wedge)
        elif degree != len(wedge):
            raise ParseError("all terms must share one exterior degree")
        if any(not 0 <= i < n for i in wedge):
            raise ParseError("wedge index out of range")
        f, kind = parse_poly(poly_text, n, group.conductor)
        poly_basis = rec.get("poly_basis", "eigen" if kind == "w" else "standard")
        wedge_basis = rec.get("wedge_basis", poly_basis)
        ed = frame.base[g]
        if poly_basis == "eigen":
            f = poly_to_std(Poly(n, ed.key, f.terms), ed)
        elif poly_basis != "standard":
            raise ParseError("poly_basis must be 'standard' or 'eigen'")
        if wedge_basis == "eigen":
            for target, d in frame.wedge_to_std(ed, tuple(wedge)).items():
                std_terms.append((g, f.scale(d), target))
        elif wedge_basis == "standard":
            std_terms.append((g, f, wedge))
        else:
            raise ParseError("wedge_basis must be 'standard' or 'eigen'")
    if degree is None:
        raise ParseError("cochain record is empty")
    return Cochain.build(n, degree, std_terms, STD)


def cochain_to_json(group, coch):
    """Deterministic standard-coordinate term list."""
    std = coch.to_std(group)
    out = []
    for g, w, f in std.iter_terms():
        out.append(
            {
                "support": group.word_str(g),
                "support_index": g,
                "poly": f.render("x"),
                "poly_basis": "standard",
                "wedge": [i + 1 for i in w],
                "wedge_basis": "standard",
            }
        )
    return out


def cochain_to_text(group, coch):
    std = coch.to_std(group)
    if std.is_zero():
        return "0"
    lines = []
    for g, w, f in std.iter_terms():
        wedge = "^".join(f"dx{i + 1}" for i in w) or "1"
        lines.append(f"[{group.word_str(g)}] ({f.render('x')}) {wedge}")
    return "\n".join(lines)


def group_to_json(group):
    conj = group.conjugacy()
    frame = group.frame
    return {
        "order": group.order,
        "dim": group.dim,
        "conductor": group.conductor,
        "exponent": group.exponent,
        "kernel": [group.word_str(k) for k in conj.kernel],
        "classes": [
            {
                "representative": group.word_str(r),
                "size": len(conj.class_members[r]),
                "centralizer_order": len(conj.centralizers[r]),
                "codim_fixed_space": frame.base[r].codim(),
                "eigenvalues": [str(e) for e in frame.base[r].eigenvalues],
            }
            for r in conj.representatives
        ],
    }
