"""CPLEX LP text for :class:`IlpModel`, and a parser for the same subset.

Layout::

    \\ mode: weighted
    \\ objective constant: 1
    Minimize
     obj: 0.7 x14 + 0.7 x15 - z1 ...
    Subject To
     adj1: x1 = 1
    Bounds
     0 <= x1 <= 1
     0 <= y1 <= 1
    Binaries
     x1 ...
    Generals
     y1 ...
    End

The objective constant is not part of the LP language, so it travels as a
comment.  ``Bounds`` lists every variable, which fixes the variable order.
"""

import re
from fractions import Fraction

from ..errors import ParseError
from ..numbers import format_decimal
from .model import BINARY, EQ, GE, GENERAL, LE, WEIGHTED, Constraint, IlpModel, Variable

_WIDTH = 240
_SECTIONS = {
    "minimize": "objective",
    "minimise": "objective",
    "min": "objective",
    "subject to": "constraints",
    "such that": "constraints",
    "st": "constraints",
    "s.t.": "constraints",
    "bounds": "bounds",
    "binaries": "binaries",
    "binary": "binaries",
    "bin": "binaries",
    "generals": "generals",
    "general": "generals",
    "gen": "generals",
    "end": "end",
}
_TOKEN = re.compile(
    r"\s*(?:(?P<sense><=|>=|=<|=>|=|<|>)|(?P<sign>[+-])|"
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_][\w.\[\]]*))"
)


def _expr(terms):
    parts = []
    for name, c in terms:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = name if mag == 1 else f"{format_decimal(mag)} {name}"
        parts.append(f"{sign} {body}")
    if not parts:
        return "0"
    first = parts[0]
    parts[0] = first[2:] if first.startswith("+") else "-" + first[1:]
    return " ".join(parts)


def _wrap(text, anywhere=False):
    lines, line = [], ""
    for word in text.split(" "):
        if line and len(line) + 1 + len(word) > _WIDTH and (anywhere or word in ("+", "-")):
            lines.append(line)
            line = "   " + word
        else:
            line = f"{line} {word}" if line else word
    lines.append(line)
    return "\n".join(" " + l if not l.startswith(" ") else l for l in lines)


def emit_lp(m):
    out = [f"\\ mode: {m.mode}", f"\\ objective constant: {format_decimal(m.constant)}", "Minimize"]
    objective = m.objective
    if not objective and m.variables:
        out.append(_wrap(f"obj: 0 {m.variables[0].name}"))
    else:
        out.append(_wrap(f"obj: {_expr(objective)}"))
    out.append("Subject To")
    for c in m.constraints:
        out.append(_wrap(f"{c.name}: {_expr(c.terms)} {c.sense} {format_decimal(c.rhs)}"))
    out.append("Bounds")
    out.extend(f" 0 <= {v.name} <= {v.upper}" for v in m.variables)
    binaries = [v.name for v in m.variables if v.kind == BINARY]
    generals = [v.name for v in m.variables if v.kind == GENERAL]
    if binaries:
        out.append("Binaries")
        out.append(_wrap(" ".join(binaries), anywhere=True))
    if generals:
        out.append("Generals")
        out.append(_wrap(" ".join(generals), anywhere=True))
    out.append("End")
    return "\n".join(out) + "\n"


def _tokens(text, lineno):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match or match.end() == pos:
            raise ParseError(f"unexpected text {text[pos:pos + 20]!r}", lineno)
        kind = match.lastgroup
        out.append((kind, match.group(kind)))
        pos = match.end()
    return out


def _linear(tokens, lineno):
    """Parse ``[sign] [coef] name ...`` into merged ``(name, Fraction)`` terms."""
    terms, i = {}, 0
    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i][0] == "sign":
            sign = -sign if tokens[i][1] == "-" else sign
            i += 1
        coef = Fraction(1)
        if i < len(tokens) and tokens[i][0] == "num":
            coef = Fraction(tokens[i][1])
            i += 1
        if i >= len(tokens) or tokens[i][0] != "name":
            if coef == 0 and i >= len(tokens):
                break
            raise ParseError("expected a variable name", lineno)
        name = tokens[i][1]
        terms[name] = terms.get(name, 0) + sign * coef
        i += 1
    return tuple((n, c) for n, c in terms.items() if c != 0)


def _statements(lines):
    """Join continuation lines: a new statement starts with ``name:`` or a section keyword."""
    current, start = None, 0
    for lineno, line in lines:
        if re.match(r"^\s*[A-Za-z_][\w.]*\s*:", line) or current is None:
            if current is not None:
                yield start, current
            current, start = line.strip(), lineno
        else:
            current += " " + line.strip()
    if current is not None:
        yield start, current


def parse_lp(text):
    """Parse LP text produced by :func:`emit_lp` (and close relatives)."""
    constant, mode = Fraction(0), WEIGHTED
    sections = {"objective": [], "constraints": [], "bounds": [], "binaries": [], "generals": []}
    section, ended = None, False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("\\"):
            body = line.lstrip("\\").strip()
            if body.startswith("objective constant:"):
                constant = Fraction(body.split(":", 1)[1].strip())
            elif body.startswith("mode:"):
                mode = body.split(":", 1)[1].strip()
            continue
        if not line:
            continue
        key = _SECTIONS.get(line.lower())
        if key is not None:
            if key == "end":
                ended = True
                break
            section = key
            continue
        if section is None:
            raise ParseError(f"text outside any section: {line!r}", lineno)
        sections[section].append((lineno, raw))
    if not ended:
        raise ParseError("missing End", len(text.splitlines()))

    bounds, order = {}, []
    for lineno, raw in sections["bounds"]:
        toks = _tokens(raw, lineno)
        kinds = [k for k, _ in toks]
        if kinds == ["num", "sense", "name", "sense", "num"]:
            lo, name, hi = Fraction(toks[0][1]), toks[2][1], Fraction(toks[4][1])
        elif kinds == ["name", "sense", "num"] and toks[1][1] in ("<=", "=<", "<"):
            lo, name, hi = Fraction(0), toks[0][1], Fraction(toks[2][1])
        else:
            raise ParseError(f"unsupported bound {raw.strip()!r}", lineno)
        if lo != 0 or hi.denominator != 1:
            raise ParseError("only integer bounds of the form 0 <= v <= u are supported", lineno)
        if name not in bounds:
            order.append(name)
        bounds[name] = int(hi)
    kinds = {}
    for kind, key in ((BINARY, "binaries"), (GENERAL, "generals")):
        for lineno, raw in sections[key]:
            for name in raw.split():
                kinds[name] = kind
                if name not in bounds:
                    order.append(name)
                    bounds[name] = 1 if kind == BINARY else None
    variables = []
    for name in order:
        if name not in kinds:
            raise ParseError(f"variable {name!r} is neither binary nor general")
        if bounds[name] is None:
            raise ParseError(f"general variable {name!r} has no upper bound")
        variables.append(Variable(name, bounds[name], kinds[name]))
    known = set(order)

    def check(terms, lineno):
        for name, _ in terms:
            if name not in known:
                raise ParseError(f"undeclared variable {name!r}", lineno)
        return terms

    objective = ()
    for lineno, stmt in _statements(sections["objective"]):
        body = stmt.split(":", 1)[1] if re.match(r"^[A-Za-z_][\w.]*\s*:", stmt) else stmt
        objective = check(_linear(_tokens(body, lineno), lineno), lineno)
    constraints = []
    for lineno, stmt in _statements(sections["constraints"]):
        match = re.match(r"^([A-Za-z_][\w.]*)\s*:(.*)$", stmt)
        if not match:
            raise ParseError(f"constraint without a name: {stmt!r}", lineno)
        name, body = match.groups()
        toks = _tokens(body, lineno)
        senses = [k for k, (kind, _) in enumerate(toks) if kind == "sense"]
        if len(senses) != 1:
            raise ParseError(f"constraint {name!r} needs exactly one comparison", lineno)
        at = senses[0]
        rhs_toks = toks[at + 1:]
        rhs_sign = 1
        if rhs_toks and rhs_toks[0][0] == "sign":
            rhs_sign = -1 if rhs_toks[0][1] == "-" else 1
            rhs_toks = rhs_toks[1:]
        if len(rhs_toks) != 1 or rhs_toks[0][0] != "num":
            raise ParseError(f"constraint {name!r} needs a numeric right-hand side", lineno)
        sense = {"<=": LE, "=<": LE, "<": LE, ">=": GE, "=>": GE, ">": GE, "=": EQ}[toks[at][1]]
        terms = check(_linear(toks[:at], lineno), lineno)
        constraints.append(Constraint(name, terms, sense, rhs_sign * Fraction(rhs_toks[0][1])))
    return IlpModel(variables, constraints, objective, constant, mode)
