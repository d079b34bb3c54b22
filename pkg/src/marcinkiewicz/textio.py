"""Line-oriented text formats for step functions and gauges.

Function files::

    gamma = 1/1
    piece = 0/1 1/2 2/1
    tail = 0/1

Gauge files::

    kind = pl            kind = power
    gamma = 1/1          gamma = inf
    jump = 0/1           p = 2/1
    knot = 1/2 1/1       coeff = 1/1
    final_slope = 0/1

Blank lines and ``#`` comments are ignored.  Rationals are written ``p/q``;
integers are accepted on input, decimals are not.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .exact import as_extent, format_extent, format_rational
from .gauge import ConcaveGauge, PiecewiseLinearGauge, PowerGauge
from .step import StepFunction

_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?\Z")


def _tokens(text: str):
    """Yield ``(line_no, key, [(column, token), ...])`` for each statement."""
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if "=" not in line:
            col = len(line) - len(line.lstrip()) + 1
            raise ParseError("expected 'key = value'", no, col)
        key_part, value_part = line.split("=", 1)
        key = key_part.strip()
        if not key:
            raise ParseError("missing key", no, 1)
        offset = len(key_part) + 2
        toks = [(offset + m.start(), m.group()) for m in re.finditer(r"\S+", value_part)]
        if not toks:
            raise ParseError(f"missing value for '{key}'", no, offset)
        yield no, key, toks


def _rational(tok, line: int) -> Fraction:
    col, text = tok
    if not _RATIONAL.match(text):
        raise ParseError(f"expected a rational p/q, got '{text}'", line, col)
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ParseError("zero denominator", line, col) from None


def _extent(tok, line: int):
    col, text = tok
    if text.lower() in ("inf", "infinity"):
        return as_extent("inf")
    value = _rational(tok, line)
    if value <= 0:
        raise ParseError("gamma must be positive", line, col)
    return value


def _arity(toks, n: int, key: str, line: int):
    if len(toks) != n:
        col = toks[min(n, len(toks) - 1)][0]
        raise ParseError(f"'{key}' takes {n} value(s), got {len(toks)}", line, col)


def _once(seen: dict, key: str, line: int):
    if key in seen:
        raise ParseError(f"duplicate '{key}' (first on line {seen[key]})", line, 1)
    seen[key] = line


# ---------------------------------------------------------------------------
# Step functions
# ---------------------------------------------------------------------------

def dump_function(f: StepFunction) -> str:
    lines = [f"gamma = {format_extent(f.gamma)}"]
    lines += [f"piece = {format_rational(a)} {format_rational(b)} {format_rational(v)}" for a, b, v in f.pieces]
    lines.append(f"tail = {format_rational(f.tail)}")
    return "\n".join(lines) + "\n"


def parse_function(text: str) -> StepFunction:
    seen: dict = {}
    gamma = None
    tail = Fraction(0)
    pieces = []
    last_line = 0
    for no, key, toks in _tokens(text):
        last_line = no
        if key == "gamma":
            _once(seen, key, no)
            _arity(toks, 1, key, no)
            gamma = _extent(toks[0], no)
        elif key == "tail":
            _once(seen, key, no)
            _arity(toks, 1, key, no)
            tail = _rational(toks[0], no)
            if tail < 0:
                raise ParseError("tail must be nonnegative", no, toks[0][0])
        elif key == "piece":
            _arity(toks, 3, key, no)
            a, b, v = (_rational(t, no) for t in toks)
            if not 0 <= a < b:
                raise ParseError("piece needs 0 <= left < right", no, toks[0][0])
            if v < 0:
                raise ParseError("piece value must be nonnegative", no, toks[2][0])
            pieces.append(((a, b, v), no, toks[0][0]))
        else:
            raise ParseError(f"unknown key '{key}'", no, 1)
    if gamma is None:
        raise ParseError("missing 'gamma'", last_line + 1, 1)
    pieces.sort(key=lambda p: p[0][0])
    prev = Fraction(0)
    for (a, b, _), no, col in pieces:
        if a < prev:
            raise ParseError("piece overlaps another piece", no, col)
        if b > gamma:
            raise ParseError("piece extends past gamma", no, col)
        prev = b
    return StepFunction(tuple(p[0] for p in pieces), tail, gamma)


# ---------------------------------------------------------------------------
# Gauges
# ---------------------------------------------------------------------------

def dump_gauge(psi: ConcaveGauge) -> str:
    if isinstance(psi, PowerGauge):
        return (
            f"kind = power\ngamma = {format_extent(psi.gamma)}\n"
            f"p = {format_rational(psi.p)}\ncoeff = {format_rational(psi.coefficient)}\n"
        )
    prof = psi.profile
    lines = ["kind = pl", f"gamma = {format_extent(psi.gamma)}", f"jump = {format_rational(prof.jump)}"]
    lines += [f"knot = {format_rational(t)} {format_rational(v)}" for t, v in prof.knots]
    lines.append(f"final_slope = {format_rational(prof.final_slope)}")
    return "\n".join(lines) + "\n"


_PL_KEYS = {"kind", "gamma", "jump", "knot", "final_slope"}
_POWER_KEYS = {"kind", "gamma", "p", "coeff"}


def parse_gauge(text: str) -> ConcaveGauge:
    stmts = list(_tokens(text))
    seen: dict = {}
    kind = None
    for no, key, toks in stmts:
        if key == "kind":
            _once(seen, key, no)
            _arity(toks, 1, key, no)
            kind = toks[0][1]
            if kind not in ("pl", "power"):
                raise ParseError(f"unknown gauge kind '{kind}'", no, toks[0][0])
    if kind is None:
        raise ParseError("missing 'kind'", (stmts[0][0] if stmts else 1), 1)
    allowed = _PL_KEYS if kind == "pl" else _POWER_KEYS
    gamma = None
    values = {"jump": Fraction(0), "final_slope": Fraction(0), "coeff": Fraction(1)}
    knots = []
    last_line = 0
    for no, key, toks in stmts:
        last_line = no
        if key not in allowed:
            raise ParseError(f"'{key}' is not valid for a {kind} gauge", no, 1)
        if key == "kind":
            continue
        if key == "knot":
            _arity(toks, 2, key, no)
            knots.append((_rational(toks[0], no), _rational(toks[1], no)))
            continue
        _once(seen, key, no)
        _arity(toks, 1, key, no)
        if key == "gamma":
            gamma = _extent(toks[0], no)
        else:
            values[key] = _rational(toks[0], no)
    if gamma is None:
        raise ParseError("missing 'gamma'", last_line + 1, 1)
    try:
        if kind == "power":
            if "p" not in values:
                raise ParseError("missing 'p'", last_line + 1, 1)
            return PowerGauge(values["p"], values["coeff"], gamma)
        return PiecewiseLinearGauge.from_knots(tuple(knots), values["jump"], values["final_slope"], gamma)
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc), last_line, 1) from None


def read_function(path) -> StepFunction:
    with open(path, encoding="utf-8") as fh:
        return parse_function(fh.read())


def read_gauge(path) -> ConcaveGauge:
    with open(path, encoding="utf-8") as fh:
        return parse_gauge(fh.read())
