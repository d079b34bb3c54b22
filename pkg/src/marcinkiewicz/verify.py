"""Checkers for the quantitative inequalities, random instance generators and the suite runner.

Every checker returns a :class:`CheckResult`.  With piecewise-linear gauges
the verdict is exact.  Power gauges compare radicals exactly where possible
and otherwise separate certified enclosures, reporting INCONCLUSIVE when
they overlap.
"""
from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import PremiseViolated
from .exact import (
    INFINITY,
    Interval,
    Radical,
    format_number,
    is_infinite,
)
from .gauge import (
    ConcaveGauge,
    ConditionReport,
    PiecewiseLinearGauge,
    PowerGauge,
    big_psi_at,
    big_psi_head_integral,
    classify,
    gauge_derivative,
    min_linear,
)
from .norms import (
    lorentz_norm,
    marcinkiewicz_norm,
    natural_equivalence_constant,
    natural_norm,
)
from .step import (
    StepFunction,
    add,
    apply_transport,
    dilate,
    disjoint,
    head_integral,
    indicator,
    minus_plus,
    constant,
    product_integral,
    rearrange,
    refinement_cells,
    scale,
    submajorization_margin,
    submajorizes,
    transport_to_rearrangement,
)
from .textio import dump_function, dump_gauge

HOLDS = "HOLDS"
VIOLATED = "VIOLATED"
INCONCLUSIVE = "INCONCLUSIVE"
INFO = "INFO"

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class CheckResult:
    name: str
    instance: str
    status: str
    margin: object = None  # Fraction, Interval or None
    location: object = None
    notes: tuple = ()

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.instance.encode()).hexdigest()[:16]

    def record(self) -> str:
        return (
            f"check={self.name} status={self.status} margin={_fmt(self.margin)} "
            f"location={_fmt(self.location)} digest={self.digest}"
            + "".join(f" {n}" for n in self.notes)
        )


def _fmt(x) -> str:
    if x is None:
        return "none"
    if isinstance(x, str):
        return x
    if isinstance(x, Interval):
        return str(x)
    if is_infinite(x):
        return "inf"
    return format_number(x)


def _instance(**parts) -> str:
    out = []
    for key, value in parts.items():
        if isinstance(value, StepFunction):
            text = dump_function(value)
        elif isinstance(value, ConcaveGauge):
            text = dump_gauge(value)
        else:
            text = _fmt(value) + "\n"
        out.append(f"[{key}]\n{text}")
    return "".join(out)


def _as_interval(x, bits: int) -> Interval:
    return Interval.of(x, bits)


def _decide(lhs, rhs, bits: int = 128):
    """Decide ``lhs <= rhs``: exact for Fractions and radicals, by enclosures otherwise.

    Returns ``(status, margin)`` where margin encloses ``rhs - lhs``.
    """
    if isinstance(lhs, Interval) or isinstance(rhs, Interval):
        a, b = _as_interval(lhs, bits), _as_interval(rhs, bits)
        margin = b - a
        if a.hi <= b.lo:
            return HOLDS, margin
        if a.lo > b.hi:
            return VIOLATED, margin
        return INCONCLUSIVE, margin
    status = HOLDS if lhs <= rhs else VIOLATED
    if isinstance(lhs, Radical) or isinstance(rhs, Radical):
        if lhs == rhs:
            return status, Interval.point(0)
        return status, _as_interval(rhs, bits) - _as_interval(lhs, bits)
    return status, rhs - lhs


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def check_superadditivity(f1: StepFunction, f2: StepFunction, t1, t2) -> CheckResult:
    """``H_f1(t1) + H_f2(t2) <= H_{f1+f2}(t1 + t2)``."""
    lhs = head_integral(f1, t1) + head_integral(f2, t2)
    rhs = head_integral(add(f1, f2), t1 + t2)
    status, margin = _decide(lhs, rhs)
    return CheckResult("superadditivity", _instance(f1=f1, f2=f2, t1=t1, t2=t2), status, margin, t1 + t2)


def check_disjoint_dilation(u: StepFunction, v: StepFunction, f: StepFunction, alpha) -> CheckResult:
    """Under ``u, v <<_alpha f`` with ``u, v`` disjoint: ``(u+v)* <<_alpha D2 f*``."""
    if not disjoint(u, v):
        raise PremiseViolated("u and v are not disjoint")
    if not (submajorizes(f, u, alpha) and submajorizes(f, v, alpha)):
        raise PremiseViolated("u or v is not submajorized by f on [0, alpha)")
    d2 = dilate(rearrange(f), 2, truncate=True)
    uv = add(u, v)
    holds = submajorizes(d2, uv, alpha)
    margin, where = submajorization_margin(d2, uv, alpha)
    return CheckResult(
        "disjoint_dilation", _instance(u=u, v=v, f=f, alpha=alpha), HOLDS if holds else VIOLATED, margin, where
    )


def _big_psi_right(psi: ConcaveGauge, b):
    """``inf`` of the decreasing ``Psi`` over a cell ending at ``b``."""
    return big_psi_at(psi, b)


def _require_finite_norm(f, psi):
    norm = marcinkiewicz_norm(f, psi)
    if not norm.finite:
        raise PremiseViolated("f is not in M_psi")
    return norm.value


def check_pointwise_bound(f: StepFunction, psi: ConcaveGauge, bits: int = 128) -> CheckResult:
    """``f*(t) <= ||f|| Psi(t)`` on every cell of ``f*``, tested at the cell's right end."""
    norm = _require_finite_norm(f, psi)
    worst = (HOLDS, None, None)
    for a, b, v in rearrange(f).cells():
        if v == 0:
            continue
        rhs = norm * _big_psi_right(psi, b) if norm else ZERO
        status, margin = _decide(v, rhs, bits)
        worst = _worse(worst, (status, margin, b))
    status, margin, where = worst
    return CheckResult("pointwise_bound", _instance(f=f, psi=psi), status, margin, where)


_RANK = {HOLDS: 0, INCONCLUSIVE: 1, VIOLATED: 2}


def _margin_key(m):
    if m is None:
        return None
    return m.lo if isinstance(m, Interval) else m


def _worse(a, b):
    """Keep the worse of two ``(status, margin, location)`` triples."""
    if _RANK[b[0]] != _RANK[a[0]]:
        return b if _RANK[b[0]] > _RANK[a[0]] else a
    if a[1] is None:
        return b
    if b[1] is None:
        return a
    return b if _margin_key(b[1]) < _margin_key(a[1]) else a


def check_natural_sandwich(f: StepFunction, psi: ConcaveGauge, delta) -> CheckResult:
    """``||f||^nat <= ||f|| <= C ||f||^nat`` with ``C = 1 + (gamma/psi(gamma)) (psi(delta)/delta)``."""
    nat = natural_norm(f, psi, delta).value
    full = marcinkiewicz_norm(f, psi).value
    c = natural_equivalence_constant(psi, delta)
    s1, m1 = _decide(nat, full)
    s2, m2 = _decide(full, c * nat if not isinstance(c, Interval) else c * Interval.of(nat))
    status, margin, where = _worse((s1, m1, "lower"), (s2, m2, "upper"))
    return CheckResult("natural_sandwich", _instance(f=f, psi=psi, delta=delta), status, margin, where)


def check_psi_integral_bound(psi: ConcaveGauge, report: ConditionReport, t, precision: int = 128) -> CheckResult:
    """``int_0^t Psi <= psi(t) / (beta - 1)`` with certified enclosures."""
    if report.verdict == "NEITHER":
        raise PremiseViolated("the gauge satisfies neither doubling condition")
    if report.verdict == "B" and t > report.delta:
        raise PremiseViolated("t exceeds delta")
    lhs = big_psi_head_integral(psi, t, precision)
    beta, value = report.beta, psi.value(t)
    if isinstance(beta, Fraction) and isinstance(value, Fraction):
        rhs = Interval.point(value / (beta - 1))
    else:
        rhs = Interval.of(value, precision + 8) / (Interval.of(beta, precision + 8) - 1)
    status, margin = _decide(lhs, rhs, precision)
    return CheckResult("psi_integral_bound", _instance(psi=psi, t=t), status, margin, t)


def check_transport_bound(f: StepFunction, psi: ConcaveGauge, bits: int = 128) -> CheckResult:
    """``f <= K ||f|| Psi o sigma`` on every refinement cell; K = 4 in S0, else 5.

    Outside S0 the map transports ``(f - f*(inf))+`` as in the split
    ``f = (f - c)+ + min(f, c)``.  The achieved constant is reported.
    """
    if classify(psi).verdict == "NEITHER":
        raise PremiseViolated("the gauge satisfies neither doubling condition")
    norm = _require_finite_norm(f, psi)
    if f.in_s0:
        branch, k, g = "s0", 4, f
    else:
        c = rearrange(f).tail
        branch, k, g = "general", 5, minus_plus(f, constant(c, f.gamma))
    sigma = transport_to_rearrangement(g)
    exact = apply_transport(sigma, rearrange(g)) == g
    worst = (HOLDS, None, None)
    achieved = ZERO
    for x, y, offset, v in refinement_cells(sigma, f):
        if v == 0:
            continue
        right = y + offset if not is_infinite(y) else INFINITY
        psi_right = _big_psi_right(psi, right)
        base = norm * psi_right if norm else ZERO
        if base == 0:
            worst = _worse(worst, (VIOLATED, None, x))
            achieved = INFINITY
            continue
        ratio = v / base
        if not is_infinite(achieved) and ratio > achieved:
            achieved = ratio
        status, margin = _decide(v, k * base, bits)
        worst = _worse(worst, (status, margin, x))
    status, margin, where = worst
    if not exact:
        status = VIOLATED
    notes = (f"branch={branch}", f"constant={_fmt(achieved)}", f"exact_transport={'yes' if exact else 'no'}")
    return CheckResult("transport_bound", _instance(f=f, psi=psi), status, margin, where, notes)


def _norm_pair(psi, report, natural: bool):
    if natural:
        return lambda h: natural_norm(h, psi, report.delta)
    return lambda h: marcinkiewicz_norm(h, psi)


def check_quasi_uniform_convexity(u: StepFunction, v: StepFunction, psi: ConcaveGauge,
                                  report: Optional[ConditionReport] = None, bits: int = 128) -> CheckResult:
    """``||(u+v)/2|| <= 1/beta`` for disjoint norm-one ``u, v``, and ``||D2 psi'|| <= 2/beta``.

    The plain norm is used under (A), the norm restricted to ``(0, delta]``
    under (B).
    """
    report = report or classify(psi)
    if report.verdict == "NEITHER":
        raise PremiseViolated("the gauge satisfies neither doubling condition")
    natural = report.verdict == "B"
    norm = _norm_pair(psi, report, natural)
    if not disjoint(u, v):
        raise PremiseViolated("u and v are not disjoint")
    nu, nv = norm(u), norm(v)
    if not (nu.finite and nv.finite and nu.value == 1 and nv.value == 1):
        raise PremiseViolated("u and v must have norm one")
    half = norm(scale(add(u, v), Fraction(1, 2)))
    bound = 1 / report.beta
    status, margin = _decide(half.value, bound, bits)
    worst = (status, margin, half.attained_at)
    if isinstance(psi, PiecewiseLinearGauge):
        d2 = dilate(gauge_derivative(psi), 2, truncate=True)
        nd = norm(d2)
        if not nd.finite:
            worst = _worse(worst, (VIOLATED, None, "dilated_derivative"))
        else:
            s2, m2 = _decide(nd.value, 2 * bound, bits)
            worst = _worse(worst, (s2, m2, "dilated_derivative"))
    status, margin, where = worst
    notes = (f"mode={'natural' if natural else 'plain'}", f"value={_fmt(half.value)}")
    return CheckResult("quasi_uniform_convexity", _instance(u=u, v=v, psi=psi), status, margin, where, notes)


def check_holder(f: StepFunction, g: StepFunction, psi: ConcaveGauge) -> CheckResult:
    """``int f g <= ||f||_M ||g||_Lambda``."""
    lhs = product_integral(f, g)
    nf, ng = marcinkiewicz_norm(f, psi), lorentz_norm(g, psi)
    if (nf.finite and nf.value == 0) or (ng.finite and ng.value == 0):
        rhs = ZERO
    elif not (nf.finite and ng.finite):
        rhs = INFINITY
    else:
        rhs = nf.value * ng.value
    if is_infinite(rhs):
        status, margin = HOLDS, INFINITY
    elif is_infinite(lhs):
        status, margin = VIOLATED, None
    else:
        status, margin = _decide(lhs, rhs)
    return CheckResult("holder", _instance(f=f, g=g, psi=psi), status, margin, None)


def remark_counterexample(slope=2) -> list:
    """The gauge ``min(slope t, 1)`` on (0, 1) with ``u = 2 chi[0,1/2)`` and ``v = 2 chi[1/2,1)``.

    For slope 2 the values are asserted: all four norms equal 1 and the
    gauge is classified (B).  Other slopes only report the values.
    """
    slope = Fraction(slope)
    psi = min_linear(slope, 1, 1)
    u = indicator(0, Fraction(1, 2), 1, 2)
    v = indicator(Fraction(1, 2), 1, 1, 2)
    half = scale(add(u, v), Fraction(1, 2))
    chi = indicator(0, 1, 1)
    expected = slope == 2
    out = []
    for name, h in (("norm_u", u), ("norm_v", v), ("norm_half_sum", half), ("norm_chi", chi)):
        n = marcinkiewicz_norm(h, psi)
        status = (HOLDS if n.value == 1 else VIOLATED) if expected else INFO
        out.append(CheckResult(f"remark.{name}", _instance(f=h, psi=psi), status, n.value, n.attained_at))
    report = classify(psi)
    status = (HOLDS if report.verdict == "B" and report.grothendieck else VIOLATED) if expected else INFO
    out.append(CheckResult("remark.verdict", _instance(psi=psi), status, report.beta, report.delta,
                           (f"verdict={report.verdict}",)))
    return out


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------

def random_rational(rng: random.Random, lo, hi, max_den: int = 8) -> Fraction:
    """Uniform on the grid of ``[lo, hi]`` with a random denominator up to ``max_den``."""
    den = rng.randint(1, max_den)
    lo_n = -(-Fraction(lo) * den // 1)
    hi_n = Fraction(hi) * den // 1
    return Fraction(rng.randint(int(lo_n), int(hi_n)), den)


def _cuts(rng, length, k: int, max_den: int) -> list:
    """``k`` distinct sorted cut points strictly inside ``(0, length)``."""
    den = max_den * rng.randint(1, 3)
    grid = int(length * den)
    while grid - 1 < k:
        den *= 2
        grid = int(length * den)
    picks = sorted(rng.sample(range(1, grid), k))
    return [Fraction(p, den) for p in picks]


def random_step(rng: random.Random, gamma, max_pieces: int = 6, max_den: int = 8,
                max_value: int = 4, tail: Optional[bool] = None) -> StepFunction:
    """A random step function with at most ``max_pieces`` cells.

    On ``(0, inf)`` the pieces cover a random ``[0, L)`` and the tail is
    positive with probability 1/2 (or as forced by ``tail``).
    """
    k = rng.randint(1, max_pieces)
    length = Fraction(rng.randint(1, 8)) if is_infinite(gamma) else Fraction(gamma)
    cuts = [ZERO] + _cuts(rng, length, k - 1, max_den) + [length]

    def value():
        return random_rational(rng, 0, max_value, max_den)

    pieces = tuple((cuts[i], cuts[i + 1], value()) for i in range(k))
    c = ZERO
    if is_infinite(gamma):
        positive = rng.random() < 0.5 if tail is None else tail
        if positive:
            c = random_rational(rng, Fraction(1, max_den), max_value, max_den)
    return StepFunction(pieces, c, gamma)


def random_pl_gauge(rng: random.Random, gamma, knots: int = 4, jump: bool = False,
                    growing: Optional[bool] = None, max_den: int = 6) -> PiecewiseLinearGauge:
    """A random concave increasing piecewise-linear gauge.

    ``growing`` forces (True) or forbids (False) a positive final slope on
    ``(0, inf)``; by default it is random.
    """
    k = rng.randint(0, knots)
    span = Fraction(rng.randint(1, 6)) if is_infinite(gamma) else Fraction(gamma)
    ts = _cuts(rng, span, k, max_den) if k else []
    slopes = sorted((random_rational(rng, Fraction(1, max_den), 4, max_den) for _ in range(k + 1)), reverse=True)
    if is_infinite(gamma):
        grow = rng.random() < 0.7 if growing is None else growing
        if not grow:
            slopes[-1] = ZERO
    j = random_rational(rng, Fraction(1, max_den), 2, max_den) if jump else ZERO
    pts, value, prev = [], j, ZERO
    for t, s in zip(ts, slopes):
        value += s * (t - prev)
        pts.append((t, value))
        prev = t
    if not pts and slopes[-1] == 0 and j == 0:
        slopes[-1] = ONE
    return PiecewiseLinearGauge.from_knots(tuple(pts), j, slopes[-1], gamma)


POWER_EXPONENTS = (Fraction(3, 2), Fraction(2), Fraction(3))


def random_power_gauge(rng: random.Random, gamma=INFINITY) -> PowerGauge:
    return PowerGauge(rng.choice(POWER_EXPONENTS), random_rational(rng, Fraction(1, 2), 3, 4), gamma)


def random_doubling_gauge(rng: random.Random, gamma, power: bool = True) -> ConcaveGauge:
    """A gauge satisfying (A) on ``(0, inf)`` or (B) on a finite interval."""
    if power and rng.random() < 0.3:
        return random_power_gauge(rng, gamma)
    return random_pl_gauge(rng, gamma, growing=True)


def _layout(rng, blocks: list, gamma) -> list:
    """Lay ``(owner, length, value)`` blocks consecutively from 0 in random order."""
    rng.shuffle(blocks)
    placed = {}
    pos = ZERO
    for owner, length, value in blocks:
        placed.setdefault(owner, []).append((pos, pos + length, value))
        pos += length
    if not is_infinite(gamma) and pos > gamma:
        raise ValueError("blocks do not fit")
    return placed


def _split_blocks(rng, cells, owner) -> list:
    out = []
    for a, b, v in cells:
        if v == 0 or is_infinite(b):
            continue
        if rng.random() < 0.3 and b - a > 0:
            m = a + (b - a) * Fraction(rng.randint(1, 3), 4)
            out += [(owner, m - a, v), (owner, b - m, v)]
        else:
            out.append((owner, b - a, v))
    return out


def _submajorized_copy(rng, fs: StepFunction, length) -> StepFunction:
    """A decreasing function ``<< fs``: average a block, scale down, cut at ``length``."""
    cells = [c for c in fs.cells() if not is_infinite(c[1])]
    if len(cells) >= 2 and rng.random() < 0.5:
        i = rng.randrange(len(cells) - 1)
        j = rng.randint(i + 1, len(cells) - 1)
        a, b = cells[i][0], cells[j][1]
        mean = sum(((y - x) * v for x, y, v in cells[i:j + 1]), ZERO) / (b - a)
        cells = cells[:i] + [(a, b, mean)] + cells[j + 1:]
    lam = Fraction(rng.randint(1, 4), 4)
    out = [(x, min(y, length), v * lam) for x, y, v in cells if x < length]
    return StepFunction(tuple(out), ZERO, fs.gamma)


def disjoint_dilation_instance(rng: random.Random, gamma, max_pieces: int = 6):
    """``(u, v, f, alpha)`` with ``f`` decreasing, ``u, v << f`` and ``u, v`` disjoint."""
    f = rearrange(random_step(rng, gamma, max_pieces, tail=False))
    room = Fraction(rng.randint(4, 16)) if is_infinite(gamma) else Fraction(gamma)
    su = room * Fraction(rng.randint(1, 4), 8)
    sv = room * Fraction(rng.randint(0, 4), 8)
    us = _submajorized_copy(rng, f, su)
    vs = _submajorized_copy(rng, f, sv) if sv else StepFunction((), ZERO, gamma)
    blocks = _split_blocks(rng, us.cells(), "u") + _split_blocks(rng, vs.cells(), "v")
    placed = _layout(rng, blocks, gamma)
    u = StepFunction(tuple(placed.get("u", ())), ZERO, gamma)
    v = StepFunction(tuple(placed.get("v", ())), ZERO, gamma)
    if is_infinite(gamma) and rng.random() < 0.5:
        alpha = INFINITY
    else:
        top = room if is_infinite(gamma) else gamma
        alpha = random_rational(rng, Fraction(1, 8), top, 8) or top
    return u, v, f, alpha


def _normalized(h: StepFunction, value) -> StepFunction:
    return scale(h, 1 / value)


def _power_unit_pair(rng, psi: PowerGauge, max_pieces: int):
    """Disjoint ``u, v`` of norm one for a power gauge on ``(0, inf)``.

    Breakpoints of the rearrangements are ``s**q`` with ``q`` the denominator
    of the exponent, so every candidate ratio is rational and the norm can be
    normalized away exactly.
    """
    q = psi.exponent.denominator

    def one():
        k = rng.randint(1, max_pieces)
        roots = sorted({Fraction(rng.randint(1, 12), rng.randint(1, 4)) for _ in range(k)})
        ends = [s ** q for s in roots]
        values = sorted((random_rational(rng, Fraction(1, 4), 4, 4) for _ in ends), reverse=True)
        values = [v + Fraction(len(ends) - i, 64) for i, v in enumerate(values)]  # strictly decreasing
        cells, prev = [], ZERO
        for e, v in zip(ends, values):
            cells.append((prev, e, v))
            prev = e
        h = StepFunction(tuple(cells), ZERO, INFINITY)
        return h

    us, vs = one(), one()
    placed = _layout(rng, _split_blocks(rng, us.cells(), "u") + _split_blocks(rng, vs.cells(), "v"), INFINITY)
    u = StepFunction(tuple(placed["u"]), ZERO, INFINITY)
    v = StepFunction(tuple(placed["v"]), ZERO, INFINITY)
    return _normalized(u, marcinkiewicz_norm(u, psi).value), _normalized(v, marcinkiewicz_norm(v, psi).value)


def unit_pair_instance(rng: random.Random, psi: ConcaveGauge, report: ConditionReport, max_pieces: int = 6):
    """Disjoint positive ``u, v`` normalized to norm one (restricted norm under (B))."""
    if isinstance(psi, PowerGauge):
        if not is_infinite(psi.gamma):
            raise ValueError("power pairs are generated on (0, inf)")
        return _power_unit_pair(rng, psi, max_pieces)
    gamma = psi.gamma
    norm = _norm_pair(psi, report, report.verdict == "B")
    while True:
        room = Fraction(rng.randint(2, 12)) if is_infinite(gamma) else gamma
        us = rearrange(random_step(rng, room, max_pieces, tail=False))
        vs = rearrange(random_step(rng, room, max_pieces, tail=False))
        cut_u = room * Fraction(rng.randint(1, 4), 8)
        cut_v = room - cut_u if rng.random() < 0.5 else room * Fraction(rng.randint(1, 4), 8)
        us = StepFunction(tuple((a, min(b, cut_u), v) for a, b, v in us.cells() if a < cut_u), ZERO, gamma)
        vs = StepFunction(tuple((a, min(b, cut_v), v) for a, b, v in vs.cells() if a < cut_v), ZERO, gamma)
        if us.is_zero or vs.is_zero:
            continue
        placed = _layout(rng, _split_blocks(rng, us.cells(), "u") + _split_blocks(rng, vs.cells(), "v"), gamma)
        u = StepFunction(tuple(placed["u"]), ZERO, gamma)
        v = StepFunction(tuple(placed["v"]), ZERO, gamma)
        nu, nv = norm(u), norm(v)
        if nu.finite and nv.finite and nu.value and nv.value:
            return _normalized(u, nu.value), _normalized(v, nv.value)


def _finite_norm_function(rng, psi: ConcaveGauge, max_pieces: int) -> StepFunction:
    """A random function of finite norm: a positive tail only where ``psi`` grows linearly."""
    allow_tail = isinstance(psi, PiecewiseLinearGauge) and psi.final_slope > 0
    tail = None if allow_tail else False
    return random_step(rng, psi.gamma, max_pieces, tail=tail)


# ---------------------------------------------------------------------------
# Shrinking
# ---------------------------------------------------------------------------

def _drop_piece_candidates(f: StepFunction):
    for i in range(len(f.pieces)):
        yield StepFunction(f.pieces[:i] + f.pieces[i + 1:], f.tail, f.gamma)
    if f.tail:
        yield StepFunction(f.pieces, ZERO, f.gamma)


def _round_candidates(f: StepFunction):
    for den in (1, 2, 4):
        pieces = tuple((a, b, v.limit_denominator(den)) for a, b, v in f.pieces)
        yield StepFunction(pieces, f.tail.limit_denominator(den), f.gamma)
    # one value at a time, so a piece that must stay nonzero can round up instead
    for i, (a, b, v) in enumerate(f.pieces):
        for w in (v.limit_denominator(1), Fraction(math.ceil(v))):
            pieces = f.pieces[:i] + ((a, b, w),) + f.pieces[i + 1:]
            yield StepFunction(pieces, f.tail, f.gamma)
    for w in (f.tail.limit_denominator(1), Fraction(math.ceil(f.tail))):
        yield StepFunction(f.pieces, w, f.gamma)


def _size(args) -> tuple:
    pieces = sum(len(a.pieces) for a in args if isinstance(a, StepFunction))
    dens = sum(
        sum(v.denominator for _, _, v in a.pieces) + a.tail.denominator for a in args if isinstance(a, StepFunction)
    )
    return pieces, dens


def shrink(check: Callable, args: Sequence, max_steps: int = 200):
    """Greedy minimization of a violating instance: fewer pieces first, then smaller denominators.

    Candidates that break a premise are skipped.  Returns ``(args, result)``.
    """
    args = list(args)
    best = check(*args)
    for phase in (_drop_piece_candidates, _round_candidates):
        progress = True
        while progress and max_steps > 0:
            progress = False
            for i, a in enumerate(args):
                if not isinstance(a, StepFunction):
                    continue
                for cand in phase(a):
                    max_steps -= 1
                    if cand == a:
                        continue
                    trial = args[:i] + [cand] + args[i + 1:]
                    if _size(trial) >= _size(args):
                        continue
                    try:
                        res = check(*trial)
                    except (PremiseViolated, ValueError):
                        continue
                    if res.status == VIOLATED:
                        args, best, progress = trial, res, True
                        break
                if progress:
                    break
    return args, best


# ---------------------------------------------------------------------------
# Suite
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    cases: int = 100
    max_pieces: int = 6
    gauge_pool: tuple = ()
    extent_pool: tuple = (Fraction(1), Fraction(2), INFINITY)
    precision: int = 128
    checks: tuple = ()

    def __post_init__(self):
        if self.cases < 1:
            raise ValueError("cases must be at least 1")


def _pick_extent(rng, config):
    return rng.choice(config.extent_pool)


def _pool_gauge(rng, config, want=None):
    """A gauge from the pool satisfying ``want`` (a predicate), else None."""
    pool = [g for g in config.gauge_pool if want is None or want(g)]
    return rng.choice(pool) if pool else None


def _has_doubling(psi) -> bool:
    return classify(psi).verdict != "NEITHER"


def _gen_superadditivity(rng, config):
    gamma = _pick_extent(rng, config)
    f1 = random_step(rng, gamma, config.max_pieces)
    f2 = random_step(rng, gamma, config.max_pieces)
    top = Fraction(10) if is_infinite(gamma) else gamma
    return check_superadditivity, (f1, f2, random_rational(rng, 0, top), random_rational(rng, 0, top))


def _gen_disjoint_dilation(rng, config):
    return check_disjoint_dilation, disjoint_dilation_instance(rng, _pick_extent(rng, config), config.max_pieces)


def _gen_pointwise(rng, config):
    psi = _pool_gauge(rng, config)
    if psi is None:
        gamma = _pick_extent(rng, config)
        if rng.random() < 0.25:
            psi = random_power_gauge(rng, gamma)
        else:
            psi = random_pl_gauge(rng, gamma, jump=rng.random() < 0.2)
    return check_pointwise_bound, (_finite_norm_function(rng, psi, config.max_pieces), psi, config.precision)


def _gen_natural(rng, config):
    psi = _pool_gauge(rng, config, lambda g: isinstance(g, PiecewiseLinearGauge) and not is_infinite(g.gamma))
    if psi is None:
        finite = [g for g in config.extent_pool if not is_infinite(g)] or [ONE]
        psi = random_pl_gauge(rng, rng.choice(finite), jump=rng.random() < 0.2)
    delta = psi.gamma * Fraction(rng.randint(1, 15), 16)
    return check_natural_sandwich, (random_step(rng, psi.gamma, config.max_pieces), psi, delta)


def _gen_holder(rng, config):
    psi = _pool_gauge(rng, config, lambda g: isinstance(g, PiecewiseLinearGauge))
    if psi is None:
        psi = random_pl_gauge(rng, _pick_extent(rng, config), jump=rng.random() < 0.2)
    f = random_step(rng, psi.gamma, config.max_pieces)
    g = random_step(rng, psi.gamma, config.max_pieces)
    return check_holder, (f, g, psi)


def _gen_psi_integral(rng, config):
    psi = _pool_gauge(rng, config, lambda g: g.jump == 0 and _has_doubling(g))
    if psi is None:
        psi = random_doubling_gauge(rng, _pick_extent(rng, config))
    report = classify(psi)
    top = report.delta if report.verdict == "B" else Fraction(12)
    t = top * Fraction(rng.randint(1, 64), 64)
    return check_psi_integral_bound, (psi, report, t, config.precision)


def _gen_transport(rng, config):
    psi = _pool_gauge(rng, config, _has_doubling)
    if psi is None:
        psi = random_doubling_gauge(rng, _pick_extent(rng, config))
    return check_transport_bound, (_finite_norm_function(rng, psi, config.max_pieces), psi, config.precision)


def _gen_quc(rng, config):
    psi = _pool_gauge(rng, config, lambda g: _has_doubling(g) and (
        isinstance(g, PiecewiseLinearGauge) or is_infinite(g.gamma)))
    if psi is None:
        gamma = _pick_extent(rng, config)
        psi = random_doubling_gauge(rng, gamma, power=is_infinite(gamma))
    report = classify(psi)
    u, v = unit_pair_instance(rng, psi, report, config.max_pieces)
    return check_quasi_uniform_convexity, (u, v, psi, report, config.precision)


GENERATORS = {
    "superadditivity": _gen_superadditivity,
    "disjoint_dilation": _gen_disjoint_dilation,
    "pointwise_bound": _gen_pointwise,
    "natural_sandwich": _gen_natural,
    "holder": _gen_holder,
    "psi_integral_bound": _gen_psi_integral,
    "transport_bound": _gen_transport,
    "quasi_uniform_convexity": _gen_quc,
}


def case_rng(seed: int, name: str, index: int) -> random.Random:
    return random.Random(f"{seed}:{name}:{index}")


def generate(name: str, seed: int, index: int, config: Optional[SuiteConfig] = None):
    """The ``index``-th instance of a check: ``(checker, args)``."""
    config = config or SuiteConfig(seed=seed)
    return GENERATORS[name](case_rng(seed, name, index), config)


@dataclass
class SuiteReport:
    config: SuiteConfig
    results: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)

    @property
    def violations(self) -> int:
        return sum(r.status == VIOLATED for r in self.results)

    @property
    def inconclusive(self) -> int:
        return sum(r.status == INCONCLUSIVE for r in self.results)

    def by_check(self, name: str) -> list:
        return [r for r in self.results if r.name == name]

    def to_text(self) -> str:
        lines = [r.record() for r in self.results]
        for w in self.witnesses:
            lines.append(f"witness {w.name} status={w.status} margin={_fmt(w.margin)} location={_fmt(w.location)}")
            lines += ["  " + line for line in w.instance.splitlines()]
        lines.append(f"inconclusive={self.inconclusive}")
        lines.append(f"violations={self.violations} cases={self.config.cases} seed={self.config.seed}")
        return "\n".join(lines) + "\n"


def run_check(name: str, config: SuiteConfig, index: int) -> tuple:
    """Generate, audit and run one case; returns ``(result, witness or None)``."""
    check, args = generate(name, config.seed, index, config)
    result = check(*args)
    witness = None
    if result.status == VIOLATED:
        _, witness = shrink(check, args)
    return result, witness


def run_suite(config: SuiteConfig) -> SuiteReport:
    """Run every check ``config.cases`` times, deterministically in ``config.seed``."""
    names = config.checks or tuple(GENERATORS)
    report = SuiteReport(config)
    for name in names:
        for i in range(config.cases):
            result, witness = run_check(name, config, i)
            report.results.append(result)
            if witness is not None:
                report.witnesses.append(witness)
    return report
