"""Exact calculus of nonnegative step functions on an interval ``(0, gamma)``.

A :class:`StepFunction` is stored in canonical form: contiguous half-open
pieces starting at 0, adjacent equal values merged, and a tail value that
holds on ``[end, gamma)``.  Every quantity derived from it (distribution,
decreasing rearrangement, head integrals) is an exact rational.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DomainMismatch, DomainOverflow, NoExactTransport, OutOfDomain
from .exact import INFINITY, Extent, as_extent, as_rational, is_infinite

ZERO = Fraction(0)

Cell = tuple  # (left, right, value); right may be INFINITY


def _merge_cells(cells: list[Cell]) -> list[Cell]:
    merged: list[Cell] = []
    for a, b, v in cells:
        if b == a:
            continue
        if merged and merged[-1][2] == v:
            merged[-1] = (merged[-1][0], b, v)
        else:
            merged.append((a, b, v))
    return merged


@dataclass(frozen=True)
class StepFunction:
    """Nonnegative simple function on ``(0, gamma)``.

    ``pieces`` are ``(left, right, value)`` triples; gaps between them are
    read as zero.  ``tail`` is the value on ``[end of last piece, gamma)``.
    The constructor canonicalizes, so structural equality is equality of
    functions.
    """

    pieces: tuple = ()
    tail: Fraction = ZERO
    gamma: Extent = Fraction(1)

    def __post_init__(self):
        gamma = as_extent(self.gamma)
        tail = as_rational(self.tail)
        if tail < 0:
            raise ValueError("tail value must be nonnegative")
        raw = sorted(
            ((as_rational(a), as_rational(b), as_rational(v)) for a, b, v in self.pieces),
            key=lambda c: (c[0], c[1]),
        )
        cells: list[Cell] = []
        pos = ZERO
        for a, b, v in raw:
            if v < 0:
                raise ValueError("step functions are nonnegative")
            if a < 0 or b < a:
                raise ValueError(f"bad piece [{a}, {b})")
            if a == b:
                continue
            if a < pos:
                raise ValueError(f"piece [{a}, {b}) overlaps its predecessor")
            if b > gamma:
                raise DomainOverflow(f"piece [{a}, {b}) leaves (0, {gamma})")
            if a > pos:
                cells.append((pos, a, ZERO))
            cells.append((a, b, v))
            pos = b
        if pos < gamma:
            cells.append((pos, gamma, tail))
        cells = _merge_cells(cells)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "pieces", tuple(cells[:-1]))
        object.__setattr__(self, "tail", cells[-1][2])

    @classmethod
    def from_cells(cls, cells: Iterable[Cell], gamma: Extent) -> "StepFunction":
        """Build from contiguous cells covering ``[0, gamma)``."""
        return _from_cells(cells, gamma)

    # -- structure ---------------------------------------------------------
    @property
    def end(self) -> Fraction:
        """Left endpoint of the tail cell."""
        return self.pieces[-1][1] if self.pieces else ZERO

    @cached_property
    def _cells(self) -> tuple:
        return self.pieces + ((self.end, self.gamma, self.tail),)

    def cells(self) -> tuple:
        """All cells including the tail cell ``(end, gamma, tail)``."""
        return self._cells

    @cached_property
    def _lefts(self) -> list:
        return [c[0] for c in self._cells]

    def __call__(self, x) -> Fraction:
        x = as_rational(x)
        if x < 0 or x >= self.gamma:
            raise OutOfDomain(f"{x} is outside [0, {self.gamma})")
        return self._cells[bisect_right(self._lefts, x) - 1][2]

    @property
    def is_zero(self) -> bool:
        return not self.pieces and self.tail == 0

    @property
    def max_value(self) -> Fraction:
        return max(c[2] for c in self._cells)

    @property
    def in_s0(self) -> bool:
        """Whether the rearrangement vanishes at infinity."""
        return not is_infinite(self.gamma) or self.tail == 0

    def integral(self):
        """Exact ``int f``; INFINITY for a positive tail on ``(0, inf)``."""
        if is_infinite(self.gamma) and self.tail > 0:
            return INFINITY
        return sum(((b - a) * v for a, b, v in self._cells if v and not is_infinite(b)), ZERO)

    def restrict(self, lo, hi) -> list[Cell]:
        """Cells of the function clipped to ``[lo, hi)``."""
        out = []
        for a, b, v in self._cells:
            a2, b2 = max(a, lo), min(b, hi)
            if a2 < b2:
                out.append((a2, b2, v))
        return out

    def with_extent(self, gamma) -> "StepFunction":
        """Zero extension to a longer interval ``(0, gamma)``."""
        gamma = as_extent(gamma)
        if gamma < self.gamma:
            raise DomainOverflow("cannot shrink the domain")
        if gamma == self.gamma:
            return self
        return StepFunction(self._cells, ZERO, gamma)

    def __repr__(self):
        body = ", ".join(f"[{a},{b})->{v}" for a, b, v in self.pieces)
        return f"StepFunction({body}; tail={self.tail}; gamma={self.gamma})"


def _from_cells(cells: Iterable[Cell], gamma: Extent) -> StepFunction:
    cells = [c for c in cells if c[0] != c[1]]
    if not cells:
        return StepFunction((), ZERO, gamma)
    if cells[-1][1] == gamma:
        return StepFunction(tuple(cells[:-1]), cells[-1][2], gamma)
    return StepFunction(tuple(cells), ZERO, gamma)


def indicator(left, right, gamma, value=1) -> StepFunction:
    """``value * chi[left, right)`` on ``(0, gamma)``."""
    return StepFunction(((left, right, value),), ZERO, gamma)


def constant(value, gamma) -> StepFunction:
    return StepFunction((), value, gamma)


def zero(gamma) -> StepFunction:
    return StepFunction((), ZERO, gamma)


# ---------------------------------------------------------------------------
# Concave piecewise-linear profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PiecewiseLinearConcave:
    """Increasing concave piecewise-linear function on ``(0, gamma)``.

    ``knots`` are ``(t, value)`` with ``0 < t < gamma``; the function runs
    linearly from ``jump`` (its value at ``0+``) to the first knot, between
    knots, and with ``final_slope`` after the last knot.
    """

    knots: tuple = ()
    jump: Fraction = ZERO
    final_slope: Fraction = ZERO
    gamma: Extent = INFINITY

    def __post_init__(self):
        gamma = as_extent(self.gamma)
        jump = as_rational(self.jump)
        final_slope = as_rational(self.final_slope)
        pts = [(as_rational(t), as_rational(v)) for t, v in self.knots]
        pts.sort()
        for (t0, _), (t1, _) in zip(pts, pts[1:]):
            if t0 == t1:
                raise ValueError(f"duplicate knot at {t0}")
        if pts and pts[0][0] <= 0:
            raise ValueError("knots must lie in (0, gamma)")
        if pts and pts[-1][0] > gamma:
            raise OutOfDomain(f"knot {pts[-1][0]} beyond gamma {gamma}")
        if pts and pts[-1][0] == gamma:
            t_last, v_last = pts.pop()
            t_prev, v_prev = pts[-1] if pts else (ZERO, jump)
            final_slope = (v_last - v_prev) / (t_last - t_prev)
        if jump < 0:
            raise ValueError("value at 0+ must be nonnegative")
        # slopes, then drop collinear knots
        xs = [ZERO] + [t for t, _ in pts]
        ys = [jump] + [v for _, v in pts]
        slopes = [(ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]) for i in range(len(pts))]
        slopes.append(final_slope)
        for s0, s1 in zip(slopes, slopes[1:]):
            if s1 > s0:
                raise ValueError("profile is not concave")
        if slopes[-1] < 0:
            raise ValueError("profile is not increasing")
        kept = [pts[i] for i in range(len(pts)) if slopes[i] != slopes[i + 1]]
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "jump", jump)
        object.__setattr__(self, "final_slope", final_slope)
        object.__setattr__(self, "knots", tuple(kept))

    @cached_property
    def _ts(self) -> list:
        return [t for t, _ in self.knots]

    @cached_property
    def _segments(self) -> tuple:
        xs = [ZERO] + self._ts
        ys = [self.jump] + [v for _, v in self.knots]
        segs = []
        for i in range(len(self.knots)):
            s = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])
            segs.append((xs[i], xs[i + 1], s, ys[i] - s * xs[i]))
        segs.append((xs[-1], self.gamma, self.final_slope, ys[-1] - self.final_slope * xs[-1]))
        return tuple(segs)

    def segments(self) -> tuple:
        """``(t0, t1, slope, intercept)`` per linear segment."""
        return self._segments

    def slopes(self) -> list:
        return [s for _, _, s, _ in self._segments]

    def points(self) -> list:
        return list(self._ts)

    def __call__(self, t) -> Fraction:
        t = as_rational(t) if not is_infinite(t) else t
        if t < 0 or t > self.gamma or is_infinite(t):
            raise OutOfDomain(f"{t} outside (0, {self.gamma}]")
        if t == 0:
            return self.jump
        _, _, s, b = self._segments[bisect_right(self._ts, t)]
        return s * t + b

    def extended(self, t):
        """Evaluate, holding the value at ``gamma`` constant beyond it."""
        if not is_infinite(self.gamma) and t >= self.gamma:
            return self(self.gamma)
        if is_infinite(t):
            return self.value_at_end()
        return self(t)

    def value_at_end(self):
        """Value at ``gamma``, or the limit at infinity (possibly INFINITY)."""
        if is_infinite(self.gamma):
            if self.final_slope > 0:
                return INFINITY
            return self._segments[-1][3]
        return self(self.gamma)


# ---------------------------------------------------------------------------
# Distribution, rearrangement, head integrals
# ---------------------------------------------------------------------------

def distribution(f: StepFunction, s) -> Extent:
    """Measure of ``{x : f(x) > s}``."""
    s = as_rational(s)
    if is_infinite(f.gamma) and f.tail > s:
        return INFINITY
    return sum((b - a for a, b, v in f.cells() if v > s), ZERO)


def rearrange(f: StepFunction) -> StepFunction:
    """Decreasing right-continuous rearrangement ``f*``."""
    if is_infinite(f.gamma):
        c = f.tail
        above = [cell for cell in f.pieces if cell[2] > c]
    else:
        c = None
        above = list(f.cells())
    # stable sort: ties keep source order
    above.sort(key=lambda cell: -cell[2])
    out = []
    pos = ZERO
    for a, b, v in above:
        out.append((pos, pos + (b - a), v))
        pos += b - a
    if c is None:
        return _from_cells(out, f.gamma)
    return StepFunction(tuple(out), c, f.gamma)


def is_decreasing(f: StepFunction) -> bool:
    vals = [c[2] for c in f.cells()]
    return all(x >= y for x, y in zip(vals, vals[1:]))


def head_integral(f: StepFunction, t):
    """``int_0^t f*(s) ds``; arguments past a finite gamma are clamped."""
    fs = rearrange(f)
    if is_infinite(t):
        return fs.integral()
    t = as_rational(t)
    if t < 0:
        raise OutOfDomain("t must be nonnegative")
    total = ZERO
    for a, b, v in fs.cells():
        if a >= t:
            break
        total += (min(b, t) - a) * v
    return total


def head_integral_profile(f: StepFunction) -> PiecewiseLinearConcave:
    """The concave profile ``t -> int_0^t f*``."""
    fs = rearrange(f)
    knots = []
    h = ZERO
    for a, b, v in fs.pieces:
        h += (b - a) * v
        knots.append((b, h))
    return PiecewiseLinearConcave(tuple(knots), ZERO, fs.tail, f.gamma)


def _profile_points(h: PiecewiseLinearConcave) -> list:
    pts = h.points()
    if not is_infinite(h.gamma):
        pts.append(h.gamma)
    return pts


def _final_slope_beyond(h: PiecewiseLinearConcave) -> Fraction:
    return h.final_slope if is_infinite(h.gamma) else ZERO


def submajorizes(g: StepFunction, f: StepFunction, up_to=INFINITY) -> bool:
    """True iff ``int_0^t f* <= int_0^t g*`` for all ``t`` in ``[0, up_to)``.

    The two functions may live on intervals of different length; beyond its
    own ``gamma`` a rearrangement is zero.
    """
    hf, hg = head_integral_profile(f), head_integral_profile(g)
    return _profile_dominated(hf, hg, up_to) is None


def _profile_dominated(hf: PiecewiseLinearConcave, hg: PiecewiseLinearConcave, up_to):
    """None if ``hf <= hg`` on ``[0, up_to)``, else a witness ``t``."""
    pts = sorted(set(_profile_points(hf)) | set(_profile_points(hg)))
    if not is_infinite(up_to):
        up_to = as_rational(up_to)
        pts = [t for t in pts if t < up_to] + [up_to]
    for t in pts:
        if hf.extended(t) > hg.extended(t):
            return t
    if is_infinite(up_to) and _final_slope_beyond(hf) > _final_slope_beyond(hg):
        return INFINITY
    return None


def submajorization_margin(g: StepFunction, f: StepFunction, up_to=INFINITY):
    """Smallest ``H_g(t) - H_f(t)`` over the breakpoints below ``up_to`` and its location."""
    hf, hg = head_integral_profile(f), head_integral_profile(g)
    pts = sorted(set(_profile_points(hf)) | set(_profile_points(hg)))
    if not is_infinite(up_to):
        pts = [t for t in pts if t < up_to] + [as_rational(up_to)]
    best, where = None, ZERO
    for t in pts:
        m = hg.extended(t) - hf.extended(t)
        if best is None or m < best:
            best, where = m, t
    if best is None:
        best = ZERO
    return best, where


# ---------------------------------------------------------------------------
# Dilation and lattice operations
# ---------------------------------------------------------------------------

def dilate(f: StepFunction, factor, truncate: bool = False) -> StepFunction:
    """``t -> f(t / factor)`` on the same interval.

    With a finite ``gamma`` and ``factor > 1`` the part of ``f`` on
    ``[gamma/factor, gamma)`` would be pushed out of the interval; that
    raises DomainOverflow unless ``truncate`` is set.
    """
    factor = as_rational(factor)
    if factor <= 0:
        raise ValueError("dilation factor must be positive")
    if factor == 1:
        return f
    gamma = f.gamma
    if is_infinite(gamma):
        return StepFunction(tuple((a * factor, b * factor, v) for a, b, v in f.pieces), f.tail, gamma)
    if factor > 1 and not truncate:
        if any(v > 0 for _, _, v in f.restrict(gamma / factor, gamma)):
            raise DomainOverflow("dilated support exceeds the interval")
    cells = [(a * factor, min(b * factor, gamma), v) for a, b, v in f.cells() if a * factor < gamma]
    return StepFunction(tuple(cells), ZERO, gamma)


def _check_same(f: StepFunction, g: StepFunction):
    if f.gamma != g.gamma:
        raise DomainMismatch(f"gamma {f.gamma} != {g.gamma}")


def _zip_cells(f: StepFunction, g: StepFunction) -> list:
    """Common refinement: ``(left, right, f value, g value)``."""
    _check_same(f, g)
    cf, cg = f.cells(), g.cells()
    i = j = 0
    a = ZERO
    out = []
    while i < len(cf) and j < len(cg):
        b = min(cf[i][1], cg[j][1])
        out.append((a, b, cf[i][2], cg[j][2]))
        if cf[i][1] == b:
            i += 1
        if cg[j][1] == b:
            j += 1
        a = b
    return out


def _combine(f: StepFunction, g: StepFunction, op) -> StepFunction:
    return _from_cells([(a, b, op(x, y)) for a, b, x, y in _zip_cells(f, g)], f.gamma)


def add(f: StepFunction, g: StepFunction) -> StepFunction:
    return _combine(f, g, lambda x, y: x + y)


def maximum(f: StepFunction, g: StepFunction) -> StepFunction:
    return _combine(f, g, max)


def minimum(f: StepFunction, g: StepFunction) -> StepFunction:
    return _combine(f, g, min)


def minus_plus(f: StepFunction, g: StepFunction) -> StepFunction:
    """``(f - g)+``."""
    return _combine(f, g, lambda x, y: max(x - y, ZERO))


def scale(f: StepFunction, c) -> StepFunction:
    c = as_rational(c)
    if c < 0:
        raise ValueError("scale factor must be nonnegative")
    return StepFunction(tuple((a, b, v * c) for a, b, v in f.pieces), f.tail * c, f.gamma)


def disjoint(f: StepFunction, g: StepFunction) -> bool:
    return all(x == 0 or y == 0 for _, _, x, y in _zip_cells(f, g))


def product_integral(f: StepFunction, g: StepFunction):
    """Exact ``int f g``; INFINITY when both tails are positive on ``(0, inf)``."""
    total = ZERO
    for a, b, x, y in _zip_cells(f, g):
        if x and y:
            if is_infinite(b):
                return INFINITY
            total += (b - a) * x * y
    return total


# ---------------------------------------------------------------------------
# Measure-preserving transport
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TransportMap:
    """Piecewise translation ``sigma(x) = x + offset`` on each source segment.

    Source segments partition ``[0, gamma)``, and so do their images.
    """

    segments: tuple
    gamma: Extent = Fraction(1)

    def __post_init__(self):
        gamma = as_extent(self.gamma)
        segs = sorted((as_rational(a), b if is_infinite(b) else as_rational(b), as_rational(o))
                      for a, b, o in self.segments)
        merged: list = []
        for a, b, o in segs:
            if merged and merged[-1][1] == a and merged[-1][2] == o:
                merged[-1] = (merged[-1][0], b, o)
            else:
                merged.append((a, b, o))
        _check_partition([(a, b) for a, b, _ in merged], gamma, "source")
        _check_partition([(a + o, b + o if not is_infinite(b) else b) for a, b, o in merged], gamma, "image")
        for a, b, o in merged:
            if is_infinite(b) and o != 0:
                raise ValueError("an unbounded segment must be fixed")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "segments", tuple(merged))

    @classmethod
    def identity(cls, gamma) -> "TransportMap":
        return cls(((ZERO, as_extent(gamma), ZERO),), gamma)

    def __call__(self, x) -> Fraction:
        x = as_rational(x)
        for a, b, o in self.segments:
            if a <= x < b:
                return x + o
        raise OutOfDomain(f"{x} outside [0, {self.gamma})")

    def inverse(self) -> "TransportMap":
        return TransportMap(tuple((a + o, b + o if not is_infinite(b) else b, -o) for a, b, o in self.segments),
                            self.gamma)

    @property
    def is_identity(self) -> bool:
        return all(o == 0 for _, _, o in self.segments)


def _check_partition(intervals: Sequence, gamma, what: str):
    pos = ZERO
    for a, b in sorted(intervals):
        if a != pos or not b > a:
            raise ValueError(f"{what} segments do not partition (0, {gamma})")
        pos = b
    if pos != gamma:
        raise ValueError(f"{what} segments do not cover (0, {gamma})")


def transport_to_rearrangement(g: StepFunction) -> TransportMap:
    """Measure-preserving ``sigma`` with ``g* o sigma = g`` exactly.

    Each cell of ``g`` is sent rigidly onto the slab of ``g*`` carrying the
    same value; cells of equal value keep their source order.
    """
    gamma = g.gamma
    if is_infinite(gamma):
        c = g.tail
        if any(v < c for _, _, v in g.pieces):
            raise NoExactTransport("a finite piece lies below the positive tail value")
        cells = list(g.pieces)
    else:
        cells = list(g.cells())
    order = sorted(range(len(cells)), key=lambda i: -cells[i][2])
    targets = {}
    pos = ZERO
    for i in order:
        a, b, _ = cells[i]
        targets[i] = pos
        pos += b - a
    segs = [(a, b, targets[i] - a) for i, (a, b, _) in enumerate(cells)]
    if is_infinite(gamma):
        segs.append((g.end, INFINITY, ZERO))
    return TransportMap(tuple(segs), gamma)


def apply_transport(sigma: TransportMap, f: StepFunction) -> StepFunction:
    """``f o sigma``."""
    if sigma.gamma != f.gamma:
        raise DomainMismatch(f"gamma {sigma.gamma} != {f.gamma}")
    out = []
    for a, b, o in sigma.segments:
        if is_infinite(b):
            out.extend(f.restrict(a, b))
            continue
        for x, y, v in f.restrict(a + o, b + o):
            out.append((x - o, y - o, v))
    out.sort(key=lambda c: c[0])
    return _from_cells(_merge_cells(out), f.gamma)


def refinement_cells(sigma: TransportMap, f: StepFunction) -> list:
    """Cells ``(left, right, offset, f value)`` on which both ``sigma`` and ``f`` are simple."""
    out = []
    for a, b, o in sigma.segments:
        for x, y, v in f.restrict(a, b):
            out.append((x, y, o, v))
    return out
