"""Exact numbers: rationals, extents, radicals and certified rational intervals.

Everything here is decided with integer arithmetic.  Irrational quantities
that show up for power gauges are products ``c * x**(1/n)`` and are kept as
:class:`Radical`; comparisons between radicals reduce to comparisons of
integer powers.  Logarithms only appear in sums, so they are handled by
:class:`Interval` enclosures with outward dyadic rounding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

INFINITY = math.inf

Rational = Fraction
Extent = Union[Fraction, float]  # a Fraction >= 0 or INFINITY
Number = Union[Fraction, "Radical"]


def is_infinite(x) -> bool:
    return isinstance(x, float) and x == math.inf


def as_rational(x) -> Fraction:
    """Convert ints, Fractions and ``"p/q"`` strings; floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def as_extent(x) -> Extent:
    if is_infinite(x) or (isinstance(x, str) and x.strip().lower() in ("inf", "infinity")):
        return INFINITY
    value = as_rational(x)
    if value <= 0:
        raise ValueError(f"extent must be positive, got {value}")
    return value


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def format_extent(x: Extent) -> str:
    return "inf" if is_infinite(x) else format_rational(x)


def iroot(n: int, k: int) -> int:
    """Largest integer ``r`` with ``r**k <= n``."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    r = 1 << -(-n.bit_length() // k)  # r**k >= n
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def exact_root(x: Fraction, k: int) -> Fraction | None:
    """``x**(1/k)`` when it is rational, else None."""
    if x < 0:
        return None
    a, b = iroot(x.numerator, k), iroot(x.denominator, k)
    if a ** k == x.numerator and b ** k == x.denominator:
        return Fraction(a, b)
    return None


# ---------------------------------------------------------------------------
# Radicals
# ---------------------------------------------------------------------------

def radical(coeff, radicand, index: int = 1) -> Number:
    """Build ``coeff * radicand**(1/index)``, collapsing to a Fraction when exact.

    The radicand is normalized to an integer with small perfect powers pulled
    out, and the index is reduced where the radicand allows.
    """
    coeff, radicand = as_rational(coeff), as_rational(radicand)
    if coeff < 0 or radicand < 0:
        raise ValueError("radicals are nonnegative")
    if coeff == 0 or radicand == 0:
        return Fraction(0)
    if index < 1:
        raise ValueError("index must be positive")
    if index == 1:
        return coeff * radicand
    # x**(1/n) = (N * D**(n-1))**(1/n) / D
    d = radicand.denominator
    coeff /= d
    m = radicand.numerator * d ** (index - 1)
    for k in sorted(_divisors(index), reverse=True)[:-1]:
        r = iroot(m, k)
        if r ** k == m:
            m, index = r, index // k
            break
    for p in _SMALL_PRIMES:
        if m == 1 or p ** index > m:
            break
        pk = p ** index
        while m % pk == 0:
            m //= pk
            coeff *= p
    if m == 1 or index == 1:
        return coeff * m
    return Radical(coeff, Fraction(m), index)


_SMALL_PRIMES = [p for p in range(2, 200) if all(p % q for q in range(2, int(p ** 0.5) + 1))]


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def rational_power(base, exponent) -> Number:
    """``base**exponent`` for rational base > 0 and rational exponent."""
    base, exponent = as_rational(base), as_rational(exponent)
    if base <= 0:
        raise ValueError("base must be positive")
    a, b = exponent.numerator, exponent.denominator
    return radical(1, base ** a, b)


@dataclass(frozen=True)
class Radical:
    """The positive real ``coeff * radicand**(1/index)`` with index >= 2.

    Use :func:`radical` to construct; it collapses rational values to
    Fraction so that a Radical is never secretly rational.
    """

    coeff: Fraction
    radicand: Fraction
    index: int

    # -- arithmetic --------------------------------------------------------
    def _pair(self, other):
        if isinstance(other, Radical):
            return other.coeff, other.radicand, other.index
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Fraction(other), Fraction(1), 1
        return None

    def __mul__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        c, x, n = p
        if c == 0:
            return Fraction(0)
        if c < 0:
            raise ValueError("radicals are nonnegative")
        m = self.index
        lcm = m * n // math.gcd(m, n)
        return radical(self.coeff * c, self.radicand ** (lcm // m) * x ** (lcm // n), lcm)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        c, x, n = p
        return self * radical(1 / c, 1 / x, n) if n > 1 else self * (1 / c)

    def __rtruediv__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        c, _, _ = p
        return radical(c / self.coeff, 1 / self.radicand, self.index)

    def reciprocal(self) -> Number:
        return radical(1 / self.coeff, 1 / self.radicand, self.index)

    # -- comparisons -------------------------------------------------------
    def _cmp(self, other) -> int | None:
        p = self._pair(other)
        if p is None:
            return None
        c, x, n = p
        if c < 0:
            return 1
        m = self.index
        lcm = m * n // math.gcd(m, n)
        lhs = self.coeff ** lcm * self.radicand ** (lcm // m)
        rhs = c ** lcm * x ** (lcm // n)
        return (lhs > rhs) - (lhs < rhs)

    def __eq__(self, other):
        r = self._cmp(other)
        return NotImplemented if r is None else r == 0

    def __hash__(self):
        return hash((self.coeff, self.radicand, self.index))

    def __lt__(self, other):
        r = self._cmp(other)
        return NotImplemented if r is None else r < 0

    def __le__(self, other):
        r = self._cmp(other)
        return NotImplemented if r is None else r <= 0

    def __gt__(self, other):
        r = self._cmp(other)
        return NotImplemented if r is None else r > 0

    def __ge__(self, other):
        r = self._cmp(other)
        return NotImplemented if r is None else r >= 0

    # -- conversion --------------------------------------------------------
    def enclose(self, bits: int = 128) -> "Interval":
        scale = max(self.coeff.numerator.bit_length() - self.coeff.denominator.bit_length() + 1, 0)
        root = root_enclosure(self.radicand, self.index, bits + scale)
        return Interval(root.lo * self.coeff, root.hi * self.coeff)

    def __float__(self):
        return float(self.coeff) * float(self.radicand) ** (1.0 / self.index)

    def __str__(self):
        return format_number(self)

    def __repr__(self):
        return f"Radical({format_number(self)})"


def format_number(x: Number) -> str:
    """Exact text: ``p/q``, ``2^(a/b)`` for powers of two, else ``c*(x)^(1/n)``."""
    if isinstance(x, Radical):
        if x.coeff == 1:
            e = _log2_exact(x.radicand)
            if e is not None:
                return f"2^({format_rational(Fraction(e, x.index))})"
        return f"{format_rational(x.coeff)}*({format_rational(x.radicand)})^(1/{x.index})"
    return format_rational(x)


def _log2_exact(x: Fraction) -> int | None:
    n, d = x.numerator, x.denominator
    if d == 1 and n & (n - 1) == 0:
        return n.bit_length() - 1
    if n == 1 and d & (d - 1) == 0:
        return -(d.bit_length() - 1)
    return None


def parse_number(text: str) -> Number:
    """Inverse of :func:`format_number`."""
    text = text.strip()
    if text.startswith("2^(") and text.endswith(")"):
        return rational_power(2, text[3:-1])
    if "*(" in text:
        coeff, rest = text.split("*(", 1)
        radicand, idx = rest.split(")^(1/")
        return radical(coeff, radicand, int(idx.rstrip(")")))
    return Fraction(text)


# ---------------------------------------------------------------------------
# Intervals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]`` with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "Interval":
        x = as_rational(x)
        return cls(x, x)

    @classmethod
    def of(cls, x, bits: int = 128) -> "Interval":
        if isinstance(x, Interval):
            return x
        if isinstance(x, Radical):
            return x.enclose(bits)
        return cls.point(x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        if isinstance(x, Radical):
            return self.lo <= x <= self.hi
        return self.lo <= as_rational(x) <= self.hi

    def _coerce(self, other):
        if isinstance(other, Interval):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Interval.point(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Interval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.reciprocal()

    def certainly_le(self, other) -> bool:
        return self.hi <= Interval.of(other).lo

    def certainly_gt(self, other) -> bool:
        return self.lo > Interval.of(other).hi

    def round_out(self, bits: int) -> "Interval":
        """Widen to dyadic endpoints with denominator ``2**bits``."""
        scale = 1 << bits
        lo = Fraction(math.floor(self.lo * scale), scale)
        hi = Fraction(math.ceil(self.hi * scale), scale)
        return Interval(lo, hi)

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __str__(self):
        return f"[{format_rational(self.lo)}, {format_rational(self.hi)}]"


def root_enclosure(x, k: int, bits: int = 128) -> Interval:
    """Interval of width at most ``2**-bits`` containing ``x**(1/k)``."""
    x = as_rational(x)
    if x < 0:
        raise ValueError("negative radicand")
    exact = exact_root(x, k)
    if exact is not None:
        return Interval.point(exact)
    n, d = x.numerator, x.denominator
    m = n * d ** (k - 1) << (k * bits)
    r = iroot(m, k)
    denom = d << bits
    return Interval(Fraction(r, denom), Fraction(r + 1, denom))


def _atanh_series(y: Fraction, bits: int) -> Interval:
    """Enclosure of ``atanh(y)`` for ``|y| <= 1/3``."""
    y2 = y * y
    term = y
    total = Fraction(0)
    k = 0
    tol = Fraction(1, 1 << (bits + 4))
    while True:
        total += term / (2 * k + 1)
        k += 1
        term *= y2
        # |remainder| <= |y|^(2k+1) / ((2k+1)(1-y^2))
        bound = abs(term) / ((2 * k + 1) * (1 - y2))
        if bound < tol:
            break
    return Interval(total - bound, total + bound).round_out(bits + 2)


@lru_cache(maxsize=32)
def _ln2(bits: int) -> Interval:
    return 2 * _atanh_series(Fraction(1, 3), bits + 4)


def log_enclosure(x, bits: int = 128) -> Interval:
    """Certified enclosure of ``ln(x)`` for rational ``x > 0``."""
    x = as_rational(x)
    if x <= 0:
        raise ValueError("logarithm of a nonpositive number")
    if x == 1:
        return Interval.point(0)
    k = x.numerator.bit_length() - x.denominator.bit_length()
    m = x / Fraction(2) ** k
    while m > Fraction(4, 3):
        m /= 2
        k += 1
    while m < Fraction(2, 3):
        m *= 2
        k -= 1
    extra = max(abs(k).bit_length(), 1) + 4
    ln_m = 2 * _atanh_series((m - 1) / (m + 1), bits + extra) if m != 1 else Interval.point(0)
    return (ln_m + k * _ln2(bits + extra)).round_out(bits + 2)


def enclose(x, bits: int = 128) -> Interval:
    return Interval.of(x, bits)


def to_decimal_string(x, digits: int = 12) -> str:
    """Round-half-even decimal rendering with ``digits`` significant digits."""
    from decimal import Context, Decimal, ROUND_HALF_EVEN

    if isinstance(x, Radical):
        x = x.enclose(4 * digits + 64).midpoint()
    elif isinstance(x, Interval):
        x = x.midpoint()
    if is_infinite(x):
        return "inf"
    x = as_rational(x)
    ctx = Context(prec=digits, rounding=ROUND_HALF_EVEN)
    value = ctx.divide(Decimal(x.numerator), Decimal(x.denominator))
    return format(value.normalize(ctx), "f") if value != 0 else "0"
