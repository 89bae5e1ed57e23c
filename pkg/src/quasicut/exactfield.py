"""Exact arithmetic in towers of real quadratic extensions of the rationals.

A tower ``Q(sqrt(r_1))(sqrt(r_2))...`` of depth ``k`` is described by its
radicands, each living in the tower below it.  An element is stored as the
``2**k`` rational coordinates in the basis of square-root products: bit ``i``
of a coordinate index marks a factor ``sqrt(r_{i+1})``.  With this layout the
lower half of the coordinate vector is the part free of the top radical and
the upper half is its coefficient, so every operation recurses on halves.

Signs are decided by outward-rounded dyadic interval arithmetic with
doubling precision; no floating point enters a decision.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, ceil, isqrt
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "FieldTower",
    "FieldElement",
    "DyadicInterval",
    "RATIONALS",
    "TowerError",
    "IncompatibleTowersError",
    "adjoin_sqrt",
    "approximate",
    "sign",
    "common_tower",
    "coerce",
]

_START_PRECISION = 64
# past this many bits the interval loop hands over to exact conjugate signs
_MAX_INTERVAL_PRECISION = 1 << 14


class TowerError(ArithmeticError):
    """A radicand is a square below it, or is not positive."""


class IncompatibleTowersError(ValueError):
    """Neither tower is a prefix of the other."""


# ---------------------------------------------------------------------------
# coefficient-vector kernels; ``rads`` holds the radicand coefficient tuples

def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _neg(a):
    return tuple(-x for x in a)


def _scale(a, c):
    return tuple(x * c for x in a)


def _is_zero(a):
    return not any(a)


def _mul(a, b, rads):
    if len(a) == 1:
        return (a[0] * b[0],)
    h = len(a) // 2
    sub = rads[:-1]
    a0, a1, b0, b1 = a[:h], a[h:], b[:h], b[h:]
    if _is_zero(a1) and _is_zero(b1):
        return _mul(a0, b0, sub) + (Fraction(0),) * h
    lo = _add(_mul(a0, b0, sub), _mul(rads[-1], _mul(a1, b1, sub), sub))
    hi = _add(_mul(a0, b1, sub), _mul(a1, b0, sub))
    return lo + hi


def _inv(a, rads):
    if len(a) == 1:
        if a[0] == 0:
            raise ZeroDivisionError("inverse of zero")
        return (1 / a[0],)
    h = len(a) // 2
    sub = rads[:-1]
    a0, a1 = a[:h], a[h:]
    if _is_zero(a1):
        return _inv(a0, sub) + (Fraction(0),) * h
    norm = _sub(_mul(a0, a0, sub), _mul(rads[-1], _mul(a1, a1, sub), sub))
    if _is_zero(norm):
        raise TowerError(
            "nonzero element with vanishing norm: a radicand is a square "
            "in the field below it")
    ninv = _inv(norm, sub)
    return _mul(a0, ninv, sub) + _neg(_mul(a1, ninv, sub))


def _exact_sign(a, rads):
    """Sign by conjugates: sign(x + y*sqrt(r)) from sign(x), sign(y), sign(x^2 - y^2 r)."""
    if len(a) == 1:
        return (a[0] > 0) - (a[0] < 0)
    h = len(a) // 2
    sub = rads[:-1]
    a0, a1 = a[:h], a[h:]
    s0 = _exact_sign(a0, sub)
    s1 = _exact_sign(a1, sub)
    if s1 == 0:
        return s0
    if s0 == 0 or s0 == s1:
        return s1
    d = _exact_sign(_sub(_mul(a0, a0, sub), _mul(rads[-1], _mul(a1, a1, sub), sub)), sub)
    if d == 0:
        raise TowerError("nonzero coefficients but zero value: invalid tower")
    return s0 * d


# ---------------------------------------------------------------------------
# towers

class FieldTower:
    """An ordered list of radicands; depth 0 is the rational field.

    ``radicands[i]`` is a positive element of ``prefix(i)``.  Whether a
    radicand is a square below is not checked here; a bad tower surfaces as
    :class:`TowerError` on the first inversion that hits a zero divisor.
    """

    __slots__ = ("radicands", "names", "_rads", "_hash", "_sqrt_cache")

    def __init__(self, radicands: Sequence["FieldElement"] = (), names: Sequence[str] = ()):
        radicands = tuple(radicands)
        names = tuple(names) if names else tuple(f"s{i + 1}" for i in range(len(radicands)))
        if len(names) != len(radicands):
            raise ValueError("one name per radicand")
        for i, r in enumerate(radicands):
            if r.tower.depth != i:
                raise ValueError(f"radicand {i + 1} must live in the tower of depth {i}")
        self.radicands = radicands
        self.names = names
        self._rads = tuple(r.coeffs for r in radicands)
        self._hash = hash(tuple(r.coeffs for r in radicands))
        self._sqrt_cache = {}

    @property
    def depth(self) -> int:
        return len(self.radicands)

    @property
    def dimension(self) -> int:
        """Dimension over the rationals."""
        return 1 << self.depth

    def prefix(self, k: int) -> "FieldTower":
        if k == self.depth:
            return self
        if k == 0:
            return RATIONALS
        return FieldTower(self.radicands[:k], self.names[:k])

    def is_prefix_of(self, other: "FieldTower") -> bool:
        if self is other:
            return True
        if self.depth > other.depth:
            return False
        return all(a.coeffs == b.coeffs for a, b in zip(self.radicands, other.radicands))

    def __eq__(self, other):
        if not isinstance(other, FieldTower):
            return NotImplemented
        return self is other or (self.depth == other.depth and self.is_prefix_of(other))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self.radicands:
            return "FieldTower(Q)"
        parts = ", ".join(f"{n}=sqrt({r})" for n, r in zip(self.names, self.radicands))
        return f"FieldTower({parts})"

    @property
    def ident(self) -> str:
        """Stable textual id used in serialized elements."""
        if not self.radicands:
            return "Q"
        return "Q" + "".join(f"[{n}=sqrt({r})]" for n, r in zip(self.names, self.radicands))

    def __call__(self, value) -> "FieldElement":
        return coerce(value, self)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (Fraction(0),) * self.dimension)

    @property
    def one(self) -> "FieldElement":
        return self(1)

    def gen(self, i: int) -> "FieldElement":
        """The square root ``sqrt(r_{i+1})`` as an element (0-based)."""
        c = [Fraction(0)] * self.dimension
        c[1 << i] = Fraction(1)
        return FieldElement(self, tuple(c))

    def element(self, coeffs: Iterable) -> "FieldElement":
        return FieldElement(self, tuple(Fraction(c) for c in coeffs))

    def adjoin_sqrt(self, r, name: str | None = None) -> "FieldTower":
        return adjoin_sqrt(self, r, name)

    def _sqrt_interval(self, level: int, prec: int):
        key = (level, prec)
        hit = self._sqrt_cache.get(key)
        if hit is None:
            lo, hi = _interval(self._rads[level], self._rads[:level], self, prec)
            lo = max(lo, 0)
            scale = 1 << prec
            hit = (isqrt(lo * scale), isqrt(hi * scale) + 1)
            self._sqrt_cache[key] = hit
        return hit


RATIONALS = FieldTower()


def adjoin_sqrt(tower: FieldTower, r, name: str | None = None) -> FieldTower:
    """Extend ``tower`` by the square root of the positive element ``r``."""
    r = coerce(r, tower)
    if r.tower != tower:
        raise IncompatibleTowersError("radicand must embed in the tower being extended")
    if sign(r) <= 0:
        raise TowerError(f"radicand {r} is not positive")
    names = tower.names + (name or f"s{tower.depth + 1}",)
    return FieldTower(tower.radicands + (r,), names)


def common_tower(*values) -> FieldTower:
    """Longest tower among the field elements in ``values`` (nested sequences allowed)."""
    best = RATIONALS
    stack = list(values)
    while stack:
        v = stack.pop()
        if isinstance(v, FieldElement):
            t = v.tower
            if t.depth > best.depth:
                if not best.is_prefix_of(t):
                    raise IncompatibleTowersError(f"{best!r} vs {t!r}")
                best = t
            elif not t.is_prefix_of(best):
                raise IncompatibleTowersError(f"{best!r} vs {t!r}")
        elif isinstance(v, (list, tuple)):
            stack.extend(v)
    return best


def coerce(value, tower: FieldTower | None = None) -> "FieldElement":
    """Convert ints, Fractions and elements of prefix towers into ``tower``."""
    if isinstance(value, FieldElement):
        if tower is None or value.tower is tower:
            return value
        return value.embed(tower)
    if isinstance(value, (int, Rational)):
        tower = tower or RATIONALS
        c = [Fraction(0)] * tower.dimension
        c[0] = Fraction(value)
        return FieldElement(tower, tuple(c))
    if isinstance(value, str):
        tower = tower or RATIONALS
        return coerce(Fraction(value), tower)
    raise TypeError(f"cannot coerce {type(value).__name__} to a field element")


# ---------------------------------------------------------------------------
# elements

class FieldElement:
    """Immutable element of a :class:`FieldTower`."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: FieldTower, coeffs: tuple):
        if len(coeffs) != tower.dimension:
            raise ValueError(f"expected {tower.dimension} coefficients, got {len(coeffs)}")
        self.tower = tower
        self.coeffs = coeffs

    # -- embedding ---------------------------------------------------------
    def embed(self, tower: FieldTower) -> "FieldElement":
        if tower is self.tower:
            return self
        if not self.tower.is_prefix_of(tower):
            raise IncompatibleTowersError(f"{self.tower!r} is not a prefix of {tower!r}")
        pad = (Fraction(0),) * (tower.dimension - len(self.coeffs))
        return FieldElement(tower, self.coeffs + pad)

    def _pair(self, other):
        if isinstance(other, FieldElement):
            if other.tower is self.tower:
                return self, other
            t = self.tower if other.tower.is_prefix_of(self.tower) else other.tower
            if not (self.tower.is_prefix_of(t) and other.tower.is_prefix_of(t)):
                raise IncompatibleTowersError(f"{self.tower!r} vs {other.tower!r}")
            return self.embed(t), other.embed(t)
        if isinstance(other, (int, Rational)):
            return self, coerce(other, self.tower)
        return None, None

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return FieldElement(a.tower, _add(a.coeffs, b.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return FieldElement(a.tower, _sub(a.coeffs, b.coeffs))

    def __rsub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return FieldElement(a.tower, _sub(b.coeffs, a.coeffs))

    def __neg__(self):
        return FieldElement(self.tower, _neg(self.coeffs))

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, FieldElement):
            return FieldElement(self.tower, _scale(self.coeffs, Fraction(other)))
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return FieldElement(a.tower, _mul(a.coeffs, b.coeffs, a.tower._rads))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return FieldElement(self.tower, _inv(self.coeffs, self.tower._rads))

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, FieldElement):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return FieldElement(self.tower, _scale(self.coeffs, 1 / Fraction(other)))
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return b * a.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.tower.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison --------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        a, b = self._pair(other) if isinstance(other, (FieldElement, int, Rational)) else (None, None)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self):
        c = self.coeffs
        while len(c) > 1 and not any(c[len(c) // 2:]):
            c = c[: len(c) // 2]
        return hash(c[0]) if len(c) == 1 else hash(c)

    def sign(self) -> int:
        return sign(self)

    def __lt__(self, other):
        return sign(self - other) < 0

    def __le__(self, other):
        return sign(self - other) <= 0

    def __gt__(self, other):
        return sign(self - other) > 0

    def __ge__(self, other):
        return sign(self - other) >= 0

    def __abs__(self):
        return -self if sign(self) < 0 else self

    # -- conversion --------------------------------------------------------
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __float__(self):
        iv = approximate(self, 60)
        return float((iv.lo + iv.hi) / 2)

    def conjugate(self) -> "FieldElement":
        """Flip the sign of the top radical."""
        h = len(self.coeffs) // 2
        if h == 0:
            return self
        return FieldElement(self.tower, self.coeffs[:h] + _neg(self.coeffs[h:]))

    def to_dict(self) -> dict:
        return {"tower": self.tower.ident, "coeffs": [_frac_str(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data: dict, tower: FieldTower) -> "FieldElement":
        if data["tower"] != tower.ident:
            raise IncompatibleTowersError(f"serialized over {data['tower']}, expected {tower.ident}")
        return tower.element(Fraction(c) for c in data["coeffs"])

    def __str__(self):
        names = self.tower.names
        terms = []
        for idx, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "*".join(names[i] for i in range(self.tower.depth) if idx >> i & 1)
            if not mono:
                terms.append(_frac_str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{_frac_str(c)}*{mono}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __repr__(self):
        return f"FieldElement({self})"


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# dyadic intervals

@dataclass(frozen=True)
class DyadicInterval:
    lo: Fraction
    hi: Fraction
    precision: int

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


def _interval(coeffs, rads, tower, prec):
    """Integer bounds ``(L, H)`` with ``L/2**p <= value <= H/2**p``."""
    if len(coeffs) == 1:
        v = coeffs[0] * (1 << prec)
        return floor(v), ceil(v)
    h = len(coeffs) // 2
    sub = rads[:-1]
    l0, h0 = _interval(coeffs[:h], sub, tower, prec)
    if not any(coeffs[h:]):
        return l0, h0
    l1, h1 = _interval(coeffs[h:], sub, tower, prec)
    sl, sh = tower._sqrt_interval(len(rads) - 1, prec)
    products = (l1 * sl, l1 * sh, h1 * sl, h1 * sh)
    scale = 1 << prec
    lo = l0 + min(products) // scale
    hi = h0 - (-max(products) // scale)
    return lo, hi


def approximate(a: FieldElement, bits: int) -> DyadicInterval:
    """Dyadic interval around ``a`` of width at most ``2**(1-bits) * max(1, |a|)``."""
    if bits < 1:
        raise ValueError("bits must be >= 1")
    a = coerce(a)
    if a.is_rational():
        v = a.coeffs[0]
        return DyadicInterval(v, v, bits)
    prec = bits + 16
    bound = Fraction(1, 1 << (bits - 1))
    while True:
        lo, hi = _interval(a.coeffs, a.tower._rads, a.tower, prec)
        scale = 1 << prec
        flo, fhi = Fraction(lo, scale), Fraction(hi, scale)
        mag = Fraction(1)
        if flo > 0 or fhi < 0:
            mag = max(mag, min(abs(flo), abs(fhi)))
        if fhi - flo <= bound * mag:
            return DyadicInterval(flo, fhi, prec)
        prec *= 2


def sign(a) -> int:
    """-1, 0 or +1; zero is decided syntactically, the rest by interval refinement."""
    a = coerce(a)
    if a.is_zero():
        return 0
    if a.is_rational():
        c = a.coeffs[0]
        return 1 if c > 0 else -1
    prec = _START_PRECISION
    while prec <= _MAX_INTERVAL_PRECISION:
        lo, hi = _interval(a.coeffs, a.tower._rads, a.tower, prec)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        prec *= 2
    # only reachable when a radicand is a square below it
    return _exact_sign(a.coeffs, a.tower._rads)
