"""Exact arithmetic in the real cyclotomic fields Q(cos(pi/k)).

An element is stored as a polynomial in ``theta = 2*cos(pi/k)`` of degree
below the degree of the minimal polynomial of ``theta``.  Rationals are
plain :class:`fractions.Fraction` values and are promoted on contact.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import FieldMismatchError

__all__ = [
    "MinPoly",
    "FieldElement",
    "minimal_polynomial",
    "cyclotomic_polynomial",
    "field_degree",
    "field_inverse",
    "cheb_value",
    "abs_cos",
    "as_fraction",
]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, str, Rational)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


# ---------------------------------------------------------------------------
# integer / rational polynomial helpers (coefficient lists, low degree first)


def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _int_divexact(num, den):
    """Exact division of integer polynomials; ``den`` must be monic."""
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    if any(num[:dd]):
        raise ArithmeticError("cyclotomic division left a remainder")
    return quot


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


_cyclo_cache: dict[int, tuple[int, ...]] = {}
_cyclo_lock = threading.Lock()


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Phi_n as integer coefficients, lowest degree first."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    with _cyclo_lock:
        hit = _cyclo_cache.get(n)
    if hit is not None:
        return hit
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _int_divexact(poly, cyclotomic_polynomial(d))
    result = tuple(poly)
    with _cyclo_lock:
        _cyclo_cache[n] = result
    return result


@dataclass(frozen=True)
class MinPoly:
    """Monic minimal polynomial of ``2*cos(pi/k)``; ``coefficients[i]`` multiplies x**i."""

    k: int
    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if not c:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not terms:
                terms.append(("-" if c < 0 else "") + body)
            else:
                terms.append(("- " if c < 0 else "+ ") + body)
        return " ".join(terms) if terms else "0"


def _fold_palindromic(phi):
    """Return psi with x**m * psi(x + 1/x) == phi(x), deg phi == 2m.

    Uses x**j + x**-j = D_j(x + 1/x) with D_0 = 2, D_1 = y and
    D_{j+1} = y*D_j - D_{j-1}.
    """
    m = (len(phi) - 1) // 2
    psi = [phi[m]] + [0] * m
    d_prev, d_cur = [2], [0, 1]
    for j in range(1, m + 1):
        a = phi[m + j]
        for i, c in enumerate(d_cur):
            psi[i] += a * c
        nxt = [0] + d_cur
        for i, c in enumerate(d_prev):
            nxt[i] -= c
        d_prev, d_cur = d_cur, nxt
    return psi


_minpoly_cache: dict[int, MinPoly] = {}
_minpoly_lock = threading.Lock()


def minimal_polynomial(k: int) -> MinPoly:
    """Minimal polynomial over Q of ``2*cos(pi/k)``, built by folding Phi_{2k}."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    with _minpoly_lock:
        hit = _minpoly_cache.get(k)
    if hit is not None:
        return hit
    if k == 1:
        mp = MinPoly(1, (2, 1))
    else:
        mp = MinPoly(k, tuple(_fold_palindromic(cyclotomic_polynomial(2 * k))))
    with _minpoly_lock:
        _minpoly_cache[k] = mp
    return mp


def field_degree(k: int) -> int:
    return minimal_polynomial(k).degree


def _field_name(k):
    return f"Q(cos(pi/{k}))"


class FieldElement:
    """Immutable element of Q(cos(pi/k)) in the power basis of ``theta = 2cos(pi/k)``."""

    __slots__ = ("k", "coords")

    def __init__(self, k: int, coords):
        d = field_degree(k)
        coords = tuple(as_fraction(c) for c in coords)
        if len(coords) > d:
            coords = _reduce(list(coords), minimal_polynomial(k).coefficients)
        elif len(coords) < d:
            coords = coords + (Fraction(0),) * (d - len(coords))
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @classmethod
    def _raw(cls, k, coords):
        obj = object.__new__(cls)
        object.__setattr__(obj, "k", k)
        object.__setattr__(obj, "coords", coords)
        return obj

    @classmethod
    def from_rational(cls, k: int, value) -> "FieldElement":
        q = as_fraction(value)
        return cls._raw(k, (q,) + (Fraction(0),) * (field_degree(k) - 1))

    @classmethod
    def theta(cls, k: int) -> "FieldElement":
        """The generator ``2*cos(pi/k)``."""
        return cls(k, (0, 1))

    @property
    def field(self) -> str:
        return _field_name(self.k)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.k != self.k:
                raise FieldMismatchError(
                    f"cannot combine elements of {self.field} and {other.field}"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return FieldElement.from_rational(self.k, other)
        return None

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement._raw(self.k, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement._raw(self.k, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement._raw(self.k, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return FieldElement._raw(self.k, tuple(a * other for a in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_rational():
            s = o.coords[0]
            return FieldElement._raw(self.k, tuple(a * s for a in self.coords))
        if self.is_rational():
            s = self.coords[0]
            return FieldElement._raw(self.k, tuple(s * b for b in o.coords))
        prod = [Fraction(0)] * (2 * len(self.coords) - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        prod[i + j] += a * b
        return FieldElement._raw(self.k, _reduce(prod, minimal_polynomial(self.k).coefficients))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                raise ZeroDivisionError("division by zero in " + self.field)
            return FieldElement._raw(self.k, tuple(a / other for a in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * field_inverse(o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * field_inverse(self)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return field_inverse(self) ** (-n)
        result = FieldElement.from_rational(self.k, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -------------------------------------------------------

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            if other.k == self.k:
                return self.coords == other.coords
            return self.is_rational() and other.is_rational() and self.coords[0] == other.coords[0]
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.k, self.coords))

    # -- display ----------------------------------------------------------

    def __float__(self):
        theta = 2.0 * math.cos(math.pi / self.k)
        return float(sum(float(c) * theta**i for i, c in enumerate(self.coords)))

    def __repr__(self):
        return f"FieldElement(k={self.k}, coords=[{', '.join(str(c) for c in self.coords)}])"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if not c:
                continue
            mono = "" if i == 0 else ("θ" if i == 1 else f"θ^{i}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not terms:
                terms.append(("-" if c < 0 else "") + body)
            else:
                terms.append(("- " if c < 0 else "+ ") + body)
        return " ".join(terms) if terms else "0"

    def to_json(self) -> dict:
        return {"coords": [str(c) for c in self.coords], "theta": f"2cos(pi/{self.k})"}

    @classmethod
    def from_json(cls, data: dict) -> "FieldElement":
        theta = data["theta"]
        if not (theta.startswith("2cos(pi/") and theta.endswith(")")):
            raise ValueError(f"unrecognised generator {theta!r}")
        return cls(int(theta[len("2cos(pi/"):-1]), [Fraction(c) for c in data["coords"]])


def _reduce(prod, mp):
    """Reduce a coefficient list modulo the monic polynomial ``mp``."""
    d = len(mp) - 1
    prod = list(prod)
    for i in range(len(prod) - 1, d - 1, -1):
        c = prod[i]
        if c:
            for j in range(d):
                if mp[j]:
                    prod[i - d + j] -= c * mp[j]
    out = prod[:d]
    out += [Fraction(0)] * (d - len(out))
    return tuple(Fraction(c) for c in out)


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return q, _trim(a[: len(b) - 1])


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def field_inverse(x: FieldElement) -> FieldElement:
    """Multiplicative inverse via the extended Euclidean algorithm against the minimal polynomial."""
    if not x:
        raise ZeroDivisionError(f"zero has no inverse in {x.field}")
    if x.is_rational():
        return FieldElement.from_rational(x.k, 1 / x.coords[0])
    # invariant: s_i * x == r_i  (mod minpoly)
    r0 = [Fraction(c) for c in minimal_polynomial(x.k).coefficients]
    r1 = _trim(x.coords)
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, rem = _poly_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    # r1 is a nonzero constant because the minimal polynomial is irreducible
    inv = [c / r1[0] for c in s1]
    return FieldElement(x.k, inv)


# ---------------------------------------------------------------------------
# Chebyshev values at |cos(pi/k)|

_cheb_cache: dict[tuple[str, int], list] = {}
_cheb_lock = threading.Lock()


def abs_cos(k: int) -> FieldElement:
    """``|cos(pi/k)|`` as a field element (``-theta/2`` for k = 1, else ``theta/2``)."""
    theta = FieldElement.theta(k)
    return theta * Fraction(-1, 2) if k == 1 else theta * Fraction(1, 2)


def cheb_value(kind: str, n: int, k: int) -> FieldElement:
    """Exact ``T_n(|cos(pi/k)|)`` or ``U_n(|cos(pi/k)|)``; ``U_{-1}`` is zero."""
    if kind not in ("T", "U"):
        raise ValueError(f"kind must be 'T' or 'U', got {kind!r}")
    if n < 0:
        if kind == "U" and n == -1:
            return FieldElement.from_rational(k, 0)
        raise ValueError(f"{kind}_{n} is undefined")
    key = (kind, k)
    with _cheb_lock:
        seq = _cheb_cache.get(key)
        if seq is None:
            c = abs_cos(k)
            one = FieldElement.from_rational(k, 1)
            seq = [one, c if kind == "T" else c * 2]
            _cheb_cache[key] = seq
        if n >= len(seq):
            two_c = abs_cos(k) * 2
            while len(seq) <= n:
                seq.append(two_c * seq[-1] - seq[-2])
        return seq[n]
