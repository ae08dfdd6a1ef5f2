"""Sparse polynomials in the Chebyshev T-basis with exact coefficients."""

from __future__ import annotations

from fractions import Fraction

from .errors import FieldMismatchError
from .field import FieldElement, as_fraction, cheb_value

__all__ = [
    "ChebPoly",
    "mul",
    "mul_x",
    "u_in_t",
    "evaluate",
    "one_minus_x2",
    "from_monomial",
    "to_monomial",
]

_HALF = Fraction(1, 2)


def _scalar_field(c):
    return c.k if isinstance(c, FieldElement) else None


def _join_fields(a, b):
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise FieldMismatchError(f"polynomials over Q(cos(pi/{a})) and Q(cos(pi/{b})) cannot be combined")


class ChebPoly:
    """A polynomial ``sum c_n T_n(x)`` stored as ``{n: c_n}`` without zero entries.

    ``k`` is ``None`` for rational coefficients, otherwise the field
    Q(cos(pi/k)) the coefficients live in.
    """

    __slots__ = ("_coeffs", "k")

    def __init__(self, coeffs=None, k=None):
        clean = {}
        field = k
        for n, c in (coeffs or {}).items():
            if n < 0:
                raise ValueError(f"negative T-index {n}")
            if not isinstance(c, FieldElement):
                c = as_fraction(c)
            if c:
                clean[int(n)] = c
                field = _join_fields(field, _scalar_field(c))
        object.__setattr__(self, "_coeffs", clean)
        object.__setattr__(self, "k", field)

    def __setattr__(self, name, value):
        raise AttributeError("ChebPoly is immutable")

    @classmethod
    def _raw(cls, coeffs, k):
        obj = object.__new__(cls)
        object.__setattr__(obj, "_coeffs", coeffs)
        object.__setattr__(obj, "k", k)
        return obj

    @classmethod
    def T(cls, n: int, coeff=1) -> "ChebPoly":
        return cls({n: coeff})

    @classmethod
    def zero(cls, k=None) -> "ChebPoly":
        return cls._raw({}, k)

    @classmethod
    def one(cls) -> "ChebPoly":
        return cls._raw({0: Fraction(1)}, None)

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def __getitem__(self, n):
        return self._coeffs.get(n, Fraction(0))

    def items(self):
        return sorted(self._coeffs.items())

    def degree(self) -> float:
        return max(self._coeffs) if self._coeffs else float("-inf")

    def __bool__(self):
        return bool(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    # -- linear structure -------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, ChebPoly):
            if isinstance(other, (int, Fraction, FieldElement)):
                other = ChebPoly({0: other})
            else:
                return NotImplemented
        k = _join_fields(self.k, other.k)
        out = dict(self._coeffs)
        for n, c in other._coeffs.items():
            s = out.get(n)
            s = c if s is None else s + c
            if s:
                out[n] = s
            else:
                out.pop(n, None)
        return ChebPoly._raw(out, k)

    __radd__ = __add__

    def __neg__(self):
        return ChebPoly._raw({n: -c for n, c in self._coeffs.items()}, self.k)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            other = ChebPoly({0: other})
        if not isinstance(other, ChebPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "ChebPoly":
        if not isinstance(s, FieldElement):
            s = as_fraction(s)
        k = _join_fields(self.k, _scalar_field(s))
        if not s:
            return ChebPoly._raw({}, k)
        out = {}
        for n, c in self._coeffs.items():
            v = c * s
            if v:
                out[n] = v
        return ChebPoly._raw(out, k)

    def __mul__(self, other):
        if isinstance(other, ChebPoly):
            return mul(self, other)
        if isinstance(other, (int, Fraction, FieldElement)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, FieldElement):
            return self.scale(1 / other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(Fraction(1) / other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)) and not isinstance(other, bool):
            other = ChebPoly({0: other})
        if not isinstance(other, ChebPoly):
            return NotImplemented
        if self._coeffs.keys() != other._coeffs.keys():
            return False
        return all(c == other._coeffs[n] for n, c in self._coeffs.items())

    __hash__ = None

    # -- structure-specific operations -----------------------------------

    def compose_T(self, k: int) -> "ChebPoly":
        """``P(T_k(x))`` via ``T_n(T_k(x)) = T_{nk}(x)``."""
        return ChebPoly._raw({n * k: c for n, c in self._coeffs.items()}, self.k)

    def split_coordinates(self):
        """Split a field-valued polynomial into rational polynomials, one per power of theta."""
        if self.k is None:
            return [self]
        d = None
        parts = None
        for n, c in self._coeffs.items():
            if not isinstance(c, FieldElement):
                c = FieldElement.from_rational(self.k, c)
            if parts is None:
                d = len(c.coords)
                parts = [{} for _ in range(d)]
            for i, q in enumerate(c.coords):
                if q:
                    parts[i][n] = q
        if parts is None:
            from .field import field_degree

            return [ChebPoly.zero() for _ in range(field_degree(self.k))]
        return [ChebPoly._raw(p, None) for p in parts]

    # -- rendering --------------------------------------------------------

    def __repr__(self):
        return f"ChebPoly({self}, k={self.k})"

    def __str__(self):
        return self.render()

    def render(self, ascending: bool = False) -> str:
        """Text form such as ``1/2*T5 + 1/6*T3 + 1/3*T1``."""
        if not self._coeffs:
            return "0"
        order = sorted(self._coeffs, reverse=not ascending)
        parts = []
        for n in order:
            c = self._coeffs[n]
            if isinstance(c, FieldElement) and not c.is_rational():
                body = f"({c})*T{n}"
                parts.append(("+ " if parts else "") + body)
                continue
            q = c.coords[0] if isinstance(c, FieldElement) else c
            if parts:
                parts.append(("- " if q < 0 else "+ ") + f"{abs(q)}*T{n}")
            else:
                parts.append(f"{q}*T{n}")
        return " ".join(parts)


def mul_x(P: ChebPoly) -> ChebPoly:
    """``x * P`` using ``x T_n = (T_{n+1} + T_{n-1})/2`` and ``x T_0 = T_1``."""
    out: dict = {}

    def put(n, c):
        s = out.get(n)
        s = c if s is None else s + c
        if s:
            out[n] = s
        else:
            out.pop(n, None)

    for n, c in P._coeffs.items():
        if n == 0:
            put(1, c)
        else:
            h = c * _HALF
            put(n + 1, h)
            put(n - 1, h)
    return ChebPoly._raw(out, P.k)


def mul(P: ChebPoly, Q: ChebPoly) -> ChebPoly:
    """Exact product via ``T_m T_n = (T_{m+n} + T_{|m-n|})/2``."""
    k = _join_fields(P.k, Q.k)
    out: dict = {}
    for m, a in P._coeffs.items():
        for n, b in Q._coeffs.items():
            h = a * b * _HALF
            for idx in (m + n, abs(m - n)):
                s = out.get(idx)
                out[idx] = h if s is None else s + h
    return ChebPoly._raw({n: c for n, c in out.items() if c}, k)


_u_cache: dict[int, ChebPoly] = {}


def u_in_t(n: int) -> ChebPoly:
    """``U_n`` in the T-basis: ``2(T_n + T_{n-2} + ...)`` with a final ``T_0`` weight of 1."""
    if n < -1:
        raise ValueError(f"U_{n} is undefined")
    hit = _u_cache.get(n)
    if hit is not None:
        return hit
    coeffs = {}
    for m in range(n, -1, -2):
        coeffs[m] = Fraction(1) if m == 0 else Fraction(2)
    poly = ChebPoly._raw(coeffs, None)
    _u_cache[n] = poly
    return poly


def evaluate(P: ChebPoly, k: int | None = None):
    """Value at ``x = 1`` (``k=None``) or at ``x = |cos(pi/k)|``."""
    if k is None:
        total = Fraction(0)
        for c in P._coeffs.values():
            total = c + total
        return total
    _join_fields(P.k, k)
    total = FieldElement.from_rational(k, 0)
    for n, c in P._coeffs.items():
        total = total + c * cheb_value("T", n, k)
    return total


def one_minus_x2() -> ChebPoly:
    """``1 - x^2 = (T_0 - T_2)/2``."""
    return ChebPoly({0: _HALF, 2: -_HALF})


def from_monomial(coeffs) -> ChebPoly:
    """Convert ``sum coeffs[i] x^i`` into the T-basis."""
    result = ChebPoly.zero()
    power = ChebPoly.one()
    for c in coeffs:
        result = result + power.scale(c) if c else result
        power = mul_x(power)
    return result


def to_monomial(P: ChebPoly) -> list:
    """Coefficients of ``P`` in the monomial basis, lowest degree first."""
    if not P:
        return []
    deg = P.degree()
    t_prev, t_cur = [Fraction(1)], [Fraction(0), Fraction(1)]
    out = [Fraction(0)] * (deg + 1)
    out[0] = P[0]
    for n in range(1, deg + 1):
        c = P[n]
        if c:
            for i, t in enumerate(t_cur):
                if t:
                    out[i] = out[i] + c * t
        nxt = [Fraction(0)] + [2 * t for t in t_cur]
        for i, t in enumerate(t_prev):
            nxt[i] -= t
        t_prev, t_cur = t_cur, nxt
    return out
