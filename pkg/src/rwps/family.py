"""Random walk polynomial families.

A family is fixed by its recurrence coefficients ``c_n`` in (0, 1):

    x P_n(x) = a_n P_{n+1}(x) + c_n P_{n-1}(x),   a_n = 1 - c_n,  c_0 = 0,

with ``P_0 = 1`` so that ``P_n(1) = 1``.  Polynomials are returned in the
Chebyshev T-basis and are cached per family.
"""

from __future__ import annotations

import json
import random
import threading
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Callable

from .chebpoly import ChebPoly, mul, mul_x, one_minus_x2
from .errors import CoefficientRangeError, ConfigError, InvalidCoefficientError
from .field import FieldElement, as_fraction

__all__ = [
    "Family",
    "ChebyshevT",
    "Ultraspherical",
    "Table",
    "Sieved",
    "Custom",
    "coeff_c",
    "coeff_a",
    "sieve",
    "weight_h",
    "polynomial",
    "polynomials",
    "kernel_polynomial",
    "c_star",
    "expand_in_P",
    "family_from_json",
    "random_table",
]

_HALF = Fraction(1, 2)


class Family:
    """Base class: subclasses implement ``_c(n)`` for ``n >= 1``."""

    def _c(self, n: int) -> Fraction:
        raise NotImplementedError

    def c(self, n: int) -> Fraction:
        if n == 0:
            return Fraction(0)
        if n < 0:
            raise ValueError(f"coefficient index must be nonnegative, got {n}")
        value = self._c(n)
        if not 0 < value < 1:
            raise InvalidCoefficientError(n, value)
        return value

    def a(self, n: int) -> Fraction:
        return 1 - self.c(n)

    def to_json(self) -> dict:
        raise NotImplementedError

    @cached_property
    def fingerprint(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class ChebyshevT(Family):
    """``c_n = 1/2`` for all n; the only family fixed by every sieve."""

    def _c(self, n):
        return _HALF

    def to_json(self):
        return {"kind": "chebyshev_t"}


@dataclass(frozen=True)
class Ultraspherical(Family):
    """``c_n = n / (2n + 2 alpha + 1)`` for rational ``alpha > -1``."""

    alpha: Fraction

    def __post_init__(self):
        alpha = as_fraction(self.alpha)
        if alpha <= -1:
            raise ValueError(f"ultraspherical parameter must exceed -1, got {alpha}")
        object.__setattr__(self, "alpha", alpha)

    def _c(self, n):
        return Fraction(n) / (2 * n + 2 * self.alpha + 1)

    def to_json(self):
        return {"kind": "ultraspherical", "alpha": str(self.alpha)}


@dataclass(frozen=True)
class Table(Family):
    """Tabulated ``c_1, c_2, ...``; querying past the end is an error."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(as_fraction(v) for v in self.values))

    def _c(self, n):
        if n > len(self.values):
            raise CoefficientRangeError(n, len(self.values))
        return self.values[n - 1]

    def to_json(self):
        return {"kind": "table", "c": [str(v) for v in self.values]}


@dataclass(frozen=True)
class Sieved(Family):
    """``c(n;k) = c_{n/k}`` of ``inner`` when ``k | n``, else 1/2."""

    inner: Family
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"sieving order must be a positive integer, got {self.k!r}")

    def _c(self, n):
        if n % self.k:
            return _HALF
        return self.inner.c(n // self.k)

    def to_json(self):
        return {"kind": "sieved", "k": self.k, "inner": self.inner.to_json()}


@dataclass(frozen=True, eq=False)
class Custom(Family):
    """Closed-form family ``c_n = func(n)``; ``name`` must identify ``func`` uniquely."""

    name: str
    func: Callable[[int], Fraction]

    def _c(self, n):
        return as_fraction(self.func(n))

    def to_json(self):
        return {"kind": "custom", "name": self.name}

    def __eq__(self, other):
        return isinstance(other, Custom) and other.name == self.name

    def __hash__(self):
        return hash(("custom", self.name))


def coeff_c(spec: Family, n: int) -> Fraction:
    if n < 1:
        raise ValueError(f"c_n is queried for n >= 1, got {n}")
    return spec.c(n)


def coeff_a(spec: Family, n: int) -> Fraction:
    return spec.a(n)


def sieve(spec: Family, k: int) -> Family:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"sieving order must be a positive integer, got {k!r}")
    if k == 1:
        return spec
    return Sieved(spec, k)


def random_table(rng: random.Random, length: int, max_den: int = 40) -> Table:
    """A table family with random rational entries in (0, 1)."""
    values = []
    for _ in range(length):
        q = rng.randint(2, max_den)
        values.append(Fraction(rng.randint(1, q - 1), q))
    return Table(tuple(values))


def family_from_json(data, path: str = "family") -> Family:
    """Build a family from its JSON description; schema errors raise ConfigError naming the path."""
    if not isinstance(data, dict):
        raise ConfigError(path, "family must be a JSON object")
    kind = data.get("kind")
    if kind in ("chebyshev_t", "chebyshev-first-kind"):
        return ChebyshevT()
    if kind == "ultraspherical":
        if "alpha" not in data:
            raise ConfigError(f"{path}.alpha", "missing")
        alpha = _parse_rational(data["alpha"], f"{path}.alpha")
        if alpha <= -1:
            raise ConfigError(f"{path}.alpha", f"alpha = {alpha} must exceed -1")
        return Ultraspherical(alpha)
    if kind == "table":
        raw = data.get("c")
        if not isinstance(raw, list) or not raw:
            raise ConfigError(f"{path}.c", "expected a nonempty list of rationals")
        values = []
        for i, v in enumerate(raw):
            q = _parse_rational(v, f"{path}.c[{i}]")
            if not 0 < q < 1:
                raise ConfigError(f"{path}.c[{i}]", f"c_{i + 1} = {q} is not in (0, 1)")
            values.append(q)
        return Table(tuple(values))
    if kind == "sieved":
        k = data.get("k")
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise ConfigError(f"{path}.k", "expected a positive integer")
        if "inner" not in data:
            raise ConfigError(f"{path}.inner", "missing")
        return sieve(family_from_json(data["inner"], f"{path}.inner"), k)
    if kind == "random":
        seed = data.get("seed", 0)
        length = data.get("length", 64)
        if not isinstance(length, int) or length < 1:
            raise ConfigError(f"{path}.length", "expected a positive integer")
        return random_table(random.Random(seed), length)
    raise ConfigError(f"{path}.kind", f"unknown family kind {kind!r}")


def _parse_rational(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ConfigError(path, f"expected a rational as 'p/q' string, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(path, f"cannot parse {value!r} as a rational") from exc


# ---------------------------------------------------------------------------
# cached per-family sequences


class _SeqCache:
    def __init__(self):
        self._lock = threading.Lock()
        self._data: dict[str, list] = {}

    def extend(self, key, upto, first, step):
        """Return the sequence for ``key`` grown to include index ``upto``."""
        with self._lock:
            seq = self._data.get(key)
            if seq is None:
                seq = list(first)
                self._data[key] = seq
            while len(seq) <= upto:
                seq.append(step(seq))
            return seq

    def clear(self):
        with self._lock:
            self._data.clear()


_poly_cache = _SeqCache()
_h_cache = _SeqCache()


def weight_h(spec: Family, N: int) -> tuple:
    """``h(0..N)`` with ``h(0) = 1`` and ``h(n) = h(n-1) a_{n-1} / c_n``."""
    if N < 0:
        raise ValueError("N must be nonnegative")

    def step(seq):
        n = len(seq)
        return seq[-1] * spec.a(n - 1) / spec.c(n)

    return tuple(_h_cache.extend(spec.fingerprint, N, [Fraction(1)], step)[: N + 1])


def polynomials(spec: Family, N: int) -> list:
    """``[P_0, ..., P_N]`` in the T-basis."""
    if N < 0:
        return []

    def step(seq):
        n = len(seq) - 1
        nxt = mul_x(seq[n])
        if n:
            nxt = nxt - seq[n - 1].scale(spec.c(n))
        return nxt.scale(1 / spec.a(n))

    seq = _poly_cache.extend(spec.fingerprint, N, [ChebPoly.one()], step)
    return seq[: N + 1]


def polynomial(spec: Family, n: int) -> ChebPoly:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return polynomials(spec, n)[n]


def kernel_polynomial(spec: Family, n: int) -> ChebPoly:
    """``P_n^*``: the h-weighted average of ``P_n, P_{n-2}, ...``, normalized to 1 at x = 1."""
    h = weight_h(spec, n)
    P = polynomials(spec, n)
    total = Fraction(0)
    acc = ChebPoly.zero()
    for m in range(n, -1, -2):
        acc = acc + P[m].scale(h[m])
        total += h[m]
    return acc.scale(1 / total)


def c_star(spec: Family, n: int) -> tuple:
    """The constant in ``P_n^* = C (P_{n+2} - P_n)/(1 - x^2)`` by its two closed forms.

    Returns ``(ratio form, Christoffel-Darboux form)``.
    """
    h = weight_h(spec, n + 2)
    c1, c2 = spec.c(n + 1), spec.c(n + 2)
    parity_sum = sum(h[m] for m in range(n, -1, -2))
    ratio = -c1 * c2 * h[n + 2] / parity_sum
    cd = -2 * c1 * c2 * h[n + 2] / (sum(h[: n + 1]) + c1 * h[n + 1])
    return ratio, cd


def kernel_identity_residual(spec: Family, n: int) -> ChebPoly:
    """``(1-x^2) sum h(n-2j) P_{n-2j} + c_{n+1} c_{n+2} h(n+2) (P_{n+2} - P_n)``; zero for every family."""
    h = weight_h(spec, n + 2)
    P = polynomials(spec, n + 2)
    acc = ChebPoly.zero()
    for m in range(n, -1, -2):
        acc = acc + P[m].scale(h[m])
    lhs = mul(one_minus_x2(), acc)
    return lhs + (P[n + 2] - P[n]).scale(spec.c(n + 1) * spec.c(n + 2) * h[n + 2])


def _expand_rational(spec, poly):
    work = dict(poly.coeffs)
    if not work:
        return []
    d = max(work)
    P = polynomials(spec, d)
    out = [Fraction(0)] * (d + 1)
    for j in range(d, -1, -1):
        c = work.get(j)
        if not c:
            continue
        e = c / P[j][j]
        out[j] = e
        for m, pc in P[j].items():
            v = work.get(m, 0) - e * pc
            if v:
                work[m] = v
            else:
                work.pop(m, None)
    return out


def expand_in_P(spec: Family, poly: ChebPoly) -> list:
    """Coefficients ``e_0..e_d`` with ``poly = sum e_j P_j``."""
    if poly.k is None:
        return _expand_rational(spec, poly)
    parts = [_expand_rational(spec, p) for p in poly.split_coordinates()]
    length = max((len(p) for p in parts), default=0)
    out = []
    for j in range(length):
        coords = [p[j] if j < len(p) else Fraction(0) for p in parts]
        out.append(FieldElement(poly.k, coords))
    return out


def clear_caches() -> None:
    _poly_cache.clear()
    _h_cache.clear()
