"""T-basis expansions of sieved families through the coupled p/q tables.

For a parent family with connection coefficients ``r_n(j)`` (``P_n`` in
terms of ``T_{n-2j}``) two triangular tables ``p_n(j)``, ``q_n(j)`` are
built by a coupled recursion in the parent's ``a_n``.  The k-sieved
polynomial of degree ``m = k n + i`` is then read off directly:

    P_m(x; k) = sum_j  p_n(j) T_{kn-2jk-i}(x) + q_n(j) T_{kn-2jk+i}(x).

The tables depend on neither ``i`` nor ``k``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .chebpoly import ChebPoly
from .errors import InternalConsistencyError
from .family import Family, polynomial, polynomials
from .field import as_fraction

__all__ = [
    "ExpansionTables",
    "r_coeffs",
    "pq_tables",
    "sieved_poly_expansion",
    "p_via_partial_sums",
    "ultraspherical_rp",
    "pochhammer",
]


@dataclass(frozen=True)
class ExpansionTables:
    """Rows ``0..N`` of the triangles r, p, q; row n has ``n//2 + 1`` entries."""

    N: int
    r: tuple
    p: tuple
    q: tuple

    def p_at(self, n: int, j: int) -> Fraction:
        # p_{n-1}(-1) = 0 and anything outside the triangle reads as 0
        if j < 0 or j > n // 2:
            return Fraction(0)
        return self.p[n][j]

    def q_at(self, n: int, j: int) -> Fraction:
        # q_{2n-1}(n) = 0 is the only overflow that occurs
        if j < 0 or j > n // 2:
            return Fraction(0)
        return self.q[n][j]

    def r_at(self, n: int, j: int) -> Fraction:
        if j < 0 or j > n // 2:
            return Fraction(0)
        return self.r[n][j]

    def to_json(self) -> dict:
        def rows(t):
            return [[str(v) for v in row] for row in t]

        return {"N": self.N, "r": rows(self.r), "p": rows(self.p), "q": rows(self.q)}

    @classmethod
    def from_json(cls, data: dict) -> "ExpansionTables":
        def rows(t):
            return tuple(tuple(Fraction(v) for v in row) for row in t)

        return cls(int(data["N"]), rows(data["r"]), rows(data["p"]), rows(data["q"]))


def r_coeffs(spec: Family, n: int) -> list:
    """``[r_n(0), ..., r_n(n//2)]``: coefficients of ``T_n, T_{n-2}, ...`` in ``P_n``."""
    P = polynomial(spec, n)
    return [P[n - 2 * j] for j in range(n // 2 + 1)]


class _TableCache:
    def __init__(self):
        self._lock = threading.Lock()
        self._data: dict[str, tuple[list, list]] = {}

    def rows(self, spec, N):
        with self._lock:
            entry = self._data.get(spec.fingerprint)
            if entry is None:
                entry = ([[Fraction(0)]], [[Fraction(1)]])
                self._data[spec.fingerprint] = entry
            p, q = entry
            while len(p) <= N:
                _append_row(spec, p, q)
            return p[: N + 1], q[: N + 1]

    def clear(self):
        with self._lock:
            self._data.clear()


_tables = _TableCache()


def _append_row(spec, p, q):
    n = len(p)
    a = spec.a(n)
    two_a = 2 * a
    w = two_a - 1
    prev_p, prev_q = p[n - 1], q[n - 1]

    def pp(j):
        return prev_p[j] if 0 <= j < len(prev_p) else Fraction(0)

    def qq(j):
        return prev_q[j] if 0 <= j < len(prev_q) else Fraction(0)

    row_p, row_q = [], []
    for j in range(n // 2 + 1):
        if n % 2 == 0 and j == n // 2:
            row_p.append(Fraction(0))
            row_q.append(pp(n // 2 - 1))
        else:
            row_p.append((w * qq(j) + pp(j - 1)) / two_a)
            row_q.append((qq(j) + w * pp(j - 1)) / two_a)
    p.append(row_p)
    q.append(row_q)


def pq_tables(spec: Family, N: int) -> ExpansionTables:
    """Rows ``0..N`` of r (from the generated polynomials) and of p, q (by recursion)."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    p, q = _tables.rows(spec, N)
    P = polynomials(spec, N)
    r = tuple(tuple(P[n][n - 2 * j] for j in range(n // 2 + 1)) for n in range(N + 1))
    return ExpansionTables(N, r, tuple(tuple(row) for row in p), tuple(tuple(row) for row in q))


def sieved_poly_expansion(spec: Family, k: int, m: int) -> ChebPoly:
    """``P_m(x; k)`` of the k-sieved family assembled from the p/q tables of ``spec``."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    if m < 0:
        raise ValueError("degree must be nonnegative")
    n, i = divmod(m, k)
    p, q = _tables.rows(spec, n)
    pn, qn = p[n], q[n]
    coeffs: dict[int, Fraction] = {}
    for j in range(n // 2 + 1):
        base = k * n - 2 * j * k
        lo, hi = base - i, base + i
        if pn[j]:
            if lo < 0:
                raise InternalConsistencyError(f"nonzero p_{n}({j}) meets T_{lo}")
            coeffs[lo] = coeffs.get(lo, 0) + pn[j]
        if qn[j]:
            coeffs[hi] = coeffs.get(hi, 0) + qn[j]
    return ChebPoly(coeffs)


def p_via_partial_sums(spec: Family, n: int, j: int) -> Fraction:
    """``sum_{i<=j} [r_n(i) - r_{n+1}(i)]``, which reproduces ``p_n(j)``."""
    if not 0 <= j <= n // 2:
        raise ValueError(f"j must lie in 0..{n // 2}")
    rn, rn1 = r_coeffs(spec, n), r_coeffs(spec, n + 1)
    return sum((rn[i] - rn1[i] for i in range(j + 1)), Fraction(0))


def pochhammer(x: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for i in range(n):
        out *= x + i
    return out


def ultraspherical_rp(alpha, n: int, j: int) -> tuple:
    """Closed-form ``(r_n(j), p_n(j))`` for the ultraspherical family with parameter ``alpha``."""
    alpha = as_fraction(alpha)
    if alpha <= -1:
        raise ValueError(f"alpha must exceed -1, got {alpha}")
    if alpha == Fraction(-1, 2):
        raise ValueError("alpha = -1/2 is the Chebyshev family; the closed forms do not apply")
    if not 0 <= j <= n // 2:
        raise ValueError(f"j must lie in 0..{n // 2}")
    b = alpha + Fraction(1, 2)
    den = pochhammer(2 * alpha + 1, n)
    if n % 2 == 0 and j == n // 2:
        return comb(n, j) * pochhammer(b, j) ** 2 / den, Fraction(0)
    r = 2 * comb(n, j) * pochhammer(b, j) * pochhammer(b, n - j) / den
    return r, (2 * j + 2 * alpha + 1) / (2 * n + 4 * alpha + 2) * r


def clear_caches() -> None:
    _tables.clear()
