"""The sieved Askey-Wilson operator D_k, the averaging operator A_k and their Fourier tables.

On the T-basis, with ``c = |cos(pi/k)|``:

    D_k T_n = U_{n-1}(c) U_{n-1}(x),     A_k T_n = T_n(c) T_n(x).

``D_1`` is d/dx and ``A_1`` the identity.  The Fourier coefficients
``kappa_n(j;k)`` and ``alpha_n(j;k)`` are the coefficients of ``D_k P_n`` and
``A_k P_n`` in the basis ``{h(j) P_j}``; they are obtained by exact
expansion rather than integration.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .chebpoly import ChebPoly, mul, u_in_t
from .errors import FieldMismatchError
from .family import Family, expand_in_P, polynomials, weight_h
from .field import FieldElement, abs_cos, cheb_value

__all__ = [
    "apply_Dk",
    "apply_Ak",
    "FourierTable",
    "fourier_table",
    "kappa_table",
    "alpha_table",
    "sigma_val",
    "alpha_closed_forms",
    "product_rule_residual",
    "kappa_recurrence_residual",
]


def _check_field(P, k):
    if P.k is not None and P.k != k:
        raise FieldMismatchError(f"polynomial over Q(cos(pi/{P.k})) given to an operator of order {k}")


def apply_Dk(P: ChebPoly, k: int) -> ChebPoly:
    """Image of ``P`` under D_k; coefficients lie in Q(cos(pi/k))."""
    _check_field(P, k)
    out: dict = {}
    for n, c in P.items():
        if n == 0:
            continue
        u = cheb_value("U", n - 1, k)
        if not u:
            continue
        w = u * c
        for m, b in u_in_t(n - 1).items():
            s = out.get(m)
            s = w * b if s is None else s + w * b
            out[m] = s
    return ChebPoly({m: v for m, v in out.items() if v}, k=k)


def apply_Ak(P: ChebPoly, k: int) -> ChebPoly:
    """Image of ``P`` under A_k."""
    _check_field(P, k)
    return ChebPoly({n: cheb_value("T", n, k) * c for n, c in P.items()}, k=k)


@dataclass(frozen=True)
class FourierTable:
    """``kappa[n][j]`` for ``j < n`` and ``alpha[n][j]`` for ``j <= n``, rows ``0..N``.

    Either part may be ``None`` when only the other was requested.
    """

    k: int
    N: int
    kappa: tuple | None = None
    alpha: tuple | None = None

    def _zero(self):
        return FieldElement.from_rational(self.k, 0)

    def kappa_at(self, n: int, j: int) -> FieldElement:
        if self.kappa is None:
            raise ValueError("table was built without kappa values")
        if n < 0 or j < 0 or j >= n:
            return self._zero()
        return self.kappa[n][j]

    def alpha_at(self, n: int, j: int) -> FieldElement:
        if self.alpha is None:
            raise ValueError("table was built without alpha values")
        if n < 0 or j < 0 or j > n:
            return self._zero()
        return self.alpha[n][j]

    def sigma(self, n: int) -> FieldElement:
        return self.kappa_at(n, n - 1)

    def to_json(self) -> dict:
        def rows(t):
            if t is None:
                return None
            return [[{**v.to_json(), "approx": float(v)} for v in row] for row in t]

        return {
            "k": self.k,
            "N": self.N,
            "field": f"Q(cos(pi/{self.k}))",
            "kappa": rows(self.kappa),
            "alpha": rows(self.alpha),
            "sigma": None if self.kappa is None else [
                {**self.sigma(n).to_json(), "approx": float(self.sigma(n))} for n in range(1, self.N + 1)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FourierTable":
        def rows(t):
            if t is None:
                return None
            return tuple(tuple(FieldElement.from_json(v) for v in row) for row in t)

        return cls(int(data["k"]), int(data["N"]), rows(data.get("kappa")), rows(data.get("alpha")))


class _FourierCache:
    def __init__(self):
        self._lock = threading.Lock()
        self._data: dict[tuple, dict] = {}

    def rows(self, spec, k, N, part):
        key = (spec.fingerprint, k)
        with self._lock:
            entry = self._data.setdefault(key, {"kappa": [], "alpha": []})
            seq = entry[part]
            if len(seq) <= N:
                P = polynomials(spec, N)
                h = weight_h(spec, N)
                op = apply_Dk if part == "kappa" else apply_Ak
                zero = FieldElement.from_rational(k, 0)
                while len(seq) <= N:
                    n = len(seq)
                    e = expand_in_P(spec, op(P[n], k))
                    width = n if part == "kappa" else n + 1
                    seq.append(tuple(e[j] / h[j] if j < len(e) else zero for j in range(width)))
            return tuple(seq[: N + 1])

    def clear(self):
        with self._lock:
            self._data.clear()


_fourier = _FourierCache()


def kappa_table(spec: Family, k: int, N: int) -> FourierTable:
    """``kappa_n(j;k)`` for ``0 <= j < n <= N``."""
    return FourierTable(k, N, kappa=_fourier.rows(spec, k, N, "kappa"))


def alpha_table(spec: Family, k: int, N: int) -> FourierTable:
    """``alpha_n(j;k)`` for ``0 <= j <= n <= N``."""
    return FourierTable(k, N, alpha=_fourier.rows(spec, k, N, "alpha"))


def fourier_table(spec: Family, k: int, N: int) -> FourierTable:
    return FourierTable(
        k, N, kappa=_fourier.rows(spec, k, N, "kappa"), alpha=_fourier.rows(spec, k, N, "alpha")
    )


def sigma_val(spec: Family, k: int, n: int) -> tuple:
    """``(kappa_n(n-1;k) from the table, U_{n-1}(|cos(pi/k)|) / (c_n h(n)))``."""
    if n < 1:
        raise ValueError("sigma is defined for n >= 1")
    table = kappa_table(spec, k, n)
    h = weight_h(spec, n)
    closed = cheb_value("U", n - 1, k) / (spec.c(n) * h[n])
    return table.sigma(n), closed


def alpha_closed_forms(spec: Family, k: int, n: int) -> tuple:
    """Closed forms of ``alpha_n(n;k)`` and ``alpha_n(n-2;k)`` (the latter ``None`` for n < 2)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    h = weight_h(spec, n)
    diag = cheb_value("T", n, k) / h[n]
    if n < 2:
        return diag, None
    c = abs_cos(k)
    sin2 = 1 - c * c
    partial = sum((spec.a(j - 1) * spec.c(j) for j in range(1, n)), Fraction(0))
    sub = cheb_value("U", n - 2, k) * sin2 * (n - 4 * partial) / (2 * spec.c(n - 1) * spec.c(n) * h[n])
    return diag, sub


def product_rule_residual(P: ChebPoly, Q: ChebPoly, k: int) -> ChebPoly:
    """``D_k(PQ) - (D_k P . A_k Q + A_k P . D_k Q)``; always the zero polynomial."""
    lhs = apply_Dk(mul(P, Q), k)
    rhs = mul(apply_Dk(P, k), apply_Ak(Q, k)) + mul(apply_Ak(P, k), apply_Dk(Q, k))
    return lhs - rhs


def kappa_recurrence_residual(spec: Family, k: int, n: int, j: int) -> FieldElement:
    """Residual of ``a_n kappa_{n+1}(j) + c_n kappa_{n-1}(j) = |cos(pi/k)| [a_j kappa_n(j+1) + c_j kappa_n(j-1)] + alpha_n(j)``."""
    if n < 0 or j < 0:
        raise ValueError("n and j must be nonnegative")
    t = fourier_table(spec, k, n + 1)
    lhs = spec.a(n) * t.kappa_at(n + 1, j)
    if n:
        lhs = lhs + spec.c(n) * t.kappa_at(n - 1, j)
    inner = spec.a(j) * t.kappa_at(n, j + 1)
    if j:
        inner = inner + spec.c(j) * t.kappa_at(n, j - 1)
    return lhs - abs_cos(k) * inner - t.alpha_at(n, j)


def clear_caches() -> None:
    _fourier.clear()
