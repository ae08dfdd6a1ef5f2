"""Finite-horizon decision procedures for k-sievedness.

A family is k-sieved when ``c_n = 1/2`` for every ``n`` not divisible by
``k``.  Besides testing that literally, the family can be tested through
the operators A_k and D_k: eigenvector property of A_k, vanishing of
``alpha_{n+1}(n-1;k)``, the partial-sum identity
``4 sum_{j<=n} a_{j-1} c_j = n + 1`` (k not dividing n), the kernel
polynomial property ``D_k P_n = D_k P_n(1) P*_{n-1}``, and the kappa/sigma
coincidences.  For ``k >= 2`` all of them are equivalent; for ``k = 1`` the
D_1 conditions single out the ultraspherical families instead.

Every check runs over a horizon ``N`` and never claims more than that.
A check at horizon N only reads coefficients up to ``c_N``, so a family
that is sieved up to N passes all of them.  Conversely, a check only
*detects* a bad coefficient up to its reach (see :func:`reach`); the
report cross-validates verdicts within those reaches.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .chebpoly import ChebPoly, evaluate, mul, one_minus_x2
from .errors import InternalConsistencyError
from .family import Family, expand_in_P, kernel_polynomial, polynomials
from .field import FieldElement, cheb_value
from .operators import alpha_table, apply_Ak, apply_Dk, kappa_table

__all__ = [
    "Verdict",
    "CharacterizationReport",
    "check_sieved_direct",
    "check_eigen",
    "check_alpha_vanishing",
    "check_Dk_kernel_property",
    "check_kappa_conditions",
    "verify_central_equation",
    "check_ultraspherical_fit",
    "characterization_report",
    "reach",
    "DEFAULT_HORIZON",
]

DEFAULT_HORIZON = 24
_HALF = Fraction(1, 2)

SIEVED = "sieved"
EIGENVECTOR = "eigenvector"
ALPHA_VANISHING = "alpha-vanishing"
PARTIAL_SUM = "partial-sum"
KERNEL_POLYNOMIAL = "kernel-polynomial"
KAPPA = "kappa"
KAPPA_WEAKENED = "kappa-weakened"
ULTRASPHERICAL = "ultraspherical"

AVERAGING_GROUP = (EIGENVECTOR, ALPHA_VANISHING, PARTIAL_SUM)
DERIVATIVE_GROUP = (KERNEL_POLYNOMIAL, KAPPA, KAPPA_WEAKENED)


def _exact_json(value):
    if isinstance(value, FieldElement):
        return value.to_json()
    if isinstance(value, ChebPoly):
        return {str(n): _exact_json(c) for n, c in value.items()}
    if isinstance(value, Fraction):
        return str(value)
    return value


def _field_of(value, k):
    if isinstance(value, (FieldElement, ChebPoly)) and value.k is not None:
        return f"Q(cos(pi/{value.k}))"
    return "Q" if k is None else f"Q(cos(pi/{k}))"


@dataclass(frozen=True)
class Verdict:
    """Outcome of one condition: holds up to ``horizon`` or fails at ``n`` with an exact witness.

    ``witness["value"]`` is the nonzero exact quantity that should have
    vanished (or the offending coefficient); other entries give context.
    """

    condition: str
    k: int
    horizon: int
    holds: bool
    n: int | None = None
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {
            "condition": self.condition,
            "verdict": "holds" if self.holds else "fails",
            "horizon": self.horizon,
            "n": self.n,
        }
        if self.witness is not None:
            value = self.witness["value"]
            w = {"value": str(value), "exact": _exact_json(value), "field": _field_of(value, self.k)}
            for name, v in self.witness.items():
                if name != "value":
                    w[name] = _exact_json(v)
            out["witness"] = w
        return out


def _holds(name, k, N):
    return Verdict(name, k, N, True)


def _fails(name, k, N, n, value, **extra):
    if not value:
        raise InternalConsistencyError(f"{name}: failure at n={n} with a zero witness")
    return Verdict(name, k, N, False, n, {"value": value, **extra})


def check_sieved_direct(spec: Family, k: int, N: int) -> Verdict:
    """``c_n = 1/2`` for every ``n <= N`` with ``k`` not dividing ``n``."""
    for n in range(1, N + 1):
        if n % k:
            c = spec.c(n)
            if c != _HALF:
                return _fails(SIEVED, k, N, n, c, expected=_HALF)
    return _holds(SIEVED, k, N)


def check_eigen(spec: Family, k: int, N: int) -> Verdict:
    """Every ``P_n``, ``n <= N``, is an eigenvector of A_k with eigenvalue ``T_n(|cos(pi/k)|)``."""
    P = polynomials(spec, N)
    for n in range(N + 1):
        lam = cheb_value("T", n, k)
        residual = apply_Ak(P[n], k) - P[n].scale(lam)
        if residual:
            return _fails(EIGENVECTOR, k, N, n, residual, eigenvalue=lam)
        if evaluate(P[n], k) != lam:
            raise InternalConsistencyError(
                f"P_{n} is an eigenvector of A_{k} but P_{n}(|cos(pi/{k})|) differs from T_{n}"
            )
    return _holds(EIGENVECTOR, k, N)


def check_alpha_vanishing(spec: Family, k: int, N: int) -> Verdict:
    """``alpha_{n+1}(n-1;k) = 0`` for ``1 <= n <= N-1``."""
    table = alpha_table(spec, k, N)
    for n in range(1, N):
        v = table.alpha_at(n + 1, n - 1)
        if v:
            return _fails(ALPHA_VANISHING, k, N, n, v)
    return _holds(ALPHA_VANISHING, k, N)


def verify_central_equation(spec: Family, k: int, N: int) -> Verdict:
    """``4 sum_{j=1}^n a_{j-1} c_j = n + 1`` for every ``n <= N`` not divisible by ``k``."""
    total = Fraction(0)
    for n in range(1, N + 1):
        total += spec.a(n - 1) * spec.c(n)
        if n % k and 4 * total != n + 1:
            return _fails(PARTIAL_SUM, k, N, n, 4 * total - (n + 1), lhs=4 * total, rhs=Fraction(n + 1))
    return _holds(PARTIAL_SUM, k, N)


def check_Dk_kernel_property(spec: Family, k: int, N: int) -> Verdict:
    """``D_k P_n = D_k P_n(1) P*_{n-1}`` for ``1 <= n <= N``.

    Cross-checked per n against the equivalent statement that
    ``(1 - x^2) D_k P_n`` has no component along ``P_0..P_{n-2}``.
    """
    P = polynomials(spec, N)
    w = one_minus_x2()
    for n in range(1, N + 1):
        image = apply_Dk(P[n], k)
        residual = image - kernel_polynomial(spec, n - 1).scale(evaluate(image))
        coeffs = expand_in_P(spec, mul(w, image))
        leak = next(((j, coeffs[j]) for j in range(min(n - 1, len(coeffs))) if coeffs[j]), None)
        if bool(residual) != (leak is not None):
            raise InternalConsistencyError(
                f"kernel-polynomial and orthogonality forms disagree for P_{n}, k={k}"
            )
        if residual:
            return _fails(
                KERNEL_POLYNOMIAL, k, N, n, residual,
                orthogonality_index=leak[0], orthogonality_coefficient=leak[1],
            )
    return _holds(KERNEL_POLYNOMIAL, k, N)


def check_kappa_conditions(spec: Family, k: int, N: int, mode: str = "full") -> Verdict:
    """kappa/sigma coincidences on selected entries of the kappa table.

    ``full``: for ``1 <= n <= N-4``, ``kappa_{n+2}(n-1) = sigma(n+2)`` and
    some ``m <= (n-1)//2`` has ``kappa_{n+4}(n-1-2m) = sigma(n+4)``.

    ``weakened``: for ``k >= 3`` the existence clause is kept only at
    ``n = 1``; for ``k`` in {1, 2} the odd-row variant
    ``kappa_{2n+1}(2n-2) = sigma(2n+1)`` plus some ``m < n`` with
    ``kappa_{2n+3}(2m) = sigma(2n+3)`` is used for ``2n + 3 <= N``.
    """
    if mode not in ("full", "weakened"):
        raise ValueError(f"unknown mode {mode!r}; expected 'full' or 'weakened'")
    if N < 5:
        raise ValueError(f"kappa conditions need rows up to n + 4; horizon {N} is below 5")
    name = KAPPA if mode == "full" else KAPPA_WEAKENED
    t = kappa_table(spec, k, N)

    def exists(row, cols):
        s = t.sigma(row)
        return any(t.kappa_at(row, col) == s for col in cols)

    def fail_exists(n, row, cols):
        col = cols[0]
        return _fails(
            name, k, N, n, t.kappa_at(row, col) - t.sigma(row),
            kappa=t.kappa_at(row, col), sigma=t.sigma(row), row=row, column=col,
        )

    if mode == "weakened" and k <= 2:
        for n in range(1, (N - 3) // 2 + 1):
            row, col = 2 * n + 1, 2 * n - 2
            if t.kappa_at(row, col) != t.sigma(row):
                return _fails(
                    name, k, N, n, t.kappa_at(row, col) - t.sigma(row),
                    kappa=t.kappa_at(row, col), sigma=t.sigma(row), row=row, column=col,
                )
            cols = [2 * m for m in range(n)]
            if not exists(2 * n + 3, cols):
                return fail_exists(n, 2 * n + 3, cols)
        return _holds(name, k, N)

    for n in range(1, N - 3):
        row, col = n + 2, n - 1
        if t.kappa_at(row, col) != t.sigma(row):
            return _fails(
                name, k, N, n, t.kappa_at(row, col) - t.sigma(row),
                kappa=t.kappa_at(row, col), sigma=t.sigma(row), row=row, column=col,
            )
        if mode == "full" or n == 1:
            cols = [n - 1 - 2 * m for m in range((n - 1) // 2 + 1)]
            if not exists(n + 4, cols):
                return fail_exists(n, n + 4, cols)
    return _holds(name, k, N)


def check_ultraspherical_fit(spec: Family, N: int) -> Verdict:
    """``c_n = n / (2n + 2 alpha + 1)`` for ``n <= N`` with ``alpha = 1/(2 c_1) - 3/2``."""
    alpha = 1 / (2 * spec.c(1)) - Fraction(3, 2)
    for n in range(2, N + 1):
        expected = Fraction(n) / (2 * n + 2 * alpha + 1)
        c = spec.c(n)
        if c != expected:
            return _fails(ULTRASPHERICAL, 1, N, n, c - expected, c=c, expected=expected, alpha=alpha)
    return Verdict(ULTRASPHERICAL, 1, N, True, witness=None)


def fitted_alpha(spec: Family) -> Fraction:
    return 1 / (2 * spec.c(1)) - Fraction(3, 2)


def reach(condition: str, k: int, N: int) -> int:
    """Largest M such that passing ``condition`` at horizon N forces the reference condition up to M.

    The reference is :func:`check_sieved_direct` (for ``k = 1`` and the
    D_1 conditions, :func:`check_ultraspherical_fit`).  Values follow the
    inductive arguments that recover ``c_{n+1}`` from table entries of
    row ``n + 2`` (``k >= 3``) or row ``n + 3`` (``k = 2``).
    """
    if condition in (SIEVED, PARTIAL_SUM, ULTRASPHERICAL):
        return N
    if condition in (EIGENVECTOR, ALPHA_VANISHING):
        return max(N - 1, 0)
    if k == 1:
        if condition == KERNEL_POLYNOMIAL:
            return max(N - 1, 0)
        if condition == KAPPA:
            return max(N - 3, 0)
        if condition == KAPPA_WEAKENED:
            return max(N - 4, 0)
    if k == 2:
        if condition == KERNEL_POLYNOMIAL:
            return max(N - 2, 0) if N >= 4 else 0
        if condition in (KAPPA, KAPPA_WEAKENED):
            return max(N - 4, 0) if N >= 6 else 0
    if condition == KERNEL_POLYNOMIAL:
        return N - 1 if N >= 5 else 0
    if condition in (KAPPA, KAPPA_WEAKENED):
        return N - 3 if N >= 6 else 0
    raise ValueError(f"unknown condition {condition!r}")


@dataclass
class CharacterizationReport:
    """All condition verdicts for one family, order ``k`` and horizon ``N``.

    ``beyond_reach`` lists conditions that hold up to N although the
    reference fails at an index they cannot see at this horizon.
    """

    fingerprint: str
    k: int
    N: int
    verdicts: dict
    alpha: Fraction | None = None
    beyond_reach: list = field(default_factory=list)

    @property
    def sieved(self) -> bool:
        return self.verdicts[SIEVED].holds

    @property
    def all_hold(self) -> bool:
        return all(v.holds for v in self.verdicts.values())

    def failing(self) -> list:
        return [name for name, v in self.verdicts.items() if not v.holds]

    def to_json(self) -> dict:
        out = {
            "family": self.fingerprint,
            "k": self.k,
            "horizon": self.N,
            "conditions": [v.to_json() for v in self.verdicts.values()],
            "beyond_reach": list(self.beyond_reach),
        }
        if self.alpha is not None:
            out["fitted_alpha"] = str(self.alpha)
        return out


def _run_all(spec, k, N):
    jobs = {
        SIEVED: lambda: check_sieved_direct(spec, k, N),
        EIGENVECTOR: lambda: check_eigen(spec, k, N),
        ALPHA_VANISHING: lambda: check_alpha_vanishing(spec, k, N),
        PARTIAL_SUM: lambda: verify_central_equation(spec, k, N),
        KERNEL_POLYNOMIAL: lambda: check_Dk_kernel_property(spec, k, N),
        KAPPA: lambda: check_kappa_conditions(spec, k, N, "full"),
        KAPPA_WEAKENED: lambda: check_kappa_conditions(spec, k, N, "weakened"),
    }
    if k == 1:
        jobs[ULTRASPHERICAL] = lambda: check_ultraspherical_fit(spec, N)
    with ThreadPoolExecutor(max_workers=len(jobs)) as pool:
        futures = {name: pool.submit(fn) for name, fn in jobs.items()}
        return {name: futures[name].result() for name in jobs}


def _reference_for(name, k):
    if k == 1 and name in DERIVATIVE_GROUP:
        return ULTRASPHERICAL
    return SIEVED


def _disagreement(verdicts, k, N):
    """First (condition, reference) pair whose verdicts contradict each other, else None."""
    for name, v in verdicts.items():
        if name in (SIEVED, ULTRASPHERICAL):
            continue
        ref = verdicts[_reference_for(name, k)]
        if ref.holds and not v.holds:
            return name, ref.condition
        if v.holds and not ref.holds and ref.n <= reach(name, k, N):
            return name, ref.condition
    return None


def characterization_report(spec: Family, k: int, N: int = DEFAULT_HORIZON) -> CharacterizationReport:
    """Run every condition at horizon N and cross-validate them.

    Raises :class:`InternalConsistencyError` naming two disagreeing
    conditions and the smallest horizon at which they disagree.
    """
    if N < 5:
        raise ValueError(f"horizon must be at least 5, got {N}")
    verdicts = _run_all(spec, k, N)
    clash = _disagreement(verdicts, k, N)
    if clash is not None:
        first = N
        for M in range(5, N):
            if _disagreement(_run_all(spec, k, M), k, M) is not None:
                first = M
                break
        raise InternalConsistencyError(
            f"conditions {clash[0]!r} and {clash[1]!r} disagree for k={k} (first at horizon {first})"
        )
    beyond = [
        name for name, v in verdicts.items()
        if v.holds and not verdicts[_reference_for(name, k)].holds
    ]
    return CharacterizationReport(
        spec.fingerprint, k, N, verdicts,
        alpha=fitted_alpha(spec) if k == 1 else None,
        beyond_reach=beyond,
    )
