"""Alternative q-Jacobi polynomials: base ``p = exp(pi i M / N)``, M odd,
Askey-Wilson parameters ``(a, b, 1, -1)``.

Here ``cd = -1 = p**N`` stops the family one step later: there are N + 2
polynomials (degrees 0..N+1) and the N + 1 zeros of ``P_{N+1}`` are
``x_s = 2 cos(pi M s / N)``, s = 0..N, with the end points carrying half
weight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..arith import RootOfUnity, jacobi_symbol, make_root, q_poch
from ..awp import (
    OrthogonalityReport,
    RecurrenceCoeffs,
    WeightTable,
    aw_xi_eta,
    coeffs_from_xi_eta,
    eval_all,
    gram_report,
)
from ..errors import ParameterConstraintError, ParityError
from ..tolerance import Tolerances, resolve

__all__ = [
    "AltQJacobiParams",
    "AltQJacobiResult",
    "check_aqj",
    "aqj_recurrence",
    "aqj_grid",
    "aqj_chi",
    "aqj_pN1",
    "aqj_pN1_derivative",
    "aqj_pN_closed",
    "aqj_weights",
    "aqj_all",
    "aqj_limits",
    "wilson_legendre_u",
    "wilson_legendre_coeffs",
    "wilson_legendre_gram",
]


@dataclass(frozen=True)
class AltQJacobiParams:
    a: complex
    b: complex
    root: RootOfUnity

    def __post_init__(self):
        if self.root.M % 2 == 0:
            raise ParityError("alternative q-Jacobi needs M odd (p^N = -1)")

    @classmethod
    def from_alpha_beta(cls, alpha: float, beta: float, root: RootOfUnity) -> "AltQJacobiParams":
        """``a = p**alpha``, ``b = -p**beta``."""
        return cls(root.p_pow(alpha), -root.p_pow(beta), root)


@dataclass(frozen=True)
class AltQJacobiResult:
    coeffs: RecurrenceCoeffs
    x: np.ndarray
    weights: WeightTable
    gram: OrthogonalityReport


def check_aqj(params: AltQJacobiParams, tol: Tolerances | None = None) -> None:
    """``ab, a, b`` must avoid every ``p**k``, k = 0..2N-1."""
    tol = resolve(tol)
    root = params.root
    pk = root.p_powers(np.arange(2 * root.N))
    for name, v in (("ab", params.a * params.b), ("a", params.a), ("b", params.b)):
        dist = np.abs(v - pk)
        k = int(np.argmin(dist))
        if dist[k] <= tol.cond:
            raise ParameterConstraintError(f"{name} lies within {dist[k]:.2e} of p^{k}",
                                           product=name, k=k)


def aqj_recurrence(params: AltQJacobiParams, tol: Tolerances | None = None) -> RecurrenceCoeffs:
    """Coefficients for degrees 0..N+1; ``u[N+1] = 0``."""
    check_aqj(params, tol)
    N = params.root.N
    a, b = params.a, params.b
    xi, eta = aw_xi_eta(a, b, 1.0, -1.0, params.root, N + 1, base="p")
    ea = np.clongdouble(a)
    return coeffs_from_xi_eta(xi, eta, ea + 1 / ea, N + 1)


def aqj_grid(root: RootOfUnity) -> np.ndarray:
    s = np.arange(root.N + 1)
    return 2 * np.cos(np.pi * root.M * s / root.N)


def aqj_chi(N: int) -> np.ndarray:
    chi = np.ones(N + 1)
    chi[0] = chi[-1] = 0.5
    return chi


def aqj_pN1(root: RootOfUnity, z):
    """``P_{N+1}(z + 1/z) = z**(-N-1) (z**2 - 1)(z**(2N) - 1)``."""
    z = np.asarray(z, dtype=complex)
    N = root.N
    return z ** (-N - 1) * (z * z - 1) * (z ** (2 * N) - 1)


def aqj_pN1_derivative(root: RootOfUnity) -> np.ndarray:
    """``P_{N+1}'(x_s) = 2N (-1)**s / chi_s``."""
    N = root.N
    s = np.arange(N + 1)
    return 2 * N * (-1.0) ** s / aqj_chi(N)


def aqj_pN_closed(params: AltQJacobiParams) -> np.ndarray:
    """``P_N(x_s)`` in closed form, s = 0..N."""
    root = params.root
    N = root.N
    p = root.p
    a, b = params.a, params.b
    DN = q_poch(-1.0, p, N) * q_poch(a, p, N) * q_poch(b, p, N) / q_poch(a * b / p, p, N)
    vals = [q_poch(p / a, p, s) * q_poch(p / b, p, s) / (q_poch(a, p, s) * q_poch(b, p, s))
            * (a * b / p) ** s for s in range(N + 1)]
    return DN * np.array(vals)


def aqj_weights(params: AltQJacobiParams, tol: Tolerances | None = None) -> WeightTable:
    """Closed-form weights on ``2 cos(pi M s / N)``, s = 0..N (``raw`` unrescaled)."""
    check_aqj(params, tol)
    root = params.root
    N = root.N
    p = root.p
    a, b = params.a, params.b
    AN = (q_poch(p, p, N) * q_poch(-a, p, N) * q_poch(-b, p, N)
          / (2 * N * q_poch(-a * b, p, N)))
    vals = [q_poch(a, p, s) * q_poch(b, p, s) * (-p / (a * b)) ** s
            / (q_poch(p / a, p, s) * q_poch(p / b, p, s)) for s in range(N + 1)]
    raw = AN * aqj_chi(N) * np.array(vals)
    return WeightTable(raw / raw.sum(), aqj_grid(root), None, "alt-q-jacobi", True, 0, raw,
                       {"A_N": AN})


def aqj_all(params: AltQJacobiParams, tol: Tolerances | None = None) -> AltQJacobiResult:
    """Recurrence, zeros and weights with the Gram check over degrees 0..N."""
    tol = resolve(tol)
    coeffs = aqj_recurrence(params, tol)
    wt = aqj_weights(params, tol)
    N = params.root.N
    P = eval_all(coeffs, wt.x, N)
    table = WeightTable(wt.w, wt.x, coeffs.h, wt.source, True, 0, wt.raw, wt.extras)
    return AltQJacobiResult(coeffs, wt.x, table, gram_report(P, wt.w, coeffs.h, tol.rel))


def wilson_legendre_u(N: int, n):
    """Recurrence coefficients of the discrete Legendre analog (``b_n = 0``).

    They are normalized for the variable ``y = x / 2 = cos(pi s / N)``, so they
    equal one quarter of the alternative q-Jacobi ``u_n`` in the limit
    ``a = -b -> p``; ``u_{N-1} = 0``.
    """
    n = np.asarray(n, dtype=float)
    c = math.pi / (2 * N)
    u = (np.sin(c * n) ** 2 * np.cos(c * (n - 1)) * np.cos(c * (n + 1))
         / (np.sin(c * (2 * n - 1)) * np.sin(c * (2 * n + 1))))
    return u if np.ndim(u) else float(u)


def wilson_legendre_coeffs(N: int) -> RecurrenceCoeffs:
    """Coefficients for degrees 0..N-1 of the discrete Legendre analog (M = 1),
    in the variable ``y = cos(pi s / N)``."""
    u = np.zeros(N)
    u[1:] = wilson_legendre_u(N, np.arange(1, N))
    h = np.cumprod(np.concatenate(([1.0], u[1:N])))
    nan = np.full(N, np.nan)
    return RecurrenceCoeffs(N - 1, u, np.zeros(N - 1), h, nan, nan)


def wilson_legendre_gram(N: int, tol: float = 1e-9) -> tuple[OrthogonalityReport, float]:
    """Orthogonality of the discrete Legendre analog on ``y_s = cos(pi s / N)``.

    The end weights vanish, so the support is s = 1..N-1 and degrees
    0..N-2 carry a full Gram check.  Degree N-1 has zero norm; the second
    return value is ``max_s |P_{N-1}(y_s)|`` on the support, which must vanish.
    """
    coeffs = wilson_legendre_coeffs(N)
    table = aqj_limits(make_root(1, N), "wilson-legendre")
    y = table.x[1:N] / 2
    w = table.w[1:N]
    P = eval_all(coeffs, y, N - 1).real
    rep = gram_report(P[:N - 1], w, coeffs.h[:N - 1], tol)
    return rep, float(np.abs(P[N - 1]).max())


def aqj_limits(root: RootOfUnity, which: str) -> WeightTable:
    """Limit weights on s = 0..N.

    ``"double-zero-limit"``: ``a, b -> 0``.  ``"half-gauss"``: ``a = p**(1/2)``,
    ``b -> 0``; ``extras`` holds both product and Jacobi-symbol forms of the
    constant.  ``"wilson-legendre"``: ``a = -b -> p``; end weights vanish.
    """
    if root.M % 2 == 0:
        raise ParityError("alternative q-Jacobi limits need M odd")
    N, M = root.N, root.M
    p = root.p
    s = np.arange(N + 1)
    chi = aqj_chi(N)
    if which == "double-zero-limit":
        phase = np.array([root.p_pow(-int(k) ** 2) for k in s])
        raw = chi * q_poch(p, p, N) / (2 * N) * (-1.0) ** s * phase
        extras = {}
    elif which == "half-gauss":
        ph = root.p_pow(Fraction(1, 2))
        AN = q_poch(p, p, N) * q_poch(-ph, p, N) / (2 * N)
        AN_closed = math.sqrt(2 / N) * root.p_pow(Fraction(N, 4)) * jacobi_symbol(2 * N, M)
        phase = np.array([root.p_pow(Fraction(-int(k) ** 2, 2)) for k in s])
        raw = AN * chi * phase
        extras = {"A_N": AN, "A_N_ratio": q_poch(-ph, p, N) / q_poch(-p, p, N - 1),
                  "A_N_closed": AN_closed}
    elif which == "wilson-legendre":
        raw = np.tan(math.pi * M / (2 * N)) * np.sin(math.pi * M * s / N)
        raw[0] = raw[-1] = 0.0
        extras = {}
    else:
        raise ValueError(f"unknown limit {which!r}")
    return WeightTable(raw / raw.sum(), aqj_grid(root), None, which, True, 0, raw, extras)
