"""Big q-Jacobi polynomials with ``c = 1``.

The zeros of ``P_N`` are the N-th roots of unity themselves,
``x_s = q**s`` for s = 1..N, and the weights are an explicit product.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..arith import RootOfUnity, q_poch
from ..awp import (
    OrthogonalityReport,
    RecurrenceCoeffs,
    WeightTable,
    _q_powers_ext,
    eval_all,
    gram_report,
)
from ..errors import ParameterConstraintError
from ..tolerance import Tolerances, resolve

__all__ = [
    "BigQJacobiParams",
    "BigQJacobiResult",
    "check_bqj",
    "bqj_recurrence",
    "bqj_eval",
    "bqj_zeros",
    "bqj_pN",
    "bqj_pN1_closed",
    "bqj_D_N1",
    "bqj_weights",
    "bqj_all",
    "bqj_limits",
]


@dataclass(frozen=True)
class BigQJacobiParams:
    a: complex
    b: complex
    root: RootOfUnity
    c: complex = 1.0


@dataclass(frozen=True)
class BigQJacobiResult:
    coeffs: RecurrenceCoeffs
    x: np.ndarray
    weights: WeightTable
    gram: OrthogonalityReport


def check_bqj(params: BigQJacobiParams, tol: Tolerances | None = None) -> None:
    tol = resolve(tol)
    N = params.root.N
    a, b = params.a, params.b
    checks = {"a^N": 1 - a**N, "(ab)^N": 1 - (a * b) ** N, "b": 1 - b}
    for name, v in checks.items():
        if abs(v) <= tol.cond:
            raise ParameterConstraintError(f"{name} = 1 is forbidden", product=name)
    # u_n, b_n need ab q^k != 1 and a q^k, b q^k != 1 below degree N
    for name, v in (("ab", a * b), ("a", a), ("b", b)):
        dist = np.abs(v * params.root.q_powers(np.arange(params.root.N)) - 1)
        k = int(np.argmin(dist))
        if dist[k] <= tol.cond:
            raise ParameterConstraintError(f"{name} q^{k} = 1 is forbidden", product=name, k=k)


def bqj_recurrence(params: BigQJacobiParams, tol: Tolerances | None = None) -> RecurrenceCoeffs:
    check_bqj(params, tol)
    root = params.root
    N = root.N
    ext = np.clongdouble
    a, b, c = (ext(v) for v in (params.a, params.b, params.c))

    def Q(k):
        return _q_powers_ext(root, k)

    # extended precision for the same reason as in the four-parameter case
    n = np.arange(N + 1)
    xi = (-a * c * Q(n + 1) * (1 - Q(n)) * (1 - b * Q(n)) * (1 - a * b / c * Q(n))
          / ((1 - a * b * Q(2 * n)) * (1 - a * b * Q(2 * n + 1))))
    eta = ((1 - a * Q(n + 1)) * (1 - c * Q(n + 1)) * (1 - a * b * Q(n + 1))
           / ((1 - a * b * Q(2 * n + 1)) * (1 - a * b * Q(2 * n + 2))))
    u = np.zeros(N + 1, dtype=ext)
    u[1:] = xi[1:] * eta[:-1]
    bn = 1 - xi[:N] - eta[:N]
    h = np.cumprod(np.concatenate(([ext(1)], u[1:N])))
    return RecurrenceCoeffs(N, u, bn, h, xi, eta)


def bqj_eval(params: BigQJacobiParams, n: int, x):
    """``P_n(x)`` from the terminating 3phi2, ``0 <= n <= N-1``."""
    root = params.root
    a, b, c = params.a, params.b, params.c
    x = np.asarray(x, dtype=complex)
    D = (q_poch(a * root.q, root, n) * q_poch(c * root.q, root, n)
         / q_poch(a * b * root.q_pow(n + 1), root, n))
    top = (root.q_pow(-n), a * b * root.q_pow(n + 1))
    term = np.ones_like(x)
    total = term.copy()
    for k in range(n):
        qk = root.q_pow(k)
        term = term * ((1 - top[0] * qk) * (1 - top[1] * qk) * (1 - x * qk)
                       / ((1 - root.q_pow(k + 1)) * (1 - a * root.q * qk) * (1 - c * root.q * qk))
                       ) * root.q
        total = total + term
    val = D * total
    return val if np.ndim(val) else complex(val)


def bqj_zeros(root: RootOfUnity) -> np.ndarray:
    return root.q_powers(np.arange(1, root.N + 1))


def bqj_pN(params: BigQJacobiParams, x):
    N = params.root.N
    a, b, c = params.a, params.b, params.c
    x = np.asarray(x, dtype=complex)
    return x**N - 1 + (1 - a**N) * (1 - c**N) / (1 - (a * b) ** N)


def bqj_D_N1(params: BigQJacobiParams) -> complex:
    N = params.root.N
    a, b = params.a, params.b
    return N * (1 - a**N) * (1 - a * b / params.root.q) / ((1 - a) * (1 - (a * b) ** N))


def bqj_pN1_closed(params: BigQJacobiParams, s) -> np.ndarray:
    """``P_{N-1}(q**s)`` summed by the Chu-Vandermonde analog, s = 1..N."""
    root = params.root
    N = root.N
    a, b = params.a, params.b
    out = [(a * b) ** (N - k) * q_poch(root.q / b, root, N - k) / q_poch(a * root.q, root, N - k)
           for k in np.atleast_1d(s)]
    return bqj_D_N1(params) * np.array(out)


def bqj_weights(params: BigQJacobiParams, tol: Tolerances | None = None) -> WeightTable:
    """Closed-form weights at ``x_s = q**s``, s = 1..N (``raw`` unrescaled)."""
    check_bqj(params, tol)
    root = params.root
    N = root.N
    a, b = params.a, params.b
    q = root.q
    pref = (1 - a**N) * (1 - a * b * q) / (a * q * (b - 1) * (1 - a**N * b**N))
    s = np.arange(1, N + 1)
    raw = np.array([pref * q_poch(b, root, k) * root.q_pow(k) / q_poch(1 / a, root, k) for k in s])
    return WeightTable(raw / raw.sum(), bqj_zeros(root), None, "big-q-jacobi", True, 1, raw)


def bqj_all(params: BigQJacobiParams, tol: Tolerances | None = None) -> BigQJacobiResult:
    tol = resolve(tol)
    coeffs = bqj_recurrence(params, tol)
    wt = bqj_weights(params, tol)
    N = params.root.N
    P = eval_all(coeffs, wt.x, N - 1)
    table = WeightTable(wt.w, wt.x, coeffs.h, wt.source, True, 1, wt.raw)
    return BigQJacobiResult(coeffs, wt.x, table, gram_report(P, wt.w, coeffs.h, tol.rel))


def bqj_limits(root: RootOfUnity, which: str, a: complex | None = None,
               b: complex | None = None, tol: Tolerances | None = None) -> WeightTable:
    """``"q-meixner"`` (``a -> inf``, needs ``b``) or ``"big-q-laguerre"``
    (``b -> 0``, needs ``a``), on s = 1..N."""
    tol = resolve(tol)
    N = root.N
    s = np.arange(1, N + 1)
    if which == "q-meixner":
        if b is None:
            raise ValueError("q-meixner needs b")
        if abs(1 - b) <= tol.cond or abs(b) <= tol.cond:
            raise ParameterConstraintError("b must differ from 0 and 1", product="b")
        raw = np.array([b ** (1 - N) / (1 - b) * q_poch(b, root, k) * root.q_pow(k) for k in s])
    elif which == "big-q-laguerre":
        if a is None:
            raise ValueError("big-q-laguerre needs a")
        if abs(1 - a**N) <= tol.cond:
            raise ParameterConstraintError("a^N = 1 is forbidden", product="a^N")
        raw = np.array([(a**N - 1) / (root.q * a) * root.q_pow(k) / q_poch(1 / a, root, k) for k in s])
    else:
        raise ValueError(f"unknown limit {which!r}")
    return WeightTable(raw / raw.sum(), bqj_zeros(root), None, which, True, 1, raw)
