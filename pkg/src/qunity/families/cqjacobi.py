"""Continuous q-Jacobi polynomials: ``b = a p``, ``d = c p`` with ``p = q**(1/2)``, M odd.

Then ``E_N = 0`` and the zeros are the Chebyshev nodes
``x_s = 2 cos(pi M (s + 1/2) / N)``.  Evaluation goes through the base-p
(Rahman) 4phi3; the weights have a closed product form, and for ``M = 1``
with ``a = p**(alpha + 1/2)``, ``c = -p**(beta + 1/2)`` a real trigonometric
form that is positive for ``-1 < alpha, beta < 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..arith import RootOfUnity, q_poch
from ..awp import AWParams, WeightTable
from ..errors import ParityError, SingularDenominatorError

__all__ = [
    "CQJacobiParams",
    "cqj_grid",
    "cqj_eval",
    "cqj_D",
    "cqj_pN1_closed",
    "cqj_pN_derivative",
    "cqj_weights",
    "theorem3_weights",
    "theorem3_norm",
    "special_case_weights",
    "cqj_limits",
    "laguerre_gauss_identity",
]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class CQJacobiParams:
    a: complex
    c: complex
    root: RootOfUnity
    alpha: float | None = None
    beta: float | None = None

    def __post_init__(self):
        if self.root.M % 2 == 0:
            raise ParityError("continuous q-Jacobi needs M odd")

    @classmethod
    def from_alpha_beta(cls, alpha: float, beta: float, root: RootOfUnity) -> "CQJacobiParams":
        """``a = p**(alpha + 1/2)``, ``c = -p**(beta + 1/2)``."""
        a = root.p_pow(alpha + 0.5)
        c = -root.p_pow(beta + 0.5)
        return cls(a, c, root, alpha, beta)

    def to_awp(self) -> AWParams:
        p = self.root.p
        return AWParams(self.a, self.a * p, self.c, self.c * p, self.root)


def cqj_grid(root: RootOfUnity) -> np.ndarray:
    s = np.arange(root.N)
    return 2 * np.cos(np.pi * root.M * (s + 0.5) / root.N)


def _pp(root, e):
    return root.p_pow(e)


def cqj_D(params: CQJacobiParams, n: int) -> complex:
    root = params.root
    p = root.p
    a, c = params.a, params.c
    ph = _pp(root, HALF)
    num = q_poch(-p, p, n) * q_poch(a * ph, p, n) * q_poch(c * ph, p, n)
    return num / (_pp(root, Fraction(n, 2)) * q_poch(-a * c * _pp(root, n), p, n))


def cqj_eval(params: CQJacobiParams, n: int, s) -> complex:
    """``P_n(x_s)`` from the base-p 4phi3, ``0 <= n <= N-1``."""
    root = params.root
    N = root.N
    if not 0 <= n <= N - 1:
        raise ValueError(f"degree {n} outside 0..{N - 1}")
    p = root.p
    a, c = params.a, params.c
    ph = _pp(root, HALF)
    s = np.asarray(s)
    ps = root.p_powers(s)
    top = (_pp(root, -n), 1 / ps, ps * p, -a * c * _pp(root, n))
    bottom = (a * ph, c * ph, -p)
    term = np.ones(s.shape, dtype=complex)
    total = term.copy()
    for k in range(n):
        pk = root.p_pow(k)
        num = (1 - top[0] * pk) * (1 - top[1] * pk) * (1 - top[2] * pk) * (1 - top[3] * pk)
        den = (1 - root.p_pow(k + 1)) * (1 - bottom[0] * pk) * (1 - bottom[1] * pk) * (1 - bottom[2] * pk)
        term = term * num / den * p
        total = total + term
    val = cqj_D(params, n) * total
    return val if np.ndim(val) else complex(val)


def cqj_pN1_closed(params: CQJacobiParams, s) -> np.ndarray:
    """``P_{N-1}(x_s)`` summed in closed form (balanced 3phi2)."""
    root = params.root
    N = root.N
    p = root.p
    a, c = params.a, params.c
    ph = _pp(root, HALF)
    p32 = _pp(root, Fraction(3, 2))
    s = np.atleast_1d(s)
    out = np.empty(s.shape, dtype=complex)
    for i, si in enumerate(s):
        si = int(si)
        out[i] = ((a * c / p) ** si * q_poch(p32 / a, p, si) * q_poch(p32 / c, p, si)
                  / (q_poch(a * ph, p, si) * q_poch(c * ph, p, si)))
    return cqj_D(params, N - 1) * out


def cqj_pN_derivative(root: RootOfUnity, s) -> np.ndarray:
    """``P_N'(x_s) = N (-1)**(s + (M-1)/2) / sin(pi M (s+1/2) / N)``."""
    s = np.asarray(s)
    M, N = root.M, root.N
    return N * (-1.0) ** (s + (M - 1) // 2) / np.sin(np.pi * M * (s + 0.5) / N)


def cqj_weights(params: CQJacobiParams) -> WeightTable:
    """Closed-form weights on the Chebyshev nodes, s = 0..N-1.

    ``raw`` carries the closed normalization constant, so ``raw.sum()``
    should be 1 without rescaling.
    """
    root = params.root
    N = root.N
    p = root.p
    a, c = params.a, params.c
    ph = _pp(root, HALF)
    p32 = _pp(root, Fraction(3, 2))
    RN = (1j / ph * q_poch(-c * ph, p, N - 1) * q_poch(-a * ph, p, N - 1)
          / (q_poch(-a * c * p, p, N - 1) * q_poch(-p, p, N - 1)))
    s = np.arange(N)
    ratio = np.empty(N, dtype=complex)
    acc = 1.0 + 0j
    for k in range(N):
        ratio[k] = acc
        if k == N - 1:
            break
        den = (1 - p32 / a * root.p_pow(k)) * (1 - p32 / c * root.p_pow(k))
        if abs(den) < 1e-14:
            raise SingularDenominatorError("(p^{3/2}/a; p)_s or (p^{3/2}/c; p)_s vanishes")
        acc = acc * (-p / (a * c)) * (1 - a * ph * root.p_pow(k)) * (1 - c * ph * root.p_pow(k)) / den
    raw = RN * np.sin(np.pi * root.M * (s + 0.5) / N) * ratio
    return WeightTable(raw / raw.sum(), cqj_grid(root), None, "cq-jacobi", True, 0, raw,
                       {"R_N": RN})


def theorem3_norm(alpha: float, beta: float, N: int) -> float:
    w = math.pi / (2 * N)
    k = np.arange(1, N)
    return float(np.prod(np.sin(w * (k + beta)) * np.cos(w * (k + alpha))
                         / (np.cos(w * k) * np.sin(w * (k + alpha + beta + 1)))))


def theorem3_weights(alpha: float, beta: float, N: int) -> WeightTable:
    """Real trigonometric weights for ``M = 1``; ``raw`` uses the closed
    normalization, ``w`` is renormalized."""
    w = math.pi / (2 * N)
    k = np.arange(1, N)
    factors = (np.sin(w * (k + alpha)) * np.cos(w * (k + beta))
               / (np.sin(w * (k - alpha)) * np.cos(w * (k - beta))))
    prods = np.concatenate(([1.0], np.cumprod(factors)))
    s = np.arange(N)
    raw = theorem3_norm(alpha, beta, N) * np.sin(w * (2 * s + 1)) * prods
    x = 2 * np.cos(np.pi * (s + 0.5) / N)
    return WeightTable(raw / raw.sum(), x, None, "theorem3", True, 0, raw,
                       {"alpha": alpha, "beta": beta})


def special_case_weights(alpha: float, beta: float, N: int) -> np.ndarray | None:
    """Elementary closed forms of the real weights at half-integer corners.

    ``omega = pi / 2N`` as in :func:`theorem3_weights`.  Returns ``None`` for
    the (alpha, beta) pairs without an elementary form here.  For
    ``(-1/2, 1/2)`` the constant in front of ``cos^2 omega (s + 1/2)`` is
    ``2/N``; a ``cot`` prefactor does not normalize.
    """
    w = math.pi / (2 * N)
    th = w * (2 * np.arange(N) + 1)
    table = {
        (-0.5, -0.5): lambda: np.full(N, 1 / N),
        (0.0, 0.0): lambda: np.sin(w) * np.sin(th),
        (-0.5, 0.5): lambda: 2 / N * np.cos(th / 2) ** 2,
        (0.5, -0.5): lambda: 2 / N * np.sin(th / 2) ** 2,
        (0.5, 0.5): lambda: 2 / N * np.sin(th) ** 2,
    }
    f = table.get((float(alpha), float(beta)))
    return None if f is None else f()


def cqj_limits(root: RootOfUnity, which: str, a: complex | None = None) -> WeightTable:
    """Limit weights: ``"q-laguerre"`` (``c -> 0``, needs ``a``) and ``"q-hermite"``
    (``c -> 0`` then ``a -> 0``).  ``raw`` keeps the closed normalization."""
    if root.M % 2 == 0:
        raise ParityError("continuous q-Jacobi limits need M odd")
    N, M = root.N, root.M
    p = root.p
    ph = root.p_pow(HALF)
    s = np.arange(N)
    sines = np.sin(np.pi * M * (s + 0.5) / N)
    if which == "q-laguerre":
        if a is None:
            raise ValueError("q-laguerre needs a")
        p32 = root.p_pow(Fraction(3, 2))
        pref = 1j / ph * q_poch(-a * ph, p, N - 1) / q_poch(-p, p, N - 1)
        vals = np.array([a ** (-int(k)) * root.p_pow(Fraction(-int(k) ** 2, 2))
                         * q_poch(a * ph, p, int(k)) / q_poch(p32 / a, p, int(k)) for k in s])
        raw = pref * sines * vals
    elif which == "q-hermite":
        phase = np.array([root.p_pow(-int(k) ** 2 - int(k) - HALF) for k in s])
        raw = 1j * (-1.0) ** s * phase / q_poch(-p, p, N - 1) * sines
    else:
        raise ValueError(f"unknown limit {which!r}")
    return WeightTable(raw / raw.sum(), cqj_grid(root), None, which, True, 0, raw)


def laguerre_gauss_identity(root: RootOfUnity) -> tuple[complex, complex]:
    """Both sides of ``sum_s sin(pi M (s+1/2)/N) p**(-s(s+1)/2) = -i p**(1/2)``."""
    N, M = root.N, root.M
    lhs = sum(math.sin(math.pi * M * (s + 0.5) / N) * root.p_pow(Fraction(-s * (s + 1), 2))
              for s in range(N))
    return complex(lhs), -1j * root.p_pow(HALF)
