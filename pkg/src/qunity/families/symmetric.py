"""Two-parameter symmetric family ``a = -c = q**alpha``, ``d = -b = q**beta``.

All ``b_n`` vanish and everything reduces to trigonometric products in
``omega = pi M / N``.  The grid is ``x_s = 2 cos 2 omega (s + 1/4)``, i.e.
``r = q**(1/4)``; this is a zero set of ``P_N`` only for odd ``M`` (for even
``M`` one has ``r**N = +-1`` while ``E_N = 0`` needs ``r**N = +-i``), so the
grid-based functions require ``M`` odd.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..arith import RootOfUnity
from ..awp import AWParams, DifferenceOperator, RecurrenceCoeffs, WeightTable
from ..errors import NonHermitianError, ParityError, SingularDenominatorError

__all__ = [
    "SymmetricParams",
    "positivity_region",
    "sym_recurrence",
    "sym_coeffs",
    "sym_grid",
    "sym_weight",
    "sym_difference_operator",
    "herm2_residual",
]

_EPS = 1e-12


@dataclass(frozen=True)
class SymmetricParams:
    alpha: float
    beta: float
    root: RootOfUnity

    @property
    def omega(self) -> float:
        return self.root.omega

    def to_awp(self) -> AWParams:
        a = self.root.q_pow(self.alpha)
        d = self.root.q_pow(self.beta)
        return AWParams(a, -d, -a, d, self.root)


def positivity_region(alpha: float, beta: float) -> str | None:
    """``"I"``, ``"II"`` or ``None`` for the open boxes with positive ``u_n``
    (valid for ``M = 1`` and odd ``N``)."""
    if -0.25 < alpha < 0.25 and 0.25 < beta < 0.75:
        return "I"
    if 0.25 < alpha < 0.75 and 0.75 < beta < 1.25:
        return "II"
    return None


def sym_recurrence(params: SymmetricParams, n):
    """``u_n`` by the trigonometric product; ``n`` scalar or array in 1..N-1."""
    w = params.omega
    al, be = params.alpha, params.beta
    n = np.asarray(n, dtype=float)
    den = np.sin(2 * w * (n + al + be - 1.5)) * np.sin(2 * w * (n + al + be - 0.5))
    if np.any(np.abs(den) < _EPS):
        raise SingularDenominatorError("sin 2w(n+alpha+beta-3/2) sin 2w(n+alpha+beta-1/2) = 0")
    u = (4 * np.sin(w * n) * np.sin(w * (n + 2 * al + 2 * be - 2)) * np.cos(w * (n + 2 * al - 1))
         * np.cos(w * (n + 2 * be - 1))) / den
    return u if np.ndim(u) else float(u)


def sym_coeffs(params: SymmetricParams) -> RecurrenceCoeffs:
    N = params.root.N
    u = np.zeros(N + 1)
    u[1:N] = sym_recurrence(params, np.arange(1, N))
    h = np.cumprod(np.concatenate(([1.0], u[1:N])))
    return RecurrenceCoeffs(N, u, np.zeros(N), h, np.full(N + 1, np.nan), np.full(N + 1, np.nan))


def _require_odd_M(root: RootOfUnity):
    if root.M % 2 == 0:
        raise ParityError("the grid 2cos 2w(s+1/4) is a zero set of P_N only for odd M")


def sym_grid(params: SymmetricParams) -> np.ndarray:
    _require_odd_M(params.root)
    s = np.arange(params.root.N)
    return 2 * np.cos(2 * params.omega * (s + 0.25))


def sym_weight(params: SymmetricParams) -> WeightTable:
    """Normalized weights on ``x_s = 2 cos 2 omega (s + 1/4)``, s = 0..N-1."""
    _require_odd_M(params.root)
    w = params.omega
    al, be = params.alpha, params.beta
    N = params.root.N
    k = np.arange(1, N)
    num = np.sin(2 * w * (k + al - 0.75)) * np.sin(2 * w * (k + be - 0.75))
    den = np.sin(2 * w * (k - al + 0.25)) * np.sin(2 * w * (k - be + 0.25))
    if np.any(np.abs(den) < _EPS):
        raise SingularDenominatorError("weight product denominator vanishes")
    prods = np.concatenate(([1.0], np.cumprod(num / den)))
    s = np.arange(N)
    raw = np.sin(2 * w * (s + 0.25)) * prods
    coeffs = sym_coeffs(params)
    return WeightTable(raw / raw.sum(), sym_grid(params), coeffs.h, "symmetric", True, 0, raw,
                       {"R": 1 / raw.sum()})


@dataclass(frozen=True)
class SymmetricDifferenceOperator(DifferenceOperator):
    """Adds the Hermitian form: ``U_s = sqrt(A_s C_{s-1})`` and the gauge
    ``chi(s)`` with ``P_n(x_s) = chi(s) psi_n(s)``."""

    U: np.ndarray | None = None
    chi: np.ndarray | None = None


def sym_difference_operator(params: SymmetricParams, hermitize: bool = True
                            ) -> SymmetricDifferenceOperator:
    _require_odd_M(params.root)
    w = params.omega
    al, be = params.alpha, params.beta
    N = params.root.N
    s = np.arange(N)
    n = np.arange(N)

    def A(s):
        return (np.sin(2 * w * (s - al + 0.25)) * np.sin(2 * w * (s - be + 0.25))
                / (np.sin(2 * w * (s + 0.25)) * np.sin(2 * w * (s - 0.25))))

    def C(s):
        return (np.sin(2 * w * (s + al + 0.25)) * np.sin(2 * w * (s + be + 0.25))
                / (np.sin(2 * w * (s + 0.25)) * np.sin(2 * w * (s + 0.75))))

    lam = -4 * np.sin(w * n) * np.sin(w * (n + 2 * al + 2 * be - 1))
    As, Cs = A(s), C(s)
    r = params.root.q_pow(Fraction(1, 4))
    if not hermitize:
        return SymmetricDifferenceOperator(As, Cs, lam, r)
    AC = As * C(s - 1)
    if np.any(AC <= 0):
        bad = int(np.argmin(AC))
        raise NonHermitianError(f"A_s C_(s-1) = {AC[bad]:.3g} <= 0 at s = {bad}")
    U = np.sqrt(AC)
    # chi(s+1)/chi(s) = sqrt(A_{s+1}/C_s), so chi is 1/sqrt(weight) up to a constant
    chi = 1 / np.sqrt(sym_weight(params).w)
    return SymmetricDifferenceOperator(As, Cs, lam, r, U, chi)


def herm2_residual(params: SymmetricParams) -> float:
    """Max residual of ``U_{s+1} psi(s+1) + U_s psi(s-1) - (A_s + C_s + lam_n) psi(s)``
    over all degrees and grid points, relative to ``max |psi|``."""
    from ..awp import eval_all

    op = sym_difference_operator(params)
    N = params.root.N
    P = eval_all(sym_coeffs(params), sym_grid(params), N - 1).real
    psi = P / op.chi
    s = np.arange(N)
    Unext = op.U[(s + 1) % N]
    res = (Unext * psi[:, (s + 1) % N] + op.U * psi[:, (s - 1) % N]
           - (op.A + op.C + op.lam[:, None]) * psi)
    return float(np.abs(res).max() / np.abs(psi).max())
