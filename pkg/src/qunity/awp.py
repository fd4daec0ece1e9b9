"""Four-parameter Askey-Wilson polynomials at ``q**N == 1``.

The monic polynomials obey ``P_{n+1} + b_n P_n + u_n P_{n-1} = x P_n`` with
``u_n = xi_n eta_{n-1}`` and ``b_n = a + 1/a - xi_n - eta_n``.  Because
``1 - q**N = 0`` the family stops at degree N: ``u_N = 0`` and ``P_N`` has N
explicit zeros ``x_s = r q**s + 1/(r q**s)``, which carry a discrete complex
orthogonality measure.

Two independent routes to that measure are provided (a truncated 4phi3 sum
and an explicit product), together with the second-order difference
equation on the zeros and the normalization identity the product route
implies.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass, field

import numpy as np

from .arith import RootOfUnity, q_poch, q_poch_multi
from .errors import (
    ConstraintError,
    DegenerateZeroError,
    ParameterConstraintError,
    SingularParamError,
)
from .report import IdentityReport
from .tolerance import Tolerances, resolve

__all__ = [
    "AWParams",
    "RecurrenceCoeffs",
    "ZeroSet",
    "WeightTable",
    "DifferenceOperator",
    "OrthogonalityReport",
    "check_constraints",
    "aw_xi_eta",
    "coeffs_from_xi_eta",
    "recurrence",
    "eval_monic",
    "eval_all",
    "eval_hypergeometric",
    "D_coeff",
    "invariant_EN",
    "zero_set",
    "t_of_x",
    "pN_closed",
    "pN_derivative",
    "F_series",
    "f_abcd",
    "weight_theorem1",
    "weight_product",
    "weight_from_ws",
    "difference_operator",
    "difference_residual",
    "gram_report",
    "verify_orthogonality",
    "verify_theorem2",
    "associated_recurrence",
    "hermitian_region_check",
    "all_permutations",
    "sample_params",
    "conditioning",
]

PAIR_NAMES = ("g", "ab", "ac", "ad", "bc", "bd", "cd")
_PI_EXT = np.arccos(np.longdouble(-1))


@dataclass(frozen=True)
class AWParams:
    a: complex
    b: complex
    c: complex
    d: complex
    root: RootOfUnity

    @property
    def g(self) -> complex:
        return self.a * self.b * self.c * self.d

    @property
    def N(self) -> int:
        return self.root.N

    def products(self) -> dict:
        a, b, c, d = self.a, self.b, self.c, self.d
        return {"g": self.g, "ab": a * b, "ac": a * c, "ad": a * d,
                "bc": b * c, "bd": b * d, "cd": c * d}

    def permuted(self, order) -> "AWParams":
        vals = (self.a, self.b, self.c, self.d)
        return AWParams(*(vals[i] for i in order), self.root)


@dataclass(frozen=True)
class RecurrenceCoeffs:
    """Recurrence data; arrays are indexed by degree.

    ``u[0]`` is a placeholder (0) and ``u[N]`` the vanishing extension;
    ``b`` runs over 0..N-1 and ``h`` over 0..N-1 with ``h[0] = 1``.  The
    four-parameter families keep these arrays in ``numpy.clongdouble``;
    :func:`eval_all` then evaluates in that precision too.
    """

    N: int
    u: np.ndarray
    b: np.ndarray
    h: np.ndarray
    xi: np.ndarray
    eta: np.ndarray


@dataclass(frozen=True)
class ZeroSet:
    """Zeros ``x_s = r q**s + 1/(r q**s)`` of ``P_N``.

    ``identity_ratio`` is the four-factor ratio that must equal 1;
    ``t`` holds ``r q**s`` so that ``x = t + 1/t``.
    """

    E_N: complex
    r: complex
    x: np.ndarray
    t: np.ndarray
    identity_ratio: complex
    t_of_x_convention: str = "t = (x + sqrt(x^2 - 4))/2, principal sqrt, |t| >= 1"


@dataclass(frozen=True)
class WeightTable:
    w: np.ndarray
    x: np.ndarray
    h: np.ndarray | None
    source: str
    normalized: bool = True
    index_origin: int = 0
    raw: np.ndarray | None = None
    extras: dict = field(default_factory=dict)

    @property
    def s(self) -> np.ndarray:
        return np.arange(self.index_origin, self.index_origin + len(self.w))


@dataclass(frozen=True)
class DifferenceOperator:
    A: np.ndarray
    C: np.ndarray
    lam: np.ndarray
    r: complex | None = None

    def A_at(self, s):
        return self.A[np.asarray(s) % len(self.A)]

    def C_at(self, s):
        return self.C[np.asarray(s) % len(self.C)]


@dataclass(frozen=True)
class OrthogonalityReport:
    max_offdiag: float
    diag_rel_err: np.ndarray
    dual_max_offdiag: float
    ws_max_rel_err: float
    gram: np.ndarray
    tol: float

    @property
    def passed(self) -> bool:
        return (self.max_offdiag <= self.tol
                and float(np.max(self.diag_rel_err)) <= self.tol
                and self.dual_max_offdiag <= self.tol)


# --------------------------------------------------------------------------
# constraints and recurrence


def _min_dist_to_powers(v, root: RootOfUnity):
    qk = root.q_powers(np.arange(root.N))
    dist = np.abs(v - qk)
    k = int(np.argmin(dist))
    return float(dist[k]), k


def check_constraints(params: AWParams, tol: Tolerances | None = None) -> None:
    """Reject parameters with ``g, ab, ac, ad, bc, bd, cd`` near some ``q**k``."""
    tol = resolve(tol)
    for name, v in params.products().items():
        dist, k = _min_dist_to_powers(v, params.root)
        if dist <= tol.cond:
            raise ParameterConstraintError(
                f"{name} = {v:.6g} lies within {dist:.2e} of q^{k}", product=name, k=k)


def aw_xi_eta(a, b, c, d, root: RootOfUnity, nmax: int, base: str = "q"):
    """``xi_n`` and ``eta_n`` for n = 0..nmax in base ``q`` or ``p = q**(1/2)``.

    Orthogonality on the zero set is sensitive to rounding in the
    recurrence coefficients, so they are formed in ``numpy.clongdouble``
    (80-bit on x86-64) and returned in that dtype.
    """
    ext = np.clongdouble
    a, b, c, d = (ext(v) for v in (a, b, c, d))
    g = a * b * c * d
    step = 2 if base == "q" else 1

    def Q(k):
        return _p_powers_ext(root, step * np.asarray(k))

    n = np.arange(nmax + 1)
    xi = (a * (1 - Q(n)) * (1 - b * c * Q(n - 1)) * (1 - b * d * Q(n - 1))
          * (1 - c * d * Q(n - 1))
          / ((1 - g * Q(2 * n - 2)) * (1 - g * Q(2 * n - 1))))
    eta = ((1 - a * b * Q(n)) * (1 - a * c * Q(n)) * (1 - a * d * Q(n))
           * (1 - g * Q(n - 1))
           / (a * (1 - g * Q(2 * n)) * (1 - g * Q(2 * n - 1))))
    # the factor (1 - base**n) must vanish exactly where it does in exact arithmetic
    xi[(step * n) % (2 * root.N) == 0] = 0
    return xi, eta


def coeffs_from_xi_eta(xi, eta, diag_shift, degree: int) -> RecurrenceCoeffs:
    """Assemble ``u_n = xi_n eta_{n-1}``, ``b_n = diag_shift - xi_n - eta_n``
    for a family whose last polynomial has the given degree (dtype of ``xi``)."""
    u = np.zeros(degree + 1, dtype=xi.dtype)
    u[1:] = xi[1:degree + 1] * eta[:degree]
    bn = xi.dtype.type(diag_shift) - xi[:degree] - eta[:degree]
    h = np.cumprod(np.concatenate(([xi.dtype.type(1)], u[1:degree])))
    return RecurrenceCoeffs(degree, u, bn, h, xi[:degree + 1], eta[:degree + 1])


def recurrence(params: AWParams, tol: Tolerances | None = None) -> RecurrenceCoeffs:
    check_constraints(params, tol)
    a = params.a
    if a == 0:
        raise SingularParamError("b_n needs 1/a; a must be nonzero")
    N = params.N
    xi, eta = aw_xi_eta(a, params.b, params.c, params.d, params.root, N)
    ea = np.clongdouble(a)
    return coeffs_from_xi_eta(xi, eta, ea + 1 / ea, N)


def eval_all(coeffs: RecurrenceCoeffs, x, nmax: int | None = None) -> np.ndarray:
    """``P_0(x), ..., P_nmax(x)`` stacked along the first axis."""
    nmax = coeffs.N if nmax is None else nmax
    dtype = np.result_type(coeffs.u, coeffs.b, np.complex128)
    x = np.asarray(x).astype(dtype)
    out = np.empty((nmax + 1,) + x.shape, dtype=dtype)
    out[0] = 1
    if nmax >= 1:
        out[1] = x - coeffs.b[0]
    for n in range(1, nmax):
        out[n + 1] = (x - coeffs.b[n]) * out[n] - coeffs.u[n] * out[n - 1]
    return out


def eval_monic(coeffs: RecurrenceCoeffs, n: int, x):
    """Monic ``P_n(x)`` by forward recursion; ``0 <= n <= N``."""
    if not 0 <= n <= coeffs.N:
        raise ValueError(f"degree {n} outside 0..{coeffs.N}")
    val = eval_all(coeffs, x, n)[n]
    return val if np.ndim(val) else complex(val)


# --------------------------------------------------------------------------
# hypergeometric representation


def D_coeff(params: AWParams, n: int) -> complex:
    """Leading normalization ``a**-n (ab, ac, ad; q)_n / (g q**(n-1); q)_n``."""
    a, b, c, d, g = params.a, params.b, params.c, params.d, params.g
    root = params.root
    num = q_poch_multi((a * b, a * c, a * d), root, n)
    return num / (a**n * q_poch(g * root.q_pow(n - 1), root, n))


def eval_hypergeometric(params: AWParams, n: int, t, tol: Tolerances | None = None):
    """``P_n(t + 1/t)`` from the terminating 4phi3 series.

    For ``n = N`` the only surviving terms are k = 0 and k = N, the latter
    with the exact limiting coefficient ``-1`` for ``(q^-N; q)_N/(q; q)_N``.
    """
    check_constraints(params, tol)
    a, b, c, d, g = params.a, params.b, params.c, params.d, params.g
    if a == 0:
        raise SingularParamError("the 4phi3 representation needs a != 0")
    root = params.root
    N = root.N
    if not 0 <= n <= N:
        raise ValueError(f"degree {n} outside 0..{N}")
    t = np.asarray(t, dtype=complex)
    if np.any(t == 0):
        raise ValueError("t must be nonzero")
    lower = (a * b, a * c, a * d)
    if n == N:
        top = g * root.q_pow(N - 1)
        term = (q_poch(top, root, N) * q_poch(a * t, root, N) * q_poch(a / t, root, N)
                / q_poch_multi(lower, root, N))
        series = 1 - term
    else:
        series = np.ones_like(t)
        term = np.ones_like(t)
        top1, top2 = root.q_pow(-n), g * root.q_pow(n - 1)
        for k in range(n):
            qk = root.q_pow(k)
            term = term * ((1 - top1 * qk) * (1 - top2 * qk) * (1 - a * t * qk) * (1 - a / t * qk)
                           / ((1 - root.q_pow(k + 1)) * (1 - lower[0] * qk)
                              * (1 - lower[1] * qk) * (1 - lower[2] * qk))) * root.q
            series = series + term
    val = D_coeff(params, n) * series
    return val if np.ndim(val) else complex(val)


# --------------------------------------------------------------------------
# zeros of P_N


def invariant_EN(params: AWParams, tol: Tolerances | None = None) -> complex:
    tol = resolve(tol)
    N = params.N
    A, B, C, D = (complex(v) ** N for v in (params.a, params.b, params.c, params.d))
    den = 1 - A * B * C * D
    if abs(den) <= tol.cond:
        raise ParameterConstraintError(f"(abcd)^N = 1 within {abs(den):.2e}", product="g")
    num = A + B + C + D - A * B * C - B * C * D - A * B * D - A * C * D
    return num / den


def _principal_root(z: complex, N: int) -> complex:
    # principal N-th root: argument arg(z)/N in (-pi/N, pi/N]; for arg(z) = pi
    # this is the tie-break toward positive imaginary part.
    return abs(z) ** (1.0 / N) * cmath.exp(1j * cmath.phase(z) / N)


def zero_set(params: AWParams, tol: Tolerances | None = None) -> ZeroSet:
    tol = resolve(tol)
    E = invariant_EN(params, tol)
    for sign in (2, -2):
        if abs(E - sign) <= tol.cond:
            raise DegenerateZeroError(f"E_N = {E:.12g} is within {tol.cond:g} of {sign}: "
                                      "zeros of P_N are not simple")
    root = params.root
    N = root.N
    rN = E / 2 + cmath.sqrt(E * E / 4 - 1)
    r = _principal_root(rN, N)
    rN = r**N
    t = r * root.q_powers(np.arange(N))
    x = t + 1 / t
    num = den = 1.0 + 0j
    for v in (params.a, params.b, params.c, params.d):
        vN = complex(v) ** N
        num *= 1 - vN * rN
        den *= vN - rN
    ratio = num / den if den != 0 else complex("nan")
    return ZeroSet(E, r, x, t, ratio)


def t_of_x(x):
    """Inverse of ``x = t + 1/t`` with ``|t| >= 1``."""
    x = np.asarray(x, dtype=complex)
    sq = np.sqrt(x * x - 4)
    t = (x + sq) / 2
    t = np.where(np.abs(t) < 1, (x - sq) / 2, t)
    return t if np.ndim(t) else complex(t)


def pN_closed(params: AWParams, x, tol: Tolerances | None = None):
    """``P_N(x) = t**N + t**-N - E_N``."""
    E = invariant_EN(params, tol)
    t = np.asarray(t_of_x(x))
    N = params.N
    val = t**N + t ** (-N) - E
    return val if np.ndim(val) else complex(val)


def pN_derivative(params: AWParams, zeros: ZeroSet, s, tol: Tolerances | None = None):
    """``P_N'(x_s) = N (r**N - r**-N) / (r q**s - 1/(r q**s))``."""
    tol = resolve(tol)
    N = params.N
    t = zeros.r * params.root.q_powers(np.asarray(s))
    den = t - 1 / t
    if np.any(np.abs(den) <= tol.cond):
        raise DegenerateZeroError("r q^s - 1/(r q^s) vanishes: x_s = +-2 is a double point")
    r = zeros.r
    val = N * (r**N - r ** (-N)) / den
    return val if np.ndim(val) else complex(val)


# --------------------------------------------------------------------------
# weights


def _p_powers_ext(root: RootOfUnity, ks) -> np.ndarray:
    """``p**k`` in extended precision (``clongdouble``), from the exponent reduced mod 2N."""
    ks = np.asarray(ks, dtype=np.int64) % (2 * root.N)
    angle = _PI_EXT * root.M * ks.astype(np.longdouble) / root.N
    out = (np.cos(angle) + 1j * np.sin(angle)).astype(np.clongdouble)
    # keep p**0 = 1 and p**N = -1 exact so that vanishing factors vanish exactly
    out = np.where(ks == 0, np.clongdouble(1), out)
    return np.where(ks == root.N, np.clongdouble(-1), out)


def _q_powers_ext(root: RootOfUnity, ks) -> np.ndarray:
    return _p_powers_ext(root, 2 * np.asarray(ks, dtype=np.int64))


def F_series(params: AWParams, s, zeros: ZeroSet | None = None, tol: Tolerances | None = None,
             with_cond: bool = False):
    """Truncated sum ``sum_n (g/q^2, a r q^s, a/(r q^s); q)_n / (ab, ac, ad; q)_n q^n``.

    The sum can cancel by many orders of magnitude, so it is accumulated in
    ``numpy.clongdouble`` (80-bit on x86-64; plain double on platforms
    without it).  With ``with_cond=True`` also returns the cancellation
    ratio ``sum |term| / |sum|`` for each ``s``.
    """
    check_constraints(params, tol)
    zeros = zero_set(params, tol) if zeros is None else zeros
    root = params.root
    N = root.N
    ext = np.clongdouble
    a, b, c, d = (ext(v) for v in (params.a, params.b, params.c, params.d))
    g = a * b * c * d
    s_arr = np.asarray(s)
    t = ext(zeros.r) * _q_powers_ext(root, s_arr)
    qn = _q_powers_ext(root, np.arange(N))
    q = _q_powers_ext(root, 1)
    lower = (a * b, a * c, a * d)
    top0 = g * _q_powers_ext(root, -2)
    term = np.ones_like(t)
    total = np.ones_like(t)
    mags = np.ones(t.shape, dtype=np.longdouble)
    for n in range(N - 1):
        term = term * ((1 - top0 * qn[n]) * (1 - a * t * qn[n]) * (1 - a / t * qn[n])
                       / ((1 - lower[0] * qn[n]) * (1 - lower[1] * qn[n]) * (1 - lower[2] * qn[n]))
                       ) * q
        total = total + term
        mags = mags + np.abs(term)
    total = total.astype(complex)
    out = total if np.ndim(total) else complex(total)
    if with_cond:
        cond = (mags / np.abs(total)).astype(float)
        return out, (cond if np.ndim(cond) else float(cond))
    return out


def f_abcd(params: AWParams, zeros: ZeroSet | None = None, tol: Tolerances | None = None):
    """``(ab, ac, ad; q)_{N-1} a**(1-N) F(0)``, the unknown-product factor of the
    normalization identity."""
    zeros = zero_set(params, tol) if zeros is None else zeros
    a, b, c, d = params.a, params.b, params.c, params.d
    N = params.N
    pref = q_poch_multi((a * b, a * c, a * d), params.root, N - 1) / a ** (N - 1)
    return pref * F_series(params, 0, zeros, tol)


def weight_theorem1(params: AWParams, tol: Tolerances | None = None) -> WeightTable:
    """Weights from the truncated-series formula, normalized to unit sum."""
    coeffs = recurrence(params, tol)
    zeros = zero_set(params, tol)
    N = params.N
    s = np.arange(N)
    t = zeros.t
    r = zeros.r
    F = F_series(params, s, zeros, tol)
    raw = complex(coeffs.h[N - 1]) * (t - 1 / t) / (N * D_coeff(params, N - 1) * (r**N - r ** (-N)) * F)
    return WeightTable(raw / raw.sum(), zeros.x, coeffs.h, "theorem1", True, 0, raw)


def _product_ratio(params: AWParams, r: complex, s_max: int) -> np.ndarray:
    """``w_s / w_0`` for s = 0..s_max from the explicit product."""
    root = params.root
    a, b, c, d, g = params.a, params.b, params.c, params.d, params.g
    out = np.empty(s_max + 1, dtype=complex)
    out[0] = 1
    acc = 1.0 + 0j
    for s in range(s_max):
        qs = root.q_pow(s)
        num = (root.q / g) * (1 - r * r * root.q_pow(2 * s + 2))
        den = 1 - r * r * root.q_pow(2 * s)
        for v in (a, b, c, d):
            num *= 1 - v * r * qs
            den *= 1 - root.q * r / v * qs
        acc = acc * num / den
        out[s + 1] = acc
    return out


def weight_product(params: AWParams, tol: Tolerances | None = None) -> WeightTable:
    """Weights from the explicit product, scaled by the closed-form ``w_0``.

    ``raw`` keeps the values before renormalization, so ``raw.sum()`` is the
    left side of the normalization identity times ``w_0 / (1 - r**2)``.
    ``extras['periodicity']`` is ``w_N / w_0`` from the product (must be 1).
    """
    tol = resolve(tol)
    check_constraints(params, tol)
    a, b, c, d, g = params.a, params.b, params.c, params.d, params.g
    if 0 in (a, b, c, d):
        raise SingularParamError("the product formula divides by each parameter")
    zeros = zero_set(params, tol)
    coeffs = recurrence(params, tol)
    root = params.root
    N = root.N
    r = zeros.r
    ratio = _product_ratio(params, r, N)
    Q = root.q_pow
    bc, cd, bd = b * c, c * d, b * d
    w0 = (a ** (N - 1) * (1 - bc**N) * (1 - cd**N) * (1 - bd**N) * (1 - g / root.q)
          * (1 - g * Q(-2)) * (r - 1 / r)
          / (F_series(params, 0, zeros, tol) * (1 - g**N) ** 2 * (1 - bc / root.q)
             * (1 - cd / root.q) * (1 - bd / root.q) * (r**N - r ** (-N))))
    raw = w0 * ratio[:N]
    return WeightTable(raw / raw.sum(), zeros.x, coeffs.h, "product", True, 0, raw,
                       {"w0": w0, "periodicity": ratio[N]})


def weight_from_ws(params: AWParams, tol: Tolerances | None = None) -> np.ndarray:
    """``h_{N-1} / (P_{N-1}(x_s) P_N'(x_s))`` with ``P_{N-1}`` from the recurrence."""
    coeffs = recurrence(params, tol)
    zeros = zero_set(params, tol)
    N = params.N
    pN1 = eval_all(coeffs, zeros.x, N - 1)[N - 1].astype(complex)
    return complex(coeffs.h[N - 1]) / (pN1 * pN_derivative(params, zeros, np.arange(N), tol))


# --------------------------------------------------------------------------
# difference equation


def _AC(params: AWParams, z):
    """``A`` and ``C`` as functions of ``z = r q**s``."""
    root = params.root
    a, b, c, d, g = params.a, params.b, params.c, params.d, params.g
    q = root.q
    A = g / q
    C = 1.0 + 0j
    for v in (a, b, c, d):
        A = A * (1 - z / v)
        C = C * (1 - v * z)
    A = A / ((1 - z * z / q) * (1 - z * z))
    C = C / ((1 - z * z) * (1 - z * z * q))
    return A, C


def difference_operator(params: AWParams, tol: Tolerances | None = None) -> DifferenceOperator:
    """Coefficients of ``A_s P(x_{s-1}) + C_s P(x_{s+1}) - (A_s + C_s) P(x_s) = lam_n P(x_s)``."""
    check_constraints(params, tol)
    if 0 in (params.a, params.b, params.c, params.d):
        raise SingularParamError("A_s divides by each parameter")
    zeros = zero_set(params, tol)
    A, C = _AC(params, zeros.t)
    root = params.root
    n = np.arange(root.N)
    lam = (root.q_powers(-n) - 1) * (1 - params.g * root.q_powers(n - 1))
    return DifferenceOperator(A, C, lam, zeros.r)


def difference_residual(params: AWParams, tol: Tolerances | None = None):
    """Max residual of the difference equation over all degrees 0..N-1 and all s,
    and the grid scale ``max |P_n(x_s)|`` it should be compared with."""
    coeffs = recurrence(params, tol)
    op = difference_operator(params, tol)
    zeros = zero_set(params, tol)
    N = params.N
    P = eval_all(coeffs, zeros.x, N - 1)
    s = np.arange(N)
    prev, nxt = P[:, (s - 1) % N], P[:, (s + 1) % N]
    res = op.A * prev + op.C * nxt - (op.A + op.C + op.lam[:, None]) * P
    return float(np.max(np.abs(res))), float(np.max(np.abs(P)))


# --------------------------------------------------------------------------
# orthogonality


def gram_report(P: np.ndarray, w: np.ndarray, h: np.ndarray, tol: float,
                ws_err: float = 0.0) -> OrthogonalityReport:
    """Gram and dual checks for values ``P[n, s]``, weights ``w[s]`` and norms ``h[n]``.

    Off-diagonal entries are scaled by ``sqrt(|h_n h_m|)``; the dual matrix
    ``w_s sum_n P_n(s) P_n(s') / h_n`` is compared with the identity.
    """
    G = (P * w) @ P.T
    scale = np.sqrt(np.abs(np.outer(h, h)))
    rel = np.abs(G) / scale
    off = rel.copy()
    np.fill_diagonal(off, 0)
    diag = np.abs(np.diag(G) - h) / np.abs(h)
    K = (P / h[:, None]).T @ P
    dual = w[:, None] * K - np.eye(len(w))
    return OrthogonalityReport(float(off.max()) if off.size else 0.0, diag,
                               float(np.abs(dual).max()), ws_err, G, tol)


def verify_orthogonality(params: AWParams, tol: Tolerances | None = None) -> OrthogonalityReport:
    tol = resolve(tol)
    coeffs = recurrence(params, tol)
    table = weight_product(params, tol)
    N = params.N
    P = eval_all(coeffs, table.x, N - 1)
    ws = weight_from_ws(params, tol)
    ws_err = float(np.max(np.abs(ws - table.w) / np.abs(table.w)))
    return gram_report(P, table.w, coeffs.h, tol.rel, ws_err)


def verify_theorem2(params: AWParams, tol: Tolerances | None = None) -> IdentityReport:
    """Closed-form evaluation of ``sum_s w_s / w_0`` for the product weights."""
    tol = resolve(tol)
    check_constraints(params, tol)
    a, b, c, d, g = params.a, params.b, params.c, params.d, params.g
    zeros = zero_set(params, tol)
    root = params.root
    N = root.N
    r = zeros.r
    if 0 in (a, b, c, d):
        raise SingularParamError("the left side divides by each parameter")
    # the telescoped ratio already carries (1 - r^2 q^2s) / (1 - r^2)
    lhs = complex((1 - r * r) * _product_ratio(params, r, N - 1).sum())
    f = f_abcd(params, zeros, tol)
    den = (q_poch_multi((a * b, a * c, a * d, b * c, c * d, b * d), root, N - 1)
           * (1 - g / root.q) * (1 - g * root.q_pow(-2)))
    rhs = r ** (1 - N) * (1 - r ** (2 * N)) * (1 - g**N) ** 2 * f / den
    return IdentityReport.build(
        "awpid", {"a": a, "b": b, "c": c, "d": d, "M": root.M, "N": N}, lhs, rhs, tol,
        notes={"f": f})


# --------------------------------------------------------------------------
# Hermiticity of the difference equation


def associated_recurrence(params: AWParams, mu: complex, n):
    """``u_n`` and ``b_n`` of the associated polynomials (``q**n -> mu q**n``)."""
    root = params.root
    q = root.q
    a, b, c, d, g = params.a, params.b, params.c, params.d, params.g

    def xi(z):
        return (a * (1 - z) * (1 - b * c * z / q) * (1 - b * d * z / q) * (1 - c * d * z / q)
                / ((1 - g * z * z / q**2) * (1 - g * z * z / q)))

    def eta(z):
        return ((1 - a * b * z) * (1 - a * c * z) * (1 - a * d * z) * (1 - g * z / q)
                / (a * (1 - g * z * z) * (1 - g * z * z / q)))

    z = mu * root.q_powers(np.asarray(n))
    return xi(z) * eta(z / q), a + 1 / a - xi(z) - eta(z)


def hermitian_region_check(alpha: float, beta: float, gamma: float, delta: float, N: int,
                           shifts=None, strict: bool = True) -> dict:
    """Positivity of the Jacobi matrix behind the difference equation.

    Uses ``a = q**alpha, b = -q**beta, c = -q**gamma, d = q**delta`` with
    ``q = exp(2 pi i / N)``.  Up to a relabelling of parameters the
    difference equation is the recurrence of the associated polynomials
    (``q**n -> mu q**n``), so its off-diagonal products are the associated
    ``u_n(mu)``.  For each ``mu = q**-theta`` in ``shifts`` (small positive
    ``theta``) the coefficients ``u_1..u_N`` are computed (they are
    N-periodic in n); the matrix is Hermitizable when they are real and
    positive and the ``b_n`` are real.

    Returns a dict with ``hermitian`` (some sampled shift gives a positive
    real Jacobi matrix), ``theta`` (the best shift), ``min_u`` (the smallest
    u_n at that shift) and ``max_imag`` (largest imaginary part of any u_n or
    b_n relative to its modulus).

    Raises ``ConstraintError`` when the parameters leave ``alpha < 0``,
    ``alpha < beta < -alpha``, ``gamma > -alpha``, ``delta > -alpha`` (all
    nonzero), unless ``strict=False``.
    """
    from .arith import RootOfUnity

    if N % 2:
        raise ConstraintError("N must be even")
    vals = {"alpha": alpha, "beta": beta, "gamma": gamma, "delta": delta}
    if strict:
        zero = [k for k, v in vals.items() if v == 0]
        if zero:
            raise ConstraintError(f"parameters must be nonzero: {', '.join(zero)}")
        if not alpha < 0:
            raise ConstraintError("need alpha < 0")
        if not alpha < beta < -alpha:
            raise ConstraintError("need alpha < beta < -alpha")
        if not gamma > -alpha:
            raise ConstraintError("need gamma > -alpha")
        if not delta > -alpha:
            raise ConstraintError("need delta > -alpha")
    if shifts is None:
        shifts = np.geomspace(1e-5, 1e-2, 31)
    root = RootOfUnity(1, N)
    params = AWParams(root.q_pow(alpha), -root.q_pow(beta), -root.q_pow(gamma),
                      root.q_pow(delta), root)
    n = np.arange(1, N + 1)
    best_theta, best_min, max_imag = None, -np.inf, 0.0
    for theta in shifts:
        u, bn = associated_recurrence(params, root.q_pow(-float(theta)), n)
        max_imag = max(max_imag, float(np.max(np.abs(u.imag) / np.abs(u))),
                       float(np.max(np.abs(bn.imag) / np.maximum(np.abs(bn), 1.0))))
        m = float(u.real.min())
        if m > best_min:
            best_theta, best_min = float(theta), m
    return {"hermitian": bool(best_min > 0 and max_imag < 1e-9), "theta": best_theta,
            "min_u": best_min, "max_imag": max_imag}


def all_permutations(params: AWParams):
    for order in itertools.permutations(range(4)):
        yield params.permuted(order)


def sample_params(rng: np.random.Generator, root: RootOfUnity, margin: float = 0.05,
                  rmin: float = 0.3, rmax: float = 1.5, max_tries: int = 10_000) -> AWParams:
    """Random parameters kept ``margin`` away from every excluded configuration.

    Moduli are log-uniform in ``[rmin, rmax]`` with uniform phases.  A draw is
    accepted when each pair product and ``g`` is at least ``margin`` from
    every ``q**k``, ``|1 - g**N|``, ``|E_N - 2|`` and ``|E_N + 2|`` are at
    least ``margin``, and the factors ``1 - (v r)**N`` and ``v**N - r**N``
    (v = a, b, c, d) that enter the zero-set identity are too.
    """
    N = root.N
    for _ in range(max_tries):
        mod = np.exp(rng.uniform(np.log(rmin), np.log(rmax), 4))
        vals = mod * np.exp(1j * rng.uniform(-np.pi, np.pi, 4))
        params = AWParams(*(complex(v) for v in vals), root)
        if any(_min_dist_to_powers(v, root)[0] < margin for v in params.products().values()):
            continue
        if abs(1 - params.g**N) < margin:
            continue
        E = invariant_EN(params)
        if min(abs(E - 2), abs(E + 2)) < margin:
            continue
        rN = zero_set(params).r ** N
        if any(min(abs(1 - v**N * rN), abs(v**N - rN)) < margin for v in vals):
            continue
        return params
    raise RuntimeError("no admissible draw found")


def conditioning(params: AWParams, tol: Tolerances | None = None) -> dict:
    """Cancellation ratios that bound the attainable double-precision accuracy.

    ``gram``: ``max_n sum_s |w_s| |P_n(x_s)|^2 / |h_n|``; the weights are
    complex, so the orthogonality sums can cancel.  ``series``: the largest
    ``sum |term| / |F(s)|`` of the truncated series behind the series-route
    weights.  A relative error near ``1e-16`` times these numbers is the
    expected floating-point floor.
    """
    coeffs = recurrence(params, tol)
    zeros = zero_set(params, tol)
    table = weight_product(params, tol)
    N = params.N
    P = eval_all(coeffs, zeros.x, N - 1)
    gram = np.abs(table.w) @ (np.abs(P) ** 2).T / np.abs(coeffs.h)
    _, fcond = F_series(params, np.arange(N), zeros, tol, with_cond=True)
    return {"gram": float(np.max(gram)), "series": float(np.max(fcond))}
