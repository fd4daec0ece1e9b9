"""Summation, inversion and Gauss-sum identities at roots of unity.

Every checker evaluates the left side by direct summation (or a direct
product) and the right side from its closed form, then returns an
:class:`~qunity.report.IdentityReport`.  When the closed form has a factor
that vanishes for the given parameters, the report switches to an absolute
test ``|lhs| <= eps_abs * (number of terms) * (largest term)``.

Series are truncated to their first ``N`` terms unless stated otherwise.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .arith import RootOfUnity, jacobi_symbol, q_poch
from .errors import ParameterConstraintError, ParityError, SingularDenominatorError
from .report import IdentityReport
from .tolerance import Tolerances, resolve

__all__ = [
    "INVERSION_VARIANTS",
    "GAUSS_VARIANTS",
    "check_inversion",
    "check_q_binomial",
    "check_chu_vandermonde",
    "check_sp_chu",
    "check_pfaff_saalschutz",
    "check_dixon",
    "check_singh",
    "check_gauss_sum",
    "random_annulus",
]

INVERSION_VARIANTS = ("odd1", "odd2", "even1", "even2")
GAUSS_VARIANTS = ("gauss", "pp", "gauss3", "pp1/2", "p1/2p", "p1/2p-ratio", "gs1", "newgauss")

_SING_EPS = 1e-14


def random_annulus(rng: np.random.Generator, size=None, rmin: float = 0.1, rmax: float = 3.0):
    """Complex samples with log-uniform modulus in ``[rmin, rmax]`` and uniform phase."""
    mod = np.exp(rng.uniform(math.log(rmin), math.log(rmax), size))
    arg = rng.uniform(-math.pi, math.pi, size)
    out = mod * np.exp(1j * arg)
    return complex(out) if size is None else out


def _params(root: RootOfUnity, **kw) -> dict:
    return {"M": root.M, "N": root.N, **kw}


def _finish(identity_id: str, params: dict, terms: Sequence[complex], rhs: complex,
            tol: Tolerances, notes: dict | None = None) -> IdentityReport:
    """Sum ``terms`` and compare with ``rhs``, switching to the zero test when
    ``rhs`` vanishes on the scale of the terms.

    ``notes["cond"]`` is the cancellation ratio ``sum |t_k| / |sum t_k|``;
    roughly ``cond * 1e-16`` is the best relative accuracy double precision
    can deliver for the left side.
    """
    terms = np.asarray(terms, dtype=complex)
    lhs = complex(terms.sum())
    scale = float(np.abs(terms).max()) if terms.size else 0.0
    notes = dict(notes or {})
    total = float(np.abs(terms).sum())
    notes["cond"] = total / abs(lhs) if lhs != 0 else math.inf
    zero_bound = None
    if abs(rhs) <= tol.abs * max(scale, 1.0):
        zero_bound = tol.abs * max(terms.size, 1) * max(scale, 1.0)
    return IdentityReport.build(identity_id, params, lhs, rhs, tol, zero_bound, notes)


def _series(root: RootOfUnity, top: Sequence[complex], bottom: Sequence[complex], z: complex,
            nterms: int, base=None) -> np.ndarray:
    """Terms of ``sum_k prod (top;base)_k / prod (bottom;base)_k z**k``, k < nterms.

    ``bottom`` must include ``base`` itself for the usual ``(base;base)_k``.
    """
    base_pow = root.q_pow if base is None else base
    terms = np.empty(nterms, dtype=complex)
    t = 1.0 + 0.0j
    for k in range(nterms):
        terms[k] = t
        if k == nterms - 1:
            break
        bk = base_pow(k)
        num = np.prod([1 - a * bk for a in top])
        den = np.prod([1 - b * bk for b in bottom])
        if abs(den) < _SING_EPS:
            if abs(num) < _SING_EPS:
                # 0/0 only after the series has already terminated
                terms[k + 1:] = 0
                break
            raise SingularDenominatorError(f"series denominator vanishes at k = {k}")
        t = t * num / den * z
    return terms


def check_inversion(a: complex, root: RootOfUnity, variant: str,
                    tol: Tolerances | None = None) -> IdentityReport:
    """Parameter inversion for ``(a;p)_N`` and ``(a;p)_{N-1}``.

    ``odd1``, ``odd2`` need M odd; ``even1``, ``even2`` need M even.
    """
    tol = resolve(tol)
    if variant not in INVERSION_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    M, N = root.M, root.N
    if variant.startswith("odd") != (M % 2 == 1):
        raise ParityError(f"{variant} needs M {'odd' if variant.startswith('odd') else 'even'}")
    if a == 0:
        raise SingularDenominatorError("the inverted side divides by a")
    p = root.p
    pp = root.p_pow
    if variant == "odd1":
        lhs = q_poch(a, p, N)
        rhs = a**N * pp(-N * (N + 1) // 2) * q_poch(-p / a, p, N)
    elif variant == "odd2":
        lhs = q_poch(a, p, N - 1)
        rhs = a ** (N - 1) * pp(1 - N * (N + 1) // 2) * q_poch(-pp(2) / a, p, N - 1)
    elif variant == "even1":
        lhs = q_poch(a, p, N)
        rhs = -(a**N) * q_poch(p / a, p, N)
    else:
        lhs = q_poch(a, p, N - 1)
        rhs = p * a ** (N - 1) * q_poch(pp(2) / a, p, N - 1)
    factors = np.abs(1 - a * root.p_powers(np.arange(N)))
    scale = max(1.0, float(np.prod(np.maximum(factors, 1.0))))
    zero_bound = tol.abs * N * scale if abs(rhs) <= tol.abs * scale else None
    return IdentityReport.build(variant, _params(root, a=a), lhs, rhs, tol, zero_bound)


def check_q_binomial(s: int, z: complex, root: RootOfUnity,
                     tol: Tolerances | None = None) -> IdentityReport:
    """``sum_{k=0}^{N-s} (q^s;q)_k/(q;q)_k z^k = (1 - z^N)/(z;q)_s``.

    ``notes`` holds the third form ``(z/q; 1/q)_{N-s}`` and the largest
    term for ``N-s < k < N``, which vanishes identically.
    """
    tol = resolve(tol)
    N = root.N
    if not 1 <= s <= N - 1:
        raise ValueError(f"s must lie in 1..{N - 1}")
    zs = q_poch(z, root, s)
    if abs(zs) < _SING_EPS:
        raise SingularDenominatorError("(z;q)_s vanishes")
    terms = _series(root, [root.q_pow(s)], [root.q], z, N)
    rhs = (1 - z**N) / zs
    inv = 1.0 + 0.0j
    for k in range(N - s):
        inv *= 1 - z / root.q * root.q_pow(-k)
    notes = {"third_form": inv, "tail_max": float(np.abs(terms[N - s + 1:]).max(initial=0.0))}
    rep = _finish("qbin", _params(root, s=s, z=z), terms[: N - s + 1], rhs, tol, notes)
    third_ok = (abs(inv - rhs) <= tol.rel * max(abs(rhs), 1.0))
    if rep.passed and not third_ok:
        rep = IdentityReport(rep.identity_id, rep.parameters, rep.lhs, rep.rhs,
                             rep.abs_residual, rep.rel_residual, False, rep.zero_bound, notes)
    return rep


def check_chu_vandermonde(s: int, a: complex, c: complex, root: RootOfUnity,
                          tol: Tolerances | None = None) -> IdentityReport:
    """Truncated ``2phi1(q^s, a; c; q, q)`` against its closed form."""
    tol = resolve(tol)
    N = root.N
    if abs(1 - c**N) <= tol.cond:
        raise ParameterConstraintError("c^N = 1 is forbidden", product="c^N")
    den = q_poch(root.q * a / c, root, s)
    if abs(den) < _SING_EPS:
        raise SingularDenominatorError("(qa/c;q)_s vanishes")
    terms = _series(root, [root.q_pow(s), a], [root.q, c], root.q, N)
    rhs = (a**N - c**N) / (1 - c**N) * q_poch(root.q / c, root, s) / den
    return _finish("Chu", _params(root, s=s, a=a, c=c), terms, rhs, tol)


def check_sp_chu(a: complex, c: complex, root: RootOfUnity,
                 tol: Tolerances | None = None) -> IdentityReport:
    """``sum_{k<N} (a;q)_k/(c;q)_k q^k`` in closed form (the ``s = 1`` case)."""
    tol = resolve(tol)
    N = root.N
    q = root.q
    if abs(1 - c**N) <= tol.cond:
        raise ParameterConstraintError("c^N = 1 is forbidden", product="c^N")
    if abs(a - c / q) < _SING_EPS:
        raise SingularDenominatorError("a = c/q")
    terms = _series(root, [a], [c], q, N)
    rhs = (a**N - c**N) * (1 - c / q) / ((1 - c**N) * (a - c / q))
    return _finish("spChu", _params(root, a=a, c=c), terms, rhs, tol)


def check_pfaff_saalschutz(a: complex, b: complex, c: complex, root: RootOfUnity,
                           tol: Tolerances | None = None) -> IdentityReport:
    tol = resolve(tol)
    N = root.N
    q = root.q
    if abs(1 - c**N) <= tol.cond:
        raise ParameterConstraintError("c^N = 1 is forbidden", product="c^N")
    if abs((a * b) ** N - c**N) <= tol.cond * max(1.0, abs(c) ** N):
        raise ParameterConstraintError("(ab)^N = c^N is forbidden", product="(ab)^N")
    den = (q * a - c) * (q * b - c)
    if abs(den) < _SING_EPS:
        raise SingularDenominatorError("(qa - c)(qb - c) vanishes")
    e = a * b / c * q * q
    terms = _series(root, [a, b], [c, e], q, N)
    rhs = ((a**N - c**N) * (b**N - c**N) * (q - c) * (a * b * q - c)
           / ((1 - c**N) * ((a * b) ** N - c**N) * den))
    return _finish("saa", _params(root, a=a, b=b, c=c), terms, rhs, tol)


def check_dixon(a: complex, b: complex, root: RootOfUnity,
                tol: Tolerances | None = None) -> IdentityReport:
    """Dixon-type sum.  At ``b = a**2`` both ``b - a**2`` and ``b**N - a**(2N)``
    vanish; the closed form is then replaced by its (nonzero) limit
    ``(b - a^2)/(b^N - a^2N) -> 1/(N a^(2N-2))``."""
    tol = resolve(tol)
    N = root.N
    q = root.q
    if b == 0:
        raise SingularDenominatorError("the series argument is a/b")
    terms = _series(root, [-q * a, b], [-a, a * a / b * q], a / b, N)
    notes = {}
    if abs(b - a * a) <= tol.abs * max(1.0, abs(b)):
        den = (b - a) * (1 + a) * N * a ** (2 * N - 2)
        if abs(den) < _SING_EPS:
            raise SingularDenominatorError("(b - a)(1 + a) vanishes")
        rhs = (1 + a**N) * (b**N - a**N) / den
        notes["removable_limit"] = True
    else:
        den = (b - a) * (1 + a) * (b**N - a ** (2 * N))
        if abs(den) < _SING_EPS:
            raise SingularDenominatorError("(b - a)(1 + a)(b^N - a^2N) vanishes")
        rhs = (b - a * a) * (1 + a**N) * (b**N - a**N) / den
    return _finish("Dic", _params(root, a=a, b=b), terms, rhs, tol, notes)


def check_singh(a: complex, b: complex, root: RootOfUnity,
                tol: Tolerances | None = None) -> IdentityReport:
    """Truncated ``4phi3(q, a, a/p, a^2 q/b^2; a^2, -aq/b, -a p^3/b; q, q)``
    against a ratio of base-p factorials (M odd)."""
    tol = resolve(tol)
    if root.M % 2 == 0:
        raise ParityError("needs M odd so that p^N = -1")
    N = root.N
    q, p = root.q, root.p
    # the (q;q)_k of the top row cancels the usual (q;q)_k below
    terms = _series(root, [a, a / p, a * a * q / (b * b)],
                    [a * a, -a * q / b, -a * root.p_pow(3) / b], q, N)
    den = q_poch(-a, p, N - 1) * q_poch(b / a, p, N - 1)
    if abs(den) < _SING_EPS:
        raise SingularDenominatorError("(-a;p)_{N-1} (b/a;p)_{N-1} vanishes")
    rhs = q_poch(-p, p, N - 1) * q_poch(b / p, p, N - 1) / den
    return _finish("Sing", _params(root, a=a, b=b), terms, rhs, tol)


def _closed_pp(root: RootOfUnity) -> complex:
    M, N = root.M, root.N
    return jacobi_symbol(N, M) * math.sqrt(N) * complex(math.cos(math.pi * M * (N - 1) / 4),
                                                        math.sin(math.pi * M * (N - 1) / 4))


def _closed_pp_half(root: RootOfUnity) -> complex:
    M, N = root.M, root.N
    ang = math.pi * M * (2 * N - 1) / 4
    return jacobi_symbol(2 * N, M) * math.sqrt(2 * N) * complex(math.cos(ang), math.sin(ang))


def check_gauss_sum(root: RootOfUnity, variant: str,
                    tol: Tolerances | None = None) -> IdentityReport:
    """Gauss sums and the products that close them (M odd).

    ``gauss``: ``sum_{k<N} (-1)^k q^{-k^2/2} = (-p;p)_{N-1}``.
    ``pp``: ``(-p;p)_{N-1}`` against the Jacobi-symbol form.
    ``gauss3``: the length-2N sum in ``p^{1/2}`` against ``(-p^{1/2};p^{1/2})_{2N-1}``.
    ``pp1/2``: that product against its Jacobi-symbol form.
    ``p1/2p``: ``(-p^{1/2};p)_N = (2/M) sqrt(2) exp(i pi M N / 4)``.
    ``p1/2p-ratio``: ``(-p;p)_{N-1} (-p^{1/2};p)_N = (-p^{1/2};p^{1/2})_{2N-1}``.
    ``gs1``: the sum ``gauss`` against the Jacobi-symbol form directly.
    ``newgauss``: ``sum_{k<N} p^{-k^2/2}``.
    """
    tol = resolve(tol)
    if variant not in GAUSS_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if root.M % 2 == 0:
        raise ParityError("Gauss-sum identities need M odd")
    M, N = root.M, root.N
    p = root.p
    half = Fraction(1, 2)
    ph = root.p_pow(half)

    def hp_pow(k):  # (p^{1/2})**k
        return root.p_pow(Fraction(k, 2))

    def sum_gauss():
        return [(-1) ** k * root.p_pow(-k * k) for k in range(N)]

    def prod_half_half():
        out = 1.0 + 0.0j
        for k in range(2 * N - 1):
            out *= 1 + hp_pow(k + 1)
        return out

    notes = {}
    if variant == "gauss":
        return _finish(variant, _params(root), sum_gauss(), q_poch(-p, p, N - 1), tol)
    if variant == "gs1":
        return _finish(variant, _params(root), sum_gauss(), _closed_pp(root), tol)
    if variant == "pp":
        lhs, rhs = q_poch(-p, p, N - 1), _closed_pp(root)
    elif variant == "gauss3":
        terms = [(-1) ** k * root.p_pow(Fraction(-k * k, 2)) for k in range(2 * N)]
        return _finish(variant, _params(root), terms, prod_half_half(), tol)
    elif variant == "pp1/2":
        lhs, rhs = prod_half_half(), _closed_pp_half(root)
    elif variant == "p1/2p":
        lhs = q_poch(-ph, p, N)
        sign = (-1) ** ((M * M - 1) // 8)
        ang = math.pi * M * N / 4
        rhs = jacobi_symbol(2, M) * math.sqrt(2) * complex(math.cos(ang), math.sin(ang))
        notes = {"sign_form": sign * math.sqrt(2) * complex(math.cos(ang), math.sin(ang)),
                 "ratio_form": prod_half_half() / q_poch(-p, p, N - 1)}
    elif variant == "p1/2p-ratio":
        lhs, rhs = q_poch(-p, p, N - 1) * q_poch(-ph, p, N), prod_half_half()
    else:  # newgauss
        terms = [root.p_pow(Fraction(-k * k, 2)) for k in range(N)]
        ang = -math.pi * M / 4
        rhs = (0.5 * (1 - (-1j) ** ((M * N) % 4))
               + math.sqrt(N / 2) * complex(math.cos(ang), math.sin(ang)) * jacobi_symbol(2 * N, M))
        return _finish(variant, _params(root), terms, rhs, tol)
    rep = IdentityReport.build(variant, _params(root), lhs, rhs, tol, None, notes)
    if variant == "p1/2p":
        extra = max(abs(notes["sign_form"] - rhs), abs(notes["ratio_form"] - rhs))
        if rep.passed and extra > tol.rel * abs(rhs):
            rep = IdentityReport(rep.identity_id, rep.parameters, rep.lhs, rep.rhs,
                                 rep.abs_residual, rep.rel_residual, False, None, notes)
    return rep
