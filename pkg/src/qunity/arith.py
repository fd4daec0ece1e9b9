"""Complex arithmetic at roots of unity.

``q = exp(2 pi i M / N)`` is a primitive N-th root of unity and
``p = exp(pi i M / N)`` its half-base, so that ``p**2 == q``.  Powers of
``q`` and ``p`` are always produced from the exact angle with the integer
exponent reduced modulo the period, never by repeated multiplication.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import CoPrimalityError, DomainError, RangeError

__all__ = [
    "RootOfUnity",
    "make_root",
    "q_poch",
    "q_poch_multi",
    "jacobi_symbol",
    "legendre_symbol_bruteforce",
]


@dataclass(frozen=True)
class RootOfUnity:
    """The pair (M, N) with derived ``q`` and ``p``.

    Use :func:`make_root` to build one; the constructor itself does not
    validate.
    """

    M: int
    N: int
    q: complex = field(init=False, repr=False, compare=False)
    p: complex = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p_pow(2))
        object.__setattr__(self, "p", self.p_pow(1))

    def p_pow(self, e) -> complex:
        """``p**e`` for integer or rational ``e``.

        Integer exponents are reduced modulo ``2N`` (the order of ``p``);
        rational exponents are reduced modulo ``2N`` in the same way, so
        ``p_pow(Fraction(1, 2))`` is the principal ``p**(1/2)``.
        """
        if isinstance(e, (int, np.integer)):
            e = int(e) % (2 * self.N)
            if e == 0:
                return 1.0 + 0.0j
            if 2 * e == 2 * self.N:
                return -1.0 + 0.0j
            return cmath.exp(1j * math.pi * self.M * e / self.N)
        if isinstance(e, Rational):
            e = Fraction(e) % (2 * self.N)
            return cmath.exp(1j * math.pi * self.M * float(e) / self.N)
        return cmath.exp(1j * math.pi * self.M * float(e) / self.N)

    def q_pow(self, k) -> complex:
        """``q**k``; ``k`` integer or rational."""
        if isinstance(k, (int, np.integer)):
            return self.p_pow(2 * int(k))
        return self.p_pow(2 * Fraction(k) if isinstance(k, Rational) else 2 * k)

    def q_powers(self, ks) -> np.ndarray:
        ks = np.asarray(ks, dtype=np.int64) % self.N
        return np.exp(2j * np.pi * self.M * ks / self.N)

    def p_powers(self, ks) -> np.ndarray:
        ks = np.asarray(ks, dtype=np.int64) % (2 * self.N)
        return np.exp(1j * np.pi * self.M * ks / self.N)

    @property
    def omega(self) -> float:
        """``pi M / N``."""
        return math.pi * self.M / self.N


def make_root(M: int, N: int) -> RootOfUnity:
    """Primitive N-th root of unity ``exp(2 pi i M / N)``.

    Raises
    ------
    CoPrimalityError
        if ``gcd(M, N) != 1``
    RangeError
        unless ``1 <= M < N`` and ``N >= 2``
    """
    M, N = int(M), int(N)
    if M < 1 or N < 2 or M >= N:
        raise RangeError(f"need 1 <= M < N and N >= 2, got M={M}, N={N}")
    if math.gcd(M, N) != 1:
        raise CoPrimalityError(f"gcd({M}, {N}) = {math.gcd(M, N)} != 1")
    return RootOfUnity(M, N)


def q_poch(a, base, n: int):
    """q-shifted factorial ``(a; base)_n = prod_{k<n} (1 - a base**k)``.

    ``a`` may be a numpy array, in which case the product is elementwise.
    ``base`` may be a :class:`RootOfUnity`, meaning its ``q``.
    """
    if n < 0:
        raise DomainError("negative length")
    if isinstance(base, RootOfUnity):
        powers = base.q_powers(range(n))
    else:
        powers = [base**k for k in range(n)]
    out = np.ones_like(a, dtype=complex) if isinstance(a, np.ndarray) else 1.0 + 0.0j
    for bk in powers:
        out = out * (1 - a * bk)
    return out


def q_poch_multi(args, base, n: int):
    """``(a_1, ..., a_r; base)_n``, the product of the individual factorials."""
    out = 1.0 + 0.0j
    for a in args:
        out = out * q_poch(a, base, n)
    return out


def jacobi_symbol(n: int, m: int) -> int:
    """Jacobi symbol ``(n / m)`` for odd positive ``m``, by quadratic reciprocity."""
    if m < 1 or m % 2 == 0:
        raise DomainError(f"Jacobi symbol needs odd positive m, got {m}")
    n %= m
    acc = 1
    while n:
        while n % 2 == 0:
            n //= 2
            if m % 8 in (3, 5):
                acc = -acc
        n, m = m, n
        if n % 4 == 3 and m % 4 == 3:
            acc = -acc
        n %= m
    return acc if m == 1 else 0


def legendre_symbol_bruteforce(n: int, m: int) -> int:
    """Jacobi symbol from explicit residue counting over the factorization of ``m``.

    Slow; used as an independent check of :func:`jacobi_symbol`.
    """
    if m < 1 or m % 2 == 0:
        raise DomainError(f"Jacobi symbol needs odd positive m, got {m}")
    acc = 1
    rest = m
    f = 3
    while rest > 1:
        while rest % f == 0:
            rest //= f
            r = n % f
            if r == 0:
                return 0
            squares = {(x * x) % f for x in range(1, f)}
            acc *= 1 if r in squares else -1
        f += 2
    return acc
