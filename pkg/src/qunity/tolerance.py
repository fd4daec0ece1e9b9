"""Numerical tolerances shared by all verifiers."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    """Tolerance bundle.

    Attributes
    ----------
    rel : float
        relative tolerance used by pass/fail decisions
    abs : float
        absolute tolerance, used when the reference value is (near) zero
    cond : float
        distance below which a parameter product is considered to hit a
        forbidden value (a power of the base, or E_N = +-2)
    """

    rel: float = 1e-9
    abs: float = 1e-12
    cond: float = 1e-8

    def with_overrides(self, rel=None, abs=None, cond=None) -> "Tolerances":
        changes = {k: v for k, v in (("rel", rel), ("abs", abs), ("cond", cond)) if v is not None}
        return replace(self, **changes)


DEFAULT = Tolerances()


def resolve(tol: Tolerances | None) -> Tolerances:
    return DEFAULT if tol is None else tol
