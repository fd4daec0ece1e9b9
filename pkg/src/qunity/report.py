"""Result record for two-sided identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .tolerance import Tolerances, resolve


@dataclass(frozen=True)
class IdentityReport:
    identity_id: str
    parameters: dict
    lhs: complex
    rhs: complex
    abs_residual: float
    rel_residual: float
    passed: bool
    # absolute bound used when the right-hand side vanishes identically
    zero_bound: float | None = None
    notes: dict = field(default_factory=dict)

    @classmethod
    def build(cls, identity_id, parameters, lhs, rhs, tol: Tolerances | None = None,
              zero_bound=None, notes=None):
        """Compare ``lhs`` and ``rhs``.

        If ``zero_bound`` is given the right-hand side is known to vanish and
        the check is ``|lhs| <= zero_bound``.  Otherwise the relative residual
        is used, falling back to the absolute one when ``|rhs| < tol.abs``.
        """
        tol = resolve(tol)
        lhs, rhs = complex(lhs), complex(rhs)
        diff = abs(lhs - rhs)
        rel = diff / abs(rhs) if rhs != 0 else float("inf") if diff else 0.0
        if zero_bound is not None:
            ok = abs(lhs) <= zero_bound and abs(rhs) <= zero_bound
        elif abs(rhs) < tol.abs:
            ok = diff <= tol.abs
        else:
            ok = rel <= tol.rel
        return cls(identity_id, dict(parameters), lhs, rhs, diff, rel, bool(ok),
                   zero_bound, dict(notes or {}))
