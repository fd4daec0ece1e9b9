"""Command-line interface.

Every invocation is described by a :class:`RunConfig`; :func:`run` executes
one and writes a report in JSON, CSV or plain text.  Exit status is 0 when
all checks pass, 1 on a verification failure and 2 on bad input.

Examples
--------
::

    qunity weights --family cq-jacobi --M 1 --N 9 --alpha -0.5 --beta -0.5 --format csv
    qunity verify-identity --id gs1 --M 1 --N 3
    qunity gram --family generic --M 1 --N 5 --a 0.3 0.1 --b 0.2 0 --c -0.4 0 --d 0 0.15
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field
from typing import Any, Callable

import numpy as np

from . import awp, identities
from .arith import make_root
from .errors import QUnityError
from .families import altqjacobi as alt
from .families import bigqjacobi as big
from .families import cqjacobi as cqj
from .families import symmetric as sym
from .tolerance import Tolerances

__all__ = ["COMMANDS", "FAMILIES", "LIMITS", "IDENTITY_IDS", "RunConfig", "ConfigError",
           "run", "main", "build_parser", "config_from_args"]

COMMANDS = ("eval", "zeros", "weights", "gram", "verify-identity", "verify-thm2",
            "scan-positivity")
FAMILIES = ("generic", "symmetric", "cq-jacobi", "big-q-jacobi", "alt-q-jacobi")
LIMITS = {
    "q-laguerre": "cq-jacobi",
    "q-hermite": "cq-jacobi",
    "q-meixner": "big-q-jacobi",
    "big-q-laguerre": "big-q-jacobi",
    "double-zero-limit": "alt-q-jacobi",
    "half-gauss": "alt-q-jacobi",
    "wilson-legendre": "alt-q-jacobi",
}
IDENTITY_IDS = (identities.INVERSION_VARIANTS
                + ("qbin", "Chu", "spChu", "saa", "Dic", "Sing")
                + identities.GAUSS_VARIANTS)
COMPLEX_PARAMS = ("a", "b", "c", "d", "z")
REAL_PARAMS = ("alpha", "beta", "gamma", "delta")
SEED_ENV = "QUNITY_SEED"


class ConfigError(QUnityError):
    """Incomplete or inconsistent run configuration."""


# --------------------------------------------------------------------------
# configuration


def _enc(v):
    """JSON-safe encoding; complex numbers become ``[re, im]``."""
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, np.bool_):
        return bool(v)
    if isinstance(v, dict):
        return {str(k): _enc(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_enc(x) for x in v]
    return v


@dataclass
class RunConfig:
    """Full description of one CLI run.

    ``parameters`` maps symbols to values: complex for ``a, b, c, d, z`` and
    real for ``alpha, beta, gamma, delta``.  ``options`` holds command
    specific settings (identity id, degree, draw count, scan ranges, ...).
    """

    command: str
    family: str = "generic"
    M: int = 1
    N: int = 5
    parameters: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    format: str = "json"
    seed: int = 0
    options: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["parameters"] = {k: _enc(complex(v)) if k in COMPLEX_PARAMS else float(v)
                           for k, v in sorted(self.parameters.items())}
        d["options"] = _enc(dict(sorted(self.options.items())))
        d["tolerances"] = dict(sorted(self.tolerances.items()))
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        params = {}
        for k, v in d.get("parameters", {}).items():
            params[k] = complex(v[0], v[1]) if k in COMPLEX_PARAMS else float(v)
        return cls(d["command"], d.get("family", "generic"), int(d.get("M", 1)),
                   int(d.get("N", 5)), params, dict(d.get("tolerances", {})),
                   d.get("format", "json"), int(d.get("seed", 0)), dict(d.get("options", {})))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        return cls.from_dict(json.loads(text))

    def tol(self) -> Tolerances:
        t = self.tolerances
        return Tolerances().with_overrides(t.get("rel"), t.get("abs"), t.get("cond"))

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.format not in ("json", "csv", "text"):
            raise ConfigError(f"unknown format {self.format!r}")
        fam = self.family
        if fam.startswith("limit:"):
            if fam[6:] not in LIMITS:
                raise ConfigError(f"unknown limit {fam[6:]!r}; choose from {sorted(LIMITS)}")
        elif fam not in FAMILIES:
            raise ConfigError(f"unknown family {fam!r}")


# --------------------------------------------------------------------------
# results


@dataclass
class Result:
    passed: bool
    summary: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)


def _need(cfg: RunConfig, *names) -> list:
    missing = [n for n in names if n not in cfg.parameters]
    if missing:
        raise ConfigError(f"family {cfg.family} needs --{' --'.join(missing)}")
    return [cfg.parameters[n] for n in names]


def _root(cfg: RunConfig):
    return make_root(cfg.M, cfg.N)


def _generic(cfg):
    a, b, c, d = _need(cfg, "a", "b", "c", "d")
    return awp.AWParams(a, b, c, d, _root(cfg))


def _cq(cfg):
    root = _root(cfg)
    if "alpha" in cfg.parameters or "beta" in cfg.parameters:
        al, be = _need(cfg, "alpha", "beta")
        return cqj.CQJacobiParams.from_alpha_beta(al, be, root)
    a, c = _need(cfg, "a", "c")
    return cqj.CQJacobiParams(a, c, root)


def _alt(cfg):
    root = _root(cfg)
    if "alpha" in cfg.parameters or "beta" in cfg.parameters:
        al, be = _need(cfg, "alpha", "beta")
        return alt.AltQJacobiParams.from_alpha_beta(al, be, root)
    a, b = _need(cfg, "a", "b")
    return alt.AltQJacobiParams(a, b, root)


def _sym(cfg):
    al, be = _need(cfg, "alpha", "beta")
    return sym.SymmetricParams(al, be, _root(cfg))


def _big(cfg):
    a, b = _need(cfg, "a", "b")
    return big.BigQJacobiParams(a, b, _root(cfg))


def _coeffs_and_grid(cfg: RunConfig):
    """Recurrence coefficients, zero grid, grid index origin and top degree."""
    tol = cfg.tol()
    fam = cfg.family
    if fam == "generic":
        p = _generic(cfg)
        return awp.recurrence(p, tol), awp.zero_set(p, tol).x, 0, cfg.N
    if fam == "symmetric":
        p = _sym(cfg)
        return sym.sym_coeffs(p), sym.sym_grid(p), 0, cfg.N
    if fam == "cq-jacobi":
        p = _cq(cfg)
        return awp.recurrence(p.to_awp(), tol), cqj.cqj_grid(p.root), 0, cfg.N
    if fam == "big-q-jacobi":
        p = _big(cfg)
        return big.bqj_recurrence(p, tol), big.bqj_zeros(p.root), 1, cfg.N
    if fam == "alt-q-jacobi":
        p = _alt(cfg)
        return alt.aqj_recurrence(p, tol), alt.aqj_grid(p.root), 0, cfg.N + 1
    if fam == "limit:wilson-legendre":
        if cfg.M != 1:
            raise ConfigError("wilson-legendre is defined for M = 1")
        co = alt.wilson_legendre_coeffs(cfg.N)
        return co, alt.aqj_grid(_root(cfg)) / 2, 0, cfg.N - 1
    raise ConfigError(f"{cfg.command} is not available for family {fam}")


def _cmd_eval(cfg: RunConfig) -> Result:
    coeffs, grid, origin, top = _coeffs_and_grid(cfg)
    pts = cfg.options.get("x")
    if pts:
        xs = np.array([complex(*v) if isinstance(v, (list, tuple)) else complex(v) for v in pts])
        labels = [None] * len(xs)
    else:
        xs, labels = np.asarray(grid, dtype=complex), list(range(origin, origin + len(grid)))
    nmax = int(cfg.options.get("n", top))
    if not 0 <= nmax <= top:
        raise ConfigError(f"degree must lie in 0..{top}")
    P = awp.eval_all(coeffs, xs, nmax)
    rows = []
    hyp = None
    if cfg.family == "generic":
        params = _generic(cfg)
        ts = awp.t_of_x(xs)
        hyp = np.array([awp.eval_hypergeometric(params, n, ts, cfg.tol()) for n in range(nmax + 1)])
    for n in range(nmax + 1):
        for j, x in enumerate(xs):
            row = {"n": n, "s": labels[j], "x": complex(x), "P": complex(P[n, j])}
            if hyp is not None:
                row["P_hypergeometric"] = complex(hyp[n, j])
            rows.append(row)
    passed = True
    summary = {"max_degree": nmax}
    if hyp is not None:
        scale = max(1.0, float(np.abs(P).max()))
        diff = float(np.abs(hyp - P).max()) / scale
        summary["max_route_difference"] = diff
        passed = diff <= cfg.tol().rel
    return Result(passed, summary, rows)


def _cmd_zeros(cfg: RunConfig) -> Result:
    fam = cfg.family
    tol = cfg.tol()
    summary = {}
    if fam == "generic":
        zs = awp.zero_set(_generic(cfg), tol)
        summary = {"E_N": zs.E_N, "r": zs.r, "identity_ratio": zs.identity_ratio}
        rows = [{"s": s, "x": complex(x), "t": complex(t)} for s, (x, t) in enumerate(zip(zs.x, zs.t))]
        return Result(abs(zs.identity_ratio - 1) <= tol.rel, summary, rows)
    if fam.startswith("limit:"):
        parent = LIMITS[fam[6:]]
        grids = {"cq-jacobi": (cqj.cqj_grid, 0), "big-q-jacobi": (big.bqj_zeros, 1),
                 "alt-q-jacobi": (alt.aqj_grid, 0)}
        fn, origin = grids[parent]
        x = fn(_root(cfg))
    else:
        _, x, origin, _ = _coeffs_and_grid(cfg)
    rows = [{"s": origin + i, "x": complex(v)} for i, v in enumerate(x)]
    return Result(True, summary, rows)


def _limit_table(cfg: RunConfig) -> awp.WeightTable:
    name = cfg.family[6:]
    root = _root(cfg)
    tol = cfg.tol()
    if name in ("q-laguerre", "q-hermite"):
        a = cfg.parameters.get("a") if name == "q-laguerre" else None
        if name == "q-laguerre" and a is None:
            raise ConfigError("q-laguerre needs --a")
        return cqj.cqj_limits(root, name, a)
    if name in ("q-meixner", "big-q-laguerre"):
        return big.bqj_limits(root, name, cfg.parameters.get("a"), cfg.parameters.get("b"), tol)
    return alt.aqj_limits(root, name)


def _weight_table(cfg: RunConfig):
    """Weight table plus whether its raw values carry a closed normalization."""
    tol = cfg.tol()
    fam = cfg.family
    if fam == "generic":
        return awp.weight_product(_generic(cfg), tol), True
    if fam == "symmetric":
        return sym.sym_weight(_sym(cfg)), False
    if fam == "cq-jacobi":
        return cqj.cqj_weights(_cq(cfg)), True
    if fam == "big-q-jacobi":
        return big.bqj_weights(_big(cfg), tol), True
    if fam == "alt-q-jacobi":
        return alt.aqj_weights(_alt(cfg), tol), True
    return _limit_table(cfg), True


def _cmd_weights(cfg: RunConfig) -> Result:
    tol = cfg.tol()
    table, closed = _weight_table(cfg)
    second = None
    if cfg.family == "generic":
        second = awp.weight_theorem1(_generic(cfg), tol).w
    rows = []
    for i, (s, x, w) in enumerate(zip(table.s, table.x, table.w)):
        row = {"s": int(s), "x": complex(x), "w": complex(w)}
        if second is not None:
            row["w_theorem1"] = complex(second[i])
        rows.append(row)
    summary = {"source": table.source, "index_origin": table.index_origin}
    passed = True
    if closed and table.raw is not None:
        raw_sum = complex(np.sum(table.raw))
        summary["raw_sum"] = raw_sum
        passed = abs(raw_sum - 1) <= tol.rel
    if second is not None:
        diff = float(np.max(np.abs(second - table.w) / np.abs(table.w)))
        summary["max_route_difference"] = diff
        passed = passed and diff <= tol.rel
    return Result(passed, summary, rows)


def _gram_summary(rep: awp.OrthogonalityReport) -> dict:
    return {"max_offdiag": rep.max_offdiag, "max_diag_rel_err": float(np.max(rep.diag_rel_err)),
            "dual_max_offdiag": rep.dual_max_offdiag, "ws_max_rel_err": rep.ws_max_rel_err,
            "tolerance": rep.tol}


def _cmd_gram(cfg: RunConfig) -> Result:
    tol = cfg.tol()
    fam = cfg.family
    extra = {}
    if fam == "generic":
        rep = awp.verify_orthogonality(_generic(cfg), tol)
    elif fam == "symmetric":
        p = _sym(cfg)
        wt = sym.sym_weight(p)
        P = awp.eval_all(sym.sym_coeffs(p), wt.x, cfg.N - 1)
        rep = awp.gram_report(P, wt.w, wt.h, tol.rel)
    elif fam == "cq-jacobi":
        p = _cq(cfg)
        co = awp.recurrence(p.to_awp(), tol)
        wt = cqj.cqj_weights(p)
        rep = awp.gram_report(awp.eval_all(co, wt.x, cfg.N - 1), wt.w, co.h, tol.rel)
    elif fam == "big-q-jacobi":
        rep = big.bqj_all(_big(cfg), tol).gram
    elif fam == "alt-q-jacobi":
        rep = alt.aqj_all(_alt(cfg), tol).gram
    elif fam == "limit:wilson-legendre":
        if cfg.M != 1:
            raise ConfigError("wilson-legendre is defined for M = 1")
        rep, top = alt.wilson_legendre_gram(cfg.N, tol.rel)
        extra = {"max_abs_top_degree_on_support": top}
    else:
        raise ConfigError(f"gram is not available for family {fam}")
    summary = {**_gram_summary(rep), **extra}
    passed = rep.passed and (fam != "generic" or rep.ws_max_rel_err <= tol.rel)
    rows = [{"n": i, "m": j, "G": complex(rep.gram[i, j])}
            for i in range(rep.gram.shape[0]) for j in range(rep.gram.shape[1])]
    return Result(passed, summary, rows)


def _report_row(rep) -> dict:
    row = {"id": rep.identity_id, "lhs": rep.lhs, "rhs": rep.rhs,
           "abs_residual": rep.abs_residual, "rel_residual": rep.rel_residual,
           "passed": rep.passed}
    for k, v in rep.parameters.items():
        if k not in ("M", "N"):
            row[k] = v
    if "cond" in rep.notes:
        row["cond"] = rep.notes["cond"]
    return row


def _identity_call(ident: str, root, params: dict, tol) -> Callable[[], Any]:
    a, b, c, z = (params.get(k) for k in ("a", "b", "c", "z"))
    s = params.get("s")
    if ident in identities.INVERSION_VARIANTS:
        return lambda: identities.check_inversion(a, root, ident, tol)
    if ident == "qbin":
        return lambda: identities.check_q_binomial(s, z, root, tol)
    if ident == "Chu":
        return lambda: identities.check_chu_vandermonde(s, a, c, root, tol)
    if ident == "spChu":
        return lambda: identities.check_sp_chu(a, c, root, tol)
    if ident == "saa":
        return lambda: identities.check_pfaff_saalschutz(a, b, c, root, tol)
    if ident == "Dic":
        return lambda: identities.check_dixon(a, b, root, tol)
    if ident == "Sing":
        return lambda: identities.check_singh(a, b, root, tol)
    return lambda: identities.check_gauss_sum(root, ident, tol)


_IDENTITY_NEEDS = {"qbin": ("z",), "Chu": ("a", "c"), "spChu": ("a", "c"),
                   "saa": ("a", "b", "c"), "Dic": ("a", "b"), "Sing": ("a", "b")}


def _cmd_verify_identity(cfg: RunConfig) -> Result:
    ident = cfg.options.get("id")
    if ident not in IDENTITY_IDS:
        raise ConfigError(f"--id must be one of {', '.join(IDENTITY_IDS)}")
    root = _root(cfg)
    tol = cfg.tol()
    needs = _IDENTITY_NEEDS.get(ident, ("a",) if ident in identities.INVERSION_VARIANTS else ())
    uses_s = ident in ("qbin", "Chu")
    given = all(k in cfg.parameters for k in needs)
    reports = []
    if given or not needs:
        params = {k: cfg.parameters[k] for k in needs}
        if uses_s:
            params["s"] = int(cfg.options.get("s", 1))
        reports.append(_identity_call(ident, root, params, tol)())
    else:
        rng = np.random.default_rng(cfg.seed)
        draws = int(cfg.options.get("draws", 10))
        for _ in range(draws):
            params = {k: identities.random_annulus(rng) for k in needs}
            if uses_s:
                params["s"] = int(cfg.options.get("s", rng.integers(1, root.N)))
            try:
                reports.append(_identity_call(ident, root, params, tol)())
            except QUnityError:
                # a draw on a singular denominator says nothing about the identity
                continue
    rows = [_report_row(r) for r in reports]
    passed = bool(reports) and all(r.passed for r in reports)
    summary = {"id": ident, "reports": len(reports),
               "max_rel_residual": max((r.rel_residual for r in reports), default=math.nan)}
    return Result(passed, summary, rows)


def _cmd_verify_thm2(cfg: RunConfig) -> Result:
    if cfg.family != "generic":
        raise ConfigError("verify-thm2 needs --family generic")
    rep = awp.verify_theorem2(_generic(cfg), cfg.tol())
    return Result(rep.passed, {}, [_report_row(rep)])


def _grid(lo: float, hi: float, n: int) -> np.ndarray:
    """``n`` interior points of the open interval ``(lo, hi)``."""
    return lo + (hi - lo) * (np.arange(1, n + 1)) / (n + 1)


_SCAN_DEFAULTS = {"symmetric": ((-0.25, 0.25), (0.25, 0.75)),
                  "cq-jacobi": ((-1.0, 1.0), (-1.0, 1.0)),
                  "alt-q-jacobi": ((0.0, 1.0), (0.0, 1.0))}


def _scan_point(cfg: RunConfig, al: float, be: float) -> tuple[float, float]:
    root = _root(cfg)
    tol = cfg.tol()
    fam = cfg.family
    if fam == "symmetric":
        p = sym.SymmetricParams(al, be, root)
        u = np.asarray(sym.sym_recurrence(p, np.arange(1, cfg.N)))
        return float(u.min()), float(sym.sym_weight(p).raw.min())
    if fam == "cq-jacobi":
        if cfg.M == 1:
            w = cqj.theorem3_weights(al, be, cfg.N).raw
        else:
            w = cqj.cqj_weights(cqj.CQJacobiParams.from_alpha_beta(al, be, root)).raw
        try:
            u = awp.recurrence(cqj.CQJacobiParams.from_alpha_beta(al, be, root).to_awp(), tol).u[1:cfg.N]
        except QUnityError:
            # only the weights are claimed positive here; u_n is informational
            return math.nan, _real_min(w)
        return _real_min(u), _real_min(w)
    p = alt.AltQJacobiParams.from_alpha_beta(al, be, root)
    return (_real_min(alt.aqj_recurrence(p, tol).u[1:cfg.N + 1]),
            _real_min(alt.aqj_weights(p, tol).raw))


def _real_min(v) -> float:
    """Smallest real part, or -inf when some entry is not real."""
    v = np.asarray(v, dtype=complex)
    if np.any(np.abs(v.imag) > 1e-9 * np.maximum(np.abs(v), 1e-300)):
        return -math.inf
    return float(v.real.min())


def _cmd_scan(cfg: RunConfig) -> Result:
    fam = cfg.family
    if fam not in _SCAN_DEFAULTS:
        raise ConfigError("scan-positivity supports symmetric, cq-jacobi and alt-q-jacobi")
    da, db = _SCAN_DEFAULTS[fam]
    if fam == "symmetric" and cfg.options.get("region") == "II":
        da, db = (0.25, 0.75), (0.75, 1.25)
    ar = cfg.options.get("alpha_range", da)
    br = cfg.options.get("beta_range", db)
    n = int(cfg.options.get("grid", 9))
    rows = []
    passed = True
    for al in _grid(*ar, n):
        for be in _grid(*br, n):
            try:
                mu, mw = _scan_point(cfg, float(al), float(be))
            except QUnityError as exc:
                rows.append({"alpha": float(al), "beta": float(be), "min_u": None, "min_w": None,
                             "status": type(exc).__name__})
                continue
            ok = mw > 0 and (fam == "cq-jacobi" or mu > 0)
            passed = passed and ok
            rows.append({"alpha": float(al), "beta": float(be),
                         "min_u": None if math.isnan(mu) else mu, "min_w": mw,
                         "status": "positive" if ok else "not-positive"})
    summary = {"alpha_range": list(ar), "beta_range": list(br), "grid": n,
               "positive": sum(r["status"] == "positive" for r in rows),
               "excluded": sum(r["min_w"] is None for r in rows)}
    return Result(passed, summary, rows)


_DISPATCH = {"eval": _cmd_eval, "zeros": _cmd_zeros, "weights": _cmd_weights,
             "gram": _cmd_gram, "verify-identity": _cmd_verify_identity,
             "verify-thm2": _cmd_verify_thm2, "scan-positivity": _cmd_scan}


# --------------------------------------------------------------------------
# output


def _fmt_num(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (complex, np.complexfloating)):
        return f"{float(v.real):.15g}{float(v.imag):+.15g}j"
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.15g}"
    return str(v)


def _flat(row: dict) -> dict:
    out = {}
    for k, v in row.items():
        if isinstance(v, (complex, np.complexfloating)):
            out[f"{k}_re"] = repr(float(v.real))
            out[f"{k}_im"] = repr(float(v.imag))
        elif isinstance(v, (float, np.floating)):
            out[k] = repr(float(v))
        else:
            out[k] = "" if v is None else str(v)
    return out


def render(cfg: RunConfig, res: Result) -> str:
    if cfg.format == "json":
        doc = {"config": cfg.to_dict(), "passed": bool(res.passed),
               "summary": _enc(res.summary), "rows": _enc(res.rows)}
        return json.dumps(doc, indent=2) + "\n"
    if cfg.format == "csv":
        buf = io.StringIO()
        flat = [_flat(r) for r in res.rows]
        cols = list(dict.fromkeys(k for r in flat for k in r))
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        writer.writerows(flat)
        return buf.getvalue()
    lines = [f"{cfg.command} family={cfg.family} M={cfg.M} N={cfg.N} "
             f"{'PASS' if res.passed else 'FAIL'}"]
    lines += [f"  {k}: {_fmt_num(v) if not isinstance(v, list) else v}" for k, v in res.summary.items()]
    if res.rows:
        cols = list(dict.fromkeys(k for r in res.rows for k in r))
        lines.append("  " + "  ".join(cols))
        lines += ["  " + "  ".join(_fmt_num(r.get(c)) for c in cols) for r in res.rows]
    return "\n".join(lines) + "\n"


def run(cfg: RunConfig, out=None, err=None) -> int:
    """Execute ``cfg``; write the report to ``out`` and diagnostics to ``err``."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        cfg.validate()
        res = _DISPATCH[cfg.command](cfg)
    except (QUnityError, ValueError) as exc:
        err.write(f"qunity: error: {type(exc).__name__}: {exc}\n")
        return 2
    out.write(render(cfg, res))
    return 0 if res.passed else 1


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", default="generic",
                        help="generic, symmetric, cq-jacobi, big-q-jacobi, alt-q-jacobi "
                             "or limit:<name>")
    common.add_argument("--M", type=int, default=1)
    common.add_argument("--N", type=int, default=5)
    for name in COMPLEX_PARAMS:
        common.add_argument(f"--{name}", nargs=2, type=float, metavar=("RE", "IM"))
    for name in REAL_PARAMS:
        common.add_argument(f"--{name}", type=float)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--seed", type=int, default=None,
                        help=f"random seed (falls back to ${SEED_ENV}, then 0)")
    common.add_argument("--tolerance-rel", type=float)
    common.add_argument("--tolerance-abs", type=float)
    common.add_argument("--epsilon-cond", type=float)

    parser = argparse.ArgumentParser(prog="qunity", description=__doc__.split("\n\n")[0])
    parser.add_argument("--config", help="run a saved RunConfig JSON file instead")
    sub = parser.add_subparsers(dest="command")
    p = sub.add_parser("eval", parents=[common], help="evaluate P_0..P_n")
    p.add_argument("--n", type=int, help="top degree")
    p.add_argument("--x", nargs=2, type=float, action="append", metavar=("RE", "IM"),
                   help="evaluation point (repeatable); default: the zero grid")
    sub.add_parser("zeros", parents=[common], help="zeros of the top polynomial")
    sub.add_parser("weights", parents=[common], help="orthogonality weights")
    sub.add_parser("gram", parents=[common], help="Gram and dual orthogonality check")
    p = sub.add_parser("verify-identity", parents=[common], help="check one identity")
    p.add_argument("--id", required=True, choices=IDENTITY_IDS)
    p.add_argument("--s", type=int)
    p.add_argument("--draws", type=int, default=10,
                   help="random draws when parameters are not given")
    sub.add_parser("verify-thm2", parents=[common], help="normalization identity")
    p = sub.add_parser("scan-positivity", parents=[common], help="grid scan of u_n and w_s")
    p.add_argument("--alpha-range", nargs=2, type=float)
    p.add_argument("--beta-range", nargs=2, type=float)
    p.add_argument("--grid", type=int, default=9)
    p.add_argument("--region", choices=("I", "II"), default="I")
    return parser


def config_from_args(ns: argparse.Namespace, environ=None) -> RunConfig:
    environ = os.environ if environ is None else environ
    params = {}
    for k in COMPLEX_PARAMS:
        v = getattr(ns, k, None)
        if v is not None:
            params[k] = complex(v[0], v[1])
    for k in REAL_PARAMS:
        v = getattr(ns, k, None)
        if v is not None:
            params[k] = float(v)
    tols = {k: v for k, v in (("rel", ns.tolerance_rel), ("abs", ns.tolerance_abs),
                              ("cond", ns.epsilon_cond)) if v is not None}
    seed = ns.seed
    if seed is None:
        try:
            seed = int(environ.get(SEED_ENV, 0))
        except ValueError as exc:
            raise ConfigError(f"${SEED_ENV} must be an integer") from exc
    opts = {}
    for k in ("n", "id", "s", "draws", "grid", "region"):
        v = getattr(ns, k, None)
        if v is not None:
            opts[k] = v
    if getattr(ns, "x", None):
        opts["x"] = [list(v) for v in ns.x]
    for k in ("alpha_range", "beta_range"):
        v = getattr(ns, k, None)
        if v is not None:
            opts[k] = list(v)
    return RunConfig(ns.command, ns.family, ns.M, ns.N, params, tols, ns.format, seed, opts)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        if ns.config:
            with open(ns.config, encoding="utf-8") as fh:
                cfg = RunConfig.from_json(fh.read())
        elif ns.command is None:
            parser.print_usage(sys.stderr)
            return 2
        else:
            cfg = config_from_args(ns)
    except (OSError, ValueError, KeyError) as exc:
        sys.stderr.write(f"qunity: error: {exc}\n")
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
