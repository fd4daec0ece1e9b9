"""Generic four-parameter family at a root of unity."""

import cmath
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qunity import awp
from qunity.arith import RootOfUnity, make_root
from qunity.errors import (
    ConstraintError,
    DegenerateZeroError,
    ParameterConstraintError,
    SingularParamError,
)
from qunity.families.cqjacobi import CQJacobiParams, cqj_grid, cqj_pN_derivative
from qunity.families.symmetric import SymmetricParams

from conftest import GENERIC_ROOTS, generic_draws

SPEC_EXAMPLE = dict(a=0.3 + 0.1j, b=0.2, c=-0.4, d=0.15j)


def as_set_distance(x, y):
    """Largest distance from a point of ``x`` to its nearest point of ``y``, both ways."""
    d = np.abs(np.asarray(x)[:, None] - np.asarray(y)[None, :])
    return max(d.min(axis=1).max(), d.min(axis=0).max())


# ---------------------------------------------------------------- recurrence

def test_symmetric_choice_has_zero_b():
    for M, N in [(1, 5), (3, 7), (1, 9)]:
        p = SymmetricParams(0.1, 0.35, make_root(M, N)).to_awp()
        c = awp.recurrence(p)
        assert np.max(np.abs(c.b)) < 1e-13


def test_u_N_vanishes_and_xi_0(draws):
    for p in draws:
        c = awp.recurrence(p)
        assert c.u[p.N] == 0
        assert c.xi[0] == 0
        assert c.xi[p.N] == 0
        assert c.h[0] == 1
        assert np.allclose(c.h[1:], np.cumprod(c.u[1:p.N]), rtol=1e-14)


def test_u_against_independent_factoring(draws):
    # the associated-polynomial formulas with mu = 1 give u_n and b_n in
    # closed form, written in terms of z = q**n rather than xi, eta arrays
    for p in draws:
        c = awp.recurrence(p)
        n = np.arange(1, p.N)
        u, bn = awp.associated_recurrence(p, 1.0, n)
        assert np.allclose(c.u[1:p.N].astype(complex), u, rtol=1e-11, atol=0)
        _, b0 = awp.associated_recurrence(p, 1.0, np.arange(p.N))
        assert np.allclose(c.b.astype(complex), b0, rtol=1e-11, atol=1e-12)


def test_recurrence_errors():
    root = make_root(1, 5)
    with pytest.raises(SingularParamError):
        awp.recurrence(awp.AWParams(0, 0.3, 0.4, 0.5, root))
    # ab = q exactly
    with pytest.raises(ParameterConstraintError) as err:
        awp.recurrence(awp.AWParams(0.5, 2 * root.q, 0.3j, -0.7, root))
    assert err.value.product == "ab"
    assert err.value.k == 1


@pytest.mark.parametrize("name", awp.PAIR_NAMES)
def test_each_product_is_named(name):
    root = make_root(2, 7)
    vals = dict(a=0.55 + 0.1j, b=-0.35j, c=0.8, d=0.42 - 0.3j)
    target = root.q_pow(3) * (1 + 3e-9)
    if name == "g":
        vals["d"] = target / (vals["a"] * vals["b"] * vals["c"])
    else:
        x, y = name
        other = vals[x]
        vals[y] = target / other
    p = awp.AWParams(root=root, **vals)
    with pytest.raises(ParameterConstraintError) as err:
        awp.check_constraints(p)
    assert err.value.product == name
    assert str(err.value).startswith(name)


# ---------------------------------------------------------------- evaluation

def test_eval_monic_low_degrees():
    root = make_root(1, 7)
    c = awp.recurrence(SymmetricParams(0.1, 0.35, root).to_awp())
    x = np.linspace(-2, 2, 9)
    assert np.all(awp.eval_monic(c, 0, x) == 1)
    u1, u2 = (complex(v) for v in c.u[1:3])
    assert np.allclose(awp.eval_monic(c, 3, x), x * (x * x - u1 - u2), atol=1e-13)
    with pytest.raises(ValueError):
        awp.eval_monic(c, root.N + 1, 0.0)


def test_eval_monic_scalar_returns_complex():
    p = generic_draws(1, 5, 1)[0]
    val = awp.eval_monic(awp.recurrence(p), 2, 0.3)
    assert isinstance(val, complex)


def test_monic_matches_hypergeometric(draws, rng):
    for p in draws[:5]:
        c = awp.recurrence(p)
        t = np.exp(rng.uniform(-0.7, 0.7, 20) + 1j * rng.uniform(-np.pi, np.pi, 20))
        x = t + 1 / t
        P = awp.eval_all(c, x).astype(complex)
        for n in range(p.N + 1):
            hyp = awp.eval_hypergeometric(p, n, t)
            scale = np.maximum(np.abs(hyp), np.abs(P[n]))
            assert np.all(np.abs(hyp - P[n]) <= 1e-9 * np.maximum(scale, 1.0)), n


def test_hypergeometric_top_degree_closed_form(draws, rng):
    for p in draws[:4]:
        E = awp.invariant_EN(p)
        t = complex(np.exp(rng.uniform(-0.5, 0.5) + 1j * rng.uniform(-3, 3)))
        N = p.N
        scale = max(1, abs(E), abs(t) ** N, abs(t) ** -N)
        assert abs(awp.eval_hypergeometric(p, N, t) - (t**N + t**-N - E)) < 1e-10 * scale
        assert awp.eval_hypergeometric(p, 0, t) == 1


# ---------------------------------------------------------------- E_N and zeros

def test_EN_permutation_invariant(draws):
    for p in draws:
        E = awp.invariant_EN(p)
        for q in awp.all_permutations(p):
            assert abs(awp.invariant_EN(q) - E) <= 1e-14 * max(1, abs(E))


def test_EN_special_values():
    root = make_root(3, 7)
    assert awp.invariant_EN(awp.AWParams(0, 0, 0, 0, root)) == 0
    cq = CQJacobiParams(0.6 + 0.2j, -0.3j, root).to_awp()
    assert abs(awp.invariant_EN(cq)) < 1e-14


def test_zero_set_chebyshev_for_cq():
    for M, N in [(1, 5), (3, 7), (5, 12 - 1)]:
        root = make_root(M, N)
        z = awp.zero_set(CQJacobiParams(0.6 + 0.2j, -0.3j, root).to_awp())
        assert as_set_distance(z.x, cqj_grid(root)) < 1e-12


def test_real_parameters_give_conjugate_closed_zeros():
    # real E_N > 2 makes r real, so x_0 is real and the others pair up under
    # conjugation (x_s = r q^s + 1/(r q^s) is real only when |r| = 1)
    root = make_root(1, 5)
    p = awp.AWParams(1.2, 0.3, -0.4, 0.5, root)
    E = awp.invariant_EN(p)
    assert abs(E.imag) < 1e-14 and E.real > 2
    x = awp.zero_set(p).x
    assert abs(x[0].imag) < 1e-14
    assert as_set_distance(x, x.conj()) < 1e-12


def test_real_zeros_when_EN_inside_interval():
    root = make_root(2, 7)
    p = awp.AWParams(0.9, 0.3, -0.4, 0.5, root)
    E = awp.invariant_EN(p)
    assert abs(E.imag) < 1e-14 and abs(E.real) < 2
    assert abs(abs(awp.zero_set(p).r) - 1) < 1e-14
    assert np.max(np.abs(awp.zero_set(p).x.imag)) < 1e-12


def test_zeros_are_zeros(draws):
    for p in draws:
        z = awp.zero_set(p)
        assert np.max(np.abs(awp.pN_closed(p, z.x))) <= 1e-12 * max(1, abs(z.E_N))
        c = awp.recurrence(p)
        PN = awp.eval_all(c, z.x)[p.N].astype(complex)
        scale = np.max(np.abs(awp.eval_all(c, z.x).astype(complex)))
        assert np.max(np.abs(PN)) <= 1e-11 * scale
        assert abs(z.identity_ratio - 1) <= 1e-10
        assert np.min(np.abs(z.x[:, None] - z.x[None, :]) + np.eye(p.N) * 10) > 1e-6


def test_zero_set_branch_invariance(draws):
    for p in draws:
        z = awp.zero_set(p)
        s = np.arange(p.N)
        swapped = 1 / z.r * p.root.q_powers(s)
        shifted = z.r * p.root.q * p.root.q_powers(s)
        assert as_set_distance(swapped + 1 / swapped, z.x) < 1e-11
        assert as_set_distance(shifted + 1 / shifted, z.x) < 1e-11


def test_zero_set_permutation_invariance(draws):
    for p in draws[:3]:
        x = awp.zero_set(p).x
        for q in awp.all_permutations(p):
            assert as_set_distance(awp.zero_set(q).x, x) < 1e-11


def test_t_of_x_convention():
    assert awp.t_of_x(2.0) == 1
    assert awp.t_of_x(-2.0) == -1
    t = np.array([1.3, 2j, -1.1 + 0.4j, 0.5])
    back = awp.t_of_x(t + 1 / t)
    assert np.all(np.abs(back) >= 1 - 1e-15)
    assert np.allclose(back + 1 / back, t + 1 / t)


def test_degenerate_EN():
    root = make_root(1, 4)
    # a = b = c = d = 1 gives E_N = 2 when (abcd)^N != 1 is relaxed; use a
    # single nonzero parameter instead: E_N = a^N
    for sign in (2, -2):
        aN = sign + 1e-10
        a = aN ** (1 / 4) if aN > 0 else cmath.exp(1j * math.pi / 4) * abs(aN) ** 0.25
        p = awp.AWParams(a, 0, 0, 0, root)
        with pytest.raises(DegenerateZeroError):
            awp.zero_set(p)


# ---------------------------------------------------------------- derivative

def test_derivative_finite_difference(draws):
    for p in draws[:4]:
        c = awp.recurrence(p)
        z = awp.zero_set(p)
        h = 1e-6
        fd = (awp.eval_all(c, z.x + h)[p.N] - awp.eval_all(c, z.x - h)[p.N]).astype(complex) / (2 * h)
        exact = awp.pN_derivative(p, z, np.arange(p.N))
        assert np.max(np.abs(fd - exact) / np.abs(exact)) < 1e-5


def test_derivative_cq_closed_form():
    for M, N in [(1, 7), (3, 10), (5, 11)]:
        root = make_root(M, N)
        p = CQJacobiParams(0.6 + 0.2j, -0.3j, root).to_awp()
        z = awp.zero_set(p)
        # the zero labels may be permuted; compare after matching x
        s = np.arange(N)
        ref_x = cqj_grid(root)
        ref_d = cqj_pN_derivative(root, s)
        got = awp.pN_derivative(p, z, s)
        order = [int(np.argmin(np.abs(ref_x - xv))) for xv in z.x]
        assert np.allclose(got, ref_d[order], rtol=1e-10)


def test_derivative_N2_by_hand():
    root = make_root(1, 2)
    p = awp.AWParams(0.3 + 0.2j, 0.5, -0.25j, 0.7, root)
    c = awp.recurrence(p)
    z = awp.zero_set(p)
    b0, b1 = (complex(v) for v in c.b)
    # P_2 = x^2 - (b0 + b1) x + b0 b1 - u1
    hand = 2 * z.x - b0 - b1
    assert np.allclose(awp.pN_derivative(p, z, [0, 1]), hand, rtol=1e-12)


def test_derivative_refuses_double_point():
    root = make_root(1, 4)
    p = generic_draws(1, 5, 1)[0]
    z = awp.zero_set(p)
    fake = awp.ZeroSet(z.E_N, 1.0 + 0j, z.x, z.t, 1.0)
    with pytest.raises(DegenerateZeroError):
        awp.pN_derivative(awp.AWParams(p.a, p.b, p.c, p.d, root), fake, 0)


# ---------------------------------------------------------------- weights

def test_F_series_single_term():
    # N = 1 (allowed by the raw constructor): only the n = 0 term survives
    root = RootOfUnity(1, 1)
    assert awp.F_series(awp.AWParams(0.3, 0.2j, 0.5, -0.4, root), 0) == 1


def test_F_series_reconstructs_series_weights(draws):
    for p in draws[:4]:
        c = awp.recurrence(p)
        z = awp.zero_set(p)
        wt = awp.weight_theorem1(p)
        N = p.N
        F = (complex(c.h[N - 1]) * (z.t - 1 / z.t)
             / (N * awp.D_coeff(p, N - 1) * (z.r**N - z.r**-N) * wt.raw))
        assert np.allclose(F, awp.F_series(p, np.arange(N)), rtol=1e-12)


def test_f_bounded_as_a_shrinks():
    root = make_root(1, 5)
    vals = [abs(awp.f_abcd(awp.AWParams(eps * (1 + 1j), 0.4, -0.3j, 0.7, root)))
            for eps in (1e-1, 1e-2, 1e-3, 1e-4)]
    assert max(vals) < 10 * min(vals)
    assert abs(vals[-1] - vals[-2]) < 1e-2


def test_f_permutation_symmetry_observed():
    # not claimed as a theorem; recorded as numerical evidence
    for M, N in [(1, 5), (2, 5), (3, 8)]:
        for p in generic_draws(M, N, 3):
            f = awp.f_abcd(p)
            for q in awp.all_permutations(p):
                assert abs(awp.f_abcd(q) / f - 1) < 1e-9


def test_weights_normalized_and_routes_agree(draws):
    for p in draws:
        wt, wp = awp.weight_theorem1(p), awp.weight_product(p)
        assert abs(wt.w.sum() - 1) < 1e-12 and abs(wp.w.sum() - 1) < 1e-12
        assert np.max(np.abs(wt.w - wp.w) / np.abs(wp.w)) <= 1e-9
        assert abs(wp.extras["periodicity"] - 1) <= 1e-10


def test_w0_closed_form_is_already_normalized(draws):
    for p in draws:
        wp = awp.weight_product(p)
        assert abs(wp.raw.sum() - 1) <= 1e-9
        assert wp.extras["w0"] == wp.raw[0]


def test_chebyshev_constant_weight():
    # exactly at alpha = beta = -1/2 the generic constraint g != q fails,
    # so approach the point: the error must shrink linearly with the offset
    for N in (5, 9, 13):
        root = make_root(1, N)
        errs = []
        for delta in (1e-4, 1e-6):
            p = CQJacobiParams.from_alpha_beta(-0.5 + delta, -0.5 + delta, root).to_awp()
            for wt in (awp.weight_theorem1(p), awp.weight_product(p)):
                errs.append(np.max(np.abs(wt.w - 1 / N)))
                assert errs[-1] < delta
        assert errs[-1] < 2e-2 * errs[0]


def test_sigma_recursion(draws):
    for p in draws:
        wp = awp.weight_product(p)
        op = awp.difference_operator(p)
        s = np.arange(p.N - 1)
        lhs = op.A_at(s + 1) * wp.w[s + 1]
        rhs = op.C_at(s) * wp.w[s]
        assert np.allclose(lhs, rhs, rtol=1e-10, atol=0)


def test_weight_from_ws(draws):
    for p in draws:
        assert np.allclose(awp.weight_from_ws(p), awp.weight_product(p).w, rtol=1e-9, atol=0)


# ---------------------------------------------------------------- difference equation

def test_difference_operator_basics(draws):
    for p in draws:
        op = awp.difference_operator(p)
        assert op.lam[0] == 0
        s = np.arange(p.N)
        assert np.all(np.abs(op.A * op.C_at(s - 1)) > 0)
        assert np.array_equal(op.A_at(s + p.N), op.A)
        res, scale = awp.difference_residual(p)
        assert res <= 1e-10 * scale


# ---------------------------------------------------------------- orthogonality

def test_spec_example_orthogonality():
    p = awp.AWParams(root=make_root(1, 5), **SPEC_EXAMPLE)
    rep = awp.verify_orthogonality(p)
    assert rep.passed
    assert rep.max_offdiag <= 1e-9
    assert abs(rep.gram[0, 0] - 1) < 1e-12
    assert rep.ws_max_rel_err <= 1e-9


def test_orthogonality_and_normalization_sum(draws):
    for p in draws:
        rep = awp.verify_orthogonality(p)
        assert rep.passed, (rep.max_offdiag, rep.dual_max_offdiag)
        t2 = awp.verify_theorem2(p)
        assert t2.passed and abs(t2.lhs / t2.rhs - 1) <= 1e-9


def test_gram_permutation_invariance():
    p = generic_draws(2, 5, 1)[0]
    for q in itertools.islice(awp.all_permutations(p), 0, 24, 5):
        rep = awp.verify_orthogonality(q)
        assert rep.passed


def test_gram_report_detects_wrong_weights():
    p = generic_draws(1, 5, 1)[0]
    c = awp.recurrence(p)
    w = awp.weight_product(p)
    P = awp.eval_all(c, w.x, p.N - 1)
    bad = w.w.copy()
    bad[0] *= 1.001
    rep = awp.gram_report(P.astype(complex), bad, c.h.astype(complex), 1e-9)
    assert not rep.passed


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), mn=st.sampled_from(GENERIC_ROOTS))
def test_orthogonality_property(seed, mn):
    p = awp.sample_params(np.random.default_rng(seed), make_root(*mn))
    assert awp.verify_orthogonality(p).passed


def test_conditioning_reports_finite_numbers(draws):
    cond = awp.conditioning(draws[0])
    assert set(cond) == {"gram", "series"}
    assert all(np.isfinite(v) and v >= 1 - 1e-12 for v in cond.values())


# ---------------------------------------------------------------- Hermiticity

def test_hermitian_inside_region():
    rep = awp.hermitian_region_check(-0.02, 0.01, 0.05, 0.05, 8)
    assert rep["hermitian"] and rep["min_u"] > 0


@pytest.mark.parametrize("args", [
    (-0.02, 0.0, 0.05, 0.05),   # beta must be nonzero
    (0.02, 0.01, 0.05, 0.05),   # alpha < 0
    (-0.02, 0.03, 0.05, 0.05),  # beta < -alpha
    (-0.02, 0.01, 0.01, 0.05),  # gamma > -alpha
    (-0.02, 0.01, 0.05, 0.01),  # delta > -alpha
])
def test_hermitian_constraint_errors(args):
    with pytest.raises(ConstraintError):
        awp.hermitian_region_check(*args, 8)


def test_hermitian_needs_even_N():
    with pytest.raises(ConstraintError):
        awp.hermitian_region_check(-0.02, 0.01, 0.05, 0.05, 7)


def test_hermitian_violations_are_flagged():
    rng = np.random.default_rng(5)
    flagged = 0
    for _ in range(20):
        alpha = -rng.uniform(0.05, 0.2)
        beta = rng.uniform(alpha, -alpha) * 0.9
        gamma = rng.uniform(0, -alpha) * 0.9  # violates gamma > -alpha
        delta = -alpha + rng.uniform(0.05, 0.3)
        rep = awp.hermitian_region_check(alpha, beta, gamma, delta, 8, strict=False)
        flagged += not rep["hermitian"]
    assert flagged >= 1
