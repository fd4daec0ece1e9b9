"""Summation, inversion and Gauss-sum identities."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qunity import identities as ids
from qunity.arith import RootOfUnity, make_root, q_poch
from qunity.errors import ParameterConstraintError, ParityError, QUnityError, SingularDenominatorError

from conftest import COND_LIMIT, draw_reports

ALL_IDS = ("qbin", "Chu", "spChu", "saa", "Dic", "Sing") + ids.INVERSION_VARIANTS


@pytest.mark.parametrize("name", ALL_IDS)
def test_random_draws(name):
    well, ill = draw_reports(name)
    assert len(well) >= 50
    bad = [(r.parameters, r.rel_residual) for r in well if not r.passed]
    assert not bad
    assert len(ill) < len(well)
    for r in ill:
        assert r.rel_residual <= 1e-13 * r.notes["cond"]


# ------------------------------------------------------------------ inversion

def test_inversion_zero_case():
    rep = ids.check_inversion(1.0, make_root(1, 5), "odd1")
    assert rep.passed and rep.zero_bound is not None
    assert abs(rep.lhs) < 1e-14


@pytest.mark.parametrize("M,variant", [(1, "odd1"), (3, "odd2"), (2, "even1"), (4, "even2")])
def test_inversion_spec_examples(M, variant):
    rng = np.random.default_rng(3)
    root = make_root(M, 5 if M < 5 else 7)
    for _ in range(10):
        rep = ids.check_inversion(ids.random_annulus(rng), root, variant)
        assert rep.abs_residual <= 1e-12 * max(1, abs(rep.rhs))


def test_inversion_parity():
    with pytest.raises(ParityError):
        ids.check_inversion(0.5, make_root(2, 5), "odd1")
    with pytest.raises(ParityError):
        ids.check_inversion(0.5, make_root(1, 5), "even2")
    with pytest.raises(ValueError):
        ids.check_inversion(0.5, make_root(1, 5), "odd3")


# ------------------------------------------------------------------ q-binomial

def test_q_binomial_special_points():
    root = make_root(2, 7)
    rep = ids.check_q_binomial(3, 0.0, root)
    assert rep.passed and rep.lhs == 1 and rep.rhs == 1
    rep = ids.check_q_binomial(3, root.q, root)
    assert rep.passed and abs(rep.lhs) < 1e-12


def test_q_binomial_third_form_and_tail():
    rng = np.random.default_rng(9)
    root = make_root(1, 7)
    for _ in range(10):
        rep = ids.check_q_binomial(2, ids.random_annulus(rng), root)
        assert rep.abs_residual <= 1e-11 * max(1, abs(rep.rhs))
        assert abs(rep.notes["third_form"] - rep.rhs) <= 1e-11 * max(1, abs(rep.rhs))
        # terms past k = N - s vanish identically (up to rounding in q^s q^k)
        assert rep.notes["tail_max"] <= 1e-12 * max(1, abs(rep.lhs))


def test_q_binomial_singular():
    root = make_root(1, 7)
    with pytest.raises(SingularDenominatorError):
        ids.check_q_binomial(2, 1.0, root)
    with pytest.raises(ValueError):
        ids.check_q_binomial(7, 0.3, root)


# ------------------------------------------------------------------ Chu-Vandermonde

def test_chu_a_equals_c():
    root = make_root(3, 8)
    rep = ids.check_chu_vandermonde(2, 0.7 + 0.1j, 0.7 + 0.1j, root)
    assert rep.passed and rep.zero_bound is not None


def test_chu_geometric_sum():
    # a = c leaves sum_k q^k over a full period
    root = make_root(3, 8)
    rep = ids.check_sp_chu(0.4j, 0.4j, root)
    assert rep.passed and abs(rep.lhs) < 1e-14


def test_sp_chu_is_chu_at_s1():
    rng = np.random.default_rng(4)
    root = make_root(2, 9)
    for _ in range(10):
        a, c = ids.random_annulus(rng), ids.random_annulus(rng)
        sp = ids.check_sp_chu(a, c, root)
        ch = ids.check_chu_vandermonde(1, a, c, root)
        assert abs(sp.lhs - ch.lhs) <= 1e-12 * max(1, abs(sp.lhs))
        assert abs(sp.rhs - ch.rhs) <= 1e-11 * max(1, abs(sp.rhs))


def test_chu_rejects_c_power():
    root = make_root(1, 5)
    with pytest.raises(ParameterConstraintError):
        ids.check_chu_vandermonde(2, 0.3, root.q, root)


# ------------------------------------------------------------------ Pfaff-Saalschutz

def test_saalschutz_zero_case_and_b_equals_q():
    root = make_root(1, 5)
    rep = ids.check_pfaff_saalschutz(0.6 + 0.3j, 0.45j, 0.6 + 0.3j, root)
    assert rep.passed and rep.zero_bound is not None
    # b = q: the (b;q)_k factor becomes (q;q)_k; sum it independently
    rng = np.random.default_rng(11)
    for _ in range(5):
        a, c = ids.random_annulus(rng), ids.random_annulus(rng)
        saa = ids.check_pfaff_saalschutz(a, root.q, c, root)
        e = a * root.q**3 / c
        direct = sum(q_poch(a, root, k) * q_poch(root.q, root, k) * root.q_pow(k)
                     / (q_poch(c, root, k) * q_poch(e, root, k)) for k in range(5))
        assert abs(saa.lhs - direct) <= 1e-12 * max(1, abs(direct))
        assert saa.passed


def test_saalschutz_constraint():
    root = make_root(1, 5)
    with pytest.raises(ParameterConstraintError) as err:
        ids.check_pfaff_saalschutz(0.5, 0.4, 0.2, root)
    assert err.value.product == "(ab)^N"


# ------------------------------------------------------------------ Dixon

def test_dixon_b_equals_a_squared():
    # both b - a^2 and b^N - a^2N vanish; the closed form has a nonzero limit
    root = make_root(2, 7)
    a = 0.6 + 0.2j
    rep = ids.check_dixon(a, a * a, root)
    assert rep.notes["removable_limit"]
    assert rep.passed
    assert abs(rep.rhs) > 0.1
    near = ids.check_dixon(a, a * a * (1 + 1e-7), root)
    assert abs(near.rhs - rep.rhs) < 1e-5 * abs(rep.rhs)


def test_dixon_random_N7():
    rng = np.random.default_rng(7)
    root = make_root(3, 7)
    for _ in range(10):
        rep = ids.check_dixon(ids.random_annulus(rng), ids.random_annulus(rng), root)
        if rep.notes["cond"] <= COND_LIMIT:
            assert rep.rel_residual <= 1e-10


# ------------------------------------------------------------------ Singh

def test_singh_zero_case_and_parity():
    root = make_root(1, 5)
    rep = ids.check_singh(0.7 + 0.2j, root.p, root)
    assert rep.passed and rep.zero_bound is not None
    with pytest.raises(ParityError):
        ids.check_singh(0.5, 0.3, make_root(2, 5))


def test_singh_limit_is_gauss_sum():
    for M, N in [(1, 5), (3, 7), (5, 9)]:
        root = make_root(M, N)
        gauss = ids.check_gauss_sum(root, "gauss").lhs
        eps = 1e-7
        rep = ids.check_singh(eps, eps * eps, root)
        assert abs(rep.lhs - gauss) < 1e-5 * abs(gauss)


# ------------------------------------------------------------------ Gauss sums

def odd_coprime(nmax):
    return [(M, N) for N in range(2, nmax + 1) for M in range(1, N, 2) if math.gcd(M, N) == 1]


@pytest.mark.parametrize("variant", ids.GAUSS_VARIANTS)
def test_gauss_all_pairs(variant):
    for M, N in odd_coprime(50):
        rep = ids.check_gauss_sum(make_root(M, N), variant)
        assert rep.passed, (M, N, rep.rel_residual)
        assert rep.rel_residual <= 1e-9


def test_gs1_spot_value():
    rep = ids.check_gauss_sum(make_root(1, 3), "gs1")
    assert abs(rep.lhs - 1j * math.sqrt(3)) < 1e-14
    assert abs(rep.rhs - 1j * math.sqrt(3)) < 1e-14
    p = cmath.exp(1j * math.pi / 3)
    assert abs((1 + p) * (1 + p * p) - 1j * math.sqrt(3)) < 1e-14


def test_gauss_single_term():
    # N = 1 (outside make_root): the sum has the single term 1 = (-p;p)_0
    rep = ids.check_gauss_sum(RootOfUnity(1, 1), "gauss")
    assert rep.lhs == 1 and rep.rhs == 1


def test_gauss_parity():
    with pytest.raises(ParityError):
        ids.check_gauss_sum(make_root(2, 5), "gauss")
    with pytest.raises(ValueError):
        ids.check_gauss_sum(make_root(1, 5), "nope")


def test_newgauss_M1_known_form():
    # for M = 1 the sum is sum_k exp(-i pi k^2 / 2N), summed here independently
    for N in range(2, 40):
        root = make_root(1, N)
        direct = sum(cmath.exp(-1j * math.pi * k * k / (2 * N)) for k in range(N))
        assert abs(ids.check_gauss_sum(root, "newgauss").lhs - direct) < 1e-12 * N
        assert ids.check_gauss_sum(root, "newgauss").passed


# ------------------------------------------------------------------ property based

@settings(max_examples=60, deadline=None)
@given(re=st.floats(-2, 2), im=st.floats(-2, 2), mn=st.sampled_from([(1, 5), (2, 7), (3, 8)]))
def test_sp_chu_property(re, im, mn):
    root = make_root(*mn)
    a = complex(re, im)
    c = 0.55 - 0.3j
    try:
        rep = ids.check_sp_chu(a, c, root)
    except QUnityError:
        return
    if rep.notes["cond"] <= COND_LIMIT:
        assert rep.passed
    else:
        assert rep.rel_residual <= 1e-13 * rep.notes["cond"]
