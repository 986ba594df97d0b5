"""L-function layer: values, continuation, completion, branch tracking.

mpmath supplies independent oracles: zeta and the Dirichlet L-functions of
small modulus via Hurwitz zeta combinations.
"""
import cmath
import math

import mpmath as mp
import pytest

from polydet import (
    DomainError,
    NearZeroOfL,
    NonClosedLoop,
    NumberField,
    PathSpec,
    PoleAtOne,
    ResidualTooLarge,
    argument_principle_count,
    completed_lambda,
    conductor_factor,
    euler_product_value,
    kronecker_character,
    l_log_derivative,
    l_value,
    log_l_branch,
    log_l_series,
    omega_region,
    root_number,
    trivial_character,
)

mp.mp.dps = 30

Q = NumberField.rational()
QI = NumberField.quadratic(-1)
RT5 = NumberField.quadratic(5)
TRIV = trivial_character(Q)
CHI4 = kronecker_character(-4)

ZETA_QI_2 = 1.50670300992298503088656504818     # zeta(2) * Catalan
CATALAN = 0.915965594177219015054603514932


def mp_chi4_l(s):
    # L(s, chi_-4) = 4^{-s} (zeta(s, 1/4) - zeta(s, 3/4))
    return 4 ** (-mp.mpc(s)) * (mp.zeta(mp.mpc(s), mp.mpf(1) / 4)
                                - mp.zeta(mp.mpc(s), mp.mpf(3) / 4))


def test_zeta_values_match_mpmath():
    for s in (2.0, 3.0, 1.5, 0.5, -1.5, 2.0 + 1.0j, 0.3 + 2.0j):
        want = complex(mp.zeta(mp.mpc(s)))
        got = l_value(Q, TRIV, complex(s))
        assert abs(got - want) < 1e-10 * (1 + abs(want))


def test_leibniz_value():
    assert abs(l_value(Q, CHI4, 1.0) - math.pi / 4.0) < 1e-12


def test_catalan_value():
    assert abs(l_value(Q, CHI4, 2.0) - CATALAN) < 1e-12


def test_chi4_matches_mpmath_off_the_line():
    for s in (0.5, -0.5, 0.25 + 3.0j, 1.5 - 2.0j):
        want = complex(mp_chi4_l(s))
        got = l_value(Q, CHI4, complex(s))
        assert abs(got - want) < 1e-10 * (1 + abs(want))


def test_dedekind_zeta_factorizes():
    # zeta_{Q(i)} = zeta * L(chi_-4), an arithmetic identity the
    # implementation does not assume anywhere
    tqi = trivial_character(QI)
    for s in (2.0, 3.0, 1.5, 2.0 + 1.0j):
        lhs = l_value(QI, tqi, complex(s))
        rhs = l_value(Q, TRIV, complex(s)) * l_value(Q, CHI4, complex(s))
        assert abs(lhs - rhs) < 1e-10 * (1 + abs(lhs))
    assert abs(l_value(QI, tqi, 2.0) - ZETA_QI_2) < 1e-12


def test_pole_guard():
    with pytest.raises(PoleAtOne):
        l_value(Q, TRIV, 1.0)
    with pytest.raises(PoleAtOne):
        l_value(QI, trivial_character(QI), 1.0 + 1e-10j)
    # non-principal characters are regular at 1
    assert abs(l_value(Q, CHI4, 1.0) - math.pi / 4.0) < 1e-12


def test_euler_product_consistency():
    for fld, chi in ((Q, TRIV), (Q, CHI4), (QI, trivial_character(QI))):
        for s in (3.0, 2.5 + 1.0j):
            ep = euler_product_value(fld, chi, complex(s))
            av = l_value(fld, chi, complex(s))
            assert abs(ep - av) < 1e-9 * (1 + abs(av))


def test_log_derivative_two_routes_agree():
    # the series route truncates at cfg.prime_bound; its tail at Re(s) = 2.5
    # is ~ log(X) X^{-1.5} / 1.5 ~ 2e-8 for X = 1e5, smaller at Re(s) = 3
    for fld, chi in ((Q, TRIV), (Q, CHI4)):
        for s, tol in ((2.5, 5e-8), (3.0 + 1.5j, 1e-9)):
            a = l_log_derivative(fld, chi, complex(s), route="analytic")
            b = l_log_derivative(fld, chi, complex(s), route="series")
            assert abs(a - b) < tol


def test_log_derivative_matches_finite_difference():
    h = 1e-6
    for s in (2.0, 0.3 + 2.0j):
        fd = (cmath.log(l_value(Q, TRIV, s + h)) -
              cmath.log(l_value(Q, TRIV, s - h))) / (2 * h)
        assert abs(l_log_derivative(Q, TRIV, complex(s)) - fd) < 1e-6


def test_log_derivative_guards():
    with pytest.raises(DomainError):
        l_log_derivative(Q, TRIV, 1.01, route="series")
    with pytest.raises(NearZeroOfL):
        l_log_derivative(Q, TRIV, complex(0.5, 14.134725141734695))


def test_log_l_series_is_principal_branch():
    # the canonical branch tends to 0 as Re(s) grows
    assert abs(log_l_series(Q, TRIV, 8.0)) < 5e-3
    # prime truncation leaves a ~1/(X log X) tail at Re(s) = 2
    for s, tol in ((2.0, 5e-6), (3.0 + 2.0j, 1e-10)):
        assert abs(cmath.exp(log_l_series(Q, TRIV, complex(s)))
                   - l_value(Q, TRIV, complex(s))) < tol


def test_log_l_branch_matches_series_in_overlap():
    path = PathSpec((3.0 + 0.0j, 2.5 + 1.0j))
    got = log_l_branch(Q, TRIV, path)
    want = log_l_series(Q, TRIV, 2.5 + 1.0j)
    # limited by the series truncation at the comparison point
    assert abs(got - want) < 1e-7


def test_log_l_branch_closed_loop_returns():
    loop = PathSpec((3.0 + 0.0j, 3.0 + 2.0j, 4.0 + 2.0j, 4.0 + 0.0j,
                     3.0 + 0.0j))
    got = log_l_branch(Q, TRIV, loop)
    want = log_l_series(Q, TRIV, 3.0)
    assert abs(got - want) < 1e-9


def test_log_l_branch_needs_real_anchor():
    with pytest.raises(DomainError):
        log_l_branch(Q, TRIV, PathSpec((2.0 + 1.0j, 3.0 + 0.0j)))


def test_completed_lambda_convention_against_mpmath():
    # Lambda = [s(s-1)/2]^eps A^{s/2} prod Gamma(w_v) L with
    # A = N(f) |d| / (4^{r2} pi^n); checked against mpmath piece by piece
    for s in (2.0, 3.0, 0.4 + 1.3j):
        s = complex(s)
        want = complex(0.5 * s * (s - 1)
                       * mp.power(1 / mp.pi, s / 2) * mp.gamma(mp.mpc(s) / 2)
                       * mp.zeta(mp.mpc(s)))
        got = completed_lambda(Q, TRIV, s)
        assert abs(got - want) < 1e-10 * (1 + abs(want))
    for s in (2.0, 1.5 - 2.0j):
        s = complex(s)
        want = complex(mp.power(4 / mp.pi, s / 2)
                       * mp.gamma((mp.mpc(s) + 1) / 2) * mp_chi4_l(s))
        got = completed_lambda(Q, CHI4, s)
        assert abs(got - want) < 1e-10 * (1 + abs(want))


def test_conductor_factor_values():
    assert abs(conductor_factor(Q, TRIV) - 1 / math.pi) < 1e-15
    assert abs(conductor_factor(Q, CHI4) - 4 / math.pi) < 1e-15
    assert abs(conductor_factor(QI, trivial_character(QI))
               - 4 / (4 * math.pi ** 2)) < 1e-15


def test_functional_equation():
    # self-dual cases: Lambda(s) = W Lambda(1-s) with W = 1
    for fld, chi in ((Q, TRIV), (Q, CHI4), (QI, trivial_character(QI)),
                     (RT5, trivial_character(RT5))):
        for s in (0.3 + 2.0j, 0.7 - 1.0j):
            a = completed_lambda(fld, chi, s)
            b = completed_lambda(fld, chi, 1 - s)
            assert abs(a - b) < 1e-9 * (1 + abs(a))


def test_root_numbers_are_one():
    for fld, chi in ((Q, TRIV), (Q, CHI4), (QI, trivial_character(QI)),
                     (RT5, trivial_character(RT5))):
        w = root_number(fld, chi)
        assert abs(w - 1.0) < 1e-9


def test_argument_principle_counts():
    # first zeta zero
    loop = PathSpec.rectangle(0.2, 0.8, 13.0, 15.0)
    assert argument_principle_count(Q, TRIV, loop) == 1
    # zero-free box
    empty = PathSpec.rectangle(2.0, 3.0, 1.0, 2.0)
    assert argument_principle_count(Q, TRIV, empty) == 0
    # box around the pole at s = 1: poles count with weight -1
    pole = PathSpec.rectangle(0.9, 1.1, -0.1, 0.1)
    assert argument_principle_count(Q, TRIV, pole) == -1
    with pytest.raises(NonClosedLoop):
        argument_principle_count(Q, TRIV, PathSpec((2.0 + 0j, 3.0 + 0j)))


def test_pathspec_validation():
    with pytest.raises(DomainError):
        PathSpec((2.0 + 0j,))
    with pytest.raises(DomainError):
        PathSpec((2.0 + 0j, 2.0 + 0j))
    rect = PathSpec.rectangle(0.0, 1.0, 0.0, 1.0)
    assert rect.is_closed
    assert abs(rect.length - 4.0) < 1e-15
    line = PathSpec.line(0.0, 3.0 + 4.0j)
    assert abs(line.length - 5.0) < 1e-15
    assert abs(line.min_distance_to(3.0 + 4.0j)) < 1e-15
    assert abs(PathSpec.line(-1.0, 1.0).min_distance_to(1.0j) - 1.0) < 1e-15


def test_omega_region_cuts():
    table = (14.134725141734695,)
    om = omega_region(Q, TRIV, table, completeness=20.0)
    # pole cut along the real axis to the left of 1
    assert not om.contains(0.5 + 0.0j)
    assert om.contains(1.5 + 0.0j)
    # cut left from a tabulated zero
    assert not om.contains(complex(0.3, 14.134725141734695))
    assert om.contains(complex(0.7, 14.134725141734695))
    assert om.contains(2.0 + 14.0j)
    # verifiability: the strip near the line and heights beyond the table
    assert not om.verifiable(0.5 + 10.0j)
    assert not om.verifiable(0.8 + 25.0j)
    assert om.verifiable(0.8 + 10.0j)
    assert om.verifiable(3.0 + 100.0j)
