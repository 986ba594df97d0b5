"""Determinants and the xi function: contour route, zero-sum route, closed
forms, and the depth-1 reduction to the completed L-function."""
import cmath
import math

import mpmath as mp
import pytest

from polydet import (
    ContourInvalid,
    ContourSpec,
    DomainError,
    NumberField,
    PoleAtOne,
    builtin_zeta_zeros,
    completed_lambda,
    default_contour,
    determinant_closed,
    determinant_direct,
    kronecker_character,
    regularized_product,
    trivial_character,
    truncation_tail_estimate,
    xi_hankel,
    xi_zero_sum,
)

mp.mp.dps = 30

Q = NumberField.rational()
QI = NumberField.quadratic(-1)
TRIV = trivial_character(Q)
CHI4 = kronecker_character(-4)

# Xi_1(2) for the Riemann zeta zeros: the depth-1 determinant collapses to
# 2^{-3/2} pi^{-2} Lambda(2) = 1 / (6 sqrt(2) 2 pi) = 1 / (6 * 2^{1.5} * pi)
XI1_AT_2 = 0.018756589919939709782399983146


def test_depth_one_closed_frozen_value():
    got = determinant_closed(Q, TRIV, 1, 2.0)
    assert abs(got.value - XI1_AT_2) < 1e-12
    assert abs(got.value.imag) < 1e-14


def test_depth_one_direct_matches_frozen_value():
    got = determinant_direct(Q, TRIV, 1, 2.0)
    assert abs(got.value - XI1_AT_2) < 1e-9


def test_closed_vs_direct_complex_point():
    # one case of the cross-route identity at depth 2 off the real axis
    closed = determinant_closed(Q, CHI4, 2, 2.5 + 1.5j)
    direct = determinant_direct(Q, CHI4, 2, 2.5 + 1.5j)
    rel = abs(closed.value - direct.value) / abs(closed.value)
    assert rel < 1e-6


def test_depth_one_reduction_against_mpmath():
    # Xi_1(z) = |d|^{-z/2} 2^{-1-r1/2} pi^{-2} Lambda(z) for the trivial
    # character of Q, with Lambda assembled independently in mpmath
    for z in (2.0, 3.0, 3.5):
        lam = complex(0.5 * z * (z - 1) * mp.power(1 / mp.pi, z / 2)
                      * mp.gamma(mp.mpf(z) / 2) * mp.zeta(z))
        want = 2.0 ** (-1.5) * math.pi ** (-2) * lam
        got = determinant_closed(Q, TRIV, 1, z)
        assert abs(got.value - want) < 1e-11 * (1 + abs(want))


def test_regularized_product_matches_closed_form():
    # includes the odd character, whose gamma weight shifts the pi exponent
    cases = [(Q, TRIV, 3.5), (Q, CHI4, 2.5), (QI, trivial_character(QI), 2.5)]
    for fld, chi, z in cases:
        a = regularized_product(fld, chi, z)
        b = determinant_closed(fld, chi, 1, z).value
        assert abs(a - b) < 1e-9 * (1 + abs(b))


def test_xi_hankel_hadamard_oracle():
    # xi(2, z) = -(2 pi)^2 (Lambda'/Lambda)'(z), by squaring the zero sum;
    # the right side via a 5-point second derivative of log Lambda
    h = 1e-2
    for z in (2.0, 3.0):
        stencil = [(-2, -1.0 / 12), (-1, 16.0 / 12), (0, -30.0 / 12),
                   (1, 16.0 / 12), (2, -1.0 / 12)]
        d2 = sum(c * math.log(abs(completed_lambda(Q, TRIV, z + k * h)))
                 for k, c in stencil) / h ** 2
        want = -(2 * math.pi) ** 2 * d2
        got = xi_hankel(Q, TRIV, 2.0, z)
        assert abs(got.value - want) < 1e-5 * (1 + abs(want))
        assert abs(got.value.imag) < 1e-10


def test_xi_hankel_contour_independence():
    z = 3.0
    a = xi_hankel(Q, TRIV, 2.5, z, contour=ContourSpec(0.3))
    b = xi_hankel(Q, TRIV, 2.5, z, contour=ContourSpec(0.6))
    assert abs(a.value - b.value) < 1e-10


def test_xi_hankel_guards():
    with pytest.raises(PoleAtOne):
        xi_hankel(Q, TRIV, 1.0, 3.0)
    with pytest.raises(ContourInvalid):
        xi_hankel(Q, TRIV, 2.0, 3.0, contour=ContourSpec(-0.1))
    with pytest.raises(ContourInvalid):
        # circle would cross into Re <= 1
        xi_hankel(Q, TRIV, 2.0, 1.5, contour=ContourSpec(0.9))


def test_contour_spec_validation():
    with pytest.raises(ContourInvalid):
        ContourSpec(0.5, cut_depth=1.0).validate(3.0)
    spec = default_contour(3.0)
    assert spec.delta > 0
    spec.validate(3.0)
    deep = default_contour(3.0, depth=5)
    assert deep.cut_depth > spec.cut_depth


def test_xi_zero_sum_vs_hankel_within_tail():
    table = builtin_zeta_zeros()
    for s, z in ((3.0, 2.0), (2.5, 3.0)):
        zs = xi_zero_sum(Q, TRIV, s, z, table)
        hk = xi_hankel(Q, TRIV, s, z)
        assert abs(zs.value - hk.value) <= zs.error_estimate + hk.error_estimate
        assert abs(zs.error_estimate
                   - truncation_tail_estimate(Q, TRIV, s, z,
                                              table.completeness_height)) \
            < 1e-12


def test_xi_zero_sum_gap_shrinks_with_more_zeros():
    table = builtin_zeta_zeros()
    hk = xi_hankel(Q, TRIV, 3.0, 2.0).value
    gaps = []
    for n in (25, 50, 100):
        zs = xi_zero_sum(Q, TRIV, 3.0, 2.0, table.truncated(n))
        gaps.append(abs(zs.value - hk))
    assert gaps[0] > gaps[1] > gaps[2]


def test_xi_zero_sum_domain_guards():
    table = builtin_zeta_zeros()
    with pytest.raises(DomainError):
        xi_zero_sum(Q, TRIV, 0.5, 2.0, table)
    with pytest.raises(DomainError):
        xi_zero_sum(Q, TRIV, 2.0, 0.5, table)


def test_determinant_value_record():
    rec = determinant_closed(Q, TRIV, 1, 2.0).to_record()
    for key in ("value_re", "value_im", "error_estimate", "route"):
        assert key in rec


def test_determinant_domain_guard():
    with pytest.raises(DomainError):
        determinant_closed(Q, TRIV, 2, 0.5)
    with pytest.raises(DomainError):
        determinant_direct(Q, TRIV, 2, 0.5)


def test_closed_prime_bound_override():
    a = determinant_closed(Q, TRIV, 2, 2.0, prime_bound=50_000)
    b = determinant_closed(Q, TRIV, 2, 2.0, prime_bound=2_000_000)
    assert abs(a.value - b.value) < a.error_estimate + b.error_estimate
    assert b.error_estimate < a.error_estimate
