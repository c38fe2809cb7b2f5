"""Angular coefficients: squared 3j values, Legendre products, tables."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import eval_legendre

from radialhf import (
    build_coefficient_table,
    legendre_p,
    legendre_triple_product,
    wigner3j_zero_squared,
)

# Exact rational values from the closed form; (l, l, 0) = 1/(2l+1).
KNOWN_VALUES = {
    (0, 0, 0): 1.0,
    (1, 1, 0): 1.0 / 3.0,
    (2, 2, 0): 1.0 / 5.0,
    (3, 3, 0): 1.0 / 7.0,
    (1, 1, 2): 2.0 / 15.0,
    (2, 2, 2): 2.0 / 35.0,
    (0, 2, 2): 1.0 / 5.0,
    (1, 2, 1): 2.0 / 15.0,
}


@pytest.mark.parametrize("ls,expected", sorted(KNOWN_VALUES.items()))
def test_known_squared_coefficients(ls, expected):
    assert wigner3j_zero_squared(*ls) == pytest.approx(expected, abs=1e-14)


def test_odd_total_angular_momentum_vanishes():
    for l1 in range(6):
        for l2 in range(6):
            for l3 in range(6):
                if (l1 + l2 + l3) % 2 == 1:
                    assert wigner3j_zero_squared(l1, l2, l3) == 0.0


def test_triangle_violations_vanish():
    assert wigner3j_zero_squared(0, 0, 2) == 0.0
    assert wigner3j_zero_squared(1, 1, 4) == 0.0
    assert wigner3j_zero_squared(2, 5, 1) == 0.0


def test_permutation_symmetry():
    import itertools

    for ls in [(1, 2, 3), (2, 2, 4), (0, 3, 3), (4, 5, 7)]:
        vals = {wigner3j_zero_squared(*p) for p in itertools.permutations(ls)}
        assert max(vals) - min(vals) < 1e-15


def test_orthogonality_sum_rule():
    # sum_k (2k+1) * w2(l, lp, k) = 1 for every (l, lp)
    for l in range(6):
        for lp in range(6):
            total = sum(
                (2 * k + 1) * wigner3j_zero_squared(l, lp, k)
                for k in range(l + lp + 1)
            )
            assert total == pytest.approx(1.0, abs=1e-12)


def test_rejects_negative_angular_momentum():
    with pytest.raises(ValueError):
        wigner3j_zero_squared(-1, 0, 1)


# ---------------------------------------------------------------------------
# Legendre polynomials and the quadrature route to the same numbers


@given(
    n=st.integers(min_value=0, max_value=12),
    t=st.floats(min_value=-1.0, max_value=1.0, allow_nan=False),
)
@settings(max_examples=200, deadline=None)
def test_legendre_matches_scipy(n, t):
    assert legendre_p(n, t) == pytest.approx(float(eval_legendre(n, t)), abs=1e-12)


def test_legendre_endpoints():
    for n in range(8):
        assert legendre_p(n, 1.0) == pytest.approx(1.0, abs=1e-14)
        assert legendre_p(n, -1.0) == pytest.approx((-1.0) ** n, abs=1e-14)


def test_triple_product_equals_squared_coefficient():
    # (1/2) * integral of P_a P_b P_c over [-1, 1] is the squared 3j value
    for ls in [(0, 0, 0), (1, 1, 2), (2, 2, 2), (3, 3, 4), (2, 4, 6), (1, 2, 3)]:
        assert legendre_triple_product(*ls) == pytest.approx(
            wigner3j_zero_squared(*ls), abs=1e-12
        )


@given(
    l1=st.integers(min_value=0, max_value=6),
    l2=st.integers(min_value=0, max_value=6),
    l3=st.integers(min_value=0, max_value=6),
)
@settings(max_examples=100, deadline=None)
def test_triple_product_agrees_everywhere(l1, l2, l3):
    assert legendre_triple_product(l1, l2, l3) == pytest.approx(
        wigner3j_zero_squared(l1, l2, l3), abs=1e-12
    )


# ---------------------------------------------------------------------------
# Coefficient table


def test_table_contents_match_direct_evaluation(coeffs4):
    for l in range(5):
        for lp in range(5):
            ks = coeffs4.k_range(l, lp)
            assert ks == range(abs(l - lp), l + lp + 1, 2)
            for k in ks:
                assert coeffs4.coeff(l, lp, k) == pytest.approx(
                    wigner3j_zero_squared(l, lp, k), abs=1e-14
                )


def test_table_is_symmetric_in_shell_order(coeffs4):
    for l in range(5):
        for lp in range(l, 5):
            for k in coeffs4.k_range(l, lp):
                assert coeffs4.coeff(l, lp, k) == coeffs4.coeff(lp, l, k)


def test_table_rejects_out_of_range():
    table = build_coefficient_table(2)
    with pytest.raises((KeyError, ValueError)):
        table.coeff(3, 0, 3)


def test_build_table_rejects_negative_max_l():
    with pytest.raises(ValueError):
        build_coefficient_table(-1)
