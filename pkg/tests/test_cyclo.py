import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dibuild.cyclo import (
    CycloElem,
    cyclotomic_polynomial,
    cmp_real,
    euler_phi,
    floor_real,
    get_field,
    sign_real,
)


def test_euler_phi_small():
    assert [euler_phi(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(10) == (1, -1, 1, -1, 1)
    assert cyclotomic_polynomial(16) == (1, 0, 0, 0, 0, 0, 0, 0, 1)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 7, 8])
def test_zeta_is_primitive_root(m):
    F = get_field(m)
    z = F.zeta
    assert (z ** (2 * m)) == F.one
    for k in range(1, 2 * m):
        assert (z ** k) != F.one
    # numeric embedding agrees with exp(i*pi/m)
    w = z.complex_value()
    expected = complex(math.cos(math.pi / m), math.sin(math.pi / m))
    assert abs(w - expected) < 1e-12


def coeff_strategy(phi):
    rat = st.builds(
        Fraction,
        st.integers(min_value=-6, max_value=6),
        st.integers(min_value=1, max_value=4),
    )
    return st.lists(rat, min_size=phi, max_size=phi).map(tuple)


@settings(max_examples=60, deadline=None)
@given(data=st.data(), m=st.sampled_from([3, 5, 8]))
def test_field_axioms(data, m):
    F = get_field(m)
    a = F.elem(data.draw(coeff_strategy(F.phi)))
    b = F.elem(data.draw(coeff_strategy(F.phi)))
    c = F.elem(data.draw(coeff_strategy(F.phi)))
    assert (a + b) - b == a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if not b.is_zero():
        assert (a / b) * b == a
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()


@settings(max_examples=40, deadline=None)
@given(data=st.data(), m=st.sampled_from([5, 7]))
def test_numeric_embedding_is_hom(data, m):
    F = get_field(m)
    a = F.elem(data.draw(coeff_strategy(F.phi)))
    b = F.elem(data.draw(coeff_strategy(F.phi)))
    va, vb = a.complex_value(), b.complex_value()
    assert abs((a * b).complex_value() - va * vb) < 1e-8 * (1 + abs(va)) * (1 + abs(vb))
    assert abs(a.conj().complex_value() - va.conjugate()) < 1e-9 * (1 + abs(va))


def test_sign_of_real_golden_ratio():
    # m=5: zeta + zeta^9 = 2*cos(pi/5), a root of x^2 - x - 1.
    F = get_field(5)
    r = F.zeta_power(1) + F.zeta_power(9)
    assert r.is_real()
    assert (r * r - r - F.one).is_zero()
    assert sign_real(r - F.one) == 1
    assert sign_real(r - 2) == -1
    assert sign_real(F.zero) == 0


def test_sign_of_real_tiny_difference():
    # sign must be decided exactly even when floats underflow the gap
    F = get_field(5)
    r = F.zeta_power(1) + F.zeta_power(9)  # golden ratio
    tiny = Fraction(1, 10 ** 40)
    phi_approx = F.from_rational(Fraction(16180339887498948482, 10 ** 19))
    assert sign_real(r - phi_approx) != 0
    assert sign_real((r - r) + F.from_rational(tiny)) == 1
    assert sign_real(F.from_rational(-tiny)) == -1


def test_sign_rejects_non_real():
    F = get_field(5)
    with pytest.raises(ValueError):
        sign_real(F.zeta)


def test_floor_real():
    F = get_field(5)
    r = F.zeta_power(1) + F.zeta_power(9)  # 1.618...
    assert floor_real(r) == 1
    assert floor_real(-r) == -2
    assert floor_real(F.from_rational(3)) == 3
    assert floor_real(F.from_rational(Fraction(-7, 2))) == -4


def test_cmp_real_orders_cosines():
    F = get_field(7)
    cos = [F.zeta_power(k) + F.zeta_power(-k) for k in range(0, 8)]
    for k in range(7):
        assert cmp_real(cos[k], cos[k + 1]) == 1


def test_field_rejects_m_below_2():
    with pytest.raises(ValueError):
        get_field(1)
