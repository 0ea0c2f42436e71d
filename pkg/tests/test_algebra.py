import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import diag
from holospec.algebra import (
    ElementClass,
    canonicalize,
    classify,
    complex_length,
    diagonal_element,
    power_class,
    reduce_angle,
    weight,
    weyl_discriminant_root,
)
from holospec.errors import DegenerateLength, NonUnitDeterminant, NotLoxodromic, SingularMatrix
from oracles import mp_weight


def test_classify_examples():
    assert classify([[1, 1], [0, 1]]) is ElementClass.PARABOLIC
    assert classify([[2, 1], [1, 1]]) is ElementClass.HYPERBOLIC
    assert classify([[2j, -1], [1, 0]]) is ElementClass.LOXODROMIC
    assert classify(np.eye(2)) is ElementClass.IDENTITY
    assert classify(-np.eye(2)) is ElementClass.IDENTITY
    c, s = math.cos(0.4), math.sin(0.4)
    assert classify([[c, -s], [s, c]]) is ElementClass.ELLIPTIC


def test_classify_rejects_non_unit_det():
    with pytest.raises(NonUnitDeterminant):
        classify([[2, 0], [0, 1]])


def test_complex_length_examples():
    # eigenvalues from the characteristic polynomial, independently in mpmath
    lam = (3 + mp.sqrt(5)) / 2
    cl = complex_length([[2, 1], [1, 1]])
    assert cl.length == pytest.approx(float(2 * mp.log(lam)), abs=1e-12)
    assert cl.holonomy == 0.0
    cl = complex_length([[2j, -1], [1, 0]])
    assert cl.length == pytest.approx(float(2 * mp.log(1 + mp.sqrt(2))), abs=1e-12)
    assert cl.holonomy == pytest.approx(math.pi, abs=1e-12)
    cl = complex_length(diagonal_element(1.0, math.pi / 2))
    assert cl.length == pytest.approx(1.0, abs=1e-12)
    assert cl.holonomy == pytest.approx(math.pi / 2, abs=1e-12)


def test_complex_length_degenerate():
    with pytest.raises(NotLoxodromic):
        complex_length([[1, 1], [0, 1]])
    with pytest.raises(NotLoxodromic):
        complex_length(np.eye(2))
    c, s = math.cos(0.4), math.sin(0.4)
    cl = complex_length([[c, -s], [s, c]])
    assert cl.length == 0.0 and abs(cl.holonomy) == pytest.approx(0.8)


def test_weight_values():
    assert weight((2.0, 0.0)) == pytest.approx(mp_weight(2, 0), rel=1e-13)
    assert weight((2.0, 0.0)) == pytest.approx(0.18101541524, abs=1e-10)
    assert weight((1.0, math.pi / 2)) == pytest.approx(0.32402713683, abs=1e-10)
    assert weight((2.0, math.pi)) == pytest.approx(0.10499358540, abs=1e-10)
    for th in (-2.0, 0.0, 1.3, math.pi):
        assert weight((10.0, th)) * math.exp(10) == pytest.approx(1.0, rel=2e-4)


def test_weight_rejects_zero_length():
    with pytest.raises(DegenerateLength):
        weight((0.0, 1.0))


def test_weight_vectorized():
    l = np.array([0.5, 1.0, 4.0])
    t = np.array([0.1, -2.0, 3.0])
    w = weight(l, t)
    assert np.allclose(w, [mp_weight(a, b) for a, b in zip(l, t)], rtol=1e-13)


def test_weyl_root_examples():
    assert weyl_discriminant_root((2.0, 0.0)) == pytest.approx(float((mp.e ** 2 - 1) * (1 - mp.e ** -2)), rel=1e-13)
    assert weyl_discriminant_root((0.0, math.pi)) == pytest.approx(4.0, rel=1e-14)
    assert weyl_discriminant_root((0.0, 0.0)) == 0.0
    assert weyl_discriminant_root((-1.5, 0.4)) == pytest.approx(weyl_discriminant_root((1.5, -0.4)))


def test_weight_envelope_exact_range():
    # w e^l lies in [1/(1+e^-l)^2, 1/(1-e^-l)^2]; the edge case l = 1, theta = 0 attains the top
    for l in np.linspace(0.2, 12, 40):
        x = math.exp(-l)
        for th in np.linspace(-math.pi, math.pi, 33):
            v = weight((l, th)) * math.exp(l)
            assert 1 / (1 + x) ** 2 - 1e-12 <= v <= 1 / (1 - x) ** 2 + 1e-12
    assert weight((1.0, 0.0)) * math.e == pytest.approx(1 / (1 - math.exp(-1)) ** 2, rel=1e-14)


def test_power_class_examples():
    assert power_class((1.0, math.pi / 2), 1.0, 2) == ((2.0, math.pi), 1.0)
    (l, t), r = power_class((1.7627472, math.pi), 1.7627472, 2)
    assert l == pytest.approx(3.5254944) and t == pytest.approx(0.0, abs=1e-12) and r == 1.7627472
    assert power_class((1.0, math.pi / 2), 1.0, 1) == ((1.0, math.pi / 2), 1.0)
    with pytest.raises(ValueError):
        power_class((1.0, 0.0), 1.0, 0)


def test_canonicalize_sign_and_key():
    a = canonicalize(-np.eye(2))
    assert a.entries == (1, 0, 0, 1)
    m = np.array([[2, 1], [1, 1]], dtype=complex)
    assert canonicalize(m).key() == canonicalize(-m).key()
    m2 = np.array([[1.3 + 0.2j, 0.7], [0.1j, 0.9]])
    m2 = m2 / np.sqrt(np.linalg.det(m2))
    assert canonicalize(m2).key() == canonicalize(m2 + 1e-12).key()
    with pytest.raises(SingularMatrix):
        canonicalize([[1, 2], [2, 4]])


def test_canonicalize_normalizes_det():
    e = canonicalize([[2, 0], [0, 2]])
    assert e.det == pytest.approx(1.0)
    assert classify(e) is ElementClass.IDENTITY


def test_reduce_angle_branch():
    assert reduce_angle(math.pi) == math.pi
    assert reduce_angle(-math.pi) == math.pi
    assert reduce_angle(3 * math.pi / 2) == pytest.approx(-math.pi / 2)
    assert np.all(reduce_angle(np.linspace(-20, 20, 101)) > -math.pi)


finite = dict(allow_nan=False, allow_infinity=False)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.2, 4.0, **finite), st.floats(-3.1, 3.1, **finite),
       st.lists(st.floats(-1.5, 1.5, **finite), min_size=8, max_size=8))
def test_conjugation_sign_inverse_invariance(l, th, g):
    m = np.array(g[:4]).reshape(2, 2) + 1j * np.array(g[4:]).reshape(2, 2)
    if abs(np.linalg.det(m)) < 0.2:
        m = m + 2 * np.eye(2)
    m = m / np.sqrt(np.linalg.det(m))
    a = diag(complex(l, th))
    c = m @ a @ np.linalg.inv(m)
    c = c / np.sqrt(np.linalg.det(c))
    base = complex_length(a)
    for x in (c, -c, np.linalg.inv(c)):
        cl = complex_length(canonicalize(x))
        assert cl.length == pytest.approx(base.length, abs=1e-8)
        assert abs(reduce_angle(cl.holonomy - base.holonomy)) < 1e-8


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 2.5, **finite), st.floats(-3.1, 3.1, **finite), st.integers(1, 8))
def test_power_law(l, th, k):
    a = diagonal_element(l, th)
    cl = complex_length(a.power(k))
    assert cl.length == pytest.approx(k * l, rel=1e-10)
    assert abs(reduce_angle(cl.holonomy - k * th)) < 1e-8
