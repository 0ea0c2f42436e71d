import math

import numpy as np
import pytest

from conftest import random_loxodromic, schottky
from holospec.algebra import complex_length, diagonal_element, reduce_angle
from holospec.enumeration import GroupPresentation, ball_enumerate, build_spectrum, enumerate_spectrum
from holospec.errors import ExplosionLimit, NonUnitDeterminant


def test_free_ball_size(pres):
    # reduced words of length <= 3 in a rank-2 free group: 1 + 4 + 12 + 36, minus the identity
    els = ball_enumerate(pres, 3)
    assert len(els) == 52
    assert len(ball_enumerate(pres, 3, identify_inverses=True)) == 26
    assert len({e.word for e in els}) == 52
    assert all(len(e.word) <= 3 for e in els)


def test_duplicate_generator_dedup(pres):
    dup = GroupPresentation(pres.generators + [pres.generators[0].matrix()])
    assert len(ball_enumerate(dup, 3)) == 52


def test_cyclic_ball():
    g = diagonal_element(1.0, 0.3)
    els = ball_enumerate(GroupPresentation([g]), 3, identify_inverses=True)
    assert [e.word for e in els] == ["a", "aa", "aaa"]


def test_explosion_limit(pres):
    with pytest.raises(ExplosionLimit):
        ball_enumerate(pres, 4, cap=50)


def test_presentation_det_check():
    with pytest.raises(NonUnitDeterminant):
        GroupPresentation([np.array([[1, 1], [1, 1 + 1e-3]])])


def test_build_spectrum_cyclic_example():
    g = diagonal_element(1.0, math.pi / 2)
    t = build_spectrum([g, g.power(2), g.power(3)], 3.5)
    rows = [(c.length, c.holonomy, c.primitive, c.power_index) for c in t.classes]
    assert rows[0][0] == pytest.approx(1.0) and rows[0][1] == pytest.approx(math.pi / 2) and rows[0][2]
    assert rows[1][0] == pytest.approx(2.0) and rows[1][1] == pytest.approx(math.pi) and rows[1][3] == 2
    assert rows[2][0] == pytest.approx(3.0) and rows[2][1] == pytest.approx(-math.pi / 2) and rows[2][3] == 3


def test_build_spectrum_trivial_cases():
    t = build_spectrum([], 2.0)
    assert len(t) == 0 and t.complete and t.horizon == 2.0
    g = diagonal_element(1.0, 0.2)
    assert len(build_spectrum([g], 0.5)) == 0


def test_cyclic_matches_power_sequence(rng):
    for _ in range(5):
        m, z = random_loxodromic(rng, 0.4, 1.2)
        p = GroupPresentation([m])
        y = 6.0
        t = enumerate_spectrum(p, 20, y, identify_inverses=True)
        kmax = int(y // z.real)
        assert len(t) == kmax
        for k, c in enumerate(t.classes, 1):
            assert c.power_index == k
            assert c.length == pytest.approx(k * z.real, abs=1e-8)
            assert abs(reduce_angle(c.holonomy - k * z.imag)) < 1e-8
            assert c.root_length == pytest.approx(z.real, abs=1e-8)


def test_idempotence_and_monotonicity(pres):
    els = ball_enumerate(pres, 3)
    a = build_spectrum(els, 9.0)
    b = build_spectrum(els + els, 9.0)
    assert a == b
    small = build_spectrum(els, 7.0)
    assert set(map(tuple, zip(small.lengths, small.holonomies))) <= set(map(tuple, zip(a.lengths, a.holonomies)))


def test_schottky_spectrum_structure(pres):
    t = enumerate_spectrum(pres, 4, 10.0)
    # generators and their inverses: same complex length, distinct classes
    assert t.systole == pytest.approx(3.0, abs=1e-9)
    assert t.multiplicities[0] == 2
    # a^2 is a square in the table, a^3 exceeds the horizon
    sq = [c for c in t.classes if c.power_index == 2]
    assert any(c.length == pytest.approx(6.0) for c in sq)
    cl = complex_length(pres.generators[0].power(2))
    assert any(abs(c.holonomy - cl.holonomy) < 1e-8 for c in sq)


def test_enumeration_deterministic(pres):
    a = enumerate_spectrum(pres, 4, 10.0)
    b = enumerate_spectrum(schottky(), 4, 10.0)
    assert a == b
