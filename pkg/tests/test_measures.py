import math

import mpmath as mp
import numpy as np
import pytest

from holospec.errors import DomainError
from holospec.measures import (
    ManifoldConstants,
    SpectralDatum,
    ei_closed_form,
    ei_main_term,
    plancherel_window,
    varpi_density,
    varpi_star_density,
)

COMP = [SpectralDatum(0.5, 0, 1)]


def test_varpi_density_examples():
    assert varpi_density(2.0) == pytest.approx(math.exp(4) / 2, rel=1e-15)
    assert varpi_density(2.0) == pytest.approx(27.29908, abs=1e-5)
    assert varpi_density(2.0, COMP) == pytest.approx(math.exp(4) / 2 + math.exp(3) / 2, rel=1e-15)
    assert varpi_density(2.0, COMP) == pytest.approx(37.34185, abs=1e-5)
    t = np.linspace(1, 10, 200)
    assert np.all(np.diff(varpi_density(t)) > 0)
    with pytest.raises(DomainError):
        varpi_density(0.0)


def test_varpi_star_examples():
    comp = [SpectralDatum(0.3, 0, 2), SpectralDatum(0.7, 0, 3)]
    assert varpi_star_density(0.0, comp) == pytest.approx(6.0)
    assert varpi_star_density(1.0) == pytest.approx(math.e)
    assert varpi_star_density(-1.0, [SpectralDatum(0.5, 0, 2)]) == pytest.approx(math.exp(-1) + 2 * math.exp(-0.5))
    u = np.linspace(-3, 3, 11)
    assert np.allclose(varpi_star_density(u, comp) - varpi_star_density(u),
                       2 * np.exp(0.3 * u) + 3 * np.exp(0.7 * u), rtol=0, atol=1e-13)


def test_principal_entries_ignored():
    assert varpi_density(3.0, [SpectralDatum(2j, 1, 4)]) == varpi_density(3.0)


def test_ei_main_term():
    assert ei_main_term(2.0) == 0.0
    ref = float(mp.ei(6) - mp.ei(4))
    assert ei_main_term(3.0) == pytest.approx(ref, rel=1e-12)
    assert ei_main_term(3.0) == pytest.approx(66.35888767, abs=1e-7)
    assert ei_main_term(4.0) == pytest.approx(ei_main_term(3.0) + ei_main_term(4.0, 3.0), rel=1e-9)
    assert ei_main_term(5.0, comp=COMP) == pytest.approx(ei_closed_form(5.0, comp=COMP), rel=1e-12)
    with pytest.raises(DomainError):
        ei_main_term(3.0, a=1.0)


def test_ei_derivative_is_density():
    h = 1e-4
    for t in np.linspace(2.5, 10, 16):
        fd = (ei_main_term(t + h, comp=COMP) - ei_main_term(t - h, comp=COMP)) / (2 * h)
        assert fd == pytest.approx(varpi_density(t, COMP), rel=1e-6)


def test_plancherel_examples():
    assert plancherel_window(0, 1, 0) == pytest.approx((2 / 3) / (4 * math.pi ** 2), rel=1e-15)
    assert plancherel_window(0, 1, 0) == pytest.approx(0.0168869, abs=1e-7)
    assert plancherel_window(0, 1, 1) == pytest.approx(0.0675475, abs=1e-7)
    assert plancherel_window(0, 2, 0) == pytest.approx((1 + 1 / 3) / math.pi ** 2, rel=1e-14)
    assert plancherel_window(0, 2, 0) == pytest.approx(0.135095, abs=1e-6)
    for n in range(4):
        assert plancherel_window(0.5, 2, n) == plancherel_window(0.5, 2, -n)
        assert plancherel_window(0.5, 2, n) < plancherel_window(0.5, 2.5, n)
        assert plancherel_window(0.5, 2, n) < plancherel_window(0.5, 2, n + 1)


def test_datum_validation():
    with pytest.raises(ValueError):
        SpectralDatum(0.5, 1, 1)
    with pytest.raises(ValueError):
        SpectralDatum(1 + 1j, 0, 1)
    with pytest.raises(ValueError):
        ManifoldConstants(0.0, 1.0)
