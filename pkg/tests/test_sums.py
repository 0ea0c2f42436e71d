import math
import warnings

import numpy as np
import pytest

from holospec import cutoffs as C
from holospec.algebra import weight
from holospec.errors import IncompleteSpectrumWarning
from holospec.spectrum import SpectrumTable, concatenate, cyclic_table, golden_angle_table
from holospec.sums import (
    Arc,
    SharpInterval,
    SumSpec,
    S_sum,
    T_cos,
    T_sum,
    ambient_count,
    boundary_holonomy_sum,
    boundary_length_sum,
    char_sum,
    imprimitive_gap_closed_form,
    weighted_sum,
)
from oracles import naive_sum


@pytest.fixture
def small():
    return SpectrumTable([1.0, 2.0], [math.pi / 2, math.pi], None, [True, False], [1.0, 1.0], [1, 2],
                         horizon=2.5, complete=True)


def random_table(rng, size, horizon=8.0):
    roots = rng.uniform(0.3, 3.0, size)
    k = rng.integers(1, 4, size)
    lengths = roots * k
    keep = lengths <= horizon
    return SpectrumTable(lengths[keep], rng.uniform(-math.pi, math.pi, keep.sum()),
                         rng.integers(1, 4, keep.sum()), k[keep] == 1, roots[keep], k[keep],
                         horizon=horizon, complete=True)


def test_worked_examples(small):
    assert complex(T_sum(small, 1, 2.5)) == pytest.approx(-0.10499358540 + 0.32402713683j, abs=1e-10)
    assert complex(S_sum(small, 1, 2.5, primitive=True)) == pytest.approx(math.exp(-1) * 1j, abs=1e-15)
    assert complex(char_sum(small, 1, 2.5)) == pytest.approx(1j)
    assert char_sum(small, 0, 2.5) == 1
    assert char_sum(small, 3, 0.5) == 0
    with pytest.warns(IncompleteSpectrumWarning):
        assert weighted_sum(SpectrumTable.empty(), SumSpec(length_window=1.0)) == 0


def test_boundary_sums(small):
    assert boundary_length_sum(small, 1.0, 0.1) == pytest.approx(0.32402713683, abs=1e-10)
    with pytest.warns(IncompleteSpectrumWarning):
        assert boundary_length_sum(small, 5.0, 0.1) == 0
    total = T_cos(small, 0, 2.5).real
    assert boundary_length_sum(small, 1.25, 1.25) == pytest.approx(total)
    assert boundary_holonomy_sum(small, 2.5, math.pi / 2, 0.1) == pytest.approx(0.32402713683, abs=1e-10)
    assert boundary_holonomy_sum(small, 2.5, 0.3, 0.1) == 0
    assert boundary_holonomy_sum(small, 2.5, 0.0, 2 * math.pi) == pytest.approx(total)


def test_ambient_count():
    t = cyclic_table(1.0, math.pi / 2, 3)
    assert ambient_count(t, (0.5, 2.5), (math.pi / 4, 3 * math.pi / 4)) == 1
    assert ambient_count(t, (0.0, t.horizon), (0, 2 * math.pi)) == t.primitive_count
    assert ambient_count(t, (1.5, 2.5), (0, 1)) == 0
    g = golden_angle_table(200)
    # an arc across the branch cut, counted both ways
    wrap = ambient_count(g, (0, g.horizon), (2.5, 2.5 + 1.5))
    direct = int(np.sum((g.holonomies >= 2.5) | (g.holonomies <= 4.0 - 2 * math.pi)))
    assert wrap == direct


def test_incomplete_warning(small):
    with pytest.warns(IncompleteSpectrumWarning):
        v = T_sum(small, 1, 3.0)
    assert not v.complete
    with pytest.warns(IncompleteSpectrumWarning):
        weighted_sum(small, SumSpec(length_window=C.g_y_eta(2.3, 0.5)))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert T_sum(small, 1, 2.5).complete


def test_oracle_equivalence(rng):
    windows = [("sharp", 0.0, 6.0), ("sharp", 1.0, 3.5), C.g_y_eta(5.0, 0.6), C.h_y_eta(4.0, 0.5),
               C.g_lambda(4.0, 0.5, 0.4), C.f_majorant_len(3.0, 0.3)]
    hols = ["cos", "sin", "exp", "one", ("arc", -1.0, 0.5), ("arc", 2.0, 4.0), C.f_I_etaprime(0.3, 2.0, 0.2),
            C.f_majorant_hol(1.0, 0.3)]
    for _ in range(40):
        t = random_table(rng, int(rng.integers(0, 120)))
        mode = ["trace_weight", "exp_weight", "unit"][rng.integers(3)]
        filt = ["all", "primitive_only"][rng.integers(2)]
        win = windows[rng.integers(len(windows))]
        hol = hols[rng.integers(len(hols))]
        n = int(rng.integers(-4, 5))
        spec = SumSpec(mode, filt, SharpInterval(win[1], win[2]) if isinstance(win, tuple) else win,
                       Arc(hol[1], hol[2]) if isinstance(hol, tuple) else hol, n)
        got = weighted_sum(t, spec)
        ref, scale = naive_sum(t, mode, filt, win, hol, n)
        assert abs(got - ref) <= 1e-12 * max(scale, 1e-300)


def test_linearity(rng):
    a = random_table(rng, 50)
    b = random_table(rng, 70)
    ab = concatenate([a, b])
    for n in (0, 2):
        s = T_sum(ab, n, 8.0)
        assert complex(s) == pytest.approx(complex(T_sum(a, n, 8.0)) + complex(T_sum(b, n, 8.0)), abs=1e-13)


def test_threads_bit_identical():
    g = golden_angle_table(20000, length_step=0.0004)
    for spec in (SumSpec("trace_weight", "all", C.g_y_eta(5.0, 0.5), "cos", 3),
                 SumSpec("unit", "primitive_only", 8.0, "exp", 2)):
        one = weighted_sum(g, spec, threads=1)
        many = weighted_sum(g, spec, threads=4)
        assert complex(one).real.hex() == complex(many).real.hex()
        assert complex(one).imag.hex() == complex(many).imag.hex()


def test_smooth_sharp_sandwich(rng):
    for _ in range(30):
        t = random_table(rng, 200, horizon=9.0)
        n = int(rng.integers(-3, 4))
        y = float(rng.uniform(1.0, 7.0))
        eta = float(rng.uniform(0.05, 1.0))
        smooth = T_cos(t, n, C.g_y_eta(y, eta)).real
        sharp = T_cos(t, n, y).real
        assert abs(smooth - sharp) <= boundary_length_sum(t, y, eta) + 1e-12


def test_imprimitive_gap_cyclic(rng):
    for _ in range(20):
        l0 = float(rng.uniform(0.3, 2.0))
        th = float(rng.uniform(-math.pi, math.pi))
        y = float(rng.uniform(2.0, 9.0))
        n = int(rng.integers(-3, 4))
        t = cyclic_table(l0, th, y=y)
        gap = complex(S_sum(t, n, y)) - complex(S_sum(t, n, y, primitive=True))
        exact = imprimitive_gap_closed_form(l0, th, n, y)
        assert abs(gap - exact) <= 1e-12 * max(1.0, abs(exact))
        k = np.arange(2, int(y / l0 + 1e-12) + 1)
        assert abs(gap) <= np.sum(k * l0 * np.exp(-k * l0)) + 1e-15


def test_weight_removal_bound(rng):
    # provable: |w - e^-l| <= (2e^-2l + e^-3l) / (1 - e^-l)^2
    for _ in range(50):
        l0 = float(rng.uniform(0.2, 5.0))
        th = float(rng.uniform(-math.pi, math.pi))
        t = cyclic_table(l0, th, y=l0 * 3)
        n = int(rng.integers(-3, 4))
        gap = abs(complex(S_sum(t, n, t.horizon, True)) - complex(T_sum(t, n, t.horizon, True)))
        x = math.exp(-l0)
        assert gap <= l0 * (2 * x * x + x ** 3) / (1 - x) ** 2 + 1e-15
        assert gap == pytest.approx(l0 * abs(weight(l0, th) - x), rel=1e-12)
