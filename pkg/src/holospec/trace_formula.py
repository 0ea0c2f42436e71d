"""Both sides of the even and odd non-spherical trace formulas.

A spectral datum (nu, p, m) stands for m copies of the representation with
label (nu, p).  With F(u, theta) = g(u) trig(n theta) on the diagonal torus,
its transform at that representation is

    (1/2pi) int int F(u, theta) exp(u nu + i p theta) du dtheta,

which reduces to a multiple of int g(u) exp(u nu) du = g^(i nu / 2pi).
"""
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import integrate

from .algebra import weyl_discriminant_root  # noqa: F401  (re-exported)
from .cutoffs import cutoff_derivative, cutoff_eval, cutoff_fourier
from .errors import EvenKind, OddKind, UnsupportedKind
from .measures import plancherel_window, varpi_star_density
from .sums import T_cos, T_sin

FD_STEP = 1e-4


@dataclass
class TraceFormulaReport:
    spectral_side: complex
    geometric_side: complex
    identity_term: complex
    trivial_rep_term: complex
    residual: complex
    truncation_note: str
    spectral_sum: complex = 0j
    geodesic_term: complex = 0j
    complete: bool = True

    def as_dict(self):
        return asdict(self)


def abel_integral(g, nu):
    """int g(u) exp(u nu) du through the closed-form transform."""
    return cutoff_fourier(g, 1j * complex(nu) / (2 * math.pi))


def abel_transform(g, trig, n, nu, p):
    if g.periodic:
        raise UnsupportedKind("abel transform needs a line kind")
    if trig == "cos":
        if p == n == 0:
            return abel_integral(g, nu)
        if n != 0 and p in (n, -n):
            return 0.5 * abel_integral(g, nu)
        return 0j
    if trig == "sin":
        if n == 0:
            return 0j
        if p == n:
            return 0.5j * abel_integral(g, nu)
        if p == -n:
            return -0.5j * abel_integral(g, nu)
        return 0j
    raise ValueError("trig must be 'cos' or 'sin'")


def second_derivative_at_zero(g):
    """g''(0): closed form where available, else a 5-point difference."""
    try:
        return cutoff_derivative(g, 0.0, order=2)
    except UnsupportedKind:
        h = FD_STEP
        f = cutoff_eval(g, np.array([-2 * h, -h, 0.0, h, 2 * h]))
        return (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h)


def _note(spectral, table, g):
    comp = sum(1 for d in spectral if d.is_complementary)
    return ("spectral data: %d entries as supplied (%d complementary), truncation is the caller's; "
            "table: %d rows, horizon %.6g, complete=%s; test function reach %.6g"
            % (len(spectral), comp, len(table), table.horizon, table.complete, g.reach()))


def _integral_against_star(g, comp):
    lo, hi = g.support()
    f = lambda u: float(cutoff_eval(g, u)) * varpi_star_density(u, comp)
    pts = sorted({lo, hi, 0.0} | {v for v in (g.eta or 0, -(g.eta or 0)) if lo < v < hi})
    total = 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        val, _ = integrate.quad(f, a, b, epsabs=0.0, epsrel=1e-13, limit=400)
        total += val
    return total


def even_tf_sides(g, n, spectral, table, mc, alt=False, threads=1):
    """Spectral and geometric sides of the even trace formula for g.

    With ``alt`` the complementary-series terms are moved into the trivial
    representation term as int g d(varpi*), computed by quadrature.
    """
    if g.periodic:
        raise UnsupportedKind("trace formula needs a line kind")
    if g.parity == "odd":
        raise OddKind("even trace formula needs an even test function")
    spectral = list(spectral)
    moved = [d for d in spectral if d.is_complementary] if (alt and n == 0) else []
    kept = [d for d in spectral if d not in moved] if moved else spectral
    spec_sum = complex(math.fsum(0.0 for _ in ()))
    terms = [d.multiplicity * abel_transform(g, "cos", n, d.nu, d.p) for d in kept]
    spec_sum = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))

    trivial = 0j
    if n == 0:
        trivial += _integral_against_star(g, moved) if alt else abel_integral(g, 1.0)
    if abs(n) == 1:
        trivial -= 0.5 * cutoff_fourier(g, 0.0)

    g0 = cutoff_eval(g, 0.0)
    identity = mc.volume / (2 * math.pi) * (n * n * g0 - second_derivative_at_zero(g))
    geo = T_cos(table, n, g, threads)
    spectral_side = spec_sum + trivial
    geometric_side = identity + complex(geo)
    return TraceFormulaReport(
        spectral_side, geometric_side, complex(identity), complex(trivial),
        spectral_side - geometric_side, _note(spectral, table, g),
        spec_sum, complex(geo), geo.complete,
    )


def odd_tf_sides(h, n, spectral, table, mc, threads=1):
    """Spectral and geometric sides of the odd trace formula for h."""
    if h.periodic:
        raise UnsupportedKind("trace formula needs a line kind")
    if h.parity != "odd":
        raise EvenKind("odd trace formula needs an odd test function")
    spectral = list(spectral)
    terms = [d.multiplicity * abel_transform(h, "sin", n, d.nu, d.p) for d in spectral]
    spec_sum = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
    geo = T_sin(table, n, h, threads)
    return TraceFormulaReport(
        spec_sum, complex(geo), 0j, 0j, spec_sum - complex(geo),
        _note(spectral, table, h), spec_sum, complex(geo), geo.complete,
    )


def weyl_window_report(spectral, R, n, mc):
    """(multiplicity count with R-1 <= |nu| <= R+1 at label n, Plancherel prediction)."""
    if R < 0:
        raise ValueError("R must be >= 0")
    count = sum(d.multiplicity for d in spectral
                if d.p == n and R - 1 <= abs(d.nu) <= R + 1)
    return int(count), mc.volume * plancherel_window(max(R - 1.0, 0.0), R + 1.0, n)
