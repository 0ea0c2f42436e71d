"""Main-term densities, their integrals, and Plancherel windows."""
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .errors import DomainError


@dataclass(frozen=True)
class SpectralDatum:
    """One representation pi_{nu,p} with its multiplicity.

    Complementary series: nu real in (0, 1), p = 0.  Principal series:
    Re nu = 0.
    """
    nu: complex
    p: int = 0
    multiplicity: int = 1

    def __post_init__(self):
        nu = complex(self.nu)
        object.__setattr__(self, "nu", nu)
        if self.multiplicity < 0:
            raise ValueError("multiplicity must be nonnegative")
        if not (self.is_principal or self.is_complementary):
            raise ValueError("nu=%r, p=%d is neither principal nor complementary" % (nu, self.p))

    @property
    def is_complementary(self):
        return self.nu.imag == 0 and 0 < self.nu.real < 1 and self.p == 0

    @property
    def is_principal(self):
        return self.nu.real == 0


@dataclass(frozen=True)
class ManifoldConstants:
    volume: float
    systole: float

    def __post_init__(self):
        if not (self.volume > 0 and self.systole > 0):
            raise ValueError("volume and systole must be positive")


def complementary(data):
    return [d for d in data if d.is_complementary]


def _comp_terms(comp):
    comp = complementary(comp)
    nus = np.array([d.nu.real for d in comp], dtype=float)
    ms = np.array([d.multiplicity for d in comp], dtype=float)
    return nus, ms


def varpi_density(t, comp=()):
    """e^{2t}/t plus e^{(1+nu)t}/t for each complementary entry."""
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise DomainError("density needs t > 0")
    nus, ms = _comp_terms(comp)
    r = np.exp(2 * t) / t
    if nus.size:
        r = r + (ms[:, None] * np.exp(np.outer(1 + nus, t.ravel()))).sum(axis=0).reshape(t.shape) / t
    return float(r) if r.ndim == 0 else r


def varpi_star_density(u, comp=()):
    u = np.asarray(u, dtype=float)
    nus, ms = _comp_terms(comp)
    r = np.exp(u)
    if nus.size:
        r = r + (ms[:, None] * np.exp(np.outer(nus, u.ravel()))).sum(axis=0).reshape(u.shape)
    return float(r) if r.ndim == 0 else r


def ei_main_term(b, a=2.0, comp=()):
    """int_a^b of the density, by adaptive quadrature."""
    if a < 2:
        raise DomainError("main term integrates from t >= 2")
    if b < a:
        raise DomainError("need a <= b")
    if b == a:
        return 0.0
    val, _ = integrate.quad(lambda t: varpi_density(t, comp), a, b,
                            epsabs=0.0, epsrel=1e-12, limit=200)
    return val


def ei_closed_form(b, a=2.0, comp=()):
    """Same integral through the exponential integral (used as a check)."""
    nus, ms = _comp_terms(comp)
    r = special.expi(2 * b) - special.expi(2 * a)
    for nu, m in zip(nus, ms):
        r += m * (special.expi((1 + nu) * b) - special.expi((1 + nu) * a))
    return float(r)


def plancherel_window(a, b, n):
    """Plancherel mass of a <= |t| <= b for nu = it and fixed n."""
    if not 0 <= a <= b:
        raise DomainError("need 0 <= a <= b")
    return (2.0 * (b ** 3 - a ** 3) / 3.0 + 2.0 * n * n * (b - a)) / (4.0 * math.pi ** 2)


def plancherel_density(t, n):
    t = np.asarray(t, dtype=float)
    return (t * t + n * n) / (4.0 * math.pi ** 2)
