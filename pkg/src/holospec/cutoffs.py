"""Bump, cutoff and majorant test functions.

Conventions: on the line f^(xi) = int f(x) exp(-2 pi i x xi) dx; on the
circle f^(n) = int_0^{2pi} f(x) exp(-i n x) dx.  A function on the circle
obtained by periodizing a line function F has circle coefficients
F^(n / 2pi); ``_line_to_circle`` is the only place that conversion happens.

All length-side cutoffs are convolutions of indicators with the scaled bump,
so they are evaluated through the bump CDF, tabulated once per tilt.
"""
import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.interpolate import CubicHermiteSpline

from .algebra import TWO_PI
from .errors import InvalidDescriptor, UnsupportedKind

LINE_KINDS = ("psi", "psi_eta", "g_y_eta", "h_y_eta", "f_majorant_len",
              "g_lambda", "h_lambda", "indicator_len")
PERIODIC_KINDS = ("f_I_etaprime", "f_majorant_hol", "indicator_hol")
KINDS = LINE_KINDS + PERIODIC_KINDS

CDF_GRID = 4096
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


def _bump_raw(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = np.abs(x) < 1
    xi = x[inside]
    out[inside] = np.exp(-1.0 / (1.0 - xi * xi))
    return out


@functools.lru_cache(maxsize=None)
def psi_constant():
    """Normalizing constant c with int c exp(-1/(1-x^2)) dx = 1."""
    val, _ = integrate.quad(lambda x: float(_bump_raw(x)), -1.0, 1.0, epsabs=1e-14, epsrel=1e-14, limit=200)
    return 1.0 / val


def psi_eval(x):
    """The fixed bump: smooth, even, supported on [-1, 1], unit mass."""
    r = psi_constant() * _bump_raw(x)
    return float(r) if np.ndim(r) == 0 else r


def _q_derivs(x):
    # derivatives of q = -1/(1-x^2) = (1/(x-1) - 1/(x+1)) / 2
    a, b = x - 1.0, x + 1.0
    out = []
    for k in range(1, 5):
        s = 0.5 * (-1) ** k * math.factorial(k)
        out.append(s * (a ** (-k - 1) - b ** (-k - 1)))
    return out


def psi_derivative(x, order=1):
    """Derivatives of the bump up to order 4, zero outside (-1, 1)."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = np.abs(x) < 1
    u = x[inside]
    p = psi_constant() * np.exp(-1.0 / (1.0 - u * u))
    q1, q2, q3, q4 = _q_derivs(u)
    if order == 1:
        f = q1
    elif order == 2:
        f = q2 + q1 ** 2
    elif order == 3:
        f = q3 + 3 * q2 * q1 + q1 ** 3
    elif order == 4:
        f = q4 + 4 * q3 * q1 + 3 * q2 ** 2 + 6 * q2 * q1 ** 2 + q1 ** 4
    else:
        raise ValueError("order must be 1..4")
    out[inside] = p * f
    return float(out) if out.ndim == 0 else out


@functools.lru_cache(maxsize=None)
def psi_d4_l1():
    """L1 norm of the fourth derivative; gives |psi^(xi)| <= C / (2 pi xi)^4."""
    val, _ = integrate.quad(lambda x: abs(float(psi_derivative(x, 4))), -1, 1, limit=400, epsabs=1e-10)
    return val


@functools.lru_cache(maxsize=None)
def _half_nodes(panels):
    edges = np.linspace(0.0, 1.0, panels + 1)
    h = np.diff(edges)[:, None] / 2
    mid = (edges[:-1] + edges[1:])[:, None] / 2
    x = (mid + h * _GL_NODES).ravel()
    w = (h * _GL_WEIGHTS).ravel() * psi_eval(x)
    return x, w


def psi_hat(xi):
    """Fourier transform of the bump; accepts real or complex arguments.

    Composite Gauss-Legendre on [0, 1] using evenness.  The panel count grows
    with |Re xi| so each panel sees a bounded number of oscillations.
    """
    xi = np.asarray(xi, dtype=complex)
    flat = xi.ravel()
    out = np.empty(flat.shape, dtype=complex)
    re = np.abs(flat.real)
    panels = 48 * np.maximum(1, np.ceil(re / 32.0)).astype(int)
    for p in np.unique(panels):
        idx = np.nonzero(panels == p)[0]
        x, w = _half_nodes(int(p))
        for s in range(0, idx.size, 512):
            chunk = idx[s:s + 512]
            z = flat[chunk]
            if not np.any(z.imag):
                out[chunk] = 2.0 * (np.cos(TWO_PI * np.outer(z.real, x)) @ w)
            else:
                out[chunk] = 2.0 * (np.cos(TWO_PI * np.outer(z, x)) @ w)
    out = out.reshape(xi.shape)
    return complex(out) if out.ndim == 0 else out


class _TiltedCDF:
    """u -> int_{-1}^u psi(v) exp(c v) dv, clamped outside [-1, 1]."""

    def __init__(self, c, grid=CDF_GRID):
        self.c = c
        nodes = np.linspace(-1.0, 1.0, grid + 1)
        h = np.diff(nodes)[:, None] / 2
        mid = (nodes[:-1] + nodes[1:])[:, None] / 2
        gl_x, gl_w = np.polynomial.legendre.leggauss(16)
        x = mid + h * gl_x
        cell = (h * gl_w * psi_eval(x.ravel()).reshape(x.shape) * np.exp(c * x)).sum(axis=1)
        vals = np.concatenate([[0.0], np.cumsum(cell)])
        slopes = psi_eval(nodes) * np.exp(c * nodes)
        self.total = float(vals[-1])
        self._spline = CubicHermiteSpline(nodes, vals, slopes)

    def __call__(self, u):
        u = np.clip(np.asarray(u, dtype=float), -1.0, 1.0)
        return self._spline(u)


class _SymmetricCDF:
    """Untilted CDF built from its right half so that Psi(-u) = 1 - Psi(u)."""

    def __init__(self, grid=CDF_GRID // 2):
        nodes = np.linspace(0.0, 1.0, grid + 1)
        h = np.diff(nodes)[:, None] / 2
        mid = (nodes[:-1] + nodes[1:])[:, None] / 2
        gl_x, gl_w = np.polynomial.legendre.leggauss(16)
        x = mid + h * gl_x
        cell = (h * gl_w * psi_eval(x.ravel()).reshape(x.shape)).sum(axis=1)
        vals = np.concatenate([[0.0], np.cumsum(cell)])
        vals *= 0.5 / vals[-1]
        self.total = 1.0
        self._half = CubicHermiteSpline(nodes, vals, psi_eval(nodes))

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        a = np.minimum(np.abs(u), 1.0)
        return 0.5 + np.sign(u) * self._half(a)


@functools.lru_cache(maxsize=None)
def _cdf(c=0.0):
    if c == 0.0:
        return _SymmetricCDF()
    return _TiltedCDF(c)


def psi_cdf(u, c=0.0):
    """int_{-1}^u psi(v) exp(c v) dv; negative tilts reuse the positive table."""
    c = float(c)
    if c < 0:
        pos = _cdf(-c)
        return pos.total - pos(-np.asarray(u, dtype=float))
    return _cdf(c)(u)


@dataclass(frozen=True)
class CutoffDescriptor:
    kind: str
    y: float = None
    eta: float = None
    t: float = None
    lam: float = None
    theta0: float = None
    interval: tuple = None
    etaprime: float = None
    scale: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidDescriptor("unknown kind %r" % (self.kind,))
        need = {
            "psi": (),
            "psi_eta": ("eta",),
            "g_y_eta": ("y", "eta"),
            "h_y_eta": ("y", "eta"),
            "f_majorant_len": ("y", "eta"),
            "g_lambda": ("t", "eta", "lam"),
            "h_lambda": ("t", "eta", "lam"),
            "indicator_len": ("y",),
            "f_I_etaprime": ("interval", "etaprime"),
            "f_majorant_hol": ("theta0", "etaprime"),
            "indicator_hol": ("interval",),
        }[self.kind]
        for name in need:
            if getattr(self, name) is None:
                raise InvalidDescriptor("%s needs parameter %r" % (self.kind, name))
        if self.eta is not None and not self.eta > 0:
            raise InvalidDescriptor("eta must be positive")
        if self.y is not None and not self.y > 0:
            raise InvalidDescriptor("y must be positive")
        if self.etaprime is not None and not 0 < self.etaprime <= TWO_PI:
            raise InvalidDescriptor("etaprime must lie in (0, 2pi]")
        if self.lam is not None and not 0 <= self.lam <= 1:
            raise InvalidDescriptor("lambda must lie in [0, 1]")
        if self.t is not None and not self.t >= self.eta:
            raise InvalidDescriptor("tilted cutoffs need t >= eta")
        if self.interval is not None:
            a, b = self.interval
            if not 0 < b - a <= TWO_PI + 1e-12:
                raise InvalidDescriptor("interval needs 0 < theta' - theta <= 2pi")
            object.__setattr__(self, "interval", (float(a), float(b)))

    @property
    def periodic(self):
        return self.kind in PERIODIC_KINDS

    @property
    def parity(self):
        if self.kind in ("h_y_eta", "h_lambda"):
            return "odd"
        if self.kind in ("f_I_etaprime", "indicator_hol"):
            return None
        return "even"

    def support(self):
        """Closed interval outside of which the line function vanishes."""
        k = self.kind
        if k == "psi":
            return (-1.0, 1.0)
        if k == "psi_eta":
            return (-self.eta, self.eta)
        if k in ("g_y_eta", "h_y_eta"):
            return (-self.y - self.eta, self.y + self.eta)
        if k == "f_majorant_len":
            return (-self.y - 2 * self.eta, self.y + 2 * self.eta)
        if k in ("g_lambda", "h_lambda"):
            return (-self.t - self.eta, self.t + self.eta)
        if k == "indicator_len":
            return (-self.y, self.y)
        raise UnsupportedKind("%s lives on the circle" % k)

    def reach(self):
        """Largest |x| in the support (line kinds)."""
        return self.support()[1]


def psi(): return CutoffDescriptor("psi")
def psi_eta(eta): return CutoffDescriptor("psi_eta", eta=eta)
def g_y_eta(y, eta, scale=1.0): return CutoffDescriptor("g_y_eta", y=y, eta=eta, scale=scale)
def h_y_eta(y, eta, scale=1.0): return CutoffDescriptor("h_y_eta", y=y, eta=eta, scale=scale)
def f_majorant_len(y, eta): return CutoffDescriptor("f_majorant_len", y=y, eta=eta)
def g_lambda(t, eta, lam): return CutoffDescriptor("g_lambda", t=t, eta=eta, lam=lam)
def h_lambda(t, eta, lam): return CutoffDescriptor("h_lambda", t=t, eta=eta, lam=lam)
def indicator_len(y): return CutoffDescriptor("indicator_len", y=y)
def f_I_etaprime(theta, theta_prime, etaprime):
    return CutoffDescriptor("f_I_etaprime", interval=(theta, theta_prime), etaprime=etaprime)
def f_majorant_hol(theta0, etaprime): return CutoffDescriptor("f_majorant_hol", theta0=theta0, etaprime=etaprime)
def indicator_hol(theta, theta_prime): return CutoffDescriptor("indicator_hol", interval=(theta, theta_prime))


def _periodic_eval(d, x):
    x = np.asarray(x, dtype=float)
    if d.kind == "f_majorant_hol":
        e2 = 2 * d.etaprime
        base = np.remainder(x, TWO_PI)
        out = np.zeros_like(base)
        for k in range(-2, 3):
            s = base + TWO_PI * k
            out += psi_eval((s - d.theta0) / e2) + psi_eval((s + d.theta0) / e2)
        return out
    a, b = d.interval
    if b - a >= TWO_PI:
        return np.ones_like(x)
    base = a + np.remainder(x - a, TWO_PI)  # in [a, a + 2pi)
    if d.kind == "indicator_hol":
        return ((base <= b) | (base - TWO_PI >= a)).astype(float)
    ep = d.etaprime
    out = np.zeros_like(base)
    for k in range(-2, 3):
        s = base + TWO_PI * k
        out += psi_cdf((s - a) / ep) - psi_cdf((s - b) / ep)
    return out


def cutoff_eval(d, x):
    """Pointwise value of the described function (vectorized in x)."""
    x = np.asarray(x, dtype=float)
    k = d.kind
    if d.periodic:
        r = _periodic_eval(d, x)
    elif k == "psi":
        r = psi_eval(x)
    elif k == "psi_eta":
        r = psi_eval(x / d.eta) / d.eta
    elif k == "g_y_eta":
        r = psi_cdf((x + d.y) / d.eta) - psi_cdf((x - d.y) / d.eta)
    elif k == "h_y_eta":
        r = 2 * psi_cdf(x / d.eta) - psi_cdf((x - d.y) / d.eta) - psi_cdf((x + d.y) / d.eta)
    elif k == "f_majorant_len":
        e2 = 2 * d.eta
        r = psi_eval((x - d.y) / e2) + psi_eval((x + d.y) / e2)
    elif k == "indicator_len":
        r = (np.abs(x) <= d.y).astype(float)
    else:
        c, eta, t = d.lam * d.eta, d.eta, d.t
        right = psi_cdf((x + eta) / eta, c) - psi_cdf((x - t) / eta, c)
        left = psi_cdf((x + t) / eta, -c) - psi_cdf((x - eta) / eta, -c)
        r = right + left if k == "g_lambda" else right - left
    r = d.scale * np.asarray(r, dtype=float)
    return float(r) if r.ndim == 0 else r


def cutoff_derivative(d, x, order=1):
    """First or second derivative of a smooth line kind, in closed form."""
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    x = np.asarray(x, dtype=float)
    k = d.kind

    def bump(u, c=0.0):
        # derivative of u -> psi_cdf(u, c) of order ``order``
        if order == 1:
            return psi_eval(u) * np.exp(c * u)
        return (psi_derivative(u, 1) + c * psi_eval(u)) * np.exp(c * u)

    if k in ("g_y_eta", "h_y_eta"):
        e = d.eta
        if k == "g_y_eta":
            r = bump((x + d.y) / e) - bump((x - d.y) / e)
        else:
            r = 2 * bump(x / e) - bump((x - d.y) / e) - bump((x + d.y) / e)
        r = r / e ** order
    elif k in ("g_lambda", "h_lambda"):
        c, e, t = d.lam * d.eta, d.eta, d.t
        right = bump((x + e) / e, c) - bump((x - t) / e, c)
        left = bump((x + t) / e, -c) - bump((x - e) / e, -c)
        r = (right + left if k == "g_lambda" else right - left) / e ** order
    elif k in ("psi", "psi_eta", "f_majorant_len"):
        e = {"psi": 1.0, "psi_eta": d.eta, "f_majorant_len": 2 * d.eta}[k]
        if k == "f_majorant_len":
            r = psi_derivative((x - d.y) / e, order) + psi_derivative((x + d.y) / e, order)
        else:
            r = psi_derivative(x / e, order)
        r = r / e ** order
        if k == "psi_eta":
            r = r / e
    else:
        raise UnsupportedKind("%s has no smooth derivative" % k)
    r = d.scale * np.asarray(r, dtype=float)
    return float(r) if r.ndim == 0 else r


def indicator_hat(a, b, xi):
    """int_a^b exp(-2 pi i x xi) dx, stable near xi = 0 and for complex xi."""
    xi = np.asarray(xi, dtype=complex)
    L = b - a
    return L * np.sinc(L * xi) * np.exp(-1j * math.pi * (a + b) * xi)


def cutoff_fourier(d, xi):
    """Closed-form Fourier transform of a line kind; xi may be complex."""
    if d.periodic:
        raise UnsupportedKind("%s is periodic; use periodic_coeff" % d.kind)
    xi = np.asarray(xi, dtype=complex)
    k = d.kind
    if k == "psi":
        r = psi_hat(xi)
    elif k == "psi_eta":
        r = psi_hat(d.eta * xi)
    elif k == "g_y_eta":
        r = indicator_hat(-d.y, d.y, xi) * psi_hat(d.eta * xi)
    elif k == "h_y_eta":
        r = (indicator_hat(0.0, d.y, xi) - indicator_hat(-d.y, 0.0, xi)) * psi_hat(d.eta * xi)
    elif k == "f_majorant_len":
        r = 4 * d.eta * np.cos(TWO_PI * d.y * xi) * psi_hat(2 * d.eta * xi)
    elif k == "indicator_len":
        r = indicator_hat(-d.y, d.y, xi)
    else:
        e, t = d.eta, d.t
        shift = 1j * e * d.lam / TWO_PI
        right = indicator_hat(-e, t, xi) * psi_hat(e * xi + shift)
        left = indicator_hat(-t, e, xi) * psi_hat(e * xi - shift)
        r = right + left if k == "g_lambda" else right - left
    r = d.scale * np.asarray(r, dtype=complex)
    return complex(r) if r.ndim == 0 else r


def _line_to_circle(n):
    # circle coefficient n of a periodized line function = line transform at n / 2pi
    return np.asarray(n, dtype=float) / TWO_PI


def periodic_coeff(d, n):
    """Circle Fourier coefficients int_0^{2pi} f(x) exp(-i n x) dx."""
    if not d.periodic:
        raise UnsupportedKind("%s is not periodic" % d.kind)
    n = np.asarray(n)
    xi = _line_to_circle(n)
    if d.kind == "f_majorant_hol":
        r = 4 * d.etaprime * np.cos(n * d.theta0) * psi_hat(2 * d.etaprime * xi)
    else:
        a, b = d.interval
        if b - a >= TWO_PI:
            r = np.where(n == 0, TWO_PI, 0.0).astype(complex)
        else:
            r = indicator_hat(a, b, xi)
        if d.kind == "f_I_etaprime":
            r = r * psi_hat(d.etaprime * xi)
    r = d.scale * np.asarray(r, dtype=complex)
    return complex(r) if r.ndim == 0 else r


def f_norms(d, N=None):
    """(||f^||_1, ||f^||_1 + ||(f'')^||_1) over the circle coefficients.

    Coefficients with |n| <= N are summed; the remainder is replaced by the
    bound |psi^(xi)| <= ||psi''''||_1 / (2 pi xi)^4, so both values are upper
    bounds that are tight up to the reported tail.
    """
    if d.kind not in ("f_I_etaprime", "f_majorant_hol"):
        raise UnsupportedKind("norms need a smooth periodic kind, got %s" % d.kind)
    ep = d.etaprime
    if N is None:
        N = int(math.ceil(50.0 / ep))
    if N < 1:
        raise ValueError("N must be >= 1")
    n = np.arange(-N, N + 1)
    a = np.abs(periodic_coeff(d, n))
    s1 = math.fsum(a)
    s2 = math.fsum(a * n.astype(float) ** 2)
    C = psi_d4_l1() * abs(d.scale)
    if d.kind == "f_majorant_hol":
        # |f^(n)| <= 4 ep C / (2 ep n)^4
        tail1 = 2 * C / (4 * ep ** 3) / (3 * N ** 3)
        tail2 = 2 * C / (4 * ep ** 3) / N
    elif d.interval[1] - d.interval[0] >= TWO_PI:
        tail1 = tail2 = 0.0
    else:
        # |f^(n)| <= (2 / |n|) C / (ep n)^4
        tail1 = 2 * 2 * C / ep ** 4 / (4 * N ** 4)
        tail2 = 2 * 2 * C / ep ** 4 / (2 * N ** 2)
    norm1 = s1 + tail1
    return norm1, norm1 + s2 + tail2
