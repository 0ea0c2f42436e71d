"""Floating-point arithmetic on PSL(2, C) elements.

Elements are stored as unit-determinant 2x2 complex matrices, normalized
under the sign quotient.  Eigenvalues are only ever recovered from the
trace (lambda + 1/lambda = tr), never from a general eigensolver, so the
branch of the complex length is under our control.

Holonomy is reported on the branch (-pi, pi].
"""
import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np

from .errors import (
    DegenerateLength,
    NonUnitDeterminant,
    NotLoxodromic,
    SingularMatrix,
)

DEFAULT_TOL = 1e-9
TWO_PI = 2.0 * math.pi


class ElementClass(str, Enum):
    IDENTITY = "identity"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"
    LOXODROMIC = "loxodromic"


class ComplexLength(NamedTuple):
    length: float
    holonomy: float

    @property
    def value(self):
        return complex(self.length, self.holonomy)


def reduce_angle(theta):
    """Reduce an angle (scalar or array) to (-pi, pi]."""
    r = np.remainder(np.asarray(theta, dtype=float) + math.pi, TWO_PI) - math.pi
    r = np.where(r <= -math.pi, r + TWO_PI, r)
    if np.ndim(r) == 0:
        return float(r)
    return r


def angle_distance(a, b):
    """Distance on R/2piZ, in [0, pi]."""
    d = np.abs(np.remainder(np.asarray(a, dtype=float) - b, TWO_PI))
    d = np.minimum(d, TWO_PI - d)
    if np.ndim(d) == 0:
        return float(d)
    return d


def _quantum(scale):
    # power-of-two grid so nearly equal matrices share a quantization step
    return 2.0 ** math.ceil(math.log2(max(1.0, scale)))


@dataclass(frozen=True)
class CanonicalElement:
    a: complex
    b: complex
    c: complex
    d: complex
    word: Optional[str] = None

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def matrix(self):
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def trace(self):
        return self.a + self.d

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    def inverse(self):
        word = None if self.word is None else invert_word(self.word)
        return _sign_normalized(self.d, -self.b, -self.c, self.a, word)

    def __matmul__(self, other):
        a = self.a * other.a + self.b * other.c
        b = self.a * other.b + self.b * other.d
        c = self.c * other.a + self.d * other.c
        d = self.c * other.b + self.d * other.d
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return _sign_normalized(a, b, c, d, word)

    def key(self, tol=DEFAULT_TOL, identify_inverses=False):
        """Hashable grid key; shared by m and -m (and m^-1 on request)."""
        k = _grid_key(self.entries, tol)
        if identify_inverses:
            k = min(k, _grid_key(self.inverse().entries, tol))
        return k

    def power(self, k):
        if k < 0:
            return self.inverse().power(-k)
        m = np.linalg.matrix_power(self.matrix(), k)
        word = None if self.word is None else self.word * k
        return canonicalize(m, word=word)


def invert_word(word):
    return "".join(ch.swapcase() for ch in reversed(word))


def _flat(entries):
    out = []
    for z in entries:
        out.append(z.real)
        out.append(z.imag)
    return out


def _sign_normalized(a, b, c, d, word=None, tol=DEFAULT_TOL):
    a, b, c, d = complex(a), complex(b), complex(c), complex(d)
    flat = _flat((a, b, c, d))
    scale = max(1.0, max(abs(x) for x in flat))
    for x in flat:
        if abs(x) > 100.0 * tol * scale:
            if x < 0:
                a, b, c, d = -a, -b, -c, -d
            break
    return CanonicalElement(a, b, c, d, word)


def _grid_key(entries, tol):
    flat = _flat(entries)
    q = tol * _quantum(max(abs(x) for x in flat))
    key = tuple(int(round(x / q)) for x in flat)
    neg = tuple(-v for v in key)
    return min(key, neg)


def canonicalize(m, tol=DEFAULT_TOL, word=None):
    """Renormalize to unit determinant and fix the PSL sign.

    ``m`` may be a 2x2 array-like, a flat sequence (a, b, c, d), or an
    existing CanonicalElement.
    """
    if isinstance(m, CanonicalElement):
        word = m.word if word is None else word
        m = m.entries
    arr = np.asarray(m, dtype=complex).reshape(-1)
    if arr.size != 4:
        raise ValueError("expected a 2x2 matrix, got %d entries" % arr.size)
    a, b, c, d = (complex(z) for z in arr)
    det = a * d - b * c
    if abs(det) <= tol:
        raise SingularMatrix("determinant %r is numerically zero" % det)
    r = cmath.sqrt(det)
    a, b, c, d = a / r, b / r, c / r, d / r
    return _sign_normalized(a, b, c, d, word, tol)


def _as_element(m):
    if isinstance(m, CanonicalElement):
        return m
    arr = np.asarray(m, dtype=complex).reshape(-1)
    return CanonicalElement(*(complex(z) for z in arr))


def _check_det(el, tol):
    # products of long words carry roundoff of order eps * |entries|^2
    scale = max(1.0, max(abs(z) for z in el.entries)) ** 2
    if abs(el.det - 1.0) > tol * scale:
        raise NonUnitDeterminant("|det - 1| = %.3g exceeds tol %.3g" % (abs(el.det - 1.0), tol * scale))


def classify(m, tol=DEFAULT_TOL):
    el = _as_element(m)
    _check_det(el, tol)
    scale = max(1.0, max(abs(z) for z in el.entries))
    for s in (1.0, -1.0):
        if (abs(el.a - s) <= tol * scale and abs(el.d - s) <= tol * scale
                and abs(el.b) <= tol * scale and abs(el.c) <= tol * scale):
            return ElementClass.IDENTITY
    t2 = el.trace ** 2
    t2tol = tol * max(1.0, abs(t2))
    if abs(t2 - 4.0) <= t2tol:
        return ElementClass.PARABOLIC
    if abs(t2.imag) <= t2tol:
        if -t2tol <= t2.real < 4.0:
            return ElementClass.ELLIPTIC
        if t2.real > 4.0:
            return ElementClass.HYPERBOLIC
    return ElementClass.LOXODROMIC


def eigenvalue_from_trace(tr):
    """Root of x + 1/x = tr with |x| >= 1."""
    s = cmath.sqrt(tr * tr - 4.0)
    p, q = tr + s, tr - s
    return (p if abs(p) >= abs(q) else q) / 2.0


def complex_length(m, tol=DEFAULT_TOL):
    """(length, holonomy) with length = 2 log|lambda| and holonomy = 2 arg lambda.

    Elliptic input returns length 0.0.  Identity and parabolic raise
    NotLoxodromic.
    """
    el = _as_element(m)
    kind = classify(el, tol)
    if kind in (ElementClass.IDENTITY, ElementClass.PARABOLIC):
        raise NotLoxodromic("%s element has no complex length" % kind.value)
    lam = eigenvalue_from_trace(el.trace)
    theta = reduce_angle(2.0 * cmath.phase(lam))
    if kind is ElementClass.ELLIPTIC:
        return ComplexLength(0.0, theta)
    if kind is ElementClass.HYPERBOLIC:
        theta = 0.0
    return ComplexLength(2.0 * math.log(abs(lam)), theta)


def _one_minus_exp_neg_sq(length, holonomy):
    # |1 - exp(-(l + i theta))|^2, accurate near the origin
    z = np.asarray(length, dtype=float) + 1j * np.asarray(holonomy, dtype=float)
    return np.abs(np.expm1(-z)) ** 2


def weight(cl, holonomy=None):
    """Trace-formula weight 1 / (|1 - e^z| |1 - e^-z|), z = l + i theta.

    Accepts a ComplexLength, or arrays of lengths and holonomies.
    """
    if holonomy is None:
        length, holonomy = cl
    else:
        length = cl
    length = np.asarray(length, dtype=float)
    if np.any(length <= 0):
        raise DegenerateLength("weight needs positive length")
    w = np.exp(-length) / _one_minus_exp_neg_sq(length, holonomy)
    if np.ndim(w) == 0:
        return float(w)
    return w


def weyl_discriminant_root(cl, holonomy=None):
    """|D|^(1/2) = |1 - e^z| |1 - e^-z|; the reciprocal of ``weight``."""
    if holonomy is None:
        length, holonomy = cl
    else:
        length = cl
    length = np.asarray(length, dtype=float)
    holonomy = np.asarray(holonomy, dtype=float)
    # symmetric under z -> -z; evaluate on the side where exp(-z) is small
    flip = length < 0
    length = np.where(flip, -length, length)
    holonomy = np.where(flip, -holonomy, holonomy)
    r = np.exp(length) * _one_minus_exp_neg_sq(length, holonomy)
    if np.ndim(r) == 0:
        return float(r)
    return r


def power_class(cl, root_length, k):
    if k < 1:
        raise ValueError("power index must be >= 1")
    length, holonomy = cl
    if length <= 0:
        raise DegenerateLength("power_class needs positive length")
    return ComplexLength(k * length, reduce_angle(k * holonomy)), root_length


def diagonal_element(length, holonomy, word=None):
    """t_{u,theta} = diag(exp((u + i theta)/2), exp(-(u + i theta)/2))."""
    z = cmath.exp(complex(length, holonomy) / 2.0)
    return canonicalize([[z, 0], [0, 1 / z]], word=word)
