"""Weighted sums over a spectrum table.

Every geometric sum goes through ``weighted_sum``: per-class terms are
computed in fixed-size chunks (optionally on a thread pool) and then added
with ``math.fsum`` in table order, so the result does not depend on the
number of threads.
"""
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Union

import numpy as np

from .algebra import TWO_PI, angle_distance, weight
from .cutoffs import CutoffDescriptor, cutoff_eval
from .errors import IncompleteSpectrumWarning, InvalidDescriptor

CHUNK = 4096
ANGLE_SLACK = 1e-12
WEIGHT_MODES = ("trace_weight", "exp_weight", "unit")
CLASS_FILTERS = ("all", "primitive_only")
TRIG = ("cos", "sin", "exp", "one")


@dataclass(frozen=True)
class SharpInterval:
    """Closed length window [lo, hi]."""
    lo: float
    hi: float

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError("empty interval")


@dataclass(frozen=True)
class Arc:
    """Closed arc of the circle from ``start`` counter-clockwise to ``end``."""
    start: float
    end: float

    def __post_init__(self):
        if self.end < self.start:
            raise ValueError("arc needs start <= end")

    def contains(self, theta):
        width = self.end - self.start
        if width >= TWO_PI:
            return np.ones(np.shape(theta), dtype=bool)
        off = np.remainder(np.asarray(theta, dtype=float) - self.start, TWO_PI)
        # points just below start count as on the arc
        off = np.where(off > TWO_PI - ANGLE_SLACK, 0.0, off)
        return off <= width + ANGLE_SLACK


@dataclass(frozen=True)
class SymmetricArc:
    """Holonomies within ``width`` of +theta0 or -theta0."""
    theta0: float
    width: float

    def contains(self, theta):
        theta = np.asarray(theta, dtype=float)
        d = np.minimum(angle_distance(theta, self.theta0), angle_distance(theta, -self.theta0))
        return d <= self.width + ANGLE_SLACK


LengthWindow = Union[SharpInterval, CutoffDescriptor]


@dataclass(frozen=True)
class SumSpec:
    weight_mode: str = "trace_weight"
    class_filter: str = "all"
    length_window: LengthWindow = None
    holonomy_weight: object = "exp"
    n: int = 0

    def __post_init__(self):
        if self.weight_mode not in WEIGHT_MODES:
            raise ValueError("unknown weight mode %r" % self.weight_mode)
        if self.class_filter not in CLASS_FILTERS:
            raise ValueError("unknown class filter %r" % self.class_filter)
        w = self.length_window
        if isinstance(w, (int, float)):
            object.__setattr__(self, "length_window", SharpInterval(0.0, float(w)))
        elif isinstance(w, tuple):
            object.__setattr__(self, "length_window", SharpInterval(*map(float, w)))
        elif isinstance(w, CutoffDescriptor) and w.periodic:
            raise InvalidDescriptor("length window must be a line kind")
        elif w is not None and not isinstance(w, (SharpInterval, CutoffDescriptor)):
            raise TypeError("bad length window %r" % (w,))
        h = self.holonomy_weight
        if isinstance(h, str):
            if h not in TRIG:
                raise ValueError("unknown holonomy weight %r" % h)
        elif isinstance(h, CutoffDescriptor):
            if not h.periodic:
                raise InvalidDescriptor("holonomy weight must be a periodic kind")
        elif isinstance(h, tuple):
            object.__setattr__(self, "holonomy_weight", Arc(*map(float, h)))
        elif not isinstance(h, (Arc, SymmetricArc)):
            raise TypeError("bad holonomy weight %r" % (h,))

    def reach(self):
        w = self.length_window
        if w is None:
            return 0.0
        if isinstance(w, SharpInterval):
            return w.hi
        return w.reach()


class SumValue(complex):
    """A complex sum together with a completeness flag."""

    def __new__(cls, value, complete=True):
        obj = complex.__new__(cls, value)
        obj.complete = bool(complete)
        return obj

    def __repr__(self):
        return "SumValue(%r, complete=%s)" % (complex(self), self.complete)


def _terms(spec, lengths, hols, mults, roots):
    mode = spec.weight_mode
    if mode == "trace_weight":
        w = roots * weight(lengths, hols) if lengths.size else np.zeros(0)
    elif mode == "exp_weight":
        w = lengths * np.exp(-lengths)
    else:
        w = np.ones_like(lengths)
    w = mults * w

    win = spec.length_window
    if isinstance(win, SharpInterval):
        w = w * ((lengths >= win.lo) & (lengths <= win.hi))
    elif win is not None:
        w = w * cutoff_eval(win, lengths)

    h = spec.holonomy_weight
    n = spec.n
    if isinstance(h, str):
        if h == "cos":
            return w * np.cos(n * hols) + 0j
        if h == "sin":
            return w * np.sin(n * hols) + 0j
        if h == "exp":
            return w * np.exp(1j * n * hols)
        return w + 0j
    if isinstance(h, CutoffDescriptor):
        return w * cutoff_eval(h, hols) + 0j
    return w * h.contains(hols) + 0j


def check_horizon(table, reach):
    complete = table.complete
    if reach > table.horizon + 1e-12:
        warnings.warn("window reaches %.6g beyond the table horizon %.6g" % (reach, table.horizon),
                      IncompleteSpectrumWarning, stacklevel=3)
        complete = False
    return complete


def weighted_sum(table, spec, threads=1):
    """Sum of multiplicity * weight * window(length) * holonomy factor.

    The result is a ``SumValue``; ``complete`` is false when the table is
    not certified complete or the window reaches past its horizon.
    """
    complete = check_horizon(table, spec.reach())
    if spec.class_filter == "primitive_only":
        sel = table.primitive
        cols = (table.lengths[sel], table.holonomies[sel],
                table.multiplicities[sel].astype(float), table.root_lengths[sel])
    else:
        cols = (table.lengths, table.holonomies,
                table.multiplicities.astype(float), table.root_lengths)
    size = cols[0].size
    if size == 0:
        return SumValue(0.0, complete)
    bounds = [(s, min(s + CHUNK, size)) for s in range(0, size, CHUNK)]

    def run(b):
        return _terms(spec, *(c[b[0]:b[1]] for c in cols))

    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(run, bounds))
    else:
        parts = [run(b) for b in bounds]
    terms = np.concatenate(parts)
    return SumValue(complex(math.fsum(terms.real), math.fsum(terms.imag)), complete)


def _window(window):
    return SharpInterval(0.0, float(window)) if isinstance(window, (int, float)) else window


def T_cos(table, n, window, threads=1):
    return weighted_sum(table, SumSpec("trace_weight", "all", _window(window), "cos", n), threads)


def T_sin(table, n, window, threads=1):
    return weighted_sum(table, SumSpec("trace_weight", "all", _window(window), "sin", n), threads)


def T_sum(table, n, window, primitive=False, threads=1):
    filt = "primitive_only" if primitive else "all"
    return weighted_sum(table, SumSpec("trace_weight", filt, _window(window), "exp", n), threads)


def S_sum(table, n, window, primitive=False, threads=1):
    filt = "primitive_only" if primitive else "all"
    return weighted_sum(table, SumSpec("exp_weight", filt, _window(window), "exp", n), threads)


def char_sum(table, n, window, threads=1):
    """Holonomy character sum over primitive classes."""
    return weighted_sum(table, SumSpec("unit", "primitive_only", _window(window), "exp", n), threads)


def ambient_count(table, lengths, holonomies):
    """Primitive classes (with multiplicity) in a closed length x holonomy box.

    ``holonomies`` is an Arc or a (start, end) pair and may wrap past pi.
    """
    win = _window(lengths) if not isinstance(lengths, tuple) else SharpInterval(*lengths)
    arc = holonomies if isinstance(holonomies, Arc) else Arc(*holonomies)
    v = weighted_sum(table, SumSpec("unit", "primitive_only", win, arc))
    return int(round(v.real))


def boundary_length_sum(table, y, eta):
    """Trace-weighted sum over all classes with y - eta <= length <= y + eta."""
    if not eta > 0:
        raise ValueError("eta must be positive")
    v = weighted_sum(table, SumSpec("trace_weight", "all", SharpInterval(y - eta, y + eta), "one"))
    return v.real


def boundary_holonomy_sum(table, y, theta0, etaprime):
    """Trace-weighted sum over length <= y and holonomy within etaprime of +-theta0."""
    if not 0 < etaprime <= TWO_PI:
        raise ValueError("etaprime must lie in (0, 2pi]")
    v = weighted_sum(table, SumSpec("trace_weight", "all", SharpInterval(0.0, y),
                                    SymmetricArc(theta0, etaprime)))
    return v.real


def imprimitive_gap_closed_form(root_length, root_holonomy, n, y):
    """Powers k >= 2 of one primitive class: S - S^P in closed form."""
    k = np.arange(2, int(math.floor(y / root_length + 1e-12)) + 1)
    terms = k * root_length * np.exp(-k * root_length) * np.exp(1j * n * k * root_holonomy)
    return complex(math.fsum(terms.real), math.fsum(terms.imag))
