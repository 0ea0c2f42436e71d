"""Geodesic classes and the complex length spectrum table."""
import math
from dataclasses import dataclass

import numpy as np

from .algebra import TWO_PI, reduce_angle
from .errors import InvariantViolation

LENGTH_TOL = 1e-8


@dataclass(frozen=True)
class GeodesicClass:
    length: float
    holonomy: float
    multiplicity: int = 1
    primitive: bool = True
    root_length: float = None
    power_index: int = 1

    def __post_init__(self):
        if self.root_length is None:
            object.__setattr__(self, "root_length", self.length / self.power_index)

    def check(self, row=None):
        if not self.length > 0:
            raise InvariantViolation("length must be positive", row, "length")
        if not -math.pi < self.holonomy <= math.pi:
            raise InvariantViolation("holonomy outside (-pi, pi]", row, "holonomy")
        if self.multiplicity < 1:
            raise InvariantViolation("multiplicity must be >= 1", row, "multiplicity")
        if self.power_index < 1:
            raise InvariantViolation("power_index must be >= 1", row, "power_index")
        if not self.root_length > 0:
            raise InvariantViolation("root_length must be positive", row, "root_length")
        if abs(self.length - self.power_index * self.root_length) > LENGTH_TOL * max(1.0, self.length):
            raise InvariantViolation("length != power_index * root_length", row, "power")
        if self.primitive != (self.power_index == 1):
            raise InvariantViolation("primitive flag disagrees with power_index", row, "primitive")


class SpectrumTable:
    """Sorted multiset of geodesic classes up to a length horizon.

    Columns are kept as numpy arrays; ``classes`` materializes records.
    """

    def __init__(self, lengths=(), holonomies=(), multiplicities=None,
                 primitive=None, root_lengths=None, power_indices=None,
                 horizon=None, systole=None, complete=False, validate=True):
        lengths = np.asarray(lengths, dtype=float).reshape(-1)
        n = lengths.size
        holonomies = np.asarray(holonomies, dtype=float).reshape(-1)
        if power_indices is None:
            power_indices = np.ones(n, dtype=np.int64)
        power_indices = np.asarray(power_indices, dtype=np.int64).reshape(-1)
        if multiplicities is None:
            multiplicities = np.ones(n, dtype=np.int64)
        multiplicities = np.asarray(multiplicities, dtype=np.int64).reshape(-1)
        if primitive is None:
            primitive = power_indices == 1
        primitive = np.asarray(primitive, dtype=bool).reshape(-1)
        if root_lengths is None:
            root_lengths = lengths / power_indices
        root_lengths = np.asarray(root_lengths, dtype=float).reshape(-1)
        for name, col in (("holonomies", holonomies), ("multiplicities", multiplicities),
                          ("primitive", primitive), ("root_lengths", root_lengths),
                          ("power_indices", power_indices)):
            if col.size != n:
                raise ValueError("column %s has %d entries, expected %d" % (name, col.size, n))

        order = np.lexsort((holonomies, lengths))
        self.lengths = lengths[order]
        self.holonomies = holonomies[order]
        self.multiplicities = multiplicities[order]
        self.primitive = primitive[order]
        self.root_lengths = root_lengths[order]
        self.power_indices = power_indices[order]
        for col in (self.lengths, self.holonomies, self.multiplicities, self.primitive,
                    self.root_lengths, self.power_indices):
            col.setflags(write=False)

        if horizon is None:
            horizon = float(self.lengths[-1]) if n else 0.0
        self.horizon = float(horizon)
        if systole is None:
            systole = float(self.lengths[0]) if n else self.horizon
        self.systole = float(systole)
        self.complete = bool(complete)
        if validate:
            self.validate()

    @classmethod
    def from_classes(cls, classes, **kw):
        classes = list(classes)
        return cls(
            [c.length for c in classes],
            [c.holonomy for c in classes],
            [c.multiplicity for c in classes],
            [c.primitive for c in classes],
            [c.root_length for c in classes],
            [c.power_index for c in classes],
            **kw,
        )

    @classmethod
    def empty(cls, horizon=0.0, complete=True):
        return cls(horizon=horizon, complete=complete)

    def __len__(self):
        return self.lengths.size

    def __iter__(self):
        return iter(self.classes)

    def __eq__(self, other):
        if not isinstance(other, SpectrumTable):
            return NotImplemented
        return (self.horizon == other.horizon and self.systole == other.systole
                and self.complete == other.complete
                and all(np.array_equal(a, b) for a, b in zip(self._columns(), other._columns())))

    def __repr__(self):
        return "SpectrumTable(%d classes, systole=%.6g, horizon=%.6g, complete=%s)" % (
            len(self), self.systole, self.horizon, self.complete)

    def _columns(self):
        return (self.lengths, self.holonomies, self.multiplicities, self.primitive,
                self.root_lengths, self.power_indices)

    @property
    def classes(self):
        return [
            GeodesicClass(float(l), float(t), int(m), bool(p), float(r), int(k))
            for l, t, m, p, r, k in zip(*self._columns())
        ]

    def validate(self):
        for i, c in enumerate(self.classes):
            c.check(i)
        if len(self) and self.systole > self.lengths[0] + LENGTH_TOL:
            raise InvariantViolation("systole exceeds the shortest class length", None, "systole")

    def select(self, mask):
        """Sub-table of the rows where ``mask`` is true (same horizon)."""
        mask = np.asarray(mask, dtype=bool)
        return SpectrumTable(
            self.lengths[mask], self.holonomies[mask], self.multiplicities[mask],
            self.primitive[mask], self.root_lengths[mask], self.power_indices[mask],
            horizon=self.horizon, systole=self.systole, complete=self.complete,
            validate=False,
        )

    def truncate(self, y):
        t = self.select(self.lengths <= y)
        t.horizon = min(self.horizon, float(y))
        return t

    @property
    def primitive_count(self):
        return int(self.multiplicities[self.primitive].sum())


def concatenate(tables, horizon=None, complete=None):
    tables = list(tables)
    cols = [np.concatenate([t._columns()[i] for t in tables]) for i in range(6)]
    if horizon is None:
        horizon = min(t.horizon for t in tables) if tables else 0.0
    if complete is None:
        complete = all(t.complete for t in tables)
    systole = min((t.systole for t in tables), default=None)
    return SpectrumTable(*cols, horizon=horizon, systole=systole, complete=complete)


def cyclic_table(root_length, root_holonomy, max_power=None, y=None, multiplicity=1):
    """Classes of the powers gamma^k of one primitive class, k = 1, 2, ...

    Give either ``max_power`` or a length cutoff ``y``.
    """
    if max_power is None:
        if y is None:
            raise ValueError("need max_power or y")
        max_power = int(math.floor(y / root_length + 1e-12))
    k = np.arange(1, max_power + 1)
    horizon = y if y is not None else max_power * root_length
    return SpectrumTable(
        k * root_length, reduce_angle(k * root_holonomy),
        np.full(k.size, multiplicity), k == 1, np.full(k.size, float(root_length)), k,
        horizon=horizon, systole=root_length, complete=True,
    )


GOLDEN_ANGLE = TWO_PI * (1.0 - 2.0 / (1.0 + math.sqrt(5.0)))


def golden_angle_table(count, length_step=0.01, start=1.0, angle=GOLDEN_ANGLE):
    """``count`` primitive classes with holonomies k * angle mod 2pi.

    A synthetic low-discrepancy holonomy sample, not the spectrum of any
    actual group.
    """
    k = np.arange(1, count + 1)
    lengths = start + length_step * (k - 1)
    return SpectrumTable(
        lengths, reduce_angle(k * angle), horizon=float(lengths[-1]) if count else start,
        complete=True,
    )
