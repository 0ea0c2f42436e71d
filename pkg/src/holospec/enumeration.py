"""Word-ball enumeration of group elements and spectrum construction.

Conjugacy inside a bucket of equal complex length is decided by searching
for a conjugator in the enumerated ball.  Pairs with no conjugator found are
kept as distinct classes and counted in ``SpectrumTable.undecided_pairs``;
at desk scale this can overcount classes that share a complex length.
"""
import logging
import math
import string
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    CanonicalElement,
    ElementClass,
    angle_distance,
    canonicalize,
    classify,
    complex_length,
)
from .errors import ExplosionLimit, NonUnitDeterminant
from .spectrum import SpectrumTable

log = logging.getLogger(__name__)

DEFAULT_CAP = 10 ** 7
BUCKET_TOL = 1e-7


@dataclass
class GroupPresentation:
    generators: list
    name: str = ""
    source: str = "inline"
    letters: str = field(default="", repr=False)

    def __post_init__(self):
        if not self.generators:
            raise ValueError("presentation needs at least one generator")
        if len(self.generators) > 26:
            raise ValueError("at most 26 generators are supported")
        gens = []
        for i, g in enumerate(self.generators):
            m = np.asarray(g.matrix() if isinstance(g, CanonicalElement) else g, dtype=complex)
            if m.shape != (2, 2):
                raise ValueError("generator %d is not a 2x2 matrix" % i)
            det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
            if abs(det - 1) > DEFAULT_TOL:
                raise NonUnitDeterminant("generator %d has |det - 1| = %.3g" % (i, abs(det - 1)))
            g = canonicalize(m)
            gens.append(CanonicalElement(*g.entries, word=string.ascii_lowercase[i]))
        self.generators = gens
        self.letters = string.ascii_lowercase[: len(gens)]

    def alphabet(self):
        """Generators followed by their inverses (upper-case letters)."""
        return self.generators + [g.inverse() for g in self.generators]


class ElementIndex:
    """Tolerance-aware set of PSL(2, C) elements.

    Elements are hashed by log of the sum of absolute entries (invariant
    under sign and inversion) on a coarse grid; lookups scan the neighbouring
    cells and compare entries within ``tol`` relative to their size.
    """

    CELL = 1e-6

    def __init__(self, tol=DEFAULT_TOL, identify_inverses=False):
        self.tol = tol
        self.identify_inverses = identify_inverses
        self.cells = {}
        self.size = 0

    def _cell(self, e):
        s = sum(abs(z) for z in e.entries)
        return int(math.floor(math.log(s) / self.CELL))

    def _same(self, e, f):
        ea = np.array(e.entries)
        scale = max(1.0, np.abs(ea).max())
        cands = [f.entries]
        if self.identify_inverses:
            cands.append(f.inverse().entries)
        for c in cands:
            c = np.array(c)
            if min(np.abs(ea - c).max(), np.abs(ea + c).max()) <= self.tol * scale:
                return True
        return False

    def find(self, e):
        k = self._cell(e)
        for j in (k - 1, k, k + 1):
            for f in self.cells.get(j, ()):
                if self._same(e, f):
                    return f
        return None

    def add(self, e):
        """Insert e unless an equal element is present; True if inserted."""
        if self.find(e) is not None:
            return False
        self.cells.setdefault(self._cell(e), []).append(e)
        self.size += 1
        return True

    def __len__(self):
        return self.size


def ball_enumerate(p, max_word_len, tol=DEFAULT_TOL, identify_inverses=False, cap=DEFAULT_CAP):
    """Non-identity elements of word length <= max_word_len, deduplicated.

    Elements come out in breadth-first order, each carrying a shortest
    witness word.  With ``identify_inverses`` an element and its inverse
    are reported once.
    """
    if max_word_len < 1:
        raise ValueError("max_word_len must be >= 1")
    alphabet = p.alphabet()
    ident = canonicalize(np.eye(2), word="")
    seen = ElementIndex(tol)
    seen.add(ident)
    reported = ElementIndex(tol, True) if identify_inverses else None
    if reported is not None:
        reported.add(ident)
    out = []
    layer = [ident]
    for _ in range(max_word_len):
        nxt = []
        for w in layer:
            last = w.word[-1] if w.word else None
            for s in alphabet:
                if last is not None and last == s.word.swapcase():
                    continue
                prod = w @ s
                if not seen.add(prod):
                    continue
                if len(seen) > cap:
                    raise ExplosionLimit("ball exceeded %d elements" % cap)
                nxt.append(prod)
                if reported is not None and not reported.add(prod):
                    continue
                out.append(prod)
        layer = nxt
        if not layer:
            break
    return out


def _stack(elements):
    return np.array([[[e.a, e.b], [e.c, e.d]] for e in elements], dtype=complex).reshape(-1, 2, 2)


class _Conjugator:
    def __init__(self, elements, tol):
        pool = [canonicalize(np.eye(2))]
        for e in elements:
            pool.append(e)
            pool.append(e.inverse())
        self.g = _stack(pool)
        inv = np.empty_like(self.g)
        inv[:, 0, 0] = self.g[:, 1, 1]
        inv[:, 0, 1] = -self.g[:, 0, 1]
        inv[:, 1, 0] = -self.g[:, 1, 0]
        inv[:, 1, 1] = self.g[:, 0, 0]
        self.ginv = inv
        self.tol = tol

    def conjugate(self, a, b, allow_inverse=False):
        """True if g a g^-1 = +-b (or +-b^-1) for some g in the pool."""
        conj = self.g @ a.matrix() @ self.ginv
        targets = [b.matrix()]
        if allow_inverse:
            targets.append(b.inverse().matrix())
        scale = np.max(np.abs(conj), axis=(1, 2))
        for t in targets:
            s = np.maximum(scale, np.abs(t).max())
            tol = 10 * self.tol * np.maximum(1.0, s)
            for sign in (1.0, -1.0):
                err = np.max(np.abs(conj - sign * t), axis=(1, 2))
                if np.any(err <= tol):
                    return True
        return False


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def _bucket(records, bucket_tol):
    """Group (length, holonomy, element) records by complex length."""
    records = sorted(records, key=lambda r: (r[0], r[1]))
    buckets = []
    i = 0
    while i < len(records):
        j = i
        start = records[i][0]
        while j < len(records) and records[j][0] - start <= bucket_tol * max(1.0, start):
            j += 1
        sub = []
        for r in records[i:j]:
            for b in sub:
                if angle_distance(b[0][1], r[1]) <= bucket_tol:
                    b.append(r)
                    break
            else:
                sub.append([r])
        buckets.extend(sub)
        i = j
    return buckets


def build_spectrum(elements, y, tol=DEFAULT_TOL, bucket_tol=BUCKET_TOL, complete=None,
                   identify_inverses=False):
    """Complex length spectrum table of the given elements up to length y.

    ``complete`` asserts that the enumeration covers every class with
    length <= y; it is never certified automatically.  An empty element
    set gives an empty, complete table.  Pass ``identify_inverses=True``
    when the elements came from ``ball_enumerate(..., identify_inverses=True)``
    so that conjugacy tests also accept the inverse.
    """
    if y <= 0:
        raise ValueError("y must be positive")
    elements = list(elements)
    if complete is None:
        complete = not elements
    records = []
    for e in elements:
        if classify(e, tol) not in (ElementClass.HYPERBOLIC, ElementClass.LOXODROMIC):
            continue
        cl = complex_length(e, tol)
        if cl.length <= y:
            records.append((cl.length, cl.holonomy, e))
    buckets = _bucket(records, bucket_tol)
    conj = _Conjugator(elements, tol)

    # conjugacy classes inside each bucket
    classes = []  # [length, holonomy, representative, bucket index]
    undecided = 0
    for bi, bucket in enumerate(buckets):
        uf = _UnionFind(len(bucket))
        for i in range(len(bucket)):
            for j in range(i + 1, len(bucket)):
                if uf.find(i) == uf.find(j):
                    continue
                if conj.conjugate(bucket[i][2], bucket[j][2], identify_inverses):
                    uf.union(i, j)
        roots = sorted({uf.find(i) for i in range(len(bucket))})
        undecided += len(roots) * (len(roots) - 1) // 2
        for r in roots:
            length, hol, rep = bucket[r]
            classes.append([length, hol, rep, bi])
    if undecided:
        log.warning("%d same-length class pairs left undecided (kept distinct)", undecided)

    by_bucket = {}
    for ci, c in enumerate(classes):
        by_bucket.setdefault(c[3], []).append(ci)
    power = [1] * len(classes)
    root = [c[0] for c in classes]
    bucket_of = {}
    for bi, bucket in enumerate(buckets):
        bucket_of[bi] = (bucket[0][0], bucket[0][1])

    def find_bucket(length, hol):
        for bi, (bl, bh) in bucket_of.items():
            if abs(bl - length) <= bucket_tol * max(1.0, length) * 10 and angle_distance(bh, hol) <= 10 * bucket_tol:
                return bi
        return None

    order = sorted(range(len(classes)), key=lambda i: (classes[i][0], classes[i][1]))
    for ci in order:
        if power[ci] != 1:
            continue
        length, _, rep, _ = classes[ci]
        k = 2
        while k * length <= y * (1 + 1e-12):
            pk = rep.power(k)
            cl = complex_length(pk, tol)
            bi = find_bucket(cl.length, cl.holonomy)
            if bi is not None:
                cands = by_bucket[bi]
                target = None
                if len(cands) == 1:
                    target = cands[0]
                else:
                    for cj in cands:
                        if conj.conjugate(pk, classes[cj][2], identify_inverses):
                            target = cj
                            break
                    if target is None:
                        undecided += 1
                if target is not None and power[target] == 1 and target != ci:
                    power[target] = k
                    root[target] = length
            k += 1

    rows = {}
    for ci, c in enumerate(classes):
        key = (c[3], power[ci])
        if key in rows:
            rows[key][2] += 1
        else:
            rows[key] = [c[0], c[1], 1, power[ci] == 1, root[ci], power[ci]]
    cols = list(zip(*rows.values())) if rows else [()] * 6
    table = SpectrumTable(*cols, horizon=float(y), complete=bool(complete))
    table.undecided_pairs = undecided
    return table


def enumerate_spectrum(p, max_word_len, y, tol=DEFAULT_TOL, identify_inverses=False,
                       complete=False, cap=DEFAULT_CAP):
    elements = ball_enumerate(p, max_word_len, tol, identify_inverses, cap)
    return build_spectrum(elements, y, tol, complete=complete,
                          identify_inverses=identify_inverses)
