"""Text formats: presentations, spectrum tables, spectral data."""
import csv
import math
from pathlib import Path

import numpy as np

from .enumeration import GroupPresentation
from .errors import InvariantViolation, ParseError
from .measures import SpectralDatum
from .spectrum import GeodesicClass, SpectrumTable

SPECTRUM_HEADER = ["length", "holonomy", "multiplicity", "primitive", "root_length", "power_index"]
SPECTRAL_HEADER = ["re_nu", "im_nu", "p", "multiplicity"]


def fmt(x):
    return "%.17g" % x


def read_presentation(path, name=None):
    """One generator per line as 8 reals (Re/Im of a, b, c, d); '#' comments."""
    path = Path(path)
    gens = []
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) != 8:
            raise ParseError("expected 8 reals, got %d" % len(parts), lineno)
        vals = []
        for i, p in enumerate(parts):
            try:
                vals.append(float(p))
            except ValueError:
                raise ParseError("not a real number: %r" % p, lineno, i) from None
        gens.append((np.array(vals[0::2]) + 1j * np.array(vals[1::2])).reshape(2, 2))
    if not gens:
        raise ParseError("no generators found")
    return GroupPresentation(gens, name=name or path.stem, source=str(path))


def write_presentation(p, path):
    lines = ["# %s" % (p.name or "presentation")]
    for g in p.generators:
        lines.append(" ".join(fmt(v) for z in g.entries for v in (z.real, z.imag)))
    Path(path).write_text("\n".join(lines) + "\n")


def format_spectrum(table):
    out = [",".join(SPECTRUM_HEADER),
           "#horizon=" + fmt(table.horizon),
           "#systole=" + fmt(table.systole),
           "#complete=" + ("true" if table.complete else "false")]
    for l, t, m, p, r, k in zip(*table._columns()):
        out.append(",".join([fmt(l), fmt(t), str(int(m)), "true" if p else "false", fmt(r), str(int(k))]))
    return "\n".join(out) + "\n"


def export_spectrum(table, path):
    Path(path).write_text(format_spectrum(table))


def _parse_bool(s, lineno, field):
    v = s.strip().lower()
    if v in ("true", "1"):
        return True
    if v in ("false", "0"):
        return False
    raise ParseError("not a boolean: %r" % s, lineno, field)


def parse_spectrum(text):
    lines = text.splitlines()
    if not lines or [h.strip() for h in lines[0].split(",")] != SPECTRUM_HEADER:
        raise ParseError("bad header, expected %s" % ",".join(SPECTRUM_HEADER), 1)
    meta = {}
    rows = []
    for lineno, line in enumerate(lines[1:], 2):
        s = line.strip()
        if not s:
            continue
        if s.startswith("#"):
            key, sep, val = s[1:].partition("=")
            if sep:
                meta[key.strip()] = (val.strip(), lineno)
            continue
        parts = s.split(",")
        if len(parts) != 6:
            raise ParseError("expected 6 fields, got %d" % len(parts), lineno)
        try:
            l, t = float(parts[0]), float(parts[1])
        except ValueError:
            raise ParseError("bad float", lineno, "length/holonomy") from None
        try:
            m = int(parts[2])
        except ValueError:
            raise ParseError("bad integer", lineno, "multiplicity") from None
        prim = _parse_bool(parts[3], lineno, "primitive")
        try:
            r = float(parts[4])
        except ValueError:
            raise ParseError("bad float", lineno, "root_length") from None
        try:
            k = int(parts[5])
        except ValueError:
            raise ParseError("bad integer", lineno, "power_index") from None
        c = GeodesicClass(l, t, m, prim, r, k)
        c.check(len(rows))
        if not math.isfinite(l):
            raise InvariantViolation("length must be finite", len(rows), "length")
        rows.append(c)

    def metaval(key, conv):
        if key not in meta:
            return None
        val, lineno = meta[key]
        try:
            return conv(val)
        except ValueError:
            raise ParseError("bad metadata value %r" % val, lineno, key) from None

    horizon = metaval("horizon", float)
    systole = metaval("systole", float)
    complete = meta.get("complete")
    complete = _parse_bool(complete[0], complete[1], "complete") if complete else None
    if complete is None:
        complete = not rows and horizon is not None
    return SpectrumTable.from_classes(rows, horizon=horizon, systole=systole, complete=complete)


def import_spectrum(path):
    return parse_spectrum(Path(path).read_text())


def format_spectral_data(data):
    out = [",".join(SPECTRAL_HEADER)]
    for d in data:
        out.append(",".join([fmt(d.nu.real), fmt(d.nu.imag), str(d.p), str(d.multiplicity)]))
    return "\n".join(out) + "\n"


def write_spectral_data(data, path):
    Path(path).write_text(format_spectral_data(data))


def read_spectral_data(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != SPECTRAL_HEADER:
            raise ParseError("bad header, expected %s" % ",".join(SPECTRAL_HEADER), 1)
        out = []
        for lineno, row in enumerate(reader, 2):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if len(row) != 4:
                raise ParseError("expected 4 fields, got %d" % len(row), lineno)
            try:
                nu = complex(float(row[0]), float(row[1]))
            except ValueError:
                raise ParseError("bad float", lineno, "nu") from None
            try:
                p, m = int(row[2]), int(row[3])
            except ValueError:
                raise ParseError("bad integer", lineno, "p/multiplicity") from None
            try:
                out.append(SpectralDatum(nu, p, m))
            except ValueError as e:
                raise ParseError(str(e), lineno) from None
        return out
