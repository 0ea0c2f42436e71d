"""Desk-scale trend reports.

None of these certify the asymptotic statements; they tabulate observed
quantities over a grid and attach a verdict from a fixed, crude rule:

* fewer than two grid points in the upper half of the grid -> inconclusive;
* otherwise fit a least-squares line to the tracked column over the upper
  half and call the trend consistent when the slope is at most
  ``SLOPE_LIMIT`` and violated otherwise.

Report-specific guards (listed per function) can force "inconclusive".
"""
import csv
import io
import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .algebra import TWO_PI
from .errors import EmptySample, IncompleteSpectrumWarning
from .measures import ei_main_term
from .sums import S_sum, T_sum, char_sum

SLOPE_LIMIT = 0.1


@dataclass
class DiagnosticReport:
    name: str
    inputs: dict
    columns: list
    rows: list
    fitted: dict = field(default_factory=dict)
    verdict: str = "inconclusive"
    caveats: list = field(default_factory=list)

    def as_dict(self):
        return {
            "name": self.name,
            "inputs": self.inputs,
            "columns": self.columns,
            "rows": self.rows,
            "fitted": self.fitted,
            "verdict": self.verdict,
            "caveats": self.caveats,
        }

    def to_json(self):
        return dumps(self.as_dict())

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow([fmt_float(v) if isinstance(v, float) else v for v in r])
        return buf.getvalue()


def fmt_float(x):
    return repr(float(x))


def _jsonable(obj):
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return _jsonable(obj.item())
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


def dumps(obj):
    """JSON with insertion-ordered keys and complex numbers as {re, im}."""
    return json.dumps(_jsonable(obj), indent=2)


def _upper_half(xs, ys):
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    order = np.argsort(xs, kind="stable")
    xs, ys = xs[order], ys[order]
    k = xs.size // 2
    return xs[k:], ys[k:]


def slope_verdict(xs, ys, limit=SLOPE_LIMIT):
    """(verdict, slope) for the fixed least-squares rule on the upper half."""
    xs, ys = _upper_half(xs, ys)
    if xs.size < 2 or np.ptp(xs) == 0:
        return "inconclusive", None
    slope = float(np.polyfit(xs, ys, 1)[0])
    return ("consistent" if slope <= limit else "violated"), slope


def _horizon_caveat(table, grid, caveats):
    if max(grid) > table.horizon:
        warnings.warn("grid reaches past the table horizon", IncompleteSpectrumWarning, stacklevel=3)
        caveats.append("grid exceeds table horizon %.6g; counts there are lower bounds" % table.horizon)
    if not table.complete:
        caveats.append("spectrum table is not certified complete")


def pgt_report(table, comp=(), y_grid=()):
    """Primitive count against the integrated main term.

    Extra guard: inconclusive unless count/main at the largest y lies in
    [0.5, 2] (otherwise the table is too thin for the comparison to mean
    anything).  Tracked column: |normalized|.
    """
    grid = [float(y) for y in y_grid]
    if not grid:
        raise ValueError("empty y grid")
    caveats = ["verdict from a least-squares slope rule; not a proof of the error exponent"]
    _horizon_caveat(table, grid, caveats)
    rows = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IncompleteSpectrumWarning)
        for y in grid:
            count = char_sum(table, 0, y).real
            main = ei_main_term(y, 2.0, comp)
            gap = count - main
            rows.append([y, count, main, gap, gap * y * math.exp(-5.0 * y / 3.0)])
    ys = [r[0] for r in rows]
    verdict, slope = slope_verdict(ys, [abs(r[4]) for r in rows])
    last = max(rows, key=lambda r: r[0])
    ratio = last[1] / last[2] if last[2] > 0 else float("inf")
    if not 0.5 <= ratio <= 2.0:
        verdict = "inconclusive"
        caveats.append("count/main at largest y is %.3g, outside [0.5, 2]" % ratio)
    return DiagnosticReport(
        "pgt",
        {"y_grid": grid, "complementary": [[d.nu.real, d.multiplicity] for d in comp],
         "horizon": table.horizon},
        ["y", "count", "main", "gap", "normalized"],
        rows,
        {"slope_abs_normalized": slope, "sup_abs_normalized": max(abs(r[4]) for r in rows),
         "count_over_main": ratio},
        verdict,
        caveats,
    )


def _arc_extremes(samples, weights, total, grid_size):
    # A(e) = mass in [0, e] / total - e/2pi and B(e) = mass in [0, e) / total - e/2pi
    cand = np.concatenate([samples, TWO_PI * np.arange(grid_size) / grid_size])
    cand = np.unique(cand)
    order = np.argsort(samples, kind="stable")
    s = samples[order]
    cw = np.concatenate([[0.0], np.cumsum(weights[order])])
    le = cw[np.searchsorted(s, cand, side="right")] / total
    lt = cw[np.searchsorted(s, cand, side="left")] / total
    base = cand / TWO_PI
    A = le - base
    B = lt - base
    return max(A.max() - B.min(), B.max() - A.min())


def equidist_discrepancy(table, y, grid_size=64):
    """Sup over closed arcs with candidate endpoints of |fraction - length/2pi|.

    Candidates are the sample holonomies and a uniform grid of ``grid_size``
    points.  Primitive classes with length <= y, counted with multiplicity.
    """
    if grid_size < 8:
        raise ValueError("grid_size must be >= 8")
    sel = table.primitive & (table.lengths <= y)
    if not np.any(sel):
        raise EmptySample("no primitive classes with length <= %g" % y)
    theta = np.remainder(table.holonomies[sel], TWO_PI)
    theta = np.where(theta >= TWO_PI, 0.0, theta)
    w = table.multiplicities[sel].astype(float)
    return float(_arc_extremes(theta, w, w.sum(), grid_size))


def charsum_cancellation_report(table, n_list, y_grid):
    """|K_n(y)| against exp(5y/3)/y + n^2 exp(y).

    Tracked column per n: ratio divided by its maximum over the grid.  The
    overall verdict is the worst over n (violated > inconclusive > consistent)
    and inconclusive when every ratio is zero.
    """
    grid = [float(y) for y in y_grid]
    ns = [int(n) for n in n_list]
    if any(n == 0 for n in ns):
        raise ValueError("n = 0 is the prime count, not a character sum")
    caveats = ["envelope constants are not known; only the trend is reported"]
    _horizon_caveat(table, grid, caveats)
    rows = []
    fitted = {}
    verdicts = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IncompleteSpectrumWarning)
        for n in ns:
            ratios = []
            for y in grid:
                k = complex(char_sum(table, n, y))
                k0 = char_sum(table, 0, y).real
                env = math.exp(5 * y / 3) / y + n * n * math.exp(y)
                r = abs(k) / env
                ratios.append(r)
                rows.append([n, y, k.real, k.imag, abs(k), k0, env, r])
            top = max(ratios)
            fitted["sup_ratio_n=%d" % n] = top
            if top == 0:
                verdicts.append("inconclusive")
                continue
            v, slope = slope_verdict(grid, [r / top for r in ratios])
            fitted["slope_n=%d" % n] = slope
            verdicts.append(v)
    verdict = _worst(verdicts)
    return DiagnosticReport(
        "charsum",
        {"n_list": ns, "y_grid": grid, "horizon": table.horizon},
        ["n", "y", "re_K", "im_K", "abs_K", "K0", "envelope", "ratio"],
        rows, fitted, verdict, caveats,
    )


def _worst(verdicts):
    for v in ("violated", "inconclusive", "consistent"):
        if v in verdicts:
            return v
    return "inconclusive"


def primitivity_gap_report(table, n_list, y_grid):
    """|S - S^P|, |S^P - T^P| and |T^P - T| over the grid, each divided by y.

    Tracked column: the largest of the three normalized gaps.
    """
    grid = [float(y) for y in y_grid]
    ns = [int(n) for n in n_list]
    caveats = ["power_index data is taken from the table as given"]
    _horizon_caveat(table, grid, caveats)
    rows = []
    worst = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IncompleteSpectrumWarning)
        for n in ns:
            for y in grid:
                s = complex(S_sum(table, n, y))
                sp = complex(S_sum(table, n, y, primitive=True))
                tp = complex(T_sum(table, n, y, primitive=True))
                t = complex(T_sum(table, n, y))
                g1, g2, g3 = abs(s - sp), abs(sp - tp), abs(tp - t)
                rows.append([n, y, g1, g2, g3, g1 / y, g2 / y, g3 / y])
                worst.append((y, max(g1, g2, g3) / y))
    fitted = {
        "sup_S_minus_SP_over_y": max(r[5] for r in rows),
        "sup_SP_minus_TP_over_y": max(r[6] for r in rows),
        "sup_TP_minus_T_over_y": max(r[7] for r in rows),
    }
    verdict, slope = slope_verdict([w[0] for w in worst], [w[1] for w in worst])
    fitted["slope"] = slope
    return DiagnosticReport(
        "primitivity_gap",
        {"n_list": ns, "y_grid": grid, "horizon": table.horizon},
        ["n", "y", "S_minus_SP", "SP_minus_TP", "TP_minus_T",
         "S_minus_SP_over_y", "SP_minus_TP_over_y", "TP_minus_T_over_y"],
        rows, fitted, verdict, caveats,
    )
