"""Command line interface: ``python -m holospec <command> [flags]``.

Exit codes: 0 success, 2 invalid input or usage, 3 incomplete spectrum
under ``--strict``.
"""
import argparse
import csv
import io
import math
import sys
import warnings

from . import cutoffs, diagnostics, enumeration, io as hio, sums, trace_formula
from .errors import HolospecError, IncompleteSpectrumWarning
from .measures import ManifoldConstants
from .spectrum import SpectrumTable

EXIT_OK, EXIT_INVALID, EXIT_INCOMPLETE = 0, 2, 3


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated reals, got %r" % text)


def _ints(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers, got %r" % text)


def _positive(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--strict", action="store_true",
                        help="exit 3 when the spectrum is incomplete for the request")

    spec = argparse.ArgumentParser(add_help=False)
    spec.add_argument("--spectrum", required=True)

    p = argparse.ArgumentParser(prog="holospec", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("enumerate", parents=[common], help="enumerate a word ball and build a spectrum")
    c.add_argument("--presentation", required=True)
    c.add_argument("--max-word-len", type=int, required=True)
    c.add_argument("--y", type=_positive, required=True)
    c.add_argument("--tol", type=_positive, default=1e-9)
    c.add_argument("--complete", action="store_true", help="assert the ball covers all lengths <= y")
    c.add_argument("--identify-inverses", action="store_true")

    c = sub.add_parser("spectrum-check", parents=[common, spec], help="validate a spectrum file")

    c = sub.add_parser("charsum", parents=[common, spec], help="holonomy character sum")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--y", type=_positive, required=True)
    c.add_argument("--eta", type=_positive, help="use the smooth cutoff instead of a sharp one")

    c = sub.add_parser("count", parents=[common, spec], help="primitive classes in a box")
    c.add_argument("--l-min", type=float, required=True)
    c.add_argument("--l-max", type=float, required=True)
    c.add_argument("--hol-min", type=float, required=True)
    c.add_argument("--hol-max", type=float, required=True)

    c = sub.add_parser("sums", parents=[common, spec], help="all named geodesic sums")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--y", type=_positive, required=True)
    c.add_argument("--eta", type=_positive)

    for name, helptext in (("tf-even", "even trace formula sides"), ("tf-odd", "odd trace formula sides")):
        c = sub.add_parser(name, parents=[common, spec], help=helptext)
        c.add_argument("--spectral-data")
        c.add_argument("--n", type=int, required=True)
        c.add_argument("--y", type=_positive, required=True)
        c.add_argument("--eta", type=_positive, required=True)
        c.add_argument("--lambda", dest="lam", type=float,
                       help="use the tilted cutoff with this lambda and t = y")
        c.add_argument("--vol", type=_positive, default=1.0)
        if name == "tf-even":
            c.add_argument("--alt", action="store_true", help="regrouped form with the star density")

    c = sub.add_parser("weyl-window", parents=[common], help="multiplicities in a window vs Plancherel")
    c.add_argument("--spectral-data", required=True)
    c.add_argument("--radius", type=float, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--vol", type=_positive, required=True)

    c = sub.add_parser("pgt", parents=[common, spec], help="prime count vs main term")
    c.add_argument("--spectral-data")
    c.add_argument("--y-grid", type=_floats, required=True)

    c = sub.add_parser("equidist", parents=[common, spec], help="holonomy discrepancy")
    c.add_argument("--y", type=_positive, required=True)
    c.add_argument("--grid-size", type=int, default=64)

    c = sub.add_parser("report", parents=[common, spec], help="all diagnostics in one document")
    c.add_argument("--spectral-data")
    c.add_argument("--y-grid", type=_floats, required=True)
    c.add_argument("--n", type=_ints, default=[1, 2])
    c.add_argument("--grid-size", type=int, default=64)
    return p


def _length_window(args):
    if getattr(args, "eta", None):
        return cutoffs.g_y_eta(args.y, args.eta)
    return args.y


def _sum_fields(v):
    return {"value": complex(v), "complete": v.complete}


def _spectral(args):
    return hio.read_spectral_data(args.spectral_data) if getattr(args, "spectral_data", None) else []


def _flat_row(result):
    keys, vals = [], []
    for k, v in result.items():
        if isinstance(v, dict):
            for k2, v2 in v.items():
                keys.append("%s_%s" % (k, k2))
                vals.append(v2)
        elif isinstance(v, complex):
            keys += [k + "_re", k + "_im"]
            vals += [v.real, v.imag]
        elif isinstance(v, list):
            keys.append(k)
            vals.append(";".join(str(x) for x in v))
        else:
            keys.append(k)
            vals.append(v)
    return keys, vals


def _to_csv(result):
    if isinstance(result, diagnostics.DiagnosticReport):
        return result.to_csv()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if "reports" in result:
        for r in result["reports"]:
            buf.write(r.to_csv())
        return buf.getvalue()
    keys, vals = _flat_row(result)
    w.writerow(keys)
    w.writerow([repr(v) if isinstance(v, float) else v for v in vals])
    return buf.getvalue()


def _render(result, fmt):
    if fmt == "csv":
        return _to_csv(result)
    if isinstance(result, diagnostics.DiagnosticReport):
        return result.to_json() + "\n"
    if "reports" in result:
        result = dict(result, reports=[r.as_dict() for r in result["reports"]])
    return diagnostics.dumps(result) + "\n"


def _run(args, state):
    cmd = args.command
    if cmd == "enumerate":
        pres = hio.read_presentation(args.presentation)
        table = enumeration.enumerate_spectrum(
            pres, args.max_word_len, args.y, args.tol, args.identify_inverses, args.complete)
        state["table"] = table
        if args.format == "csv":
            return hio.format_spectrum(table)
        return {"presentation": pres.name, "generators": len(pres.generators),
                "max_word_len": args.max_word_len, "y": args.y, "rows": len(table),
                "primitive_count": table.primitive_count, "systole": table.systole,
                "complete": table.complete, "undecided_pairs": table.undecided_pairs,
                "spectrum": hio.format_spectrum(table).splitlines()}

    if cmd == "weyl-window":
        count, term = trace_formula.weyl_window_report(
            _spectral(args), args.radius, args.n, ManifoldConstants(args.vol, 1.0))
        return {"radius": args.radius, "n": args.n, "count": count, "plancherel_term": term}

    table = hio.import_spectrum(args.spectrum)
    state["table"] = table
    if cmd == "spectrum-check":
        return {"rows": len(table), "classes": int(table.multiplicities.sum()),
                "primitive_count": table.primitive_count, "systole": table.systole,
                "horizon": table.horizon, "complete": table.complete}
    if cmd == "charsum":
        v = sums.char_sum(table, args.n, _length_window(args), args.threads)
        return dict({"n": args.n, "y": args.y, "eta": args.eta}, K=complex(v), complete=v.complete)
    if cmd == "count":
        if args.hol_max < args.hol_min:
            raise ValueError("--hol-max must be >= --hol-min")
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", IncompleteSpectrumWarning)
            c = sums.ambient_count(table, (args.l_min, args.l_max), (args.hol_min, args.hol_max))
        complete = table.complete and not caught
        for w in caught:
            warnings.warn_explicit(w.message, w.category, w.filename, w.lineno)
        return {"l_min": args.l_min, "l_max": args.l_max, "hol_min": args.hol_min,
                "hol_max": args.hol_max, "count": c, "complete": complete}
    if cmd == "sums":
        win = _length_window(args)
        n, th = args.n, args.threads
        out = {"n": n, "y": args.y, "eta": args.eta}
        for name, v in (("T_cos", sums.T_cos(table, n, win, th)),
                        ("T_sin", sums.T_sin(table, n, win, th)),
                        ("T", sums.T_sum(table, n, win, False, th)),
                        ("T_P", sums.T_sum(table, n, win, True, th)),
                        ("S", sums.S_sum(table, n, win, False, th)),
                        ("S_P", sums.S_sum(table, n, win, True, th)),
                        ("K", sums.char_sum(table, n, win, th))):
            out[name] = complex(v)
            out["complete"] = out.get("complete", True) and v.complete
        return out
    if cmd in ("tf-even", "tf-odd"):
        spectral = _spectral(args)
        mc = ManifoldConstants(args.vol, max(table.systole, 1e-300))
        if cmd == "tf-even":
            g = (cutoffs.g_lambda(args.y, args.eta, args.lam) if args.lam is not None
                 else cutoffs.g_y_eta(args.y, args.eta))
            rep = trace_formula.even_tf_sides(g, args.n, spectral, table, mc, args.alt, args.threads)
        else:
            h = (cutoffs.h_lambda(args.y, args.eta, args.lam) if args.lam is not None
                 else cutoffs.h_y_eta(args.y, args.eta))
            rep = trace_formula.odd_tf_sides(h, args.n, spectral, table, mc, args.threads)
        return dict({"n": args.n, "y": args.y, "eta": args.eta, "lambda": args.lam}, **rep.as_dict())
    comp = _spectral(args) if cmd in ("pgt", "report") else []
    if cmd == "pgt":
        return diagnostics.pgt_report(table, [d for d in comp if d.is_complementary], args.y_grid)
    if cmd == "equidist":
        d = diagnostics.equidist_discrepancy(table, args.y, args.grid_size)
        return {"y": args.y, "grid_size": args.grid_size, "discrepancy": d,
                "complete": table.complete and args.y <= table.horizon}
    if cmd == "report":
        ymax = max(args.y_grid)
        reps = [diagnostics.pgt_report(table, [d for d in comp if d.is_complementary], args.y_grid),
                diagnostics.charsum_cancellation_report(table, args.n, args.y_grid),
                diagnostics.primitivity_gap_report(table, args.n, args.y_grid)]
        try:
            disc = diagnostics.equidist_discrepancy(table, ymax, args.grid_size)
        except HolospecError:
            disc = None
        return {"y_max": ymax, "discrepancy": disc, "reports": reps}
    raise ValueError("unknown command %r" % cmd)


def _incomplete(result, table, caught):
    if caught:
        return True
    if isinstance(result, dict) and result.get("complete") is False:
        return True
    return table is not None and not table.complete


def run_command(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "threads", 1) < 1:
            parser.error("argument --threads: must be >= 1")
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 on --help
        return e.code if isinstance(e.code, int) else EXIT_INVALID
    state = {}
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", IncompleteSpectrumWarning)
            result = _run(args, state)
    except (HolospecError, ValueError, OSError) as e:
        print("holospec %s: error: %s" % (args.command, e), file=sys.stderr)
        return EXIT_INVALID
    caught = [w for w in caught if issubclass(w.category, IncompleteSpectrumWarning)]
    for w in caught:
        print("warning: %s" % w.message, file=sys.stderr)
    text = result if isinstance(result, str) else _render(result, args.format)
    if args.out and args.command != "enumerate":
        with open(args.out, "w") as fh:
            fh.write(text)
    elif args.command == "enumerate" and args.out:
        hio.export_spectrum(state["table"], args.out)
        sys.stdout.write(text)
    else:
        sys.stdout.write(text)
    if args.strict and _incomplete(result, state.get("table"), caught):
        print("holospec %s: incomplete spectrum for this request" % args.command, file=sys.stderr)
        return EXIT_INCOMPLETE
    return EXIT_OK


def main():
    sys.exit(run_command())
