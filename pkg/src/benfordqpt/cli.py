"""Command-line front end.

Subcommands write CSV to ``--out`` (or stdout):

    observables  a_over_J,mz,cxx,cyy,czz,entropy,log_negativity
    scan         center,delta
    histogram    digit,count,relative_frequency,benford_expected
    detect       field,value   (plus a summary on stderr)
    finite       n,center,delta
    analyze      digit,count,relative_frequency,benford_expected,deviation
                 or, with --index-column, window_start,delta

Exit codes: 0 success or detection, 1 usage/input error, 2 numerical or
degenerate-sample error, 3 no transition detected.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import logging
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import benford, quantum_state, scanner
from .exceptions import BenfordQPTError, DegenerateSampleError, DomainError, QuadratureError
from .quadrature import QuadratureConfig
from .xy_model import FiniteChainSpec, ObservableKind, moments_many

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_NO_DETECTION = 3

log = logging.getLogger("benfordqpt")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    gamma: float = 1.0
    quantity: ObservableKind = ObservableKind.MZ
    range: tuple = (0.2, 2.0)
    window_width: float = 0.2
    raw_samples: int = 1998
    shift: float = 0.05
    output_path: str | None = None
    seed: int | None = None
    tol: float = 1e-10
    jobs: int = 1

    def window_spec(self):
        return scanner.WindowSpec(self.window_width, self.raw_samples, self.shift, self.seed)

    def quad_config(self):
        return QuadratureConfig(abs_tol=self.tol)


def _fmt(value):
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    value = float(value)
    return "nan" if math.isnan(value) else format(value, ".15g")


def parse_range(text):
    try:
        lo, hi = (float(p) for p in str(text).split(":"))
    except ValueError:
        raise UsageError(f"range must look like LO:HI, got {text!r}") from None
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise UsageError(f"range bounds must be finite, got {text!r}")
    return lo, hi


def parse_int_list(text):
    try:
        return [int(p) for p in str(text).split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def read_config_file(path):
    """Read ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (p.strip() for p in line.split("=", 1))
            values[key.replace("-", "_")] = value
    return values


_CONFIG_KEYS = {
    "gamma": float,
    "quantity": str,
    "range": str,
    "window": float,
    "samples": int,
    "shift": float,
    "out": str,
    "seed": int,
    "tol": float,
    "jobs": int,
}


def build_config(args, window_default=0.2):
    """Merge flags, the optional config file, and defaults (in that priority)."""
    from_file = read_config_file(args.config) if getattr(args, "config", None) else {}
    unknown = set(from_file) - set(_CONFIG_KEYS)
    if unknown:
        raise UsageError(f"unknown config key(s): {', '.join(sorted(unknown))}")

    def pick(name, default):
        flag = getattr(args, name, None)
        if flag is not None:
            return flag
        if name in from_file:
            try:
                return _CONFIG_KEYS[name](from_file[name])
            except ValueError:
                raise UsageError(f"bad config value for {name}: {from_file[name]!r}") from None
        return default

    try:
        quantity = ObservableKind.parse(pick("quantity", "mz"))
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    rng = pick("range", "0.2:2.0")
    cfg = RunConfig(
        gamma=pick("gamma", 1.0),
        quantity=quantity,
        range=parse_range(rng) if isinstance(rng, str) else rng,
        window_width=pick("window", window_default),
        raw_samples=pick("samples", 1998),
        shift=pick("shift", 0.05),
        output_path=pick("out", None),
        seed=pick("seed", None),
        tol=pick("tol", 1e-10),
        jobs=pick("jobs", 1),
    )
    try:
        cfg.window_spec()
        cfg.quad_config()
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    return cfg


@contextlib.contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def cmd_observables(cfg: RunConfig, points: int = 91):
    lo, hi = cfg.range
    if points < 1 or hi < lo or lo < 0:
        raise UsageError("observables need 0 <= LO <= HI and at least one point")
    fields = np.round(np.linspace(lo, hi, points), 12)
    m = moments_many(cfg.gamma, fields, cfg.quad_config())
    czz = m["mz"] ** 2 - m["g+"] * m["g-"]
    entropy = quantum_state.single_site_entropy_many(m["mz"])
    logneg = quantum_state.log_negativity_many(m["mz"], m["g-"], m["g+"], czz)
    with _open_out(cfg.output_path) as fh:
        w = _writer(fh)
        w.writerow(["a_over_J", "mz", "cxx", "cyy", "czz", "entropy", "log_negativity"])
        for row in zip(fields, m["mz"], m["g-"], m["g+"], czz, entropy, logneg):
            w.writerow([_fmt(v) for v in row])


def _write_skipped(fh, result):
    for center, reason in result.skipped:
        fh.write(f"# skipped center={_fmt(center)}: {reason}\n")


def cmd_scan(cfg: RunConfig):
    result = scanner.scan(
        cfg.quantity, cfg.gamma, cfg.range, cfg.window_spec(), cfg.quad_config(), n_jobs=cfg.jobs
    )
    with _open_out(cfg.output_path) as fh:
        _write_skipped(fh, result)
        w = _writer(fh)
        w.writerow(["center", "delta"])
        for center, delta in result.points:
            w.writerow([_fmt(center), _fmt(delta)])
    return result


def cmd_histogram(cfg: RunConfig, interval):
    hist = scanner.window_histogram(
        cfg.quantity, cfg.gamma, interval, cfg.raw_samples, cfg.quad_config()
    )
    freqs = hist.relative_frequencies()
    with _open_out(cfg.output_path) as fh:
        w = _writer(fh)
        w.writerow(["digit", "count", "relative_frequency", "benford_expected"])
        for d, c, f, p in zip(benford.DIGITS, hist.as_array(), freqs, benford.BENFORD_PROBABILITIES):
            w.writerow([d, int(c), _fmt(f), _fmt(p)])
    return hist


def read_curve(path):
    """Read a ``center,delta`` CSV as written by ``scan``."""
    points = []
    with open(path, newline="") as fh:
        rows = csv.DictReader(line for line in fh if not line.startswith("#"))
        if rows.fieldnames is None or not {"center", "delta"} <= set(rows.fieldnames):
            raise UsageError(f"{path}: expected columns center,delta")
        for lineno, row in enumerate(rows, 2):
            try:
                points.append((float(row["center"]), float(row["delta"])))
            except (TypeError, ValueError):
                raise UsageError(f"{path}:{lineno}: non-numeric entry") from None
    points.sort()
    return scanner.ScanResult(ObservableKind.MZ, math.nan, tuple(points))


def cmd_detect(cfg, curve_path=None, chain=None, plateau_margin=None, edge_exclusion=0.3):
    if curve_path is not None:
        result = read_curve(curve_path)
    else:
        result = scanner.scan(
            cfg.quantity, cfg.gamma, cfg.range, cfg.window_spec(), cfg.quad_config(),
            chain=chain, n_jobs=cfg.jobs,
        )
    report = scanner.detect_transition(result, plateau_margin, edge_exclusion)
    with _open_out(cfg.output_path) as fh:
        w = _writer(fh)
        w.writerow(["field", "value"])
        w.writerow(["candidate", _fmt(report.candidate)])
        w.writerow(["derivative_extremum", _fmt(report.derivative_extremum)])
        w.writerow(["plateau_before", _fmt(report.plateau_before)])
        w.writerow(["plateau_after", _fmt(report.plateau_after)])
        w.writerow(["plateau_distinct", str(report.plateau_distinct).lower()])
        w.writerow(["excursion", _fmt(report.excursion)])
    if report.detected:
        print(f"transition detected at a/J = {report.candidate:.4g} "
              f"(plateaus {report.plateau_before:.4g} -> {report.plateau_after:.4g})", file=sys.stderr)
    else:
        print("no transition detected", file=sys.stderr)
    return report


def cmd_finite(cfg: RunConfig, n_list, momenta="half", allow_odd=False):
    chains = []
    for n in n_list:
        if n % 2 and not allow_odd:
            raise UsageError(f"chain length {n} is odd; pass --allow-odd to accept it")
        try:
            chains.append(FiniteChainSpec(n, momenta=momenta, allow_odd=allow_odd))
        except DomainError as exc:
            raise UsageError(str(exc)) from None
    results = [
        scanner.scan(ObservableKind.MZ, cfg.gamma, cfg.range, cfg.window_spec(), chain=c, n_jobs=cfg.jobs)
        for c in chains
    ]
    with _open_out(cfg.output_path) as fh:
        for chain in chains:
            if chain.n % 2:
                fh.write(f"# n={chain.n} is odd: momenta p=1..{chain.n // 2 if momenta == 'half' else chain.n}\n")
        for result in results:
            _write_skipped(fh, result)
        w = _writer(fh)
        w.writerow(["n", "center", "delta"])
        for chain, result in zip(chains, results):
            for center, delta in result.points:
                w.writerow([chain.n, _fmt(center), _fmt(delta)])
    return results


def read_column(path, column):
    """Return the numeric values of ``column`` together with their CSV line numbers."""
    with open(path, newline="") as fh:
        rows = csv.DictReader(line for line in fh if not line.startswith("#"))
        if rows.fieldnames is None or column not in rows.fieldnames:
            raise UsageError(f"{path}: no column named {column!r}")
        values, bad = [], []
        for lineno, row in enumerate(rows, 2):
            try:
                values.append(float(row[column]))
            except (TypeError, ValueError):
                bad.append(lineno)
    if bad:
        shown = ", ".join(str(n) for n in bad[:10])
        raise UsageError(f"{path}: non-numeric {column!r} on line(s) {shown}")
    return np.array(values)


def cmd_analyze(path, column, out=None, index_column=None, window=None, shift=None):
    values = read_column(path, column)
    if index_column is None:
        hist, delta = benford.analyze_series(values)
        freqs = hist.relative_frequencies()
        expected = hist.expected_counts()
        with _open_out(out) as fh:
            fh.write(f"# N={hist.sample_size} delta={_fmt(delta)}\n")
            w = _writer(fh)
            w.writerow(["digit", "count", "relative_frequency", "benford_expected", "deviation"])
            for d, c, f, p, e in zip(benford.DIGITS, hist.as_array(), freqs, benford.BENFORD_PROBABILITIES, expected):
                w.writerow([d, int(c), _fmt(f), _fmt(p), _fmt((c - e) / e)])
        return hist, delta

    if window is None or shift is None or not (window > 0 and shift > 0):
        raise UsageError("windowed analysis needs positive --window and --shift")
    index = read_column(path, index_column)
    order = np.argsort(index, kind="stable")
    index, values = index[order], values[order]
    rows = []
    start = index[0]
    while start <= index[-1]:
        inside = (index >= start) & (index < start + window)
        try:
            rows.append((start, benford.analyze_series(values[inside])[1]))
        except BenfordQPTError as exc:
            log.info("window at %s skipped: %s", start, exc)
        start = round(start + shift, 12)
    with _open_out(out) as fh:
        w = _writer(fh)
        w.writerow(["window_start", "delta"])
        for s, d in rows:
            w.writerow([_fmt(s), _fmt(d)])
    return rows


def _add_run_flags(p):
    p.add_argument("--config", help="key = value file; flags override it")
    p.add_argument("--gamma", type=float)
    p.add_argument("--quantity", choices=[k.value for k in ObservableKind])
    p.add_argument("--range", help="LO:HI in units of a/J")
    p.add_argument("--window", type=float, help="window width eps")
    p.add_argument("--samples", type=int, help="raw points per window")
    p.add_argument("--shift", type=float, help="step between window centres")
    p.add_argument("--out", help="output CSV path (default stdout)")
    p.add_argument("--seed", type=int, help="random in-window sampling with this seed")
    p.add_argument("--tol", type=float, help="quadrature absolute tolerance")
    p.add_argument("--jobs", type=int, help="threads for window evaluation")


def build_parser():
    parser = _Parser(prog="benfordqpt", description="Benford-law scans of the transverse XY chain.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("observables", help="tabulate ground-state observables")
    _add_run_flags(p)
    p.add_argument("--points", type=int, default=91)

    p = sub.add_parser("scan", help="violation parameter over shifting windows")
    _add_run_flags(p)

    p = sub.add_parser("histogram", help="leading-digit histogram of one interval")
    _add_run_flags(p)
    p.add_argument("--interval", required=True, help="LO:HI")

    p = sub.add_parser("detect", help="locate the transition on a scan")
    _add_run_flags(p)
    p.add_argument("--from-csv", help="read a center,delta curve instead of scanning")
    p.add_argument("--finite-n", type=int, help="scan the finite-chain magnetization of n spins")
    p.add_argument("--momenta", choices=["half", "full"], default="half")
    p.add_argument("--allow-odd", action="store_true")
    p.add_argument("--plateau-margin", type=float)
    p.add_argument("--edge-exclusion", type=float, default=0.3)

    p = sub.add_parser("finite", help="finite-chain magnetization scans")
    _add_run_flags(p)
    p.add_argument("--n-list", default="10,100")
    p.add_argument("--momenta", choices=["half", "full"], default="half")
    p.add_argument("--allow-odd", action="store_true", help="accept odd chain lengths")

    p = sub.add_parser("analyze", help="Benford analysis of a CSV column")
    p.add_argument("file")
    p.add_argument("--column", required=True)
    p.add_argument("--index-column", help="sliding-window mode over this column")
    p.add_argument("--window", type=float)
    p.add_argument("--shift", type=float)
    p.add_argument("--out")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "analyze":
            cmd_analyze(args.file, args.column, args.out, args.index_column, args.window, args.shift)
            return EXIT_OK
        finite = args.command == "finite" or getattr(args, "finite_n", None) is not None
        cfg = build_config(args, window_default=0.15 if finite else 0.2)
        if args.command == "observables":
            cmd_observables(cfg, args.points)
        elif args.command == "scan":
            cmd_scan(cfg)
        elif args.command == "histogram":
            cmd_histogram(cfg, parse_range(args.interval))
        elif args.command == "finite":
            cmd_finite(cfg, parse_int_list(args.n_list), args.momenta, args.allow_odd)
        elif args.command == "detect":
            chain = None
            if args.finite_n is not None:
                if args.finite_n % 2 and not args.allow_odd:
                    raise UsageError(f"chain length {args.finite_n} is odd; pass --allow-odd")
                try:
                    chain = FiniteChainSpec(args.finite_n, momenta=args.momenta, allow_odd=args.allow_odd)
                except DomainError as exc:
                    raise UsageError(str(exc)) from None
            report = cmd_detect(cfg, args.from_csv, chain, args.plateau_margin, args.edge_exclusion)
            return EXIT_OK if report.detected else EXIT_NO_DETECTION
    except UsageError as exc:
        print(f"benfordqpt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"benfordqpt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegenerateSampleError, QuadratureError) as exc:
        print(f"benfordqpt: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except BenfordQPTError as exc:
        print(f"benfordqpt: error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
