"""Command-line front end: one subcommand per check or sweep, CSV on output.

Reals are written with 17 significant digits and complex values as
``<re><+im>i`` so that output round-trips and diffs cleanly.  Grid cells run
on a thread pool of ``--threads`` workers (or ``ZAGIERLAB_THREADS``) and are
emitted in input order, so output does not depend on the worker count.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# formatting and flag parsing


def fmt_real(x: float) -> str:
    x = float(x) + 0.0  # drops the sign of -0.0
    return format(x, ".17g")


def fmt_complex(z: complex) -> str:
    z = complex(z)
    re, im = fmt_real(z.real), fmt_real(z.imag)
    sign = "" if im.startswith("-") else "+"
    return f"{re}{sign}{im}i"


def fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, complex):
        return fmt_complex(v)
    if isinstance(v, float):
        return fmt_real(v)
    if hasattr(v, "dtype"):
        return fmt(v.item())
    return str(v)


def int_list(text: str) -> list[int]:
    """"5", "1,3,7", "1:20" (inclusive) or "1:20:2"."""
    out = []
    for part in str(text).split(","):
        part = part.strip()
        if ":" in part:
            bits = [int(b) for b in part.split(":")]
            if len(bits) not in (2, 3):
                raise argparse.ArgumentTypeError(f"bad range {part!r}")
            step = bits[2] if len(bits) == 3 else 1
            if step == 0:
                raise argparse.ArgumentTypeError("range step must be nonzero")
            out.extend(range(bits[0], bits[1] + (1 if step > 0 else -1), step))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError("empty integer list")
    return out


def float_list(text: str) -> list[float]:
    try:
        return [float(p) for p in str(text).split(",") if p.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def complex_value(text: str) -> complex:
    try:
        return complex(str(text).replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def complex_list(text: str) -> list[complex]:
    return [complex_value(p) for p in str(text).split(",") if p.strip()]


def positive(kind):
    def parse(text):
        v = kind(text)
        if not v > 0:
            raise argparse.ArgumentTypeError(f"{text} is not positive")
        return v

    return parse


class Parser(argparse.ArgumentParser):
    # --c must never be read as a prefix of --config
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message):
        raise UsageError(message)


def thread_count(args) -> int:
    n = args.threads if args.threads is not None else int(os.environ.get("ZAGIERLAB_THREADS", "1"))
    if n < 1:
        raise UsageError("thread count must be at least 1")
    return n


def ordered_map(func, items, threads: int) -> list:
    items = list(items)
    if threads == 1 or len(items) < 2:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))


# ---------------------------------------------------------------------------
# subcommands: each returns (header, rows, failures)


def cmd_jacobi(args):
    from . import arith

    funcs = {"jacobi": arith.jacobi_classical, "kronecker": arith.kronecker, "shimura": arith.symbol_shimura}
    if args.symbol == "jacobi" and any(n <= 0 or n % 2 == 0 for n in args.n):
        raise UsageError("--n must be odd and positive for the Jacobi symbol")
    if args.symbol == "shimura" and any(n % 2 == 0 for n in args.n):
        raise UsageError("--n must be odd for the theta-multiplier symbol")
    rows = [(a, n, args.symbol, funcs[args.symbol](a, n)) for a in args.a for n in args.n]
    return ("a", "n", "symbol", "value"), rows, []


def cmd_zagier_l(args):
    from . import lseries

    if any(n == 0 for n in args.n):
        raise UsageError("--n must be nonzero")
    rows, failures = [], []
    for s in args.s:
        for n in args.n:
            v = lseries.zagier_L(s, n)
            gap, check = "", v.cross_check
            if check is not None:
                gap = abs(v.value - check.value)
                if gap > v.truncation_error + check.truncation_error + 1e-12:
                    failures.append(f"zagier-l n={n} s={fmt(s)}: routes differ by {gap:.3g}")
            rows.append((n, s, v.value, v.method, v.truncation_error, gap))
    return ("n", "s", "value", "method", "truncation_error", "route_gap"), rows, failures


def cmd_theta(args):
    from . import theta

    header = ("kind", "c", "n", "value")
    if args.grid:
        cells = ordered_map(lambda c: theta.theta_grid(args.kind, [c], args.n), args.c, thread_count(args))
        return header, [(v.kind, v.c, v.n, v.value) for cell in cells for v in cell], []
    if len(args.c) != 1 or len(args.n) != 1:
        raise UsageError("without --grid, --c and --n take a single integer each")
    v = theta.theta(args.kind, args.c[0], args.n[0])
    return header, [(v.kind, v.c, v.n, v.value)], []


def cmd_voronoi_check(args):
    from . import voronoi

    phi = voronoi.bump(args.lo, args.hi) if args.test_function == "bump" else voronoi.log_odd_bump(args.lo, args.hi)
    jobs = []
    for c in args.c:
        if voronoi.case_of(c) != args.case:
            raise UsageError(f"c={c} does not belong to case {args.case}")
        avals = args.a if args.a is not None else [a for a in range(1, c + 1) if math.gcd(a, c) == 1]
        for a in avals:
            if math.gcd(a, c) != 1:
                raise UsageError(f"(a, c) = ({a}, {c}) are not coprime")
            jobs.append((a, c))
    reports = ordered_map(lambda ac: voronoi.voronoi_check(args.case, phi, ac[0], ac[1], args.tol, args.form), jobs,
                          thread_count(args))
    header = ("case", "a", "c", "form", "lhs", "rhs", "n_truncation", "tail_estimate", "quadrature_error", "residual")
    rows, failures = [], []
    for r in reports:
        rows.append((r.case, r.a, r.c, r.form, r.lhs, r.rhs, r.n_truncation, r.tail_estimate, r.quadrature_error, r.residual))
        if not r.residual < args.tol:
            failures.append(f"voronoi-check {r.case} a={r.a} c={r.c}: residual {r.residual:.3g} >= tol {args.tol:g}")
    return header, rows, failures


def cmd_series_identity(args):
    from . import lseries

    ns = [n for n in args.n if n % 4 in (0, 1)]
    if not ns:
        raise UsageError("--n must contain some n = 0, 1 mod 4")
    reps = lseries.series_identities(args.which, args.s, ns, args.cmax, args.r2_base)
    header = ("which", "s", "n", "C_max", "partial_sum", "closed_form", "residual", "tail_estimate", "holds")
    rows = [(r.which, r.s, r.n, r.C_max, r.partial_sum, r.closed_form, r.residual, r.tail_estimate, r.holds) for r in reps]
    failures = [f"series-identity {r.which} n={r.n} s={fmt(r.s)}: residual {r.residual:.3g} vs tail {r.tail_estimate:.3g}"
                for r in reps if not r.holds]
    return header, rows, failures


def cmd_saddle_sweep(args):
    from . import asymptotics

    jobs = [(T, c, q) for T in args.T for c in args.c for q in args.q]
    cells = ordered_map(lambda j: asymptotics.saddle_sweep([j[0]], args.G, [j[1]], [j[2]], args.form), jobs,
                        thread_count(args))
    rows = [row for cell in cells for row in cell]
    failures = [f"saddle-sweep T={r[0]} c={r[2]} q={r[3]}: error {r[9]:.3g} > bound {r[10]:.3g}" for r in rows if r[9] > r[10]]
    return asymptotics.SWEEP_HEADER, rows, failures


def cmd_v_weight(args):
    from . import asymptotics

    rows = []
    for y in args.y:
        if y <= 0:
            raise UsageError("--y values must be positive")
        r = asymptotics.V_weight_report(y, args.t, args.contour_a, tol=args.tol)
        rows.append((y, args.t, args.contour_a, r.value, r.quadrature_error, r.tail))
    return ("y", "t", "contour_a", "value", "quad_error", "tail"), rows, []


def cmd_large_sieve(args):
    from . import lseries

    if args.N > 2**16:
        raise UsageError("--N is limited to 65536")
    scan = lseries.large_sieve_scan(args.N, args.t)
    rows = [(args.N, args.t, c, v, scan.slope) for c, v in zip(scan.checkpoints, scan.cumulative)]
    return ("N", "t", "checkpoint", "cumulative", "slope"), rows, []


def _moment_config(args):
    from . import moment

    try:
        return moment.MomentConfig(args.T, args.G, args.N_weight, args.afe_truncation, args.tolerance,
                                   range_constant=args.range_constant)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_moment(args):
    from . import moment

    cfg = _moment_config(args)
    data = moment.ingest_spectral(args.data)
    if not data:
        raise UsageError(f"{args.data} holds no spectral records")
    vals = ordered_map(lambda d: moment.sym2_central(d, cfg), data, thread_count(args))
    failures = [f"moment t={d.t}: sym2 tail {v.tail:.3g} above tolerance at cutoff {v.cutoff}"
                for d, v in zip(data, vals) if not v.converged]
    total = moment.moment_sum(data, cfg, {d.t: v.value for d, v in zip(data, vals)})
    return ("T", "G", "variant", "value", "terms"), [(args.T, args.G, "M2", total, len(data))], failures


def cmd_zagier_side(args):
    from . import moment

    variants = list(moment.VARIANTS) if args.variant == "all" else [args.variant]
    jobs = [(T, v) for T in args.T for v in variants]
    configs = {T: _moment_config(argparse.Namespace(**{**vars(args), "T": T})) for T in args.T}
    results = ordered_map(lambda j: moment.zagier_side_sum(configs[j[0]], j[1], args.signed, not args.no_m0), jobs,
                          thread_count(args))
    rows = [r.csv_row() if not args.signed else (r.T, r.G, r.variant, r.value, r.terms, r.range_constant) for r in results]
    failures = []
    if args.parity_check:
        for T in args.T:
            direct, combo = moment.parity_decomposition(configs[T], True, not args.no_m0)
            gap = abs(direct - combo)
            if gap > 1e-10 * max(1.0, abs(direct)):
                failures.append(f"zagier-side T={T}: parity decomposition off by {gap:.3g}")
    return moment.CSV_HEADER, rows, failures


def cmd_selftest(args):
    from . import selftest

    names = args.only or None
    if names:
        unknown = set(names) - set(selftest.CHECKS)
        if unknown:
            raise UsageError(f"unknown checks {sorted(unknown)}")
    results = selftest.run(names)
    failures = [f"selftest {n}: {d}" for n, ok, d in results if not ok]
    return ("check", "passed", "detail"), results, failures


# ---------------------------------------------------------------------------
# parser


def build_parser() -> Parser:
    common = Parser(add_help=False)
    common.add_argument("--out", type=Path, help="CSV destination (default: standard output)")
    common.add_argument("--config", type=Path, help="JSON file of flag values; flags on the command line win")
    common.add_argument("--threads", type=int, help="worker threads (default: $ZAGIERLAB_THREADS or 1)")

    p = Parser(prog="zagierlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("jacobi", cmd_jacobi, "Jacobi, Kronecker or theta-multiplier symbols")
    sp.add_argument("--a", type=int_list, required=True)
    sp.add_argument("--n", type=int_list, required=True)
    sp.add_argument("--symbol", choices=("jacobi", "kronecker", "shimura"), default="kronecker")

    sp = add("zagier-l", cmd_zagier_l, "Zagier L-series at s")
    sp.add_argument("--s", type=complex_list, required=True)
    sp.add_argument("--n", type=int_list, required=True)

    sp = add("theta", cmd_theta, "theta-multiplier exponential sums")
    sp.add_argument("--kind", choices=("theta0", "theta1", "theta4", "theta5"), required=True)
    sp.add_argument("--c", type=int_list, required=True)
    sp.add_argument("--n", type=int_list, required=True)
    sp.add_argument("--grid", action="store_true", help="all (c, n) pairs via the FFT rows")

    sp = add("voronoi-check", cmd_voronoi_check, "residuals of the three Voronoi identities")
    sp.add_argument("--case", choices=("c0mod4", "codd", "c2mod4"), required=True)
    sp.add_argument("--a", type=int_list, help="default: every unit mod c")
    sp.add_argument("--c", type=int_list, required=True)
    sp.add_argument("--tol", type=positive(float), default=1e-6)
    sp.add_argument("--form", choices=("printed", "derived"), default="printed")
    sp.add_argument("--test-function", choices=("bump", "log-odd-bump"), default="bump")
    sp.add_argument("--lo", type=positive(float), default=1.0)
    sp.add_argument("--hi", type=positive(float), default=300.0)

    sp = add("series-identity", cmd_series_identity, "Dirichlet series of theta sums against closed forms")
    sp.add_argument("--which", choices=("theta0", "theta1"), required=True)
    sp.add_argument("--s", type=complex_list, required=True)
    sp.add_argument("--n", type=int_list, required=True)
    sp.add_argument("--cmax", type=positive(int), default=10**4)
    sp.add_argument("--r2-base", choices=("printed", "enumerated"), default="printed")

    sp = add("saddle-sweep", cmd_saddle_sweep, "saddle-point asymptotic against quadrature")
    sp.add_argument("--T", type=float_list, required=True)
    sp.add_argument("--G", type=positive(float), default=2.0)
    sp.add_argument("--c", type=int_list, required=True)
    sp.add_argument("--q", type=int_list, required=True)
    sp.add_argument("--form", choices=("printed", "derived"), default="printed")

    sp = add("v-weight", cmd_v_weight, "the smooth weight V(y, t)")
    sp.add_argument("--y", type=float_list, required=True)
    sp.add_argument("--t", type=positive(float), required=True)
    sp.add_argument("--contour-a", type=positive(float), default=1.0)
    sp.add_argument("--tol", type=positive(float), default=1e-12)

    sp = add("large-sieve", cmd_large_sieve, "cumulative mean square of central Zagier L-values")
    sp.add_argument("--N", type=positive(int), required=True)
    sp.add_argument("--t", type=float, default=0.0)

    def moment_flags(sp, T_type=positive(float)):
        sp.add_argument("--T", type=T_type, required=True)
        sp.add_argument("--G", type=positive(float), required=True)
        sp.add_argument("--N-weight", dest="N_weight", type=positive(int), default=1)
        sp.add_argument("--afe-truncation", type=positive(int), default=8192)
        sp.add_argument("--tolerance", type=positive(float), default=1e-4)
        sp.add_argument("--range-constant", type=positive(float), default=10.0)

    sp = add("moment", cmd_moment, "weighted second moment of symmetric-square central values")
    sp.add_argument("--data", type=Path, required=True)
    moment_flags(sp)

    sp = add("zagier-side", cmd_zagier_side, "bilinear sums of Zagier L-values over (q, r)")
    moment_flags(sp, float_list)
    sp.add_argument("--variant", choices=("**", "*4", "4*", "44", "all"), default="**")
    sp.add_argument("--signed", action="store_true", help="keep the oscillating factor and the sign of L")
    sp.add_argument("--no-m0", action="store_true", help="drop the r > q + 4 M0 condition")
    sp.add_argument("--parity-check", action="store_true", help="also verify the four-variant rearrangement")

    sp = add("selftest", cmd_selftest, "fast invariant suite")
    sp.add_argument("--only", type=lambda s: s.split(","), help="comma-separated check names")
    return p


def _with_config(parser: Parser, argv: list[str]) -> argparse.Namespace:
    # find --config before the full parse, since the file may supply required flags
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config", type=Path)
    config = pre.parse_known_args(argv[1:])[0].config
    if config is None:
        return parser.parse_args(argv)
    try:
        values = json.loads(Path(config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {config}: {exc}") from None
    if not isinstance(values, dict):
        raise UsageError("config must be a JSON object")
    section = values.get(argv[0], values)
    flags = []
    for key, val in section.items():
        if isinstance(val, dict):
            continue
        flag = "--" + key.replace("_", "-")
        if isinstance(val, bool):
            if val:
                flags.append(flag)
            continue
        flags += [flag, ",".join(map(str, val)) if isinstance(val, list) else str(val)]
    # file values first so that anything on the command line overrides them
    return parser.parse_args([argv[0], *flags, *argv[1:]])


def write_csv(header, rows, target) -> None:
    writer = csv.writer(target, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        if not argv or argv[0].startswith("-") and argv[0] not in ("-h", "--help"):
            raise UsageError("a subcommand is required")
        args = _with_config(parser, argv)
        if args.threads is not None and args.threads < 1:
            raise UsageError("--threads must be at least 1")
        header, rows, failures = args.func(args)
    except UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except Exception as exc:
        print(f"error: {type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}", file=sys.stderr)
        return EXIT_FAILED
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv(header, rows, fh)
    else:
        write_csv(header, rows, sys.stdout)
    if failures:
        print(f"error: check failed: {failures[0]} ({len(failures)} failing)", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
