"""lagdisp command-line interface.

    lagdisp eval --family jacobi --n 3 --alpha 2 --beta 1 --x 1
    lagdisp kernel --alpha 0 --t 1 --n 0 --m 0
    lagdisp kernel --alpha 2.5 --t 5 --block 20 --compare closed matexp
    lagdisp verify bern_a0 --grid-default
    lagdisp verify sonin --n 1 --alpha 0 --beta 0
    lagdisp norm --alpha 2 --weight sigma_alpha --slope 10 1000
    lagdisp explore emn --n-max 50

Every command prints one table (CSV with a '#' provenance preamble, or a JSON
object whose "rows" member is an array of records).  Floats are written with
17 significant digits so values round-trip.  No timing is recorded: identical
inputs give byte-identical output at any --threads setting.

Exit codes: 0 success, 1 an asserted bound failed, 2 usage error,
3 numerical accuracy failure.  Diagnostics go to stderr.

CSV columns per command:
    eval     family, n, alpha, beta, x, value
    kernel   n, m, t, re, im, modulus [, diff]
    verify   check, n, alpha, beta, param, supremum, argmax, bound, slack, pass, exploratory
             (named bounds, biangle, fm); suites with their own columns:
               sonin              check, n, alpha, beta, x0, x1, x2, lambda_n, pass
               x1x2               check, n, alpha, beta, x1, x2, pass, exploratory
               sonin_maxima       check, n, alpha, beta, maxima, pass, exploratory
               binom              check, x, y, rhs, binom, slack, pass, exploratory
               wigner             check, two_l, theta, defect, pass, exploratory
               disk               check, m, n, alpha, samples, seed, max_residual, pass, exploratory
               bern_a0_violation  check, alpha, t, x, value
    norm     t, norm, theoretical, relative_gap, argmax_n, argmax_m
             --slope: alpha, weight, t_lo, t_hi, slope
             --eta:   alpha, eta, nu, weight, n_max, constant, argmax_x
    explore  target, n, alpha, beta, param, value, argmax
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from . import dispersion as dsp
from . import evolution as ev
from . import inequalities as ineq
from . import polynomials as poly
from .errors import AccuracyError, ConsistencyError, DomainError, UsageError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ACCURACY = 0, 1, 2, 3

FAMILIES = ("jacobi", "laguerre", "meixner", "gegenbauer", "legendre", "g", "R")
PATHS = ("closed", "meixner", "matexp", "quadrature", "convolution")
SUITES = ineq.BOUND_NAMES + ("sonin", "x1x2", "sonin_maxima", "binom", "wigner", "disk",
                             "biangle", "fm", "bern_a0_violation")
TARGETS = ("emn", "gunif1", "gunif2", "subzero")


# ---------------------------------------------------------------- helpers

def _floats(text):
    try:
        return [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"expected a comma separated list of numbers, got {text!r}") from None


def _pmap(fn, items, threads):
    """Ordered map; results never depend on the pool size."""
    items = list(items)
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return "%.17g" % v
    return str(v)


def _jsonable(v):
    if isinstance(v, np.bool_):
        return bool(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else repr(v)
    return v


def render(record, fmt):
    """Serialize a result record ({command, inputs, provenance, rows})."""
    if fmt == "json":
        clean = dict(record)
        clean["inputs"] = {k: _jsonable(v) for k, v in record["inputs"].items()}
        clean["provenance"] = {k: _jsonable(v) for k, v in record["provenance"].items()}
        clean["rows"] = [{k: _jsonable(v) for k, v in row.items()} for row in record["rows"]]
        return json.dumps(clean, indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    buf.write(f"# command={record['command']}\n")
    for key in ("inputs", "provenance"):
        for k, v in record[key].items():
            buf.write(f"# {key}.{k}={_cell(v)}\n")
    rows = record["rows"]
    if rows:
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(list(rows[0]))
        for row in rows:
            writer.writerow([_cell(v) for v in row.values()])
    return buf.getvalue()


# ---------------------------------------------------------------- commands

def cmd_eval(a):
    if a.family not in FAMILIES:
        raise UsageError(f"unknown family {a.family!r}; choose from {', '.join(FAMILIES)}")
    if a.x is not None:
        xs = _floats(a.x)
    else:
        xs = list(np.linspace(a.lo, a.hi, a.grid))
    n, al, be = a.n, a.alpha, a.beta

    def value(x):
        f = a.family
        if f == "jacobi":
            return poly.jacobi_P(n, al, be, x)
        if f == "laguerre":
            return poly.laguerre_L(n, al, x)
        if f == "meixner":
            return poly.meixner_M(n, x, be, a.c)
        if f == "gegenbauer":
            return poly.gegenbauer_P(n, a.lam, x)
        if f == "legendre":
            return poly.legendre_P(n, x)
        if f == "g":
            return poly.g_fn(n, al, be, x)
        return poly.jacobi_R(n, al, be, x)

    vals = _pmap(lambda x: float(value(float(x))), xs, a.threads)
    rows = [dict(family=a.family, n=n, alpha=al, beta=be, x=float(x), value=v)
            for x, v in zip(xs, vals)]
    return rows, False


def _kernel_path(path, a, cells):
    t, al = a.t, a.alpha
    if path == "closed":
        return [complex(ev.kernel(al, t, n, m)) for n, m in cells]
    if path == "meixner":
        return [ev.kernel_meixner(ev.KernelQuery(al, t, n, m)).value for n, m in cells]
    if path == "matexp":
        N = a.matexp_n
        if max(max(c) for c in cells) >= N or N > 1000:
            raise UsageError(f"matexp path needs n, m < N <= 1000 (N={N})")
        U = ev.oracle_matexp(al, N, t)
        return [complex(U[n, m]) for n, m in cells]
    if path == "quadrature":
        if abs(t) > 5 or max(max(c) for c in cells) > 20:
            raise UsageError("quadrature path is limited to |t| <= 5, n, m <= 20")
        return _pmap(lambda c: ev.oracle_quadrature(al, t, *c), cells, a.threads)
    if path == "convolution":
        return _pmap(lambda c: ev.kernel_convolution(al, t, *c).value, cells, a.threads)
    raise UsageError(f"unknown path {path!r}; choose from {', '.join(PATHS)}")


def cmd_kernel(a):
    if a.block is not None:
        cells = [(n, m) for n in range(a.block + 1) for m in range(a.block + 1)]
    else:
        cells = [(a.n, a.m)]
    paths = a.compare if a.compare else [a.path]
    values = [_kernel_path(p, a, cells) for p in paths]
    rows = []
    for i, (n, m) in enumerate(cells):
        z = values[0][i]
        row = dict(n=n, m=m, t=a.t, re=z.real, im=z.imag, modulus=abs(z))
        if len(values) > 1:
            row["diff"] = abs(z - values[1][i])
        rows.append(row)
    failed = bool(a.compare) and max(r["diff"] for r in rows) > a.tol
    return rows, failed


def _bound_row(check, n, al, be, param, rep):
    return dict(check=check, n=n, alpha=al, beta=be, param=param, supremum=rep.supremum,
                argmax=rep.argmax, bound=rep.bound, slack=rep.slack, **{"pass": rep.passed},
                exploratory=rep.exploratory)


def _default_tuples(suite):
    if suite == "bern_a0":
        out = []
        for be in (0.0, 0.3, 1.0, 2.7, 5.0):
            base = be - math.floor(be)
            for al in (base, base + 0.5, 2.0, 10.0):
                out += [(n, al, be) for n in range(0, 101)]
        return out
    if suite in ("g_unif1", "g_unif2"):
        return [(n, float(al), float(be)) for al in range(9) for be in range(9) for n in range(0, 61, 5)]
    if suite == "bernstein_legendre":
        return [(n, 0.0, 0.0) for n in range(0, 201)]
    if suite == "g_unif3":
        rng = np.random.default_rng(0)
        return [(int(n), float(al), float(be)) for n, al, be in
                zip(rng.integers(0, 51, 40), rng.uniform(0, 10, 40), rng.uniform(0, 10, 40))]
    return None


def cmd_verify(a):
    s = a.suite
    rows = []
    if s in ineq.BOUND_NAMES:
        tuples = _default_tuples(s) if a.grid_default else [(a.n, a.alpha, a.beta)]
        if tuples is None:
            raise UsageError(f"no default grid for {s}")
        reps = _pmap(lambda p: ineq.check_named_bound(s, p[0], p[1], p[2], grid=a.grid,
                                                      tol=a.tol, C=a.C), tuples, a.threads)
        rows = [_bound_row(s, n, al, be, a.C, r) for (n, al, be), r in zip(tuples, reps)]
    elif s == "sonin":
        b = ineq.sonin_points(a.n, a.alpha, a.beta)
        rows = [dict(check=s, n=a.n, alpha=a.alpha, beta=a.beta, x0=b.x0, x1=b.x1, x2=b.x2,
                     lambda_n=b.lambda_n, **{"pass": -1 <= b.x0 <= b.x1 <= 1})]
    elif s == "x1x2":
        c = ineq.check_x1_le_x2(a.n, a.alpha, a.beta)
        rows = [dict(check=s, n=a.n, alpha=a.alpha, beta=a.beta, x1=c.x1, x2=c.x2,
                     **{"pass": c.holds}, exploratory=c.exploratory)]
    elif s == "sonin_maxima":
        c = ineq.sonin_maxima_check(a.n, a.alpha, a.beta)
        rows = [dict(check=s, n=a.n, alpha=a.alpha, beta=a.beta, maxima=len(c.maxima),
                     **{"pass": c.passed}, exploratory=False)]
    elif s == "binom":
        r = ineq.binom_lower_bound_check(a.x, a.y)
        rows = [dict(check=s, x=a.x, y=a.y, rhs=r.supremum, binom=r.bound, slack=r.slack,
                     **{"pass": r.passed}, exploratory=False)]
    elif s == "wigner":
        for th in _floats(a.theta):
            D = ineq.wigner_d(ineq.WignerSpec(a.two_l, th), check=False)
            defect = ineq.unitarity_defect_matrix(D)
            rows.append(dict(check=s, two_l=a.two_l, theta=th, defect=defect,
                             **{"pass": defect < a.tol}, exploratory=False))
    elif s == "disk":
        rng = np.random.default_rng(a.seed)
        samples = [(rng.uniform(0, math.pi / 2, 2), rng.uniform(0, 2 * math.pi, 3), rng.uniform())
                   for _ in range(a.samples)]
        res = [ineq.verify_disk_addition(a.m, a.n, a.alpha, *th, *ph, r) for th, ph, r in samples]
        worst = max(res)
        rows = [dict(check=s, m=a.m, n=a.n, alpha=a.alpha, samples=a.samples, seed=a.seed,
                     max_residual=worst, **{"pass": worst < a.tol}, exploratory=False)]
    elif s == "biangle":
        r = ineq.check_biangle_bound(a.n, a.k, a.alpha, a.beta)
        rows = [_bound_row(s, a.n, a.alpha, a.beta, a.k, r)]
    elif s == "fm":
        r = ineq.f_m_extremum_check(a.m, a.alpha)
        rows = [_bound_row(s, a.m, a.alpha, None, None, r)]
    elif s == "bern_a0_violation":
        hits = ineq.bern_a0_violation_search()
        rows = [dict(check=s, alpha=al, t=t, x=x, value=v) for al, t, x, v in hits]
        # the search is asserted to find something
        return rows, not hits
    else:
        raise UsageError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")
    failed = any(not r["pass"] and not r.get("exploratory", False) for r in rows)
    for r in rows:
        if not r["pass"] and not r.get("exploratory", False):
            print(f"FAILED: {r}", file=sys.stderr)
    return rows, failed


def _weight(a):
    if a.weight == "sigma_alpha":
        return dsp.WeightSeq("sigma_alpha", a.alpha)
    if a.weight == "unit":
        return dsp.WeightSeq("unit")
    raise UsageError(f"unknown weight {a.weight!r}; choose unit or sigma_alpha")


def cmd_norm(a):
    w = _weight(a)
    if a.slope:
        lo, hi = a.slope
        slope = dsp.decay_slope_fit(a.alpha, w, (lo, hi), a.samples, a.window)
        return [dict(alpha=a.alpha, weight=a.weight, t_lo=lo, t_hi=hi, slope=slope)], False
    if a.eta is not None:
        q = dsp.EtaNuQuery(a.eta, a.nu, w)
        res = dsp.eta_nu_scan(a.alpha, q, a.n_max, np.linspace(-1.0, 1.0, a.grid))
        return [dict(alpha=a.alpha, eta=a.eta, nu=a.nu, weight=a.weight, n_max=a.n_max,
                     constant=res.supremum, argmax_x=res.argmax)], False
    ts = _floats(a.t)
    res = _pmap(lambda t: dsp.weighted_norm(a.alpha, t, w, a.window), ts, a.threads)
    rows = [dict(t=r.t, norm=r.norm, theoretical=r.theoretical, relative_gap=r.relative_gap,
                 argmax_n=r.argmax_nm[0], argmax_m=r.argmax_nm[1]) for r in res]
    return rows, False


def cmd_explore(a):
    rows = []
    tgt = a.target
    if tgt == "emn":
        rng = np.random.default_rng(a.seed)
        params = [(int(n), float(al), float(be)) for n, al, be in
                  zip(rng.integers(0, a.n_max + 1, a.samples), rng.uniform(-0.5, 4, a.samples),
                      rng.uniform(-0.5, 4, a.samples))]
        vals = _pmap(lambda p: ineq.emn_scan(*p, grid=a.grid), params, a.threads)
        rows = [dict(target=tgt, n=n, alpha=al, beta=be, param=None, value=v, argmax=None)
                for (n, al, be), v in zip(params, vals)]
        rows.sort(key=lambda r: -r["value"])
    elif tgt in ("gunif1", "gunif2"):
        name = "g_unif1" if tgt == "gunif1" else "g_unif2"
        ns = list(range(a.n_max + 1))
        reps = _pmap(lambda n: ineq.check_named_bound(name, n, a.alpha, a.beta, grid=a.grid),
                     ns, a.threads)
        rows = [dict(target=tgt, n=n, alpha=a.alpha, beta=a.beta, param=r.bound,
                     value=r.supremum, argmax=r.argmax) for n, r in zip(ns, reps)]
    elif tgt == "subzero":
        if not -1 < a.alpha < 0:
            raise UsageError("subzero exploration needs alpha in (-1, 0)")
        ts = np.geomspace(a.t_lo, a.t_hi, a.samples)
        res = _pmap(lambda t: dsp.window_norm(a.alpha, float(t), dsp.WeightSeq("unit"), a.window),
                    ts, a.threads)
        rows = [dict(target=tgt, n=r.argmax_nm[0], alpha=a.alpha, beta=None, param=r.t,
                     value=r.norm, argmax=r.argmax_nm[1]) for r in res]
    else:
        raise UsageError(f"unknown target {tgt!r}; choose from {', '.join(TARGETS)}")
    return rows, False


COMMANDS = {"eval": cmd_eval, "kernel": cmd_kernel, "verify": cmd_verify,
            "norm": cmd_norm, "explore": cmd_explore}


# ---------------------------------------------------------------- parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--tol", type=float, default=None,
                        help="pass/fail tolerance (kernel comparisons 1e-8, otherwise 1e-9)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--config", default=None, help="key=value file presetting any flag")

    p = argparse.ArgumentParser(prog="lagdisp", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=f"lagdisp {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate a polynomial family")
    e.add_argument("--family", default="jacobi")
    e.add_argument("--n", type=int, default=0)
    e.add_argument("--alpha", type=float, default=0.0)
    e.add_argument("--beta", type=float, default=0.0)
    e.add_argument("--lam", type=float, default=1.0, help="Gegenbauer parameter")
    e.add_argument("--c", type=float, default=0.5, help="Meixner parameter")
    e.add_argument("--x", default=None, help="comma separated points")
    e.add_argument("--grid", type=int, default=11)
    e.add_argument("--lo", type=float, default=-1.0)
    e.add_argument("--hi", type=float, default=1.0)

    k = sub.add_parser("kernel", parents=[common], help="entries of e^{-itH_alpha}")
    k.add_argument("--alpha", type=float, default=0.0)
    k.add_argument("--t", type=float, default=1.0)
    k.add_argument("--n", type=int, default=0)
    k.add_argument("--m", type=int, default=0)
    k.add_argument("--block", type=int, default=None, help="all 0 <= n, m <= BLOCK")
    k.add_argument("--path", default="closed", help="|".join(PATHS))
    k.add_argument("--compare", nargs=2, default=None, metavar=("PATH_A", "PATH_B"))
    k.add_argument("--matexp-n", type=int, default=1000)

    v = sub.add_parser("verify", parents=[common], help="inequality suites")
    v.add_argument("suite", help="|".join(SUITES))
    v.add_argument("--n", type=int, default=1)
    v.add_argument("--m", type=int, default=2)
    v.add_argument("--k", type=int, default=0)
    v.add_argument("--alpha", type=float, default=0.0)
    v.add_argument("--beta", type=float, default=0.0)
    v.add_argument("--x", type=float, default=1.0)
    v.add_argument("--y", type=float, default=1.0)
    v.add_argument("--C", type=float, default=None)
    v.add_argument("--two-l", type=int, default=1)
    v.add_argument("--theta", default="0.1,0.7,1.4")
    v.add_argument("--samples", type=int, default=20)
    v.add_argument("--grid", type=int, default=2001)
    v.add_argument("--grid-default", action="store_true", help="run the suite's default parameter grid")

    nm = sub.add_parser("norm", parents=[common], help="weighted l1 -> l_inf norms")
    nm.add_argument("--alpha", type=float, default=0.0)
    nm.add_argument("--weight", default="sigma_alpha")
    nm.add_argument("--t", default="1")
    nm.add_argument("--window", type=int, default=128)
    nm.add_argument("--slope", type=float, nargs=2, default=None, metavar=("T_LO", "T_HI"))
    nm.add_argument("--samples", type=int, default=10)
    nm.add_argument("--eta", type=float, default=None)
    nm.add_argument("--nu", type=float, default=0.0)
    nm.add_argument("--n-max", type=int, default=20)
    nm.add_argument("--grid", type=int, default=401)

    x = sub.add_parser("explore", parents=[common], help="conjecture scans (never fail)")
    x.add_argument("target", help="|".join(TARGETS))
    x.add_argument("--n-max", type=int, default=50)
    x.add_argument("--alpha", type=float, default=1.3)
    x.add_argument("--beta", type=float, default=2.7)
    x.add_argument("--samples", type=int, default=20)
    x.add_argument("--grid", type=int, default=2001)
    x.add_argument("--window", type=int, default=128)
    x.add_argument("--t-lo", type=float, default=1.0)
    x.add_argument("--t-hi", type=float, default=100.0)
    return p, sub


def read_config(path):
    """Parse a key=value file ('#' comments, blank lines ignored)."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for i, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{i}: expected key=value")
        key, val = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = val
    return out


def parse(argv):
    parser, sub = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        cfg = read_config(args.config)
        sp = sub.choices[args.command]
        known = {a.dest: a for a in sp._actions}
        defaults = {}
        for key, val in cfg.items():
            if key not in known or key in ("help", "config"):
                raise UsageError(f"config key {key!r} is not an option of '{args.command}'")
            act = known[key]
            if act.nargs in (None, "?") and act.type is not None:
                val = act.type(val)
            elif act.nargs not in (None, "?") and act.const is None:
                val = [act.type(v) if act.type else v for v in val.split()]
            elif act.const is not None:     # store_true
                val = val.lower() in ("1", "true", "yes")
            defaults[key] = val
        sp.set_defaults(**defaults)
        args = parser.parse_args(argv)      # command-line flags win over the file
    if args.tol is None:
        args.tol = 1e-8 if args.command == "kernel" else 1e-9
    if args.threads < 1:
        raise UsageError("--threads must be positive")
    if not args.tol > 0:
        raise UsageError("--tol must be positive")
    return args


def main(argv=None):
    try:
        args = parse(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:       # argparse usage errors and --help
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"lagdisp: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            rows, failed = COMMANDS[args.command](args)
    except (UsageError, DomainError) as exc:
        print(f"lagdisp: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AccuracyError, ConsistencyError) as exc:
        print(f"lagdisp: accuracy failure: {exc}", file=sys.stderr)
        return EXIT_ACCURACY
    skip = {"format", "out", "config", "threads", "command"}
    inputs = {k: (" ".join(map(str, v)) if isinstance(v, list) else v)
              for k, v in sorted(vars(args).items()) if k not in skip}
    record = dict(command=args.command, inputs=inputs,
                  provenance=dict(version=__version__, numpy=np.__version__, tolerance=args.tol),
                  rows=rows)
    text = render(record, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_FAIL if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
