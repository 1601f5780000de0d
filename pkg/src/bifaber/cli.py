"""Command-line front end.

Exit codes: 0 success, 1 audit or assertion failure, 2 usage or I/O error.
Rationals are given as "num/den" strings (integers and exact decimals are
accepted too); grids as "start:stop:step", endpoints included when they
fall within half a step.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .algebra import as_mpoly, parse_rational
from .audit import DEFAULT_GRID, full_audit, mandatory_ok, param_grid
from .bounds import CSV_COLUMNS, SPECIALIZATIONS, bound_record, specialize
from .faber import ClassParams, bell_D, class_operator, faber_K
from .sampling import theorem1_falsifier, theorem2_falsifier
from .series import (
    DEFAULT_ORDER,
    MAX_ORDER,
    generic_series,
    series_from_dict,
    series_revert,
    series_to_dict,
)


class UsageError(Exception):
    pass


def parse_grid(text) -> list[Fraction]:
    """A rational, a comma list, or start:stop:step with both endpoints included."""
    text = str(text)
    if "," in text:
        return [parse_rational(p) for p in text.split(",")]
    if ":" not in text:
        return [parse_rational(text)]
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must be start:stop:step, got {text!r}")
    start, stop, step = (parse_rational(p) for p in parts)
    if step <= 0:
        raise UsageError("grid step must be positive")
    if stop < start:
        raise UsageError("grid stop must not precede start")
    values, k = [], 0
    while start + k * step <= stop + step / 2:
        values.append(start + k * step)
        k += 1
    return values


def _order_arg(text):
    n = int(text)
    if not 1 <= n <= MAX_ORDER:
        raise argparse.ArgumentTypeError(f"order must be between 1 and {MAX_ORDER}")
    return n


# -- output helpers ---------------------------------------------------------

def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _coeff_text(c) -> str:
    if isinstance(c, complex):
        return repr(c.real) if c.imag == 0 else repr(c)
    return str(as_mpoly(c))


def _series_json(f):
    if any(isinstance(c, complex) for c in f.coeffs):
        return {"order": f.order, "coeffs": [[c.real, c.imag] for c in map(complex, f.coeffs)]}
    return series_to_dict(f)


# -- commands ---------------------------------------------------------------

def cmd_kp(args):
    order = args.order if args.order is not None else max(args.n, DEFAULT_ORDER)
    if args.n > order:
        raise UsageError(f"n={args.n} exceeds order {order}")
    poly = faber_K(args.n, args.p, order)
    _emit(args, poly.to_json() + "\n" if args.format == "json" else f"{poly}\n")
    return 0


def cmd_bell(args):
    poly = bell_D(args.n, args.m)
    _emit(args, poly.to_json() + "\n" if args.format == "json" else f"{poly}\n")
    return 0


def cmd_invert(args):
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            f = series_from_dict(json.load(fh))
    else:
        f = generic_series(args.order or 4)
    g = series_revert(f)
    if args.format == "json":
        _emit(args, json.dumps(_series_json(g), separators=(",", ":")) + "\n")
    else:
        _emit(args, "".join(f"b{n} = {_coeff_text(g.coeff(n))}\n" for n in range(1, g.order + 1)))
    return 0


def cmd_operator(args):
    params = ClassParams(parse_rational(args.lam), parse_rational(args.mu),
                         parse_rational(args.delta))
    L = class_operator(generic_series(args.order or 4), params)
    if args.format == "json":
        payload = {"order": L.order, "coeffs": [as_mpoly(c).to_dict() for c in L.coeffs]}
        _emit(args, json.dumps(payload, separators=(",", ":")) + "\n")
    else:
        _emit(args, "".join(f"z^{n}: {as_mpoly(c)}\n" for n, c in enumerate(L.coeffs)))
    return 0


def cmd_bounds(args):
    rows = []
    for lam in parse_grid(args.lam):
        for mu in parse_grid(args.mu):
            for delta in parse_grid(args.delta):
                for alpha in parse_grid(args.alpha):
                    params = ClassParams(lam, mu, delta, alpha)
                    if args.specialize:
                        params = specialize(params, args.specialize)
                    rows.append(bound_record(args.target, params, args.n, args.unchecked).row())
    if args.format == "json":
        _emit(args, json.dumps(rows, indent=1) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        _emit(args, buf.getvalue())
    else:
        lines = []
        for r in rows:
            lines.append(" ".join(f"{k}={r[k]}" for k in ("lambda", "mu", "delta", "alpha", "xi",
                                                          "target"))
                         + f" bound={r['bound_value']} branch={r['branch']}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_audit(args):
    order = args.order or DEFAULT_ORDER
    grid = list(param_grid(
        parse_grid(args.lam) if args.lam else DEFAULT_GRID["lam"],
        parse_grid(args.mu) if args.mu else DEFAULT_GRID["mu"],
        parse_grid(args.delta) if args.delta else DEFAULT_GRID["delta"],
    ))
    reports = full_audit(order, grid)
    ok = mandatory_ok(reports)
    if args.format in ("text", "csv"):
        lines = [f"{r.status:8s} {'M' if r.mandatory else 'i'} {r.item}"
                 + (f" {r.params}" if r.params else "")
                 + ("" if r.status == "match" else f" diff={r.difference}") for r in reports]
        lines.append(f"mandatory identities: {'all match' if ok else 'FAILED'}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, json.dumps([r.to_dict() for r in reports], indent=1) + "\n")
    return 0 if ok else 1


def _theorem1_csv(res) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["trial", "c_re", "c_im", "an_abs", "an_bound", "an_margin", "violation_flag"])
    rows = res.rows
    for i, (c, an, bad) in enumerate(zip(rows["c"], rows["an"], rows["violation"])):
        trial = i if i < res.trials else f"b{i - res.trials}"
        w.writerow([trial, repr(float(c.real)), repr(float(c.imag)), repr(float(abs(an))),
                    repr(res.bound), repr(res.bound - float(abs(an))), int(bad)])
    return buf.getvalue()


def cmd_sample(args):
    params = ClassParams(parse_rational(args.lam), parse_rational(args.mu),
                         parse_rational(args.delta), parse_rational(args.alpha))
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    if args.theorem == 1:
        res = theorem1_falsifier(params, args.n or 4, args.trials, args.seed,
                                 boundary=args.boundary, workers=args.workers)
        body = _theorem1_csv(res)
        summary = (f"trials={res.trials} accepted={res.trials} violations={res.violations} "
                   f"max_a{res.n}={res.max_abs!r} bound_a{res.n}={res.bound!r}")
        violations = res.violations
    else:
        res = theorem2_falsifier(params, args.trials, args.seed, boundary=args.boundary,
                                 workers=args.workers)
        body = res.to_csv()
        summary = res.summary()
        violations = res.violations
    if args.out:
        _emit(args, body)
        print(summary)
    else:
        sys.stdout.write(body)
        print(summary, file=sys.stderr)
    return 1 if args.check and violations > 0 else 0


# -- parser -------------------------------------------------------------------

def build_parser() -> tuple[argparse.ArgumentParser, dict]:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=_order_arg, default=None,
                        help=f"truncation order (1..{MAX_ORDER})")
    common.add_argument("--format", choices=["json", "csv", "text"], default=None,
                        help="output format (default: json for audit, text otherwise)")
    common.add_argument("--out", default=None, help="write output to this file")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--config", default=None, help="JSON file supplying flag values")

    parser = argparse.ArgumentParser(prog="bifaber", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {}

    p = sub.add_parser("kp", parents=[common], help="Faber coefficient K_n^p")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_kp)
    subs["kp"] = p

    p = sub.add_parser("bell", parents=[common], help="partition polynomial D_n^m")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_bell)
    subs["bell"] = p

    p = sub.add_parser("invert", parents=[common], help="series reversion")
    p.add_argument("--input", default=None, help="series JSON; omit for the generic series")
    p.set_defaults(func=cmd_invert)
    subs["invert"] = p

    def class_flags(p, alpha=True, grid=False):
        kind = "rational or start:stop:step grid" if grid else "rational"
        p.add_argument("--lambda", dest="lam", default="1", help=kind)
        p.add_argument("--mu", default="1", help=kind)
        p.add_argument("--delta", default="0", help=kind)
        if alpha:
            p.add_argument("--alpha", default="0", help=kind)

    p = sub.add_parser("operator", parents=[common], help="class operator of the generic series")
    class_flags(p, alpha=False)
    p.set_defaults(func=cmd_operator)
    subs["operator"] = p

    p = sub.add_parser("bounds", parents=[common], help="coefficient bounds")
    p.add_argument("--target", choices=["a2", "a3", "fekete", "an"], default="a2")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--unchecked", action="store_true",
                   help="allow the general bound below n = 4")
    p.add_argument("--specialize", choices=sorted(SPECIALIZATIONS), default=None)
    class_flags(p, grid=True)
    p.set_defaults(func=cmd_bounds)
    subs["bounds"] = p

    p = sub.add_parser("audit", parents=[common], help="symbolic consistency audit")
    p.add_argument("--lambda", dest="lam", default=None)
    p.add_argument("--mu", default=None)
    p.add_argument("--delta", default=None)
    p.set_defaults(func=cmd_audit)
    subs["audit"] = p

    p = sub.add_parser("sample", parents=[common], help="empirical bound falsifier")
    class_flags(p)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--theorem", type=int, choices=[1, 2], default=2)
    p.add_argument("--n", type=int, default=None, help="coefficient index for --theorem 1")
    p.add_argument("--boundary", action="store_true", help="add extremal |c| = 2 trials")
    p.add_argument("--assert", dest="check", action="store_true",
                   help="exit 1 if any violation is found")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sample)
    subs["sample"] = p
    return parser, subs


def _config_defaults(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    out = {}
    for key, value in data.items():
        key = key.lstrip("-").replace("-", "_")
        key = {"lambda": "lam", "assert": "check"}.get(key, key)
        if isinstance(value, (int, float)) and not isinstance(value, bool) \
                and key in ("lam", "mu", "delta", "alpha"):
            value = str(value)
        out[key] = value
    return out


def main(argv=None) -> int:
    parser, subs = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.config:
            subs[args.command].set_defaults(**_config_defaults(args.config))
            args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except (UsageError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"bifaber: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
