"""Command-line front end.

Subcommands: verify-axioms, sweep, bounds, plan, jets, demo.  Output is
deterministic byte for byte given the same inputs and seed: floats are
serialized with the shortest round-tripping representation and row order
is fixed by the request.  Every failure path prints a single line to
stderr of the form ``error[<kind>]: <reason>`` and exits with the code
for that kind: 2 usage, 3 input, 4 verification failure, 5 capacity.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys

from . import __version__
from .algebras import jb_norm, parse_descriptor, sym_element
from .axioms import DEFAULT_TOL, run_axiom_suite
from .instances import InstanceFormatError, ProblemInstance, load_instance
from .jets import (
    DEFAULT_DEGREE,
    inverse_sandwich_defect_jet,
    jet_exp,
    jet_zero,
    product_step_jet,
    residual,
    symmetrized_step_jet,
)
from .trotter import (
    CapacityError,
    DegenerateDecayError,
    SchemeError,
    bound_special,
    bound_thm31,
    bound_thm33i,
    bound_thm33ii,
    empirical_order,
    measured_error,
    plan_min_n,
    sweep,
    tightest_bound,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_VERIFY = 4
EXIT_CAPACITY = 5

SWEEP_COLUMNS = (
    "scheme",
    "n",
    "error",
    "bound_thm31",
    "bound_thm33i",
    "bound_thm33ii",
    "bound_special_i",
    "bound_special_ii",
)
BOUND_COLUMNS = SWEEP_COLUMNS[:2] + SWEEP_COLUMNS[3:]


class CliError(Exception):
    def __init__(self, kind: str, message: str, code: int):
        super().__init__(message)
        self.kind = kind
        self.code = code


def _usage_error(message: str) -> CliError:
    return CliError("usage", message, EXIT_USAGE)


def _input_error(message: str) -> CliError:
    return CliError("input", message, EXIT_INPUT)


class _Parser(argparse.ArgumentParser):
    # argparse prints two lines by default; errors here must be one line.
    def error(self, message):
        raise _usage_error(message)


def _fmt(x) -> str:
    return repr(float(x))


def _parse_n_range(text: str) -> list[int]:
    """Accept "16", "1,2,4", or geometric "start:stop:xFACTOR"."""
    def to_int(tok, what):
        try:
            value = int(tok)
        except ValueError:
            raise _usage_error(f"{what} {tok!r} is not an integer") from None
        if value < 1:
            raise _usage_error(f"{what} must be >= 1, got {value}")
        return value

    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3 or not parts[2].startswith("x"):
            raise _usage_error(f"range {text!r} must look like start:stop:xFACTOR")
        start = to_int(parts[0], "range start")
        stop = to_int(parts[1], "range stop")
        factor = to_int(parts[2][1:], "range factor")
        if factor < 2:
            raise _usage_error("range factor must be >= 2")
        if stop < start:
            raise _usage_error("range stop must be >= start")
        out = []
        n = start
        while n <= stop:
            out.append(n)
            n *= factor
        return out
    values = [to_int(tok, "step count") for tok in text.split(",") if tok]
    if not values:
        raise _usage_error(f"no step counts in {text!r}")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise _usage_error("step counts must be strictly increasing")
    return values


def _parse_schemes(text: str) -> list[str]:
    schemes = [tok for tok in text.split(",") if tok]
    for s in schemes:
        if s not in ("g", "f", "h"):
            raise _usage_error(f"unknown scheme {s!r} (expected g, f or h)")
    if not schemes:
        raise _usage_error("no schemes given")
    return schemes


def _parse_norms(text: str) -> list[float]:
    try:
        norms = [float(tok) for tok in text.split(",") if tok]
    except ValueError:
        raise _usage_error(f"--norms must be comma-separated numbers, got {text!r}") from None
    if not norms or any(v < 0 for v in norms):
        raise _usage_error("--norms needs one or more nonnegative numbers")
    return norms


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("JBTROTTER_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise _usage_error(f"JBTROTTER_SEED={env!r} is not an integer") from None


def _descriptor_arg(text: str):
    try:
        return parse_descriptor(text)
    except ValueError as exc:
        raise _usage_error(str(exc)) from None


def _emit(text: str, output) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# serialization of record tables


def _record_cell(rec, column):
    return getattr(rec, column) if hasattr(rec, column) else rec.get(column)


def _records_csv(records, columns, trailer_comments=()) -> str:
    lines = [",".join(columns)]
    for rec in records:
        row = []
        for col in columns:
            val = _record_cell(rec, col)
            if val is None:
                row.append("")
            elif col in ("scheme",):
                row.append(str(val))
            elif col == "n":
                row.append(str(int(val)))
            else:
                row.append(_fmt(val))
        lines.append(",".join(row))
    lines.extend(f"# {comment}" for comment in trailer_comments)
    return "\n".join(lines) + "\n"


def _records_json(records, columns, extra=None) -> str:
    rows = []
    for rec in records:
        row = {}
        for col in columns:
            val = _record_cell(rec, col)
            if col == "scheme":
                row[col] = str(val)
            elif col == "n":
                row[col] = int(val)
            else:
                row[col] = None if val is None else float(val)
        rows.append(row)
    doc = {"records": rows}
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2) + "\n"


def _records_plotdata(records, columns, order_lines) -> str:
    # One whitespace table per scheme; absent bounds become nan so the
    # column layout never shifts.
    blocks = []
    schemes = []
    for rec in records:
        s = _record_cell(rec, "scheme")
        if s not in schemes:
            schemes.append(s)
    value_columns = [c for c in columns if c != "scheme"]
    for s in schemes:
        lines = [f"# scheme {s}"]
        if s in order_lines:
            lines.append(f"# empirical_order {order_lines[s]}")
        lines.append("# " + " ".join(value_columns))
        for rec in records:
            if _record_cell(rec, "scheme") != s:
                continue
            row = []
            for col in value_columns:
                val = _record_cell(rec, col)
                if col == "n":
                    row.append(str(int(val)))
                else:
                    row.append("nan" if val is None else _fmt(val))
            lines.append(" ".join(row))
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


def _emit_table(records, columns, args, order_lines=None) -> None:
    order_lines = order_lines or {}
    fmt = args.out
    if fmt == "csv":
        comments = [f"empirical_order {s} {v}" for s, v in order_lines.items()]
        _emit(_records_csv(records, columns, comments), args.output)
    elif fmt == "json":
        extra = {"empirical_order": order_lines} if order_lines else None
        _emit(_records_json(records, columns, extra), args.output)
    else:
        text = _records_plotdata(records, columns, order_lines)
        if args.output is None:
            sys.stdout.write(text)
        else:
            schemes = []
            for rec in records:
                s = _record_cell(rec, "scheme")
                if s not in schemes:
                    schemes.append(s)
            if len(schemes) == 1:
                _emit(text, args.output)
            else:
                root, ext = os.path.splitext(args.output)
                for s in schemes:
                    only = [r for r in records if _record_cell(r, "scheme") == s]
                    sub = {s: order_lines[s]} if s in order_lines else {}
                    _emit(
                        _records_plotdata(only, columns, sub),
                        f"{root}.{s}{ext}",
                    )


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify_axioms(args) -> int:
    if args.algebra is None:
        raise _usage_error("verify-axioms needs --algebra kind:dim")
    desc = _descriptor_arg(args.algebra)
    seed = _resolve_seed(args)
    tol_scale = (args.tol / DEFAULT_TOL) if args.tol is not None else 1.0
    if tol_scale <= 0:
        raise _usage_error("--tol must be positive")
    results = run_axiom_suite(desc, trials=args.trials, seed=seed, tol_scale=tol_scale)
    out = io.StringIO()
    out.write(f"algebra {desc} trials {args.trials} seed {seed}\n")
    for res in results:
        status = "pass" if res.passed else "FAIL"
        out.write(
            f"{res.name:<24} {status}  worst {_fmt(res.worst)}  tol {_fmt(res.tolerance)}\n"
        )
    ok = all(r.passed for r in results)
    out.write("result pass\n" if ok else "result FAIL\n")
    _emit(out.getvalue(), args.output)
    return EXIT_OK if ok else EXIT_VERIFY


def _sweep_instance(args) -> ProblemInstance:
    if args.input is None:
        raise _usage_error("this command needs --input PATH")
    return load_instance(args.input)


def cmd_sweep(args) -> int:
    instance = _sweep_instance(args)
    schemes = _parse_schemes(args.scheme)
    ns = _parse_n_range(args.n)
    records = []
    orders = {}
    for scheme in schemes:
        try:
            recs = sweep(scheme, instance.elements, ns)
        except SchemeError as exc:
            raise _input_error(str(exc)) from None
        records.extend(recs)
        try:
            orders[scheme] = _fmt(empirical_order(recs))
        except DegenerateDecayError:
            orders[scheme] = "commuting-or-floor"
        except ValueError:
            orders[scheme] = "n/a"
    _emit_table(records, SWEEP_COLUMNS, args, orders)
    return EXIT_OK


def _norms_and_specialness(args):
    if args.input is not None:
        instance = load_instance(args.input)
        norms = [jb_norm(e) for e in instance.elements]
        return norms, instance.algebra.is_special, instance
    if args.norms is None:
        raise _usage_error("need --norms or --input to fix element norms")
    norms = _parse_norms(args.norms)
    special = False
    if args.algebra is not None:
        special = _descriptor_arg(args.algebra).is_special
    return norms, special, None


def cmd_bounds(args) -> int:
    schemes = _parse_schemes(args.scheme)
    for s in schemes:
        if s == "h":
            raise _usage_error("scheme h has no closed-form bound")
    norms, special, _ = _norms_and_specialness(args)
    ns = _parse_n_range(args.n)
    rows = []
    for scheme in schemes:
        for n in ns:
            row = {c: None for c in BOUND_COLUMNS}
            row["scheme"], row["n"] = scheme, n
            if scheme == "g":
                row["bound_thm31"] = bound_thm31(norms, n)
            else:
                row["bound_thm33i"] = bound_thm33i(norms, n)
                row["bound_thm33ii"] = bound_thm33ii(norms, n)
                if special:
                    row["bound_special_i"] = bound_special(norms, n, "i")
                    row["bound_special_ii"] = bound_special(norms, n, "ii")
            rows.append(row)
    _emit_table(rows, BOUND_COLUMNS, args)
    return EXIT_OK


def cmd_plan(args) -> int:
    schemes = _parse_schemes(args.scheme)
    if len(schemes) != 1:
        raise _usage_error("plan takes exactly one scheme")
    scheme = schemes[0]
    if args.eps is None:
        raise _usage_error("plan needs --eps")
    if args.eps <= 0:
        raise _usage_error("--eps must be positive")
    mode = args.mode
    if scheme == "h" and mode == "bound":
        raise _usage_error("scheme h has no closed-form bound, use --mode measured")
    norms, special, instance = _norms_and_specialness(args)
    out = io.StringIO()
    if mode == "bound":
        n_min = plan_min_n(scheme, args.eps, norms=norms, special=special)
        out.write(f"scheme {scheme} mode bound eps {_fmt(args.eps)}\n")
        out.write(f"n_min {n_min}\n")
        out.write(f"bound({n_min}) {_fmt(tightest_bound(scheme, norms, n_min, special))}\n")
        prev = (
            _fmt(tightest_bound(scheme, norms, n_min - 1, special))
            if n_min > 1
            else "n/a"
        )
        out.write(f"bound({n_min - 1}) {prev}\n")
    else:
        if instance is None:
            raise _usage_error("measured mode needs --input")
        try:
            n_min = plan_min_n(
                scheme, args.eps, elements=instance.elements, mode="measured"
            )
        except SchemeError as exc:
            raise _input_error(str(exc)) from None
        out.write(f"scheme {scheme} mode measured eps {_fmt(args.eps)}\n")
        out.write(f"n_min {n_min}\n")
        out.write(f"error({n_min}) {_fmt(measured_error(scheme, instance.elements, n_min))}\n")
        prev = (
            _fmt(measured_error(scheme, instance.elements, n_min - 1))
            if n_min > 1
            else "n/a"
        )
        out.write(f"error({n_min - 1}) {prev}\n")
    _emit(out.getvalue(), args.output)
    return EXIT_OK


def _jets_report(elements, label, degree, tol, out) -> bool:
    total = elements[0]
    for e in elements[1:]:
        total = total + e
    s = sum(jb_norm(e) for e in elements)
    scale = (1.0 + s) ** 3
    limit = tol * scale
    reference = jet_exp(total, degree)
    nil = jet_zero(elements[0].descriptor, degree)
    d_jet = product_step_jet(elements, degree)
    h_jet = symmetrized_step_jet(elements, degree)
    u_jet = inverse_sandwich_defect_jet(elements, degree)
    checks = [
        ("product-step", d_jet, reference, min(2, degree)),
        ("symmetrized-step", h_jet, reference, min(2, degree)),
        ("inverse-sandwich-defect", u_jet, nil, min(1, degree)),
    ]
    out.write(f"instance {label} elements {len(elements)} degree {degree}\n")
    ok = True
    for name, jet, ref, through in checks:
        r = residual(jet, ref, through)
        passed = r <= limit
        ok = ok and passed
        status = "pass" if passed else "FAIL"
        out.write(
            f"{name:<26} deg<={through} residual {_fmt(r)} tol {_fmt(limit)} {status}\n"
        )
    if degree >= 3:
        for name, jet in (("product-step", d_jet), ("symmetrized-step", h_jet)):
            gap = jb_norm(jet.coefficients[3] - reference.coefficients[3])
            out.write(f"degree-3 gap {name} {_fmt(gap)}\n")
    # The defect jet also vanishes at degree 2 (the half-step wrappers cancel
    # the sum through second order); degree 3 is its leading term.
    if degree >= 2:
        mag = jb_norm(u_jet.coefficients[2])
        out.write(f"degree-2 magnitude inverse-sandwich-defect {_fmt(mag)}\n")
    if degree >= 3:
        mag = jb_norm(u_jet.coefficients[3])
        out.write(f"degree-3 magnitude inverse-sandwich-defect {_fmt(mag)}\n")
    out.write("result pass\n" if ok else "result FAIL\n")
    return ok


def cmd_jets(args) -> int:
    instance = _sweep_instance(args)
    if len(instance.elements) < 2:
        raise _input_error("jet checks need an instance with at least 2 elements")
    degree = args.degree
    if degree < 2:
        raise _usage_error("--degree must be at least 2")
    tol = args.tol if args.tol is not None else 1e-12
    if tol <= 0:
        raise _usage_error("--tol must be positive")
    out = io.StringIO()
    label = instance.label or str(args.input)
    ok = _jets_report(list(instance.elements), label, degree, tol, out)
    _emit(out.getvalue(), args.output)
    return EXIT_OK if ok else EXIT_VERIFY


def _pauli_elements():
    sx = sym_element([[0.0, 1.0], [1.0, 0.0]])
    sz = sym_element([[1.0, 0.0], [0.0, -1.0]])
    return sx, sz


def cmd_demo(args) -> int:
    out = io.StringIO()
    sx, sz = _pauli_elements()
    out.write(f"jbtrotter demo (version {__version__})\n")

    out.write("\n[1] axiom suite on sym:2, 200 trials, seed 0\n")
    for res in run_axiom_suite(sx.descriptor, trials=200, seed=0):
        status = "pass" if res.passed else "FAIL"
        out.write(f"{res.name:<24} {status}  worst {_fmt(res.worst)}\n")

    out.write("\n[2] sweep of the pauli pair, schemes g and f, n = 1..256\n")
    ns = [2**k for k in range(9)]
    records = []
    orders = {}
    for scheme in ("g", "f"):
        recs = sweep(scheme, [sx, sz], ns)
        records.extend(recs)
        orders[scheme] = _fmt(empirical_order(recs))
    out.write(_records_csv(records, SWEEP_COLUMNS, [f"empirical_order {s} {v}" for s, v in orders.items()]))

    out.write("\n[3] sweep of the odd triple (sx, sz, sx + sz), scheme h\n")
    triple = [sx, sz, sx + sz]
    recs = sweep("h", triple, ns)
    orders_h = {"h": _fmt(empirical_order(recs))}
    out.write(_records_csv(recs, SWEEP_COLUMNS, [f"empirical_order h {orders_h['h']}"]))

    out.write("\n[4] jet check of the pauli pair through degree 3\n")
    _jets_report([sx, sz], "pauli-pair", 3, 1e-12, out)

    out.write("\n[5] step planning for scheme g at eps 1e-4 (norms 1, 1)\n")
    norms = [1.0, 1.0]
    n_min = plan_min_n("g", 1e-4, norms=norms)
    out.write(f"n_min {n_min}\n")
    out.write(f"bound({n_min}) {_fmt(bound_thm31(norms, n_min))}\n")
    out.write(f"bound({n_min - 1}) {_fmt(bound_thm31(norms, n_min - 1))}\n")
    err = measured_error("g", [sx, sz], n_min)
    out.write(f"measured error at n_min {_fmt(err)}\n")
    _emit(out.getvalue(), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser wiring


def build_parser() -> _Parser:
    parser = _Parser(prog="jbtrotter", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", metavar="command")

    def common(p, *, output=True):
        if output:
            p.add_argument("--output", default=None, help="write to this path instead of stdout")

    p = sub.add_parser("verify-axioms", help="check the algebra axioms on random pairs")
    p.add_argument("--algebra", help="kind:dim, e.g. sym:6 or albert:3")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=None, help="identity tolerance (default 1e-10)")
    common(p)
    p.set_defaults(func=cmd_verify_axioms)

    p = sub.add_parser("sweep", help="measured error and bounds over a range of n")
    p.add_argument("--input", help="instance JSON path")
    p.add_argument("--scheme", default="g", help="comma list from g,f,h")
    p.add_argument("--n", default="1:256:x2", help='"16", "1,2,4" or "start:stop:xF"')
    p.add_argument("--out", choices=("csv", "json", "plotdata"), default="csv")
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bounds", help="closed-form bound table, no measurement")
    p.add_argument("--norms", help="comma list of element norms")
    p.add_argument("--input", help="instance JSON path (norms taken from it)")
    p.add_argument("--algebra", help="kind:dim, marks special families for sharpened bounds")
    p.add_argument("--scheme", default="g", help="comma list from g,f")
    p.add_argument("--n", default="1:256:x2")
    p.add_argument("--out", choices=("csv", "json", "plotdata"), default="csv")
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("plan", help="smallest n meeting an error target")
    p.add_argument("--scheme", default="g")
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--mode", choices=("bound", "measured"), default="bound")
    p.add_argument("--norms", help="comma list of element norms (bound mode)")
    p.add_argument("--input", help="instance JSON path")
    p.add_argument("--algebra", help="kind:dim, marks special families")
    common(p)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("jets", help="Taylor-coefficient checks for one instance")
    p.add_argument("--input", help="instance JSON path")
    p.add_argument("--degree", type=int, default=DEFAULT_DEGREE)
    p.add_argument("--tol", type=float, default=None, help="scaled tolerance (default 1e-12)")
    common(p)
    p.set_defaults(func=cmd_jets)

    p = sub.add_parser("demo", help="run the built-in walkthrough")
    common(p)
    p.set_defaults(func=cmd_demo)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "command", None) is None:
            raise _usage_error("a subcommand is required (try --help)")
        return args.func(args)
    except CliError as exc:
        print(f"error[{exc.kind}]: {exc}", file=sys.stderr)
        return exc.code
    except InstanceFormatError as exc:
        print(f"error[input]: {exc.category}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapacityError as exc:
        print(f"error[capacity]: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except SchemeError as exc:
        print(f"error[usage]: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error[input]: io: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entry() -> None:
    sys.exit(main())
