"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage, 3 degenerate
lattice, 4 numerical non-convergence, 5 degenerate denominator.
"""
import argparse
import csv
import io
import math
import sys

import numpy as np

from .errors import DistOrderError
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .solvers import BoundaryProblem, CauchyProblem, DataFunction, evaluate_series, solve_bvp, solve_cauchy
from .special_functions import eval_h_err
from .spectrum import DEFAULT_BETA, CharacteristicRoot, OrderInterval, char_fn, roots

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# --- deterministic serialization --------------------------------------------


def fmt(x):
    x = float(x) + 0.0  # drop negative zero
    if not math.isfinite(x):
        raise DistOrderError(f"non-finite value {x!r} in output")
    return format(x, ".17g")


def dumps(obj, indent=0):
    """JSON with floats at 17 significant digits and insertion-ordered keys."""
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, bool) or obj is None:
        return {True: "true", False: "false", None: "null"}[obj]
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    if isinstance(obj, complex):
        return dumps({"re": obj.real, "im": obj.imag}, indent)
    if isinstance(obj, str):
        import json

        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{inner}{dumps(str(k))}: {dumps(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[\n" + ",\n".join(inner + dumps(v, indent + 1) for v in obj) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def emit(args, text):
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- argument types ----------------------------------------------------------


def positive_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def finite_float(s):
    v = float(s)
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {s}")
    return v


def positive_float(s):
    v = finite_float(s)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {s}")
    return v


def nonzero_int(s):
    v = int(s)
    if v == 0:
        raise argparse.ArgumentTypeError("root index must be nonzero")
    return v


def eval_grid(s):
    try:
        start, stop, num = s.split(":")
        start, stop, num = float(start), float(stop), int(num)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start:stop:num, got {s!r}") from None
    if num < 1 or start <= 0 or stop < start:
        raise argparse.ArgumentTypeError(f"need 0 < start <= stop and num >= 1, got {s!r}")
    return np.linspace(start, stop, num)


def config_from(args):
    try:
        return QuadratureConfig(abs_tol=args.abs_tol, rel_tol=args.rel_tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def interval_from(args):
    try:
        return OrderInterval(args.beta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def read_phi_csv(path, beta):
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    if not rows:
        raise UsageError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    if header[:2] != ["alpha", "re"] or len(header) > 3 or (len(header) == 3 and header[2] != "im"):
        raise UsageError(f"{path}: header must be alpha,re[,im], got {','.join(header)}")
    body = [r for r in rows[1:] if r]
    try:
        alphas = [float(r[0]) for r in body]
        vals = [complex(float(r[1]), float(r[2]) if len(header) == 3 else 0.0) for r in body]
    except (ValueError, IndexError):
        raise UsageError(f"{path}: malformed numeric row") from None
    try:
        return DataFunction.sampled(alphas, vals, beta)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def parse_phi(spec, beta):
    kind, _, rest = spec.partition(":")
    if kind == "csv" and rest:
        return read_phi_csv(rest, beta)
    if kind == "builtin":
        name, _, param = rest.partition(":")
        try:
            if name == "mode":
                return DataFunction.mode(int(param))
            if name == "cosine":
                return DataFunction.cosine(int(param))
            if name == "constant":
                return DataFunction.constant(float(param))
        except ValueError as exc:
            raise UsageError(f"bad builtin phi {spec!r}: {exc}") from None
    raise UsageError(f"--phi must be builtin:mode:K, builtin:cosine:K, builtin:constant:C or csv:PATH, got {spec!r}")


# --- commands ----------------------------------------------------------------


def cmd_roots(args):
    beta = interval_from(args).beta
    table = []
    for r in roots(beta, args.kmax):
        v = r.value
        table.append((r.k, v.real, v.imag, abs(char_fn(r, beta))))
    if args.format == "csv":
        emit(args, csv_text(["k", "re", "im", "abs_char_fn"], table))
    else:
        emit(args, dumps({
            "beta": beta,
            "kmax": args.kmax,
            "roots": [{"k": k, "re": re, "im": im, "abs_char_fn": f} for k, re, im, f in table],
        }))
    return EXIT_OK


def cmd_eval_h(args):
    config = config_from(args)
    if args.k is not None:
        lam = CharacteristicRoot(args.k, interval_from(args).beta)
        lam_value = lam.value
    else:
        if args.lambda_re is None:
            raise UsageError("give --lambda-re/--lambda-im or --k")
        lam = lam_value = complex(args.lambda_re, args.lambda_im)
    try:
        value, err = eval_h_err(args.x, lam, config=config)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "csv":
        emit(args, csv_text(["x", "lambda_re", "lambda_im", "h_re", "h_im", "error_estimate"],
                            [(args.x, lam_value.real, lam_value.imag, value.real, value.imag, err)]))
    else:
        out = {"x": args.x, "lambda": lam_value}
        if args.k is not None:
            out["k"] = args.k
        out["h"] = value
        out["error_estimate"] = err
        emit(args, dumps(out))
    return EXIT_OK


def _series_result(series, args, problem):
    d = series.diagnostics
    out = {
        "beta": series.beta,
        "kmax": args.kmax,
        "problem": problem,
        "coefficients": [{"k": k, "re": c.real, "im": c.imag} for k, c in series.coefficients.items()],
        "diagnostics": {
            "h_values": [{"k": k, "re": v.real, "im": v.imag} for k, v in d["h_values"].items()],
            "min_denominator": d["min_denominator"],
            "neglected_tail": d["neglected_tail"],
            "zero_projection": d["zero_projection"],
            "projection_residual": d["projection_residual"],
        },
    }
    if "h_values_b" in d:
        out["diagnostics"]["h_values_b"] = [{"k": k, "re": v.real, "im": v.imag} for k, v in d["h_values_b"].items()]
    rows = None
    if args.eval_grid is not None:
        rows = []
        for x in args.eval_grid:
            y = evaluate_series(series, float(x))
            rows.append((float(x), y.real, y.imag))
        out["evaluation"] = [{"x": x, "re": re, "im": im} for x, re, im in rows]
    if args.table:
        if rows is None:
            raise UsageError("--table needs --eval-grid")
        with open(args.table, "w", encoding="utf-8") as fh:
            fh.write(csv_text(["x", "y_re", "y_im"], rows))
    if args.format == "csv":
        if rows is None:
            raise UsageError("--format csv needs --eval-grid")
        emit(args, csv_text(["x", "y_re", "y_im"], rows))
    else:
        emit(args, dumps(out))
    return EXIT_OK


def cmd_solve(args):
    config = config_from(args)
    interval = interval_from(args)
    phi = parse_phi(args.phi, interval.beta)
    try:
        if args.problem == "cauchy":
            p = CauchyProblem(args.a, phi, interval, args.kmax, config)
            problem = {"type": "cauchy", "a": args.a}
        else:
            p = BoundaryProblem(args.a, args.b, args.a0, args.b0, phi, interval, args.kmax, config)
            problem = {"type": "bvp", "a": args.a, "b": args.b, "a0": args.a0, "b0": args.b0}
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    problem["phi"] = args.phi
    series = solve_cauchy(p) if args.problem == "cauchy" else solve_bvp(p)
    return _series_result(series, args, problem)


def cmd_verify(args):
    from . import verification

    report = verification.run_suite(args.suite, config_from(args), interval_from(args).beta)
    if args.format == "json":
        out = report.to_dict()
        del out["elapsed"]  # timing goes to stderr so stdout stays reproducible
        emit(args, dumps(out))
    else:
        emit(args, report.format_text())
    print(f"elapsed {report.elapsed:.2f} s", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VERIFY


# --- parser ------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--beta", type=positive_float, default=DEFAULT_BETA, help="order interval [0, beta] (default sqrt 2)")
    common.add_argument("--kmax", type=positive_int, default=16, help="truncation |k| <= kmax (default 16)")
    common.add_argument("--abs-tol", type=positive_float, default=DEFAULT_CONFIG.abs_tol)
    common.add_argument("--rel-tol", type=positive_float, default=DEFAULT_CONFIG.rel_tol)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--out", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="distorder", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", parents=[common], help="characteristic roots lambda_k")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("eval-h", parents=[common], help="evaluate h(x, lambda)")
    p.add_argument("--x", type=positive_float, required=True)
    p.add_argument("--lambda-re", type=finite_float)
    p.add_argument("--lambda-im", type=finite_float, default=0.0)
    p.add_argument("--k", type=nonzero_int, help="use the root lambda_k instead of --lambda-re/--lambda-im")
    p.set_defaults(func=cmd_eval_h)

    p = sub.add_parser("solve", help="solve an initial-value or two-point problem")
    probs = p.add_subparsers(dest="problem", required=True)
    for name in ("cauchy", "bvp"):
        q = probs.add_parser(name, parents=[common])
        q.add_argument("--a", type=positive_float, required=True)
        if name == "bvp":
            q.add_argument("--b", type=positive_float, required=True)
            q.add_argument("--a0", type=finite_float, required=True)
            q.add_argument("--b0", type=finite_float, required=True)
        q.add_argument("--phi", required=True, help="builtin:mode:K | builtin:cosine:K | builtin:constant:C | csv:PATH")
        q.add_argument("--eval-grid", type=eval_grid, help="start:stop:num abscissae for y(x)")
        q.add_argument("--table", help="also write the y(x) table as CSV here")
        q.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("--suite", choices=["default", "full"], default="default")
    p.set_defaults(func=cmd_verify, format="text")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"distorder: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DistOrderError as exc:
        print(f"distorder: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
