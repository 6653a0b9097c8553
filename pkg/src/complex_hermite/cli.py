"""Command-line front end.

Exit codes: 0 success, 1 domain or convergence error, 2 usage error,
3 verification failure.
"""
import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import hermite_core as hc
from . import kernels as kn
from . import quadrature as qd
from . import verify as vf
from .errors import ConvergenceError, DomainError

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Parse ``a``, ``bi``, ``a+bi`` or ``a-bi`` (no spaces; ``j`` also accepted)."""
    s = text.strip().replace("j", "i")
    if not s or " " in s:
        raise ValueError(f"invalid complex number {text!r}")
    if not s.endswith("i"):
        return complex(float(s), 0.0)
    body = s[:-1]
    split = None
    for pos in range(len(body) - 1, 0, -1):
        if body[pos] in "+-" and body[pos - 1] not in "eE":
            split = pos
            break
    if split is None:
        re_part, im_part = "0", body
    else:
        re_part, im_part = body[:split], body[split:]
    if im_part in ("", "+", "-"):
        im_part += "1"
    if "i" in re_part or "i" in im_part:
        raise ValueError(f"invalid complex number {text!r}")
    return complex(float(re_part), float(im_part))


def _complex_arg(text):
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _precision(text):
    p = int(text)
    if not 1 <= p <= 17:
        raise argparse.ArgumentTypeError("precision must be between 1 and 17")
    return p


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return v


@dataclass
class OutputSpec:
    format: str = None  # None -> plain text
    destination: str = None  # None -> stdout
    precision: int = 15

    def num(self, x: float) -> str:
        if x == 0:
            x = 0.0
        return f"{x:.{self.precision}g}"

    def cplx(self, c: complex) -> str:
        c = complex(c)
        im = c.imag if c.imag != 0 else 0.0
        sign = "-" if math.copysign(1.0, im) < 0 else "+"
        return f"{self.num(c.real)}{sign}{self.num(abs(im))}i"

    def rounded(self, x: float) -> float:
        return float(self.num(x))

    def json_value(self, v):
        if isinstance(v, (complex, np.complexfloating)):
            return {"re": self.rounded(v.real), "im": self.rounded(v.imag)}
        if isinstance(v, (float, np.floating)):
            return self.rounded(float(v))
        return v


def _emit(text: str, out: OutputSpec):
    if out.destination:
        with open(out.destination, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_record(record: dict, out: OutputSpec):
    """One result record: a single ``value`` prints bare in text mode."""
    if out.format == "json":
        text = json.dumps({k: out.json_value(v) for k, v in record.items()}) + "\n"
    elif out.format == "csv":
        header, row = [], []
        for k, v in record.items():
            if isinstance(v, complex):
                header += [f"{k}_re", f"{k}_im"] if len(record) > 1 else ["re", "im"]
                row += [out.num(v.real), out.num(v.imag)]
            else:
                header.append(k)
                row.append(out.num(v) if isinstance(v, float) else str(v))
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerow(row)
        text = buf.getvalue()
    else:
        def fmt(v):
            if isinstance(v, complex):
                return out.cplx(v)
            if isinstance(v, float):
                return out.num(v)
            return str(v)
        if list(record) == ["value"]:
            text = fmt(record["value"]) + "\n"
        else:
            text = "".join(f"{k}: {fmt(v)}\n" for k, v in record.items())
    _emit(text, out)


# -- subcommands ---------------------------------------------------------------

def cmd_eval(args, out):
    p = hc.EvalPoint(args.z, args.nu)
    _emit_record({"value": hc.chp_eval(args.m, args.n, p.z, p.nu)}, out)
    return EXIT_OK


def _trunc(args):
    return kn.TruncationSpec(args.order, args.tail_tol)


def cmd_kernel(args, out):
    k = args.kernel_id
    series = args.series
    trunc = _trunc(args)
    if k in ("mehler-real", "heat") and args.t is None:
        raise UsageError(f"{k} needs --t")
    if k == "mehler-real":
        res = kn.classical_mehler_series(args.t, args.x, args.y, trunc) if series \
            else kn.classical_mehler_closed(args.t, args.x, args.y)
    elif k == "egf":
        a = kn.KernelArgs(u=args.u, v=args.v, z=args.z, nu=args.nu)
        res = kn.egf_series(a, trunc) if series else kn.egf_closed(a)
    elif k == "gf-single":
        res = (kn.gf_single_series(args.m_prime, args.zeta, args.w, args.nu, trunc) if series
               else kn.gf_single_closed(args.m_prime, args.zeta, args.w, args.nu))
    elif k == "partial-mehler":
        call = (args.m, args.m_prime, args.z, args.w, args.nu)
        res = kn.partial_mehler_series(*call, trunc) if series else kn.partial_mehler_closed(*call)
    elif k == "mehler1":
        a = kn.KernelArgs(u=args.u, z=args.z, w=args.w, nu=args.nu)
        res = kn.mehler1_series(a, trunc) if series else kn.mehler1_closed(a)
    elif k == "mehler2":
        a = kn.KernelArgs(u=args.u, v=args.v, z=args.z, w=args.w, nu=args.nu, nu_prime=args.nu_prime)
        res = kn.mehler2_series(a, trunc) if series else kn.mehler2_closed(a)
    elif k == "heat":
        a = kn.HeatArgs(args.t, args.z, args.z0, args.nu)
        res = kn.heat_kernel_series(a, trunc) if series else kn.heat_kernel_closed(a)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown kernel {k!r}")
    if series:
        record = {"value": complex(res.value), "tail_increment": float(res.increment), "max_order": res.order}
    else:
        record = {"value": complex(res)}
    _emit_record(record, out)
    return EXIT_OK


def heat_grid_rows(t, nu, z0, xmin, xmax, ymin, ymax, steps):
    if steps < 2:
        raise DomainError("steps must be at least 2")
    kn.HeatArgs(t, 0j, z0, nu)  # validates t and nu
    rows = []
    for y in np.linspace(ymin, ymax, steps):
        for x in np.linspace(xmin, xmax, steps):
            val = kn.heat_kernel_closed(kn.HeatArgs(t, complex(x, y), z0, nu))
            rows.append((float(x), float(y), val))
    return rows


def cmd_heat_grid(args, out):
    rows = heat_grid_rows(args.t, args.nu, args.z0, args.xmin, args.xmax, args.ymin, args.ymax, args.steps)
    if out.format == "json":
        text = json.dumps([{"x": x, "y": y, "re": out.rounded(v.real), "im": out.rounded(v.imag)}
                           for x, y, v in rows]) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y", "re", "im"])
        for x, y, v in rows:
            w.writerow([out.num(x), out.num(y), out.num(v.real), out.num(v.imag)])
        text = buf.getvalue()
    _emit(text, out)
    return EXIT_OK


def cmd_quad(args, out):
    which = args.oracle
    nodes = args.nodes
    if which == "gauss":
        rule = qd.QuadratureRule(nodes or 64, args.gamma)
        quad = qd.gaussian_integral_quad(args.gamma, args.alpha, args.beta, rule)
        closed = qd.gaussian_integral_closed(args.gamma, args.alpha, args.beta)
        record = {"quadrature": quad, "closed": closed}
    elif which == "int-rep":
        params = qd.IntegralRepParams(args.mu, args.alpha, args.beta)
        rule = qd.QuadratureRule(nodes or 64, params.mu)
        quad = qd.chp_integral_rep(args.m, args.n, args.z, params, rule)
        record = {"quadrature": quad, "closed": hc.chp_eval(args.m, args.n, args.z, params.nu)}
    elif which == "norm":
        hc.check_nu(args.nu)
        rule = qd.QuadratureRule(nodes or 64, args.nu)
        record = {"quadrature": complex(qd.norm_squared_quad(args.m, args.n, args.nu, rule)),
                  "closed": complex(qd.norm_squared_closed(args.m, args.n, args.nu))}
    elif which == "self-reciprocity":
        rule = None
        if nodes:
            _, _, uv, d = qd._reciprocity_setup(args.u, args.v, args.nu, args.nu_prime)
            rule = qd.QuadratureRule(nodes, args.nu_prime / d)
        rep = qd.self_reciprocity_check(args.j, args.k, args.u, args.v, args.z, args.nu, args.nu_prime, rule)
        record = {"quadrature": rep.lhs, "closed": rep.rhs,
                  "printed_quadrature": complex(rep.meta["printed_lhs"])}
    else:
        rule = qd.QuadratureRule(nodes, 0.5) if nodes else None
        rep = qd.fourier_eigen_check(args.j, args.k, args.z, rule)
        record = {"quadrature": rep.lhs, "closed": rep.rhs}
    q, c = record["quadrature"], record["closed"]
    record["rel_err"] = abs(q - c) / (1 + max(abs(q), abs(c)))
    _emit_record(record, out)
    return EXIT_OK


def cmd_verify(args, out):
    known = [d.identity_id for d in vf.catalog()]
    if args.all or not args.id:
        ids = known
    else:
        unknown = [i for i in args.id if i not in known]
        if unknown:
            raise UsageError(f"unknown identity id(s): {', '.join(unknown)}")
        ids = args.id
    reports = vf.run_suite(seed=args.seed, ids=ids, samples=args.samples)
    if out.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["identity_id", "sample_index", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
                    "abs_err", "rel_err", "pass", "expected_fail", "error"])
        for r in reports:
            lhs = r.lhs if r.lhs is not None else complex("nan")
            rhs = r.rhs if r.rhs is not None else complex("nan")
            w.writerow([r.identity_id, r.meta["sample_index"], out.num(lhs.real), out.num(lhs.imag),
                        out.num(rhs.real), out.num(rhs.imag), out.num(r.abs_err), out.num(r.rel_err),
                        str(r.passed).lower(), str(bool(r.meta.get("expected_fail"))).lower(),
                        r.meta.get("error", "")])
        text = buf.getvalue()
    else:
        text = "".join(r.to_json() + "\n" for r in reports)
    _emit(text, out)
    bad = [r for r in reports if not vf.report_ok(r)]
    if bad:
        summary = vf.summarize(reports)
        print(f"verification failed: {summary['unexpected']} of {summary['reports']} reports", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def _global_flags(p, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--format", choices=("json", "csv"), default=d(None), help="output format (default: plain text)")
    p.add_argument("--out", metavar="PATH", default=d(None), help="write output to PATH instead of stdout")
    p.add_argument("--precision", type=_precision, default=d(15), help="significant digits, 1-17 (default 15)")


def build_parser():
    parser = argparse.ArgumentParser(prog="complex-hermite",
                                     description="Complex Hermite polynomials, Mehler kernels and identity checks.")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        p = sub.add_parser(name, **kw)
        _global_flags(p, suppress=True)
        return p

    p = add("eval", help="evaluate H^nu_{m,n}(z)")
    p.add_argument("--m", type=_nonneg_int, required=True)
    p.add_argument("--n", type=_nonneg_int, required=True)
    p.add_argument("--z", type=_complex_arg, required=True)
    p.add_argument("--nu", type=float, default=1.0)
    p.set_defaults(func=cmd_eval)

    p = add("kernel", help="evaluate a generating function or Mehler kernel")
    p.add_argument("kernel_id", choices=("mehler-real", "egf", "gf-single", "partial-mehler", "mehler1", "mehler2", "heat"))
    for name in ("u", "v", "z", "w", "zeta", "z0"):
        p.add_argument(f"--{name}", type=_complex_arg, default=0j)
    p.add_argument("--nu", type=float, default=1.0)
    p.add_argument("--nu-prime", type=float, default=1.0)
    p.add_argument("--m", type=_nonneg_int, default=0)
    p.add_argument("--m-prime", type=_nonneg_int, default=0)
    p.add_argument("--t", type=float)
    p.add_argument("--x", type=float, default=0.0)
    p.add_argument("--y", type=float, default=0.0)
    p.add_argument("--series", action="store_true", help="sum the truncated series instead of the closed form")
    p.add_argument("--order", type=int, default=40, help="series cutoff per index (default 40)")
    p.add_argument("--tail-tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_kernel)

    p = add("heat-grid", help="CSV grid of the heat kernel K(t; x+iy, z0)")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--nu", type=float, default=1.0)
    p.add_argument("--z0", type=_complex_arg, default=0j)
    p.add_argument("--xmin", type=float, default=-2.0)
    p.add_argument("--xmax", type=float, default=2.0)
    p.add_argument("--ymin", type=float, default=-2.0)
    p.add_argument("--ymax", type=float, default=2.0)
    p.add_argument("--steps", type=int, default=21)
    p.set_defaults(func=cmd_heat_grid)

    p = add("quad", help="quadrature oracles over the complex plane")
    p.add_argument("oracle", choices=("gauss", "int-rep", "norm", "self-reciprocity", "fourier-eigen"))
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--alpha", type=_complex_arg, default=1j)
    p.add_argument("--beta", type=_complex_arg, default=-1j)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--m", type=_nonneg_int, default=0)
    p.add_argument("--n", type=_nonneg_int, default=0)
    p.add_argument("--j", type=_nonneg_int, default=0)
    p.add_argument("--k", type=_nonneg_int, default=0)
    p.add_argument("--u", type=_complex_arg, default=0j)
    p.add_argument("--v", type=_complex_arg, default=0j)
    p.add_argument("--z", type=_complex_arg, default=0j)
    p.add_argument("--nu", type=float, default=1.0)
    p.add_argument("--nu-prime", type=float, default=1.0)
    p.add_argument("--nodes", type=int, help="Gauss-Hermite nodes per axis")
    p.set_defaults(func=cmd_quad)

    p = add("verify", help="run the identity catalog and emit JSON-lines reports")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true", help="run every identity (the default)")
    g.add_argument("--id", action="append", metavar="ID", help="identity id; repeatable")
    p.add_argument("--seed", type=int, default=vf.DEFAULT_SEED)
    p.add_argument("--samples", type=int, help="samples per identity (default: per-identity)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    out = OutputSpec(args.format, args.out, args.precision)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ConvergenceError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
