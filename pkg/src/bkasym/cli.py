"""Batch command-line front end.

Subcommands
-----------
expand poisson | expand bergman   symbolic kernel expansions (json/csv/text)
closed-form                       reference kernel evaluation
verify paper                      exact regression suite against the
                                  published model-domain formulas
oracle fd | oracle ball           brute-force numerical oracles
fit                               least-squares fit of sampled kernel data

Exit codes: 0 success, 1 verification mismatch, 2 configuration error.
"""

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction


def _setup_threads():
    count = os.environ.get("BKASYM_THREADS")
    if count:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, count)


class CliError(Exception):
    pass


def _parse_rational(text):
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise CliError(
            f"exact rational required (got {text!r}); write fractions like 1/2"
        )
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"cannot parse rational {text!r}: {exc}") from None


def _parse_jet(args):
    from .domains import DomainSpec

    n = args.n
    choices = [
        args.jet is not None,
        getattr(args, "generic", False),
        getattr(args, "ball", None) is not None,
        getattr(args, "halfspace", False),
    ]
    if sum(bool(c) for c in choices) != 1:
        raise CliError("specify exactly one of --jet, --generic, --ball, --halfspace")
    if args.jet is not None:
        jet = tuple(_parse_rational(p) for p in args.jet.split(","))
        return DomainSpec(n, jet)
    if getattr(args, "generic", False):
        return DomainSpec.generic(n)
    if getattr(args, "ball", None) is not None:
        return DomainSpec.ball(n, _parse_rational(args.ball))
    return DomainSpec.halfspace(n)


def _parse_point(text, n):
    vals = [float(p) for p in text.split(",")]
    if len(vals) != n:
        raise CliError(f"point needs {n} coordinates, got {len(vals)}")
    return tuple(vals)


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _expansion_text(exp, fmt):
    if fmt == "json":
        return json.dumps(exp.to_json(), separators=(",", ":"), sort_keys=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("t_monomial", "jet_monomial", "coefficient", "power", "log"))
        for entry in exp.to_json()["terms"]:
            for tm, jm, val in entry["coeff_t_poly"]:
                writer.writerow((tm, jm, val, entry["power"], int(entry["log"])))
        return buf.getvalue()
    return str(exp) + "\n"


def cmd_expand(args):
    from .transforms import bergman_kernel_expansion, poisson_kernel_expansion

    dom = _parse_jet(args)
    if args.what == "poisson":
        exp = poisson_kernel_expansion(dom, args.grades, W=args.weight)
    else:
        exp = bergman_kernel_expansion(dom, args.grades, W=args.weight)
    _emit(_expansion_text(exp, args.format), args.out)
    return 0


def cmd_closed_form(args):
    from .closed_forms import (
        PointPair,
        eval_bergman_closed,
        eval_poisson_closed,
        eval_weighted_halfspace,
    )

    n = args.n
    x = _parse_point(args.x, n)
    y = _parse_point(args.y, n)
    pp = PointPair(x, y, n)
    kind = args.kind
    if kind == "poisson-ball":
        val = eval_poisson_closed("ball", pp)
    elif kind == "poisson-halfspace":
        val = eval_poisson_closed("halfspace", pp)
    elif kind == "bergman-ball":
        val = eval_bergman_closed("ball", pp)
    elif kind == "bergman-halfspace":
        val = eval_bergman_closed("halfspace", pp)
    elif kind == "weighted-halfspace":
        val = eval_weighted_halfspace(args.alpha, args.g0, pp)
    else:  # pragma: no cover - argparse restricts choices
        raise CliError(f"unknown kind {kind}")
    val = float(val)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("kind", "n", "alpha", *(f"x{i+1}" for i in range(n)),
                         *(f"y{i+1}" for i in range(n)), "value"))
        writer.writerow((kind, n, getattr(args, "alpha", ""), *x, *y, repr(float(val))))
        _emit(buf.getvalue(), args.out)
    else:
        _emit(f"{val!r}\n", args.out)
    return 0


def cmd_verify(args):
    if args.target != "paper":
        raise CliError("only the published-formula target is available: verify paper")
    from .verification import run_all_checks

    results = run_all_checks()
    if args.format == "json":
        payload = [
            {"check": name, "passed": ok, "detail": detail}
            for name, ok, detail in results
        ]
        _emit(json.dumps(payload, separators=(",", ":")) + "\n", args.out)
    else:
        lines = []
        for name, ok, detail in results:
            lines.append(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        nfail = sum(1 for _, ok, _ in results if not ok)
        lines.append(
            f"{len(results) - nfail}/{len(results)} reference checks passed"
        )
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if all(ok for _, ok, _ in results) else 1


def cmd_oracle_fd(args):
    import numpy as np

    from .oracle import fd_convergence_order, fd_poisson_kernel_fit
    from .domains import DomainSpec
    from .transforms import poisson_kernel_expansion

    h = float(Fraction(args.h)) if "/" in args.h else float(args.h)
    report = {}
    if args.mode in ("convergence", "both"):
        u4 = lambda x, y: x ** 4 - 6 * x * x * y * y + y ** 4
        hs = tuple(h * (2 ** -i) for i in range(args.levels))
        errs, orders = fd_convergence_order(u4, u4, hs=hs)
        report["convergence"] = {
            "h": list(hs),
            "max_error": errs,
            "observed_order": orders,
        }
    if args.mode in ("kernel-fit", "both"):
        dom = DomainSpec.ball(2, 1)
        exp = poisson_kernel_expansion(dom, 2)
        ds = np.geomspace(0.08, 0.4, 16)
        rep = fd_poisson_kernel_fit(h, ds, exp, dom.jet)
        report["kernel_fit"] = rep.to_json()
    _emit(json.dumps(report, separators=(",", ":")) + "\n", args.out)
    return 0


def cmd_oracle_ball(args):
    from .oracle import SpectralBall, ball_spectral_bergman

    sb = SpectralBall(lmax=args.lmax, n=args.n)
    x = _parse_point(args.x, args.n)
    y = _parse_point(args.y, args.n)
    val = float(ball_spectral_bergman(sb, x, y))
    _emit(f"{val!r}\n", args.out)
    return 0


def cmd_fit(args):
    from .oracle import fit_boundary_expansion
    from .transforms import KernelExpansion

    with open(args.expansion) as fh:
        exp = KernelExpansion.from_json(json.load(fh))
    samples = []
    with open(args.samples) as fh:
        for row in csv.reader(fh):
            if len(row) < 3:
                continue
            try:
                samples.append((float(row[0]), float(row[1]), float(row[2])))
            except ValueError:
                continue  # header row
    jet = tuple(_parse_rational(p) for p in args.jet.split(",")) if args.jet else ()
    extra = tuple(int(p) for p in args.smooth_powers.split(",")) if args.smooth_powers else ()
    rep = fit_boundary_expansion(samples, exp, jet, extra_smooth_powers=extra)
    _emit(rep.dumps() + "\n", args.out)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="bkasym",
        description="Boundary asymptotics of Poisson and harmonic Bergman kernels",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("expand", help="symbolic kernel expansions")
    ex.add_argument("what", choices=("poisson", "bergman"))
    ex.add_argument("--n", type=int, required=True)
    ex.add_argument("--jet", help="comma-separated exact rationals a1,a2,...")
    ex.add_argument("--generic", action="store_true", help="fully symbolic jet")
    ex.add_argument("--ball", help="tangent ball of this radius (exact rational)")
    ex.add_argument("--halfspace", action="store_true")
    ex.add_argument("--grades", type=int, default=3)
    ex.add_argument("--weight", type=int, default=None)
    ex.add_argument("--format", choices=("text", "json", "csv"), default="text")
    ex.add_argument("--out")
    ex.set_defaults(func=cmd_expand)

    cf = sub.add_parser("closed-form", help="reference kernel values")
    cf.add_argument(
        "--kind",
        required=True,
        choices=(
            "poisson-ball",
            "poisson-halfspace",
            "bergman-ball",
            "bergman-halfspace",
            "weighted-halfspace",
        ),
    )
    cf.add_argument("--n", type=int, required=True)
    cf.add_argument("--x", required=True, help="comma-separated coordinates")
    cf.add_argument("--y", required=True, help="comma-separated coordinates")
    cf.add_argument("--alpha", type=float, default=0.0)
    cf.add_argument("--g0", type=float, default=0.0)
    cf.add_argument("--format", choices=("text", "csv"), default="text")
    cf.add_argument("--out")
    cf.set_defaults(func=cmd_closed_form)

    vf = sub.add_parser("verify", help="regression suites")
    vf.add_argument("target", choices=("paper",))
    vf.add_argument("--format", choices=("text", "json"), default="text")
    vf.add_argument("--out")
    vf.set_defaults(func=cmd_verify)

    orc = sub.add_parser("oracle", help="numerical oracles")
    osub = orc.add_subparsers(dest="oracle_kind", required=True)
    ofd = osub.add_parser("fd", help="finite-difference Dirichlet oracle")
    ofd.add_argument("--h", default="1/64")
    ofd.add_argument("--levels", type=int, default=3)
    ofd.add_argument(
        "--mode", choices=("convergence", "kernel-fit", "both"), default="convergence"
    )
    ofd.add_argument("--out")
    ofd.set_defaults(func=cmd_oracle_fd)
    obl = osub.add_parser("ball", help="spectral ball Bergman oracle")
    obl.add_argument("--lmax", type=int, default=60)
    obl.add_argument("--n", type=int, default=3)
    obl.add_argument("--x", required=True)
    obl.add_argument("--y", required=True)
    obl.add_argument("--out")
    obl.set_defaults(func=cmd_oracle_ball)

    ft = sub.add_parser("fit", help="fit sampled kernel values to an expansion")
    ft.add_argument("--samples", required=True, help="CSV of t,rho,value rows")
    ft.add_argument("--expansion", required=True, help="expansion JSON file")
    ft.add_argument("--jet", help="comma-separated exact rationals")
    ft.add_argument("--smooth-powers", help="extra smooth powers, e.g. 2,3")
    ft.add_argument("--out")
    ft.set_defaults(func=cmd_fit)
    return ap


def main(argv=None):
    _setup_threads()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage already; normalize other codes
        return 2 if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
