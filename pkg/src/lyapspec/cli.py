"""Command-line front end.

Exit codes: 0 success, 2 unreadable/malformed config or bad flags,
3 invalid system, 4 numerical failure, 5 identity check failed.
Data goes to stdout (CSV with ``#`` comment lines, 17 significant digits);
diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import math
import statistics
import sys
from dataclasses import dataclass

import numpy as np

from . import defaults
from .analysis import bowen_dimension
from .config import ConfigError, load_system
from .errors import ComputationError, ValidationError
from .pressure import Backend, PressureEvaluator, equilibrium_weights
from .spectrum import spectrum_curve, verify_identity
from .system import BranchKind, CookieCutterSystem, sample_lyapunov

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_COMPUTE, EXIT_FAIL = 0, 2, 3, 4, 5

D = defaults.DEFAULTS


@dataclass(frozen=True)
class RunConfig:
    system_path: str
    backend: str = "auto"
    nodes: int = D["nodes"]
    newton_tol: float = D["newton_tol"]
    identity_tol: float | None = None
    bisect_tol: float = D["bisect_tol"]
    output: str = "csv"
    seed: int = D["seed"]

    def evaluator(self, system: CookieCutterSystem) -> PressureEvaluator:
        if self.backend == "auto":
            return PressureEvaluator.auto(system, nodes=self.nodes)
        return PressureEvaluator(system, Backend(self.backend), nodes=self.nodes)


def g17(x: float) -> str:
    return f"{x:.17g}"


def _emit_table(out, header: list[str], rows: list[list[float]], fmt: str) -> None:
    if fmt == "csv":
        print(",".join(header), file=out)
        for row in rows:
            print(",".join(g17(v) if isinstance(v, float) else str(v) for v in row), file=out)
        return
    cells = [header] + [[g17(v) if isinstance(v, float) else str(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    for r in cells:
        print("  ".join(c.rjust(w) for c, w in zip(r, widths)), file=out)


def cmd_validate(cfg: RunConfig, args, out) -> int:
    system = load_system(cfg.system_path)
    print(f"branches: {system.n}", file=out)
    for i, br in enumerate(system.branches):
        desc = f"  [{i}] {br.kind.value} interval=[{g17(br.a)}, {g17(br.b)}]"
        if br.kind is BranchKind.AFFINE:
            desc += f" slope={g17(br.slope)}"
        else:
            desc += f" epsilon={g17(br.epsilon)} sup_dpsi={g17(br.sup_dpsi)}"
        print(desc, file=out)
    print(f"affine: {str(system.is_affine).lower()}", file=out)
    print(f"degenerate: {str(system.is_affine_degenerate).lower()}", file=out)
    return EXIT_OK


def cmd_dimension(cfg: RunConfig, args, out) -> int:
    ev = cfg.evaluator(load_system(cfg.system_path))
    d, trace = bowen_dimension(ev, t0=args.t0, tol=cfg.newton_tol)
    print(f"{d:.15g}", file=out)
    if args.trace:
        print("# trace", file=out)
        _emit_table(out, ["k", "t", "P"], [[k, t, p] for k, (t, p) in enumerate(trace.iterates)], "csv")
    return EXIT_OK


def cmd_pressure(cfg: RunConfig, args, out) -> int:
    ev = cfg.evaluator(load_system(cfg.system_path))
    rows = []
    for t in np.linspace(args.t_min, args.t_max, args.steps):
        t = float(t)
        rows.append([t, ev.pressure(t), ev.derivative(t)])
    _emit_table(out, ["t", "P", "Pprime"], rows, cfg.output)
    return EXIT_OK


def cmd_spectrum(cfg: RunConfig, args, out) -> int:
    ev = cfg.evaluator(load_system(cfg.system_path))
    points = spectrum_curve(ev, steps=args.steps, margin=args.margin, bisect_tol=cfg.bisect_tol)
    if points[0].degenerate:
        print("# degenerate", file=out)
    rows = [[p.alpha, p.t_alpha, p.L, p.newton_value, p.entropy] for p in points]
    _emit_table(out, ["alpha", "t_alpha", "L", "newton", "entropy"], rows, cfg.output)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args, out) -> int:
    ev = cfg.evaluator(load_system(cfg.system_path))
    report = verify_identity(
        ev, args.t_min, args.t_max, args.steps, tol=cfg.identity_tol, bisect_tol=cfg.bisect_tol
    )
    print(f"backend: {ev.backend.value}", file=out)
    print(f"grid: [{g17(args.t_min)}, {g17(args.t_max)}] x {args.steps}", file=out)
    print(f"max_residual: {report.max_residual:.6e}", file=out)
    print(f"tol: {report.tol:.1e}", file=out)
    print("PASS" if report.passed else "FAIL", file=out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_sample(cfg: RunConfig, args, out) -> int:
    system = load_system(cfg.system_path)
    ev = cfg.evaluator(system)
    weights = equilibrium_weights(system, args.t).weights
    values = sample_lyapunov(system, weights, args.path_length, args.paths, cfg.seed)
    _emit_table(out, ["path", "lambda"], [[j, v] for j, v in enumerate(values)], cfg.output)
    mean = statistics.fmean(values)
    se = statistics.stdev(values) / math.sqrt(len(values)) if len(values) > 1 else math.nan
    target = -ev.derivative(args.t)
    z = (mean - target) / se if se > 0 else math.nan
    print(f"# weights {' '.join(g17(w) for w in weights)}", file=out)
    print(f"# mean {g17(mean)}", file=out)
    print(f"# stderr {g17(se)}", file=out)
    print(f"# target {g17(target)}", file=out)
    print(f"# z {g17(z)}", file=out)
    return EXIT_OK


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _nodes(text: str) -> int:
    v = int(text)
    if v < 8:
        raise argparse.ArgumentTypeError(f"need at least 8 collocation nodes, got {text}")
    return v


def _margin(text: str) -> float:
    v = float(text)
    if not 0 < v < 0.5:
        raise argparse.ArgumentTypeError(f"margin must lie in (0, 0.5), got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("config", help="JSON system description")
    common.add_argument("--backend", choices=["auto", "analytic", "collocation"], default="auto")
    common.add_argument("--nodes", type=_nodes, default=D["nodes"], help="collocation nodes (>= 8)")
    common.add_argument("--output", choices=["csv", "pretty"], default="csv")

    parser = argparse.ArgumentParser(
        prog="lyapspec",
        description="Pressure, Bowen dimension and Lyapunov spectrum of cookie-cutter maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common], help="check a system file and summarise it")

    p = sub.add_parser("dimension", parents=[common], help="Hausdorff dimension of the repeller")
    p.add_argument("--t0", type=float, default=D["newton_t0"])
    p.add_argument("--tol", type=_positive_float, default=D["newton_tol"])
    p.add_argument("--trace", action="store_true", help="print the Newton iterates")

    p = sub.add_parser("pressure", parents=[common], help="pressure curve as CSV")
    p.add_argument("--t-min", type=float, default=D["t_min"])
    p.add_argument("--t-max", type=float, default=D["t_max"])
    p.add_argument("--steps", type=_positive_int, default=D["t_steps"])

    p = sub.add_parser("spectrum", parents=[common], help="Lyapunov spectrum as CSV")
    p.add_argument("--steps", type=_positive_int, default=D["spectrum_steps"])
    p.add_argument("--margin", type=_margin, default=D["margin"])
    p.add_argument("--tol", type=_positive_float, default=D["bisect_tol"], help="bisection tolerance")

    p = sub.add_parser("verify", parents=[common], help="check L(-P'(t)) = N_P(t) on a t grid")
    p.add_argument("--t-min", type=float, default=D["t_min"])
    p.add_argument("--t-max", type=float, default=D["t_max"])
    p.add_argument("--steps", type=_positive_int, default=D["t_steps"])
    p.add_argument("--tol", type=_positive_float, default=None, help="identity tolerance")

    p = sub.add_parser("sample", parents=[common], help="Monte-Carlo Lyapunov exponents (affine only)")
    p.add_argument("--t", type=float, default=D["sample_t"])
    p.add_argument("--path-length", type=_positive_int, default=D["path_length"])
    p.add_argument("--paths", type=_positive_int, default=D["paths"])
    p.add_argument("--seed", type=int, default=D["seed"])
    return parser


COMMANDS = {
    "validate": cmd_validate,
    "dimension": cmd_dimension,
    "pressure": cmd_pressure,
    "spectrum": cmd_spectrum,
    "verify": cmd_verify,
    "sample": cmd_sample,
}


def _run_config(args) -> RunConfig:
    kw = dict(system_path=args.config, backend=args.backend, nodes=args.nodes, output=args.output)
    if args.command == "dimension":
        kw["newton_tol"] = args.tol
    elif args.command == "verify":
        kw["identity_tol"] = args.tol
    elif args.command == "spectrum":
        kw["bisect_tol"] = args.tol
    elif args.command == "sample":
        kw["seed"] = args.seed
    return RunConfig(**kw)


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        return COMMANDS[args.command](_run_config(args), args, out)
    except ConfigError as exc:
        print(f"ConfigError: {exc}", file=err)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"{type(exc).__name__}: {exc}", file=err)
        return EXIT_INVALID
    except ComputationError as exc:
        print(f"{type(exc).__name__}: {exc}", file=err)
        return EXIT_COMPUTE
    except (ValueError, ArithmeticError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=err)
        return EXIT_COMPUTE


def main_entry() -> None:
    sys.exit(main())
