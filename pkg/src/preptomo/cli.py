"""Command line interface.

    preptomo run   --scenario multi_pin --steps 200 --format csv
    preptomo map   --scenario mixed_correlated --at 0.785 --format json
    preptomo check --scenario no_pin --a 0,0,0.3 --probes 20 --seed 7

Phases (``--t-start``, ``--t-end``, ``--at``) are in units of ``2 omega t``.
Exit status: 0 success, 1 invalid configuration, 2 I/O failure.
"""
from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from .errors import ConfigError, NotPreparableError
from .output import emit
from .scenarios import (
    SCENARIOS,
    ScenarioConfig,
    SweepResult,
    build_scenario,
    evaluate,
    random_probes,
    sweep,
)
from .tomography import diagnose

log = logging.getLogger(__name__)

EXIT_OK, EXIT_CONFIG, EXIT_IO = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _vector(text: str) -> tuple[float, float, float]:
    parts = [float(x) for x in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")
    return tuple(parts)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", choices=SCENARIOS, default="ideal")
    common.add_argument("--omega", type=float, default=1.0)
    common.add_argument("--epsilon", type=float, default=0.1)
    common.add_argument("--p", type=float, default=None,
                        help="input polarization (default 0.9; 1-|c23| for mixed_correlated if smaller)")
    common.add_argument("--c23", type=float, default=0.5)
    common.add_argument("--a", type=_vector, default=(0.0, 0.0, 0.0), metavar="X,Y,Z")
    common.add_argument("--swap-source", choices=("pinned", "initial"), default="pinned")
    common.add_argument("--t-start", type=float, default=0.0)
    common.add_argument("--t-end", type=float, default=float(np.pi))
    common.add_argument("--steps", type=int, default=200)
    common.add_argument("--at", type=float, default=None,
                        help="phase for map/check (default: --t-start)")
    common.add_argument("--probes", type=int, default=0)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default="-", help="output path, '-' for stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="preptomo", description="Process tomography under different preparation procedures.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("run", parents=[common], help="sweep the phase grid and report CP/TP diagnostics")
    sub.add_parser("map", parents=[common], help="dump the reconstructed map at one phase")
    sub.add_parser("check", parents=[common], help="diagnostics with seeded random linearity probes")
    return parser


def config_from_args(args) -> ScenarioConfig:
    return ScenarioConfig(
        scenario=args.scenario,
        omega=args.omega,
        epsilon=args.epsilon,
        p=args.p,
        c23=args.c23,
        a=args.a,
        t_start=args.t_start,
        t_end=args.t_end,
        steps=args.steps,
        swap_source=args.swap_source,
    )


def _single(cfg: ScenarioConfig, phase: float, probes: int, seed):
    scenario = build_scenario(cfg)
    t = cfg.time_at(phase)
    lam = scenario.process_map(t)
    row = evaluate(scenario, phase)
    report = None
    if probes:
        states = random_probes(probes, seed, scenario.max_probe_radius)
        report = diagnose(lam, scenario.simulator(t), states)
    else:
        report = diagnose(lam)
    return SweepResult(cfg, (row,)), lam, report


def _check_csv(report, out):
    lines = ["label,residual,predicted_min_eigenvalue"]
    lines += [f"{e.label},{e.residual:.12g},{e.predicted_min_eigenvalue:.12g}"
              for e in report.linearity_residuals]
    text = "\n".join(lines) + "\n"
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _map_csv(lam, out):
    lines = ["row,col,re,im"]
    for i, row in enumerate(lam.b_form):
        lines += [f"{i},{j},{z.real:.12g},{z.imag:.12g}" for j, z in enumerate(row)]
    text = "\n".join(lines) + "\n"
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        if args.probes < 0:
            raise ConfigError(f"--probes must be non-negative, got {args.probes}")
        phase = args.t_start if args.at is None else args.at
        if args.command == "run":
            result = sweep(cfg)
            log.info("swept %d points for %s", len(result.rows), cfg.scenario)
            emit(result, args.format, args.out)
        elif args.command == "map":
            result, lam, _ = _single(cfg, phase, 0, args.seed)
            if args.format == "json":
                emit(result, "json", args.out, process_map=lam)
            else:
                _map_csv(lam, args.out)
        else:
            result, lam, report = _single(cfg, phase, args.probes, args.seed)
            if args.format == "json":
                emit(result, "json", args.out, process_map=lam, diagnostics=report)
            else:
                _check_csv(report, args.out)
    except (ConfigError, NotPreparableError) as exc:
        print(f"preptomo: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"preptomo: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
