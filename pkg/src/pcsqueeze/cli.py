"""Command-line interface: timeseries, sweep, transition and validate subcommands.

Exit codes: 0 success, 1 parameter error, 2 numerical-convergence failure,
3 validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import experiments
from .errors import ConsistencyError, ConvergenceError, ParameterError, SimulationError
from .params import DispersionModel, build_params, read_config_file_or_empty

EXIT_OK = 0
EXIT_PARAMETER = 1
EXIT_NUMERICAL = 2
EXIT_VALIDATION = 3

_SWEEP_DEFAULTS = {
    DispersionModel.ISOTROPIC: (-10.0, 10.0, 101),
    DispersionModel.ANISOTROPIC: (-1.0, 1.0, 400),
    DispersionModel.FREE_SPACE: (-10.0, 10.0, 101),
}


def _add_param_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="flat key = value config file")
    parser.add_argument("--model", choices=[m.value for m in DispersionModel])
    parser.add_argument("--delta", type=float)
    parser.add_argument("--beta", type=float)
    parser.add_argument("--omega-c", dest="omega_c", type=float)
    parser.add_argument("--n-atoms", dest="n_atoms", type=int)
    parser.add_argument("--theta", type=float)
    parser.add_argument("--t-max", dest="t_max", type=float)
    parser.add_argument("--n-steps", dest="n_steps", type=int)
    parser.add_argument("--out", help="output file path")


def _params_from_args(args):
    raw = read_config_file_or_empty(args.config)
    for key in ("model", "delta", "beta", "omega_c", "n_atoms", "theta", "t_max", "n_steps"):
        value = getattr(args, key, None)
        if value is not None:
            raw[key] = value
    return build_params(raw)


def _write(path: str, content: str):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(content)


def _cmd_timeseries(args) -> int:
    reservoir_p, ensemble_p, grid = _params_from_args(args)
    rows = experiments.run_timeseries(reservoir_p, ensemble_p, grid, source=args.engine)
    out = args.out or "timeseries.csv"
    _write(out, experiments.timeseries_csv(rows))
    print(f"wrote {len(rows)} rows to {out}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    reservoir_p, ensemble_p, _ = _params_from_args(args)
    lo, hi, points = _SWEEP_DEFAULTS[reservoir_p.model]
    if args.delta_min is not None:
        lo = args.delta_min
    if args.delta_max is not None:
        hi = args.delta_max
    if args.points is not None:
        points = args.points
    rows = experiments.run_sweep(reservoir_p, ensemble_p, lo, hi, points)
    out = args.out or "sweep.csv"
    _write(out, experiments.sweep_csv(rows))
    print(f"wrote {len(rows)} rows to {out}")
    return EXIT_OK


def _cmd_transition(args) -> int:
    reservoir_p, ensemble_p, _ = _params_from_args(args)
    delta_star = experiments.locate_transition(
        reservoir_p, ensemble_p, (args.bracket_lo, args.bracket_hi))
    print(f"delta_star = {delta_star:.6g} (units of beta)")
    if args.out:
        _write(args.out, experiments.transition_csv(delta_star))
    return EXIT_OK


def _cmd_validate(args) -> int:
    report = experiments.run_validation()
    for suite in report.suites:
        status = "PASS" if suite.passed else "FAIL"
        print(f"{status} {suite.name}: max deviation {suite.max_deviation:.3e} "
              f"(tolerance {suite.tolerance:.1e})")
    if args.out:
        _write(args.out, json.dumps(report.as_dict(), indent=2) + "\n")
    return EXIT_OK if report.passed else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcsqueeze",
        description="Spin-squeezing decoherence in photonic-crystal cavities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ts = sub.add_parser("timeseries", help="population and squeezing on a time grid")
    _add_param_flags(ts)
    ts.add_argument("--engine", choices=["closed", "oracle"], default="closed",
                    help="amplitude engine (closed form or reference solver)")
    ts.set_defaults(func=_cmd_timeseries)

    sw = sub.add_parser("sweep", help="steady-state squeezing versus detuning")
    _add_param_flags(sw)
    sw.add_argument("--delta-min", dest="delta_min", type=float)
    sw.add_argument("--delta-max", dest="delta_max", type=float)
    sw.add_argument("--points", type=int)
    sw.set_defaults(func=_cmd_sweep)

    tr = sub.add_parser("transition", help="locate the bound-state disappearance detuning")
    _add_param_flags(tr)
    tr.add_argument("--bracket-lo", dest="bracket_lo", type=float, default=0.0)
    tr.add_argument("--bracket-hi", dest="bracket_hi", type=float, default=0.2)
    tr.set_defaults(func=_cmd_transition)

    va = sub.add_parser("validate", help="run every oracle-agreement suite")
    va.add_argument("--out", help="write the JSON report here")
    va.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER
    except (ConvergenceError, ConsistencyError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except SimulationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
