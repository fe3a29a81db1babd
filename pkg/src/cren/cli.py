"""Command-line interface: measure state files, build family states, sweep.

Exit codes: 0 success, 2 input error (parse/validation/bad arguments),
3 measure incompatible with the state's dimensions or kind, 4 optimizer
did not converge and --strict was given.
"""

from __future__ import annotations

import argparse
import csv
import sys

from .convexroof import OptimizerConfig, optimize_cren
from .errors import (
    MalformedFileError,
    ParameterOutOfRangeError,
    SchemaViolationError,
    ValidationError,
    ValidationFailureError,
)
from .measures import cren_isotropic, cren_pure, cren_werner, negativity, wootters_concurrence
from .stateio import StateFile, parse_state, write_state
from .states import isotropic_state, werner_state

DEFAULT_SEED = 42

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_UNSUPPORTED = 3
EXIT_NOT_CONVERGED = 4


class _UnsupportedMeasure(Exception):
    pass


def _print_record(pairs: list[tuple[str, object]]) -> None:
    for key, value in pairs:
        if isinstance(value, float):
            value = repr(value)
        elif isinstance(value, bool):
            value = "true" if value else "false"
        print(f"{key}={value}")


def _optimizer_config(args) -> OptimizerConfig:
    return OptimizerConfig(
        ensemble_size=args.ensemble_size,
        restarts=args.restarts,
        max_iterations=args.max_iter,
        seed=args.seed,
    )


def cmd_measure(args) -> int:
    state = parse_state(args.file)
    dims = state.bipartite_dims()

    if args.measure == "negativity":
        mv = negativity(state.to_density())
        record = [("value", mv.value), ("method", mv.method.value), ("dims", str(dims))]
    elif args.measure == "cren-pure":
        if state.kind != "pure":
            raise _UnsupportedMeasure("cren-pure requires a pure state file")
        mv = cren_pure(state.as_pure())
        record = [("value", mv.value), ("method", mv.method.value), ("dims", str(dims))]
    elif args.measure == "concurrence":
        if state.dims != (2, 2):
            raise _UnsupportedMeasure(f"concurrence requires 2x2 dims, file has {dims}")
        mv = wootters_concurrence(state.to_density())
        record = [("value", mv.value), ("method", mv.method.value), ("dims", str(dims))]
    else:  # cren-opt
        if dims.min_dim < 2:
            raise _UnsupportedMeasure(f"cren-opt requires min dim >= 2, file has {dims}")
        result = optimize_cren(state.to_density(), _optimizer_config(args))
        record = [
            ("value", result.value),
            ("method", "optimizer"),
            ("dims", str(dims)),
            ("seed", result.seed),
            ("restarts", result.restarts_used),
            ("iterations", result.iterations),
            ("converged", result.converged),
        ]
        _print_record(record)
        if args.strict and not result.converged:
            return EXIT_NOT_CONVERGED
        return EXIT_OK

    _print_record(record)
    return EXIT_OK


def _family_state(family: str, param: float, d: int):
    if family == "isotropic":
        return isotropic_state(param, d)
    return werner_state(param, d)


def _family_closed(family: str, param: float, d: int) -> float:
    if family == "isotropic":
        return cren_isotropic(param, d).value
    return cren_werner(param, d).value


def cmd_family(args) -> int:
    rho = _family_state(args.family, args.param, args.d)
    label = f"{args.family} d={args.d} param={args.param!r}"
    write_state(args.out, StateFile.from_density(rho, label))
    print(f"wrote {args.out}")
    return EXIT_OK


def _parse_grid(spec: str) -> list[float]:
    try:
        start_s, stop_s, step_s = spec.split(":")
        start, stop, step = float(start_s), float(stop_s), float(step_s)
    except ValueError as exc:
        raise ParameterOutOfRangeError(f"grid must be 'start:stop:step', got {spec!r}") from exc
    if step <= 0:
        raise ParameterOutOfRangeError(f"grid step must be positive, got {step!r}")
    if not (0.0 <= start <= stop <= 1.0):
        raise ParameterOutOfRangeError(f"grid range must satisfy 0 <= start <= stop <= 1, got {spec!r}")
    values = []
    i = 0
    while True:
        value = round(start + i * step, 12)
        if value > stop + 1e-12:
            break
        values.append(min(value, 1.0))
        i += 1
    return values


_SWEEP_METHOD = {
    "closed": "closed_form",
    "optimized": "optimizer",
    "both": "closed_form+optimizer",
}


def cmd_sweep(args) -> int:
    grid = _parse_grid(args.grid)
    with_opt = args.mode in ("optimized", "both")
    header = ["parameter", "negativity", "cren_closed"]
    if with_opt:
        header += ["cren_optimized", "abs_gap"]
    header += ["method", "seed"]

    rows = []
    for param in grid:
        rho = _family_state(args.family, param, args.d)
        neg = negativity(rho).value
        closed = _family_closed(args.family, param, args.d)
        row = [repr(param), repr(neg), repr(closed)]
        if with_opt:
            result = optimize_cren(rho, OptimizerConfig(seed=args.seed))
            row += [repr(result.value), repr(abs(closed - result.value))]
        row += [_SWEEP_METHOD[args.mode], str(args.seed)]
        rows.append(row)

    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {args.out} ({len(rows)} rows)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cren",
        description="Convex-roof extended negativity toolkit for bipartite states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_measure = sub.add_parser("measure", help="compute a measure of a state file")
    p_measure.add_argument("file", help="path to a JSON state file")
    p_measure.add_argument(
        "--measure",
        required=True,
        choices=["negativity", "cren-pure", "cren-opt", "concurrence"],
    )
    p_measure.add_argument("--restarts", type=int, default=16)
    p_measure.add_argument("--max-iter", type=int, default=2000)
    p_measure.add_argument("--ensemble-size", type=int, default=None)
    p_measure.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_measure.add_argument(
        "--strict", action="store_true", help="exit 4 if the optimizer did not converge"
    )
    p_measure.set_defaults(func=cmd_measure)

    p_family = sub.add_parser("family", help="write a family state to a file")
    p_family.add_argument("family", choices=["isotropic", "werner"])
    p_family.add_argument("--d", type=int, required=True, help="local dimension (>= 2)")
    p_family.add_argument("--param", type=float, required=True, help="family parameter in [0, 1]")
    p_family.add_argument("--out", required=True, help="output state file path")
    p_family.set_defaults(func=cmd_family)

    p_sweep = sub.add_parser("sweep", help="tabulate measures over a parameter grid")
    p_sweep.add_argument("family", choices=["isotropic", "werner"])
    p_sweep.add_argument("--d", type=int, required=True)
    p_sweep.add_argument("--grid", required=True, help="parameter grid as start:stop:step")
    p_sweep.add_argument("--mode", required=True, choices=["closed", "optimized", "both"])
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_sweep.set_defaults(func=cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _UnsupportedMeasure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (
        MalformedFileError,
        SchemaViolationError,
        ValidationFailureError,
        ValidationError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
