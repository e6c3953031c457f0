"""Command-line interface: predict, simulate, sweep, entropy-report.

All numeric CSV output uses 17 significant digits so files are
bit-exact regression targets; identical config plus seed always produces
byte-identical output.  Exit codes: 0 success, 1 validation error,
2 computation error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import predictor, scenarios
from .errors import ComputationError, DomainError, GroverLabError, UselessInitialStateError
from .grover import evolve_mixed
from .states import von_neumann_entropy
from .tolerances import TOL

COUNTEREXAMPLE_ALIASES = ("paper-counterexamples", "counterexamples")

PREDICT_FIELDS = ("omega", "mean", "amplitude", "phase", "p_max", "t_real",
                  "t_star", "t_q", "t_q_reduced", "t_c", "speedup",
                  "advantage", "entropy_bits")
REPORT_FIELDS = ("scenario", "entropy_bits", "mean", "amplitude", "phase",
                 "p_max", "speedup", "advantage", "error")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        if any(ch in value for ch in ',"\n'):
            return '"' + value.replace('"', '""') + '"'
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if value == 0:
        return "0"
    return f"{float(value):.17g}"


def _csv_line(values) -> str:
    return ",".join(_fmt(v) for v in values)


def _write_out(text: str, out: str) -> None:
    if out == "stdout":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _predict_record(scenario: scenarios.Scenario) -> dict:
    pred = predictor.predict_mixed(scenario.spec, scenario.initial)
    guess = len(scenario.spec.marked) / (1 << scenario.n)
    if pred.amplitude <= TOL.p_max_useless and pred.mean <= guess + 1e-12:
        raise UselessInitialStateError(
            "success probability never rises above guessing; running the "
            "iterate is pointless for this initial state")
    return {
        "omega": pred.omega, "mean": pred.mean, "amplitude": pred.amplitude,
        "phase": pred.phase, "p_max": pred.p_max, "t_real": pred.t_real,
        "t_star": pred.t_star, "t_q": pred.t_q,
        "t_q_reduced": pred.t_q_reduced, "t_c": pred.t_c,
        "speedup": pred.speedup, "advantage": pred.advantage,
        "entropy_bits": von_neumann_entropy(scenario.initial),
    }


def cmd_predict(config: dict, out: str) -> int:
    scenario = scenarios.build(config)
    record = _predict_record(scenario)
    lines = [",".join(PREDICT_FIELDS),
             _csv_line(record[f] for f in PREDICT_FIELDS)]
    _write_out("\n".join(lines) + "\n", out)
    return 0


def cmd_simulate(config: dict, out: str) -> int:
    scenario = scenarios.build(config)
    oracle = evolve_mixed(scenario.spec, scenario.initial, scenario.horizon)
    pred = predictor._predict_sinusoid(scenario.spec, scenario.initial)
    t = np.arange(scenario.horizon + 1)
    predicted = pred.value(t)
    residual = np.abs(predicted - oracle.values)
    lines = ["t,P_oracle,P_predicted,residual"]
    for ti in t:
        lines.append(_csv_line((int(ti), oracle.values[ti], predicted[ti],
                                residual[ti])))
    lines.append(f"# max_residual,{residual.max():.17g}")
    _write_out("\n".join(lines) + "\n", out)
    return 0


def cmd_sweep(axis: str, values: list, base_config: dict, out: str) -> int:
    rows = scenarios.expand_sweep(axis, values, base_config)
    header = ("axis", "value") + PREDICT_FIELDS + ("error",)
    lines = [",".join(header)]
    for value, cfg in rows:
        record = dict.fromkeys(PREDICT_FIELDS)
        error = ""
        try:
            record = _predict_record(scenarios.build(cfg))
        except GroverLabError as exc:
            error = f"{type(exc).__name__}: {exc}"
        lines.append(_csv_line(
            (axis, value) + tuple(record[f] for f in PREDICT_FIELDS) + (error,)))
    _write_out("\n".join(lines) + "\n", out)
    return 0


def _report_cases(sources: list[str], base_config: dict):
    if len(sources) == 1 and sources[0] in COUNTEREXAMPLE_ALIASES:
        cfg = scenarios.resolve(base_config)
        return predictor.counterexample_cases(cfg["n"], tuple(cfg["marked"]))
    cases = []
    for path in sources:
        cfg = scenarios.overlay(scenarios.load_config(path), base_config)
        scenario = scenarios.build(cfg)
        cases.append((Path(path).stem, scenario.initial, scenario.spec))
    return cases


def cmd_entropy_report(sources: list[str], base_config: dict, out: str) -> int:
    rows = predictor.entropy_usefulness_report(_report_cases(sources, base_config))
    lines = [",".join(REPORT_FIELDS)]
    for row in rows:
        lines.append(_csv_line((row.label, row.entropy_bits, row.mean,
                                row.amplitude, row.phase, row.p_max,
                                row.speedup, row.advantage, row.error or "")))
    _write_out("\n".join(lines) + "\n", out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groverlab",
        description="Quantum-search success-probability laboratory for "
                    "mixed initial states")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="JSON scenario config file")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--out", default="stdout", help="output path or 'stdout'")
        p.add_argument("--dump-config", action="store_true",
                       help="print the fully-resolved config and exit")
        p.add_argument("--n", type=int, help="register size override")
        p.add_argument("--marked", help="comma-separated marked labels")
        p.add_argument("--horizon", type=int, help="iteration horizon override")

    add_common(sub.add_parser("predict", help="closed-form prediction record"))
    add_common(sub.add_parser("simulate", help="oracle curve vs prediction, CSV"))
    p_sweep = sub.add_parser("sweep", help="prediction table over a parameter grid")
    add_common(p_sweep)
    p_sweep.add_argument("--axis", choices=scenarios.SWEEP_AXES,
                         help="parameter to sweep")
    p_sweep.add_argument("--values", help="comma-separated axis values")
    p_sweep.add_argument("--grid", help="start:stop:count axis grid")
    p_rep = sub.add_parser("entropy-report",
                           help="entropy next to predicted usefulness")
    add_common(p_rep)
    p_rep.add_argument("sources", nargs="+",
                       help="config files, or the built-in alias "
                            "'paper-counterexamples'")
    return parser


def _gather_config(args) -> dict:
    layers = []
    if args.config:
        layers.append(scenarios.load_config(args.config))
    overrides: dict = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.n is not None:
        overrides["n"] = args.n
    if args.horizon is not None:
        overrides["horizon"] = args.horizon
    if args.marked is not None:
        try:
            overrides["marked"] = [int(tok) for tok in args.marked.split(",")]
        except ValueError as exc:
            raise DomainError(f"bad --marked value {args.marked!r}") from exc
    layers.append(overrides)
    return scenarios.overlay(*layers)


def _sweep_values(args, config: dict) -> tuple[str, list]:
    sweep_cfg = config.pop("sweep", None) or {}
    axis = args.axis or sweep_cfg.get("axis")
    if axis is None:
        raise DomainError("sweep needs --axis (or a 'sweep' config section)")
    if args.values is not None:
        try:
            values = [float(tok) for tok in args.values.split(",")]
        except ValueError as exc:
            raise DomainError(f"bad --values {args.values!r}") from exc
    elif args.grid is not None:
        values = scenarios.parse_grid(args.grid)
    elif "values" in sweep_cfg:
        values = [float(v) for v in sweep_cfg["values"]]
    elif "grid" in sweep_cfg:
        start, stop, count = sweep_cfg["grid"]
        values = scenarios.parse_grid(f"{start}:{stop}:{count}")
    else:
        raise DomainError("sweep needs --values or --grid")
    return axis, values


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _gather_config(args)
        if args.command == "predict":
            if args.dump_config:
                _write_out(scenarios.dump_config(scenarios.resolve(config)), args.out)
                return 0
            return cmd_predict(config, args.out)
        if args.command == "simulate":
            if args.dump_config:
                _write_out(scenarios.dump_config(scenarios.resolve(config)), args.out)
                return 0
            return cmd_simulate(config, args.out)
        if args.command == "sweep":
            axis, values = _sweep_values(args, config)
            if args.dump_config:
                resolved = scenarios.resolve(config)
                resolved["sweep"] = {"axis": axis, "values": values}
                _write_out(scenarios.dump_config(resolved), args.out)
                return 0
            return cmd_sweep(axis, values, config, args.out)
        if args.command == "entropy-report":
            if args.dump_config:
                if list(args.sources) == ["paper-counterexamples"] or \
                        args.sources[0] in COUNTEREXAMPLE_ALIASES:
                    resolved = scenarios.resolve(config)
                    doc = {"alias": args.sources[0], "n": resolved["n"],
                           "marked": resolved["marked"]}
                    _write_out(scenarios.dump_config(doc), args.out)
                else:
                    docs = [scenarios.resolve(scenarios.overlay(
                        scenarios.load_config(p), config)) for p in args.sources]
                    _write_out(scenarios.dump_config(docs), args.out)
                return 0
            return cmd_entropy_report(list(args.sources), config, args.out)
        raise DomainError(f"unknown command {args.command!r}")
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ComputationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
