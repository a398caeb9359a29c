"""Command line front end.

Subcommands: validate, simulate, sweep, figure, critical,
verify-appendix.  Every run is deterministic for a fixed
configuration, including the random seed, so output files are
byte-identical across repeats.

Configuration precedence is flag > config file > built-in default.
Config files are key=value lines with # comments; keys match the flag
names (dashes and underscores are interchangeable) and unknown keys
are rejected.

Exit codes: 0 success, 1 usage error, 2 infeasible physics
parameters, 3 I/O failure.
"""

import argparse
import json
import os
import sys
from pathlib import Path

from . import protocol, report
from .attack import (
    AttackParameters,
    InfeasibleAttackError,
    build_attack_operator,
    concurrence,
    validate_constraints,
)
from .keyregion import (
    BRUSS_THRESHOLD,
    FIGURE_SPECS,
    PRECISION_FLOOR,
    SweepMode,
    critical_disturbance,
    figure_rows,
    sweep,
)
from .qubits import Basis, unitarity_defect

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_IO = 3

OUTPUT_DIR_ENV = "SIXSTATE_OUTPUT_DIR"

_REQUIRED = object()

_FORMATS = ("csv", "json", "svg")


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage failures exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    values = [float(part) for part in text.split(",") if part.strip()]
    if not values:
        raise ValueError("expected a comma-separated list of numbers")
    return values


def _mode(text: str) -> SweepMode:
    try:
        return SweepMode(text)
    except ValueError:
        raise ValueError(
            f"mode must be one of {[m.value for m in SweepMode]}, got {text!r}"
        ) from None


def _format(text: str) -> str:
    if text not in _FORMATS:
        raise ValueError(f"format must be one of {list(_FORMATS)}, got {text!r}")
    return text


def _fig_id(text: str) -> int:
    value = int(text)
    if value not in FIGURE_SPECS:
        raise ValueError(f"figure id must be one of {sorted(FIGURE_SPECS)}")
    return value


# per-command parameter schemas: name -> (converter, default)
_SCHEMAS: dict[str, dict[str, tuple]] = {
    "validate": {
        "d": (float, _REQUIRED),
        "tau1": (float, 0.5),
        "b0": (float, 0.5),
        "b1": (float, 0.5),
        "output": (str, None),
    },
    "simulate": {
        "d": (float, _REQUIRED),
        "tau1": (float, 0.5),
        "b0": (float, 0.5),
        "b1": (float, 0.5),
        "rounds": (int, 100000),
        "seed": (int, 12345),
        "output": (str, None),
    },
    "sweep": {
        "mode": (_mode, _REQUIRED),
        "c": (_floats, _REQUIRED),
        "d_min": (float, 1e-3),
        "d_max": (float, 0.5 - 1e-3),
        "steps": (int, 500),
        "format": (_format, "csv"),
        "output": (str, None),
    },
    "figure": {
        "id": (_fig_id, _REQUIRED),
        "steps": (int, 500),
        "format": (_format, "csv"),
        "output": (str, None),
    },
    "critical": {
        "mode": (_mode, _REQUIRED),
        "c": (_floats, _REQUIRED),
        "output": (str, None),
    },
    "verify-appendix": {
        "tau1": (float, 0.5),
        "d": (float, 0.2),
        "trials": (int, 50),
        "seed": (int, 1234),
        "output": (str, None),
    },
}

_FLAG_HELP = {
    "d": "disturbance in (0, 0.5)",
    "tau1": "flip-state entanglement parameter in [0, 1]",
    "b0": "keep-state weight for signal 0",
    "b1": "keep-state weight for signal 1",
    "rounds": "number of raw protocol rounds to sample",
    "seed": "random seed",
    "mode": "dependent or independent eavesdropper information",
    "c": "comma-separated concurrence values",
    "d_min": "lower end of the disturbance grid",
    "d_max": "upper end of the disturbance grid",
    "steps": "number of disturbance grid points",
    "format": "output format: csv, json or svg",
    "output": "output file path",
    "id": "canned figure id (1 or 2)",
    "trials": "number of random ancilla trials",
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="sixstate",
        description="Six-state eavesdropping model: attack construction, "
        "simulation and secret-key region mapping.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    descriptions = {
        "validate": "Check the attack-constraint residuals for one parameter set.",
        "simulate": "Run one attack end to end and write a JSON report.",
        "sweep": "Tabulate the key criterion over a (c, d) grid.",
        "figure": "Emit one of the canned nine-curve key-region datasets.",
        "critical": "Locate the critical disturbance for given concurrences.",
        "verify-appendix": "Check that equal disturbance forces the restricted ancilla form.",
    }
    for command, schema in _SCHEMAS.items():
        sub = subparsers.add_parser(command, description=descriptions[command])
        sub.add_argument("--config", default=None, help="key=value config file")
        for name, (converter, _) in schema.items():
            sub.add_argument(
                f"--{name.replace('_', '-')}",
                dest=name,
                type=converter if converter is not str else None,
                default=None,
                help=_FLAG_HELP.get(name, ""),
            )
        sub.set_defaults(handler=_HANDLERS[command], schema=schema)
    return parser


def _read_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _merge_config(args: argparse.Namespace) -> dict:
    """Resolve parameters by precedence: flag, then file, then default."""
    schema = args.schema
    file_values = _read_config(args.config) if args.config else {}
    unknown = set(file_values) - set(schema)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    merged = {}
    for name, (converter, default) in schema.items():
        flag_value = getattr(args, name)
        if flag_value is not None:
            merged[name] = flag_value
        elif name in file_values:
            merged[name] = converter(file_values[name])
        elif default is _REQUIRED:
            raise ValueError(f"missing required parameter: {name.replace('_', '-')}")
        else:
            merged[name] = default
    return merged


def _resolve_output(explicit: str | None, default_name: str) -> Path:
    if explicit:
        return Path(explicit)
    base = os.environ.get(OUTPUT_DIR_ENV)
    return (Path(base) if base else Path.cwd()) / default_name


def _emit(lines: list[str], output: str | None) -> None:
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if output:
        Path(output).write_text(text, encoding="utf-8", newline="\n")


def _cmd_validate(values: dict) -> int:
    params = AttackParameters.solved(
        values["d"], values["tau1"], values["b0"], values["b1"]
    )
    constraints = validate_constraints(params.ancillas(), params.d)
    data = protocol.attack_report(params)
    lines = [
        f"d     {params.d:g}",
        f"tau1  {params.tau1:g}",
        f"b0    {params.b0:g}",
        f"b1    {params.b1:g}",
        f"phase {params.phase1_01:.12g}",
        "",
        *constraints.lines(),
        f"unitarity defect            {data['unitarity_defect']:.3e}",
        f"max disturbance deviation   {data['profile'].max_deviation():.3e}",
    ]
    _emit(lines, values["output"])
    return EXIT_OK


def _complex_matrix(m) -> list[list[list[float]]]:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _cmd_simulate(values: dict) -> int:
    params = AttackParameters.solved(
        values["d"], values["tau1"], values["b0"], values["b1"]
    )
    op = build_attack_operator(params)
    outcome = protocol.intercept(protocol.prepare_pair(Basis.B1), op)
    profile = protocol.disturbance_profile(params)
    constraints = validate_constraints(params.ancillas(), params.d)
    ancillas = params.ancillas()
    qber = protocol.qber_monte_carlo(params, values["rounds"], values["seed"])

    payload = {
        "parameters": {
            "d": params.d,
            "tau1": params.tau1,
            "b0": params.b0,
            "b1": params.b1,
            "phase": params.phase1_01,
            "fidelity": params.fidelity,
        },
        "constraint_residuals": {
            "unitarity": constraints.unitarity_residual,
            "flip_orthogonality": constraints.flip_orthogonality_residual,
            "keep_overlap": constraints.keep_overlap_residual,
            "cross": constraints.cross_residual,
        },
        "unitarity_defect": unitarity_defect(op),
        "concurrence": {
            "flip0": concurrence(ancillas.flip0),
            "keep0": concurrence(ancillas.keep0),
            "keep1": concurrence(ancillas.keep1),
        },
        "disturbance": {
            basis.name: list(profile.by_basis(basis)) for basis in Basis
        },
        "max_disturbance_deviation": profile.max_deviation(),
        "rho_ab": _complex_matrix(outcome.rho_ab),
        "rho_ae_diagonal": [float(x.real) for x in outcome.rho_ae.diagonal()],
        "qber": {
            "rounds": values["rounds"],
            "seed": values["seed"],
            "estimate": qber,
        },
    }
    path = _resolve_output(values["output"], "simulate.json")
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8", newline="\n")
    print(f"wrote {path}")
    print(f"qber estimate {qber:.6f} (target {params.d:g})")
    return EXIT_OK


def _write_rows(rows, fmt: str, output: str | None, default_stem: str, title: str) -> None:
    path = _resolve_output(output, f"{default_stem}.{fmt}")
    if fmt == "csv":
        report.write_sweep_csv(rows, path)
    elif fmt == "json":
        report.write_sweep_json(rows, path)
    else:
        report.write_sweep_svg(rows, path, title=title)
    print(f"wrote {path}")
    if fmt != "svg":
        png_path = path.with_suffix(".png")
        report.render_sweep_png(rows, png_path, title=title)
        print(f"wrote {png_path}")


def _cmd_sweep(values: dict) -> int:
    rows = sweep(
        values["mode"],
        values["c"],
        (values["d_min"], values["d_max"]),
        values["steps"],
    )
    _write_rows(
        rows,
        values["format"],
        values["output"],
        "sweep",
        f"{values['mode'].value} mode",
    )
    return EXIT_OK


def _cmd_figure(values: dict) -> int:
    fig_id = values["id"]
    rows = figure_rows(fig_id, values["steps"])
    mode = FIGURE_SPECS[fig_id][0]
    _write_rows(
        rows,
        values["format"],
        values["output"],
        f"figure{fig_id}",
        f"key region, {mode.value} mode",
    )
    return EXIT_OK


def _cmd_critical(values: dict) -> int:
    lines: list[str] = []
    for c in values["c"]:
        point = critical_disturbance(values["mode"], c)
        lines.append(f"mode         {point.mode.value}")
        lines.append(f"c            {c:g}")
        if point.d_star is None:
            lines.append("d_star       none (no sign change)")
            if point.below_floor:
                lines.append(
                    f"key region   entire grid; min |delta| = {abs(point.delta_min):.3e} "
                    f"at d = {point.delta_min_d:.6f} is below the precision "
                    f"floor {PRECISION_FLOOR:g}, sign not resolvable there"
                )
            else:
                lines.append(
                    f"key region   entire grid (min delta = {point.delta_min:.3e} "
                    f"at d = {point.delta_min_d:.6f})"
                )
        else:
            lines.append(f"d_star       {point.d_star:.12f}")
            lines.append(f"key region   d < {point.d_star:.6f}")
            lines.append(
                f"vs baseline  threshold {BRUSS_THRESHOLD}: "
                f"{'wider' if point.d_star > BRUSS_THRESHOLD else 'narrower'}"
            )
        lines.append("")
    _emit(lines[:-1], values["output"])
    return EXIT_OK


def _cmd_verify_appendix(values: dict) -> int:
    rep = protocol.verify_ancilla_reduction(
        values["tau1"], values["d"], values["trials"], values["seed"]
    )
    lines = [
        f"d     {rep.d:g}",
        f"tau1  {rep.tau1:g}",
        "",
        *rep.lines(),
        f"general-form null space dim {protocol.general_form_nullity()}",
    ]
    _emit(lines, values["output"])
    return EXIT_OK


_HANDLERS = {
    "validate": _cmd_validate,
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "figure": _cmd_figure,
    "critical": _cmd_critical,
    "verify-appendix": _cmd_verify_appendix,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        values = _merge_config(args)
        return args.handler(values)
    except InfeasibleAttackError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
