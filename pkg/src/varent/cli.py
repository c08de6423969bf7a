"""
Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error,
3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import sweeps, verify
from .circuits import circuit_to_dict, load_circuit, run
from .entanglement import entanglement_grid_oracle, entanglement_schmidt_oracle
from .errors import ConfigurationError, VarentError
from .graphs import load_edge_list, verify_degree_formula
from .measurement import DEFAULT_SHOTS, estimate_state_entanglement

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt(x) -> str:
    return f"{x:.12g}" if isinstance(x, float) else str(x)


def cmd_sweep(args) -> int:
    if args.config:
        with open(args.config) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigurationError(f"{args.config}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
        config = sweeps.SweepConfig.from_dict(data)
    else:
        config = sweeps.PRESETS[args.preset]
    config = sweeps.with_overrides(
        config, shots=args.shots, seed=args.seed, n_qubits=args.qubits, qubit=args.qubit
    )
    result = sweeps.run_sweep(config, workers=args.workers)
    _emit(sweeps.to_json(result) if args.format == "json" else sweeps.to_csv(result), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify.SUITES[args.suite]()
    _emit(json.dumps(report, indent=2) + "\n", args.output)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def estimate_report(circuit, qubit: int, shots: int, seed: int, resolution: int | None = None) -> dict:
    state = run(circuit)
    est = estimate_state_entanglement(state, qubit, shots, seed)
    report = {
        "qubit": qubit,
        "shots": shots,
        "seed": seed,
        "e_exact": entanglement_schmidt_oracle(state, qubit),
        "e_sampled": est.value,
        "std_error": est.std_error,
    }
    for name, comp in zip(("sx", "sy", "sz"), est.components):
        report[name] = comp.mean
        report[f"{name}_std_error"] = comp.std_error
    if resolution is not None:
        report["e_grid"] = entanglement_grid_oracle(state, qubit, resolution)
        report["grid_resolution"] = resolution
    return report


def cmd_estimate(args) -> int:
    circuit = load_circuit(args.circuit)
    report = estimate_report(circuit, args.qubit, args.shots, args.seed, args.resolution)
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        text = "".join(f"{k}: {_fmt(v)}\n" for k, v in report.items())
    _emit(text, args.output)
    return EXIT_OK


def cmd_graph(args) -> int:
    graph = load_edge_list(args.edges)
    theta = sweeps.parse_angle(args.theta)
    phi = sweeps.parse_angle(args.phi)
    report = verify_degree_formula(graph, theta, phi)
    if args.format == "json":
        text = json.dumps(
            {
                "theta": theta,
                "phi": phi,
                "max_difference": report.max_difference,
                "passed": report.max_difference < verify.GRAPH_TOL,
                "vertices": [vars(r) for r in report.records],
            },
            indent=2,
        ) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["vertex", "degree", "e_closed_form", "e_simulated", "abs_difference"])
        for r in report.records:
            writer.writerow([r.vertex, r.degree, _fmt(r.e_closed_form), _fmt(r.e_simulated), _fmt(r.abs_difference)])
        text = buf.getvalue()
    _emit(text, args.output)
    return EXIT_OK if report.max_difference < verify.GRAPH_TOL else EXIT_FAIL


def cmd_circuit(args) -> int:
    config = sweeps.with_overrides(sweeps.PRESETS[args.preset], n_qubits=args.qubits)
    circuit = config.circuit_at(sweeps.parse_angle(args.value))
    _emit(json.dumps(circuit_to_dict(circuit), indent=2) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="varent", description="Single-qubit geometric entanglement in layered RY/CP circuits."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="run a parameter sweep")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=sorted(sweeps.PRESETS))
    src.add_argument("--config", help="sweep config JSON file")
    p.add_argument("--shots", type=int, help="shots per axis (0 skips sampling)")
    p.add_argument("--seed", type=int)
    p.add_argument("--qubits", type=int, help="register size override")
    p.add_argument("--qubit", type=int, help="target qubit override")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument("suite", choices=sorted(verify.SUITES))
    p.add_argument("--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("estimate", help="exact and sampled entanglement of one qubit")
    p.add_argument("--circuit", required=True, help="circuit description JSON file")
    p.add_argument("--qubit", type=int, required=True)
    p.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--resolution", type=int, help="also run the grid oracle at this resolution")
    p.add_argument("--output")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("graph", help="check the vertex-degree formula on a graph state")
    p.add_argument("--edges", required=True, help="edge-list file")
    p.add_argument("--theta", required=True)
    p.add_argument("--phi", required=True)
    p.add_argument("--output")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("circuit", help="write the circuit of a sweep preset at one parameter value")
    p.add_argument("--preset", choices=sorted(sweeps.PRESETS), required=True)
    p.add_argument("--value", required=True, help="swept parameter value, e.g. pi/2")
    p.add_argument("--qubits", type=int)
    p.add_argument("--output")
    p.set_defaults(func=cmd_circuit)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (VarentError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
