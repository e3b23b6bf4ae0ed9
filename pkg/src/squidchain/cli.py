"""Command-line front end.

Commands: generate, verify, sweep, compile, simulate-schedule, budget.
Human-readable reports go to stdout; machine artifacts (JSON states,
schedules, CSV curves) only to files named with --out.  Identical
invocations produce byte-identical artifacts: no randomness, no
timestamps.  Exit codes: 0 success with all verification thresholds met,
1 verification or runtime failure, 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

from . import protocol, schedule as sched
from .device import default_device
from .hilbert import StateVector, fidelity
from .noise import NoiseParams, dephasing_sweep, manipulation_budget, timing_sweep
from .protocol import (
    ClusterSpec,
    MAX_QUBITS,
    MIN_QUBITS,
    generate_cluster,
    ideal_cluster,
    stabilizer_expectations,
)

MAX_DEPHASING_QUBITS = 8


@dataclass
class RunReport:
    """Echo of everything needed to reproduce a run, plus its outputs."""

    command: str
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    artifacts: list = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [f"command: {self.command}"]
        for key, value in self.inputs.items():
            out.append(f"input {key}: {value}")
        for key, value in self.outputs.items():
            out.append(f"{key}: {value}")
        for path in self.artifacts:
            out.append(f"artifact: {path}")
        return out

    def emit(self) -> None:
        print("\n".join(self.lines()))


def _fmt(x: float) -> str:
    # repr is the shortest exact round-trip form; CSV artifacts use .17g.
    return repr(float(x))


def _order_text(spec: ClusterSpec) -> str:
    return ",".join(f"{i}-{j}" for i, j in spec.pair_order)


def _parse_order(text: str | None, n: int, parser: argparse.ArgumentParser):
    if text is None:
        return ClusterSpec.chain(n)
    pairs = []
    for chunk in text.split(","):
        bits = chunk.strip().split("-")
        try:
            pairs.append((int(bits[0]), int(bits[1])))
        except (ValueError, IndexError):
            parser.error(f"bad --order entry {chunk!r}; expected like 1-2,2-3")
    try:
        return ClusterSpec.chain(n, pairs)
    except ValueError as exc:
        parser.error(str(exc))


def _parse_grid(text: str, parser: argparse.ArgumentParser) -> list[float]:
    bits = text.split(":")
    if len(bits) != 3:
        parser.error(f"bad --grid {text!r}; expected start:stop:step")
    try:
        start, stop, step = (float(b) for b in bits)
    except ValueError:
        parser.error(f"bad --grid {text!r}; expected numbers")
    if step <= 0:
        parser.error("--grid step must be positive")
    if stop < start:
        parser.error("--grid stop must be >= start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    values = [start + k * step for k in range(count)]
    if not values:
        parser.error("--grid describes an empty grid")
    return values


def _check_n(n: int, parser: argparse.ArgumentParser, cap: int = MAX_QUBITS) -> None:
    if not MIN_QUBITS <= n <= cap:
        parser.error(f"--n must be in {MIN_QUBITS}..{cap}, got {n}")


def _write_json(path: str, doc: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")


def _state_document(state: StateVector, basis: str, spec: ClusterSpec | None) -> dict:
    doc: dict = {"n_qubits": state.n_qubits, "basis": basis}
    if spec is not None:
        doc["pair_order"] = [list(p) for p in spec.pair_order]
    doc["amplitudes"] = protocol.amplitude_pairs(state, basis)
    return doc


def _verification_outputs(state: StateVector, tol: float, report: RunReport) -> bool:
    stabs = stabilizer_expectations(state)
    fid = fidelity(ideal_cluster(state.n_qubits), state)
    report.outputs["fidelity_vs_ideal"] = _fmt(fid)
    report.outputs["stabilizer_expectations"] = " ".join(_fmt(s) for s in stabs)
    passed = fid >= 1.0 - tol and all(abs(s - 1.0) <= tol for s in stabs)
    report.outputs["status"] = "pass" if passed else "fail"
    return passed


def _cmd_generate(args, parser) -> int:
    _check_n(args.n, parser)
    spec = _parse_order(args.order, args.n, parser)
    report = RunReport(
        "generate",
        inputs={
            "n": args.n,
            "order": _order_text(spec),
            "basis": args.basis,
            "tol": _fmt(args.tol),
        },
    )
    state = generate_cluster(spec)
    passed = _verification_outputs(state, args.tol, report)
    if args.out:
        _write_json(args.out, _state_document(state, args.basis, spec))
        report.artifacts.append(args.out)
    report.emit()
    return 0 if passed else 1


def _cmd_verify(args, parser) -> int:
    report = RunReport(
        "verify", inputs={"in": args.infile, "tol": _fmt(args.tol)}
    )
    with open(args.infile, "r", encoding="utf-8") as handle:
        doc = json.load(handle)
    basis = doc.get("basis", "computational")
    state = protocol.state_from_amplitude_pairs(doc["amplitudes"], basis)
    report.inputs["n"] = state.n_qubits
    passed = _verification_outputs(state, args.tol, report)
    report.emit()
    return 0 if passed else 1


def _cmd_sweep(args, parser) -> int:
    cap = MAX_DEPHASING_QUBITS if args.kind == "dephasing" else MAX_QUBITS
    _check_n(args.n, parser, cap)
    spec = _parse_order(args.order, args.n, parser)
    values = _parse_grid(args.grid, parser)
    if args.kind == "dephasing" and values[0] < 0:
        parser.error("dephasing exposures must be >= 0")
    report = RunReport(
        "sweep",
        inputs={
            "kind": args.kind,
            "n": args.n,
            "order": _order_text(spec),
            "grid": args.grid,
        },
    )
    if args.kind == "timing":
        result = timing_sweep(spec, values)
    else:
        result = dephasing_sweep(spec, values)
    result.save_csv(args.out)
    report.outputs["points"] = len(result.parameter_values)
    report.outputs["min_fidelity"] = _fmt(min(result.fidelities))
    report.outputs["max_fidelity"] = _fmt(max(result.fidelities))
    report.outputs["status"] = "pass"
    report.artifacts.append(args.out)
    report.emit()
    return 0


def _cmd_compile(args, parser) -> int:
    _check_n(args.n, parser)
    spec = _parse_order(args.order, args.n, parser)
    if args.device:
        device = sched.load_device_config(args.device)
    else:
        device = default_device(args.n, tau=args.tau_seconds)
    report = RunReport(
        "compile",
        inputs={
            "n": args.n,
            "order": _order_text(spec),
            "device": args.device or f"default(tau={_fmt(args.tau_seconds)}s)",
        },
    )
    compiled = sched.compile_schedule(spec, device)
    sched.save_schedule(compiled, args.out)
    report.outputs["steps"] = len(compiled.steps)
    report.outputs["status"] = "pass"
    report.artifacts.append(args.out)
    report.emit()
    return 0


def _cmd_simulate_schedule(args, parser) -> int:
    report = RunReport(
        "simulate-schedule",
        inputs={"schedule": args.schedule, "tol": _fmt(args.tol), "basis": args.basis},
    )
    loaded = sched.load_schedule(args.schedule)
    state = sched.simulate_schedule(loaded)
    report.inputs["n"] = loaded.target.n_qubits
    passed = _verification_outputs(state, args.tol, report)
    if args.out:
        _write_json(args.out, _state_document(state, args.basis, loaded.target))
        report.artifacts.append(args.out)
    report.emit()
    return 0 if passed else 1


def _cmd_budget(args, parser) -> int:
    report = RunReport(
        "budget",
        inputs={"tau_phi": _fmt(args.tau_phi), "tau_op": _fmt(args.tau_op)},
    )
    noise = NoiseParams(dephasing_time=args.tau_phi, op_time_single=args.tau_op)
    report.outputs["budget"] = manipulation_budget(noise)
    report.outputs["status"] = "pass"
    report.emit()
    return 0


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squidchain",
        description="Sequential linear-cluster-state generation with "
        "inductively coupled charge qubits: simulate, verify, sweep, compile.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="run the protocol and verify the state")
    p.add_argument("--n", type=int, required=True, help="chain length (2..12)")
    p.add_argument("--order", help="bond order, e.g. 2-3,1-2,3-4")
    p.add_argument("--out", help="write amplitudes JSON here")
    p.add_argument("--basis", choices=("computational", "pm"), default="computational")
    p.add_argument("--tol", type=_positive_float, default=1e-9)

    p = sub.add_parser("verify", help="check a state file against the ideal cluster")
    p.add_argument("--in", dest="infile", required=True, help="amplitudes JSON")
    p.add_argument("--tol", type=_positive_float, default=1e-9)

    p = sub.add_parser("sweep", help="fidelity curve over a parameter grid")
    p.add_argument("--kind", choices=("timing", "dephasing"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--order", help="bond order")
    p.add_argument("--grid", required=True, help="start:stop:step, inclusive")
    p.add_argument("--out", required=True, help="CSV path")

    p = sub.add_parser("compile", help="compile a device-control schedule")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--order", help="bond order")
    p.add_argument("--device", help="device config JSON (document with a device section)")
    p.add_argument(
        "--tau-seconds",
        type=_positive_float,
        default=1e-10,
        help="entangling period for the default device",
    )
    p.add_argument("--out", required=True, help="schedule JSON path")

    p = sub.add_parser(
        "simulate-schedule", help="round-trip a schedule through the device model"
    )
    p.add_argument("--schedule", required=True, help="schedule JSON path")
    p.add_argument("--out", help="write the final state JSON here")
    p.add_argument("--basis", choices=("computational", "pm"), default="computational")
    p.add_argument("--tol", type=_positive_float, default=1e-9)

    p = sub.add_parser("budget", help="coherent manipulations before decoherence")
    p.add_argument("--tau-phi", type=_positive_float, default=1e-4, help="dephasing time, s")
    p.add_argument("--tau-op", type=_positive_float, default=1e-10, help="operation time, s")

    return parser


_DISPATCH = {
    "generate": _cmd_generate,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
    "compile": _cmd_compile,
    "simulate-schedule": _cmd_simulate_schedule,
    "budget": _cmd_budget,
}


def _join_grid_values(argv: list[str]) -> list[str]:
    # argparse refuses option values with a leading '-', so fold
    # "--grid -1:1:0.25" into "--grid=-1:1:0.25" before parsing.
    out = []
    skip = False
    for pos, token in enumerate(argv):
        if skip:
            skip = False
            continue
        if token == "--grid" and pos + 1 < len(argv) and argv[pos + 1].startswith("-"):
            out.append(f"--grid={argv[pos + 1]}")
            skip = True
        else:
            out.append(token)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_join_grid_values(list(argv)))
    try:
        return _DISPATCH[args.command](args, parser)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
