"""Command-line entry point tying the toolchain together.

Exit codes: 0 success, 1 verification failure or module error, 2 usage
error, 3 fault reading (short or open).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import costmodel, fabricate, graphsim, netlist, pulse, weaver
from .errors import WirelogicError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_FAULT = 3


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _pick_netlist(args) -> netlist.Netlist:
    definitions = netlist.parse_file(_read(args.netlist))
    if not definitions:
        raise WirelogicError(f"no definitions found in {args.netlist}")
    if args.name is None:
        if len(definitions) > 1:
            names = ", ".join(d.name for d in definitions)
            raise WirelogicError(f"file defines {names}; pick one with --name")
        return definitions[0]
    for d in definitions:
        if d.name == args.name:
            return d
    raise WirelogicError(f"no definition named {args.name!r} in {args.netlist}")


def _load_circuit(args) -> weaver.StructuralCircuit:
    return weaver.circuit_from_text(_read(args.circuit))


def _assignment(args) -> dict:
    out = {}
    for item in args.set or []:
        name, _, value = item.partition("=")
        if value not in ("0", "1") or not name:
            raise WirelogicError(f"--set expects VAR=0 or VAR=1, got {item!r}")
        out[name] = int(value)
    return out


def _style(args) -> weaver.Style:
    return weaver.Style(args.style)


# ---------------------------------------------------------------------------
# subcommands

def cmd_parse(args) -> int:
    net = _pick_netlist(args)
    _write(args, netlist.netlist_to_text(net) + "\n")
    return EXIT_OK


def cmd_truth_table(args) -> int:
    net = _pick_netlist(args)
    if args.format == "csv":
        _write(args, netlist.truth_table_csv(net))
    else:
        header = " ".join(net.inputs) + " | out"
        lines = [header, "-" * len(header)]
        for row, value in netlist.truth_table(net):
            lines.append(" ".join(str(row[v]) for v in net.inputs) + f" | {value}")
        _write(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_compile(args) -> int:
    circuit = weaver.compile_netlist(_pick_netlist(args), _style(args))
    _write(args, weaver.circuit_to_text(circuit))
    return EXIT_OK


def cmd_simulate(args) -> int:
    circuit = _load_circuit(args)
    reading = graphsim.simulate(circuit, _assignment(args))
    lines = [str(reading)]
    labels = circuit.graph.labels
    for title, path in (("true", reading.true_path), ("inverted", reading.false_path)):
        if path:
            lines.append(f"{title} rail path: " + " ".join(labels[v] for v in path))
    _write(args, "\n".join(lines) + "\n")
    return EXIT_FAULT if reading.is_fault else EXIT_OK


def cmd_verify(args) -> int:
    circuit = _load_circuit(args)
    net = _pick_netlist(args)
    report = graphsim.verify(circuit, net, samples=args.samples, seed=args.seed)
    if args.format == "csv":
        _write(args, report.to_csv(circuit.graph.labels))
    else:
        _write(args, report.summary() + "\n")
    if report.faults:
        return EXIT_FAULT
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_audit(args) -> int:
    circuit = _load_circuit(args)
    report = graphsim.audit(circuit, joint=args.joint)
    _write(args, report.to_csv())
    return EXIT_OK


def cmd_mirror_check(args) -> int:
    net = _pick_netlist(args)
    mirrored = weaver.mirror(net.body)
    bad = []
    for assignment in netlist.assignments(net.inputs):
        left = netlist.eval_expr(mirrored, netlist.complement(assignment))
        right = 1 - netlist.evaluate(net, assignment)
        if left != right:
            bad.append(assignment)
    total = 1 << len(net.inputs)
    if bad:
        _write(args, f"{net.name}: FAIL, {len(bad)}/{total} assignments violate duality\n")
        return EXIT_FAIL
    _write(args, f"{net.name}: pass, mirror duality holds on {total}/{total} assignments\n")
    return EXIT_OK


def cmd_pulse_demo(args) -> int:
    cp = pulse.clock(args.period, args.length)
    signal = pulse.clock(2 * args.period, args.length)
    first, second = pulse.split(signal, cp)
    restored = pulse.recover(first, second)
    diagram = pulse.timing_diagram([
        ("A", signal), ("CP", cp), ("B", first), ("C", second), ("R", restored),
    ])
    ok = restored == signal
    _write(args, diagram + f"\nrecover(split(A, CP)) == A: {'yes' if ok else 'NO'}\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_cost(args) -> int:
    net = _pick_netlist(args)
    report = costmodel.compare(
        net,
        semiconductor=costmodel.RCParams(args.semi_r, args.semi_c),
        structural=costmodel.RCParams(args.struct_r, args.struct_c),
    )
    _write(args, report.to_csv() if args.format == "csv" else report.to_text())
    return EXIT_OK


def cmd_gcode(args) -> int:
    circuit = _load_circuit(args)
    plan = fabricate.layout(circuit, pitch=args.pitch)
    program = fabricate.emit_gcode(
        plan, feed=args.feed, draw_z=args.draw_z, travel_z=args.travel_z
    )
    if args.svg:
        Path(args.svg).write_text(fabricate.layout_svg(plan), encoding="utf-8")
    _write(args, program.to_text())
    return EXIT_OK


def cmd_export_legacy(args) -> int:
    circuit = _load_circuit(args)
    graph = circuit.graph
    assignment = _assignment(args)
    if assignment:
        graph = graphsim.apply_assignment(circuit, assignment)
    out = circuit.output_group
    start = out.tp if hasattr(out, "tp") else out.g
    _write(args, graphsim.export_legacy(graph, start))
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument wiring

def _add_netlist_args(p):
    p.add_argument("netlist", help="netlist file (one definition per line)")
    p.add_argument("--name", help="definition to use when the file has several")


def _add_output_arg(p):
    p.add_argument("-o", "--output", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wirelogic",
        description="compile, simulate, verify and fabricate structural logic circuits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a netlist and print its canonical form")
    _add_netlist_args(p)
    _add_output_arg(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("truth-table", help="exhaustive oracle table")
    _add_netlist_args(p)
    _add_output_arg(p)
    p.add_argument("--format", choices=("csv", "text"), default="csv")
    p.set_defaults(func=cmd_truth_table)

    p = sub.add_parser("compile", help="compile a netlist to a circuit file")
    _add_netlist_args(p)
    _add_output_arg(p)
    p.add_argument("--style", choices=("3", "4"), default="3")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("simulate", help="read one circuit output for one assignment")
    p.add_argument("circuit", help="compiled circuit file")
    p.add_argument("--set", action="append", metavar="VAR=BIT")
    _add_output_arg(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="compare a circuit against its netlist oracle")
    p.add_argument("circuit")
    _add_netlist_args(p)
    _add_output_arg(p)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--samples", type=int, default=graphsim.VERIFY_SAMPLES)
    p.add_argument("--seed", type=int, default=graphsim.DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("audit", help="input-to-output reachability matrix")
    p.add_argument("circuit")
    p.add_argument("--joint", action="store_true",
                   help="drive all occurrence groups of a variable together")
    _add_output_arg(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("mirror-check", help="verify De Morgan duality for a netlist")
    _add_netlist_args(p)
    _add_output_arg(p)
    p.set_defaults(func=cmd_mirror_check)

    p = sub.add_parser("pulse-demo", help="clock-pulse split and recover diagram")
    p.add_argument("--period", type=int, default=4)
    p.add_argument("--length", type=int, default=16)
    _add_output_arg(p)
    p.set_defaults(func=cmd_pulse_demo)

    p = sub.add_parser("cost", help="device counts and RC delay comparison")
    _add_netlist_args(p)
    _add_output_arg(p)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--semi-r", type=float, default=100.0, help="semiconductor R in ohms")
    p.add_argument("--semi-c", type=float, default=1e-6, help="semiconductor C in farads")
    p.add_argument("--struct-r", type=float, default=1.0, help="structural R in ohms")
    p.add_argument("--struct-c", type=float, default=1e-6, help="structural C in farads")
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("gcode", help="route a circuit and emit plotter g-code")
    p.add_argument("circuit")
    _add_output_arg(p)
    p.add_argument("--pitch", type=float, default=2.0, help="grid pitch in mm")
    p.add_argument("--feed", type=float, default=600.0, help="draw feed in mm/min")
    p.add_argument("--draw-z", type=float, default=0.2)
    p.add_argument("--travel-z", type=float, default=5.0)
    p.add_argument("--svg", help="also write an SVG preview to this path")
    p.set_defaults(func=cmd_gcode)

    p = sub.add_parser("export-legacy", help="directed edge-list format (1-based)")
    p.add_argument("circuit")
    p.add_argument("--set", action="append", metavar="VAR=BIT",
                   help="include drive edges for this assignment")
    _add_output_arg(p)
    p.set_defaults(func=cmd_export_legacy)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except WirelogicError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
