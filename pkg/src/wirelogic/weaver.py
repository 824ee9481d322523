"""Compiler from boolean netlists to connection-encoded wiring graphs.

A signal is a pin group rather than a voltage node.  In the 3-pin style a
group is (true rail, ground, inverted rail); a bit is injected by joining
ground to one rail and read back as ground-to-rail reachability.  The
4-pin style carries two pin pairs and reads pair connectivity instead.
Gates are nothing but wiring between groups:

  NOT   swap the rails (one twist)
  AND   true rails chained in series, inverted rails merged in parallel
  OR    the same wiring with true and inverted roles exchanged

Each occurrence of an input variable gets its own fresh pin group; letting
one intermediate group feed two gates would open a reverse-current path,
so that is rejected at compile time (the clock-pulse splitter in
wirelogic.pulse is the sanctioned replacement).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Union

from . import netlist as nl
from .errors import CircuitFormatError, FanOutUnsupported
from .graphsim import Edge, EdgeKind, Graph


class Style(Enum):
    THREE_PIN = "3"
    FOUR_PIN = "4"


@dataclass(frozen=True)
class PinGroup3:
    t: int  # true rail
    g: int  # ground
    f: int  # inverted rail

    def pins(self):
        return (self.t, self.g, self.f)

    def mirrored(self):
        return PinGroup3(t=self.f, g=self.g, f=self.t)


@dataclass(frozen=True)
class PinGroup4:
    tp: int  # true pair
    tm: int
    fp: int  # inverted pair
    fm: int

    def pins(self):
        return (self.tp, self.tm, self.fp, self.fm)

    def mirrored(self):
        return PinGroup4(tp=self.fp, tm=self.fm, fp=self.tp, fm=self.tm)


PinGroup = Union[PinGroup3, PinGroup4]

_SUFFIXES = {
    Style.THREE_PIN: ("T", "G", "F"),
    Style.FOUR_PIN: ("TP", "TM", "FP", "FM"),
}


# ---------------------------------------------------------------------------
# gate wiring (pure edge sets; all undirected)

def not_wiring(a: PinGroup, out: PinGroup) -> list[tuple[int, int]]:
    if isinstance(a, PinGroup4):
        return [(a.tp, out.fp), (a.tm, out.fm), (a.fp, out.tp), (a.fm, out.tm)]
    return [(a.t, out.f), (a.g, out.g), (a.f, out.t)]


def and_wiring(a: PinGroup, b: PinGroup, c: PinGroup) -> list[tuple[int, int]]:
    if isinstance(a, PinGroup4):
        return [
            (c.tp, a.tp), (a.tm, b.tp), (b.tm, c.tm),          # true pairs in series
            (c.fp, a.fp), (a.fm, c.fm), (c.fp, b.fp), (b.fm, c.fm),  # inverted in parallel
        ]
    return [(c.g, a.g), (a.t, b.g), (b.t, c.t), (a.f, c.f), (b.f, c.f)]


def or_wiring(a: PinGroup, b: PinGroup, c: PinGroup) -> list[tuple[int, int]]:
    # exactly the AND wiring with every true/inverted role swapped
    if isinstance(a, PinGroup4):
        return [
            (c.tp, a.tp), (a.tm, c.tm), (c.tp, b.tp), (b.tm, c.tm),
            (c.fp, a.fp), (a.fm, b.fp), (b.fm, c.fm),
        ]
    return [(c.g, a.g), (a.t, c.t), (a.f, b.g), (b.t, c.t), (b.f, c.f)]


# ---------------------------------------------------------------------------
# circuit construction

@dataclass(frozen=True)
class StructuralCircuit:
    graph: Graph
    style: Style
    input_groups: dict  # variable name -> list of PinGroup, one per occurrence
    output_group: PinGroup
    name: str = "circuit"

    def __post_init__(self):
        n = self.graph.count
        for groups in self.input_groups.values():
            if not groups:
                raise ValueError("every input needs at least one pin group")
            for group in groups:
                _check_pins(group, n)
        _check_pins(self.output_group, n)

    @property
    def inputs(self) -> tuple[str, ...]:
        return tuple(self.input_groups)

    def all_groups(self) -> list[PinGroup]:
        """Every pin group in allocation order, rebuilt from the id blocks."""
        width = 4 if self.style is Style.FOUR_PIN else 3
        if self.graph.count % width:
            raise ValueError("vertex count does not divide into pin groups")
        cls = PinGroup4 if self.style is Style.FOUR_PIN else PinGroup3
        return [cls(*range(k, k + width)) for k in range(0, self.graph.count, width)]


def _check_pins(group: PinGroup, count: int) -> None:
    pins = group.pins()
    if len(set(pins)) != len(pins):
        raise ValueError(f"pin group {group} repeats a vertex")
    if any(not 0 <= p < count for p in pins):
        raise ValueError(f"pin group {group} out of range for {count} vertices")


class CircuitBuilder:
    """Allocates labeled pin groups and accumulates gate wiring."""

    def __init__(self, style: Style):
        self.style = style
        self.labels: list[str] = []
        self.edges: list[Edge] = []
        self._gate_counts: dict[str, int] = {}

    def new_group(self, name: str) -> PinGroup:
        base = len(self.labels)
        suffixes = _SUFFIXES[self.style]
        self.labels.extend(f"{name}.{s}" for s in suffixes)
        ids = range(base, base + len(suffixes))
        return PinGroup4(*ids) if self.style is Style.FOUR_PIN else PinGroup3(*ids)

    def _gate_name(self, op: str) -> str:
        self._gate_counts[op] = self._gate_counts.get(op, 0) + 1
        return f"{op}{self._gate_counts[op]}"

    def _wire(self, pairs):
        self.edges.extend(Edge(u, v, EdgeKind.UNDIRECTED) for u, v in pairs)

    def gate_not(self, a: PinGroup) -> PinGroup:
        out = self.new_group(self._gate_name("not"))
        self._wire(not_wiring(a, out))
        return out

    def gate_and(self, a: PinGroup, b: PinGroup) -> PinGroup:
        out = self.new_group(self._gate_name("and"))
        self._wire(and_wiring(a, b, out))
        return out

    def gate_or(self, a: PinGroup, b: PinGroup) -> PinGroup:
        out = self.new_group(self._gate_name("or"))
        self._wire(or_wiring(a, b, out))
        return out

    def graph(self) -> Graph:
        return Graph(tuple(self.labels), tuple(self.edges))


def compile_netlist(net: nl.Netlist, style: Style = Style.THREE_PIN) -> StructuralCircuit:
    """Bottom-up, depth-first compilation; deterministic vertex numbering.

    Every occurrence of a variable gets a fresh input group.  Reusing a
    non-leaf subexpression object would mean one intermediate signal
    driving two gates, which the wiring model cannot do safely; that is
    rejected with FanOutUnsupported.
    """
    builder = CircuitBuilder(style)
    input_groups: dict[str, list[PinGroup]] = {v: [] for v in net.inputs}
    occurrence = dict.fromkeys(net.inputs, 0)
    visited: set[int] = set()

    def walk(e: nl.Expr) -> PinGroup:
        if isinstance(e, nl.Var):
            occurrence[e.name] += 1
            group = builder.new_group(f"{e.name}#{occurrence[e.name]}")
            input_groups[e.name].append(group)
            return group
        if id(e) in visited:
            raise FanOutUnsupported(
                "an intermediate signal drives more than one gate; duplicate the "
                "subexpression or replicate through the clock-pulse splitter"
            )
        visited.add(id(e))
        if isinstance(e, nl.Not):
            return builder.gate_not(walk(e.child))
        left = walk(e.left)
        right = walk(e.right)
        if isinstance(e, nl.And):
            return builder.gate_and(left, right)
        return builder.gate_or(left, right)

    output = walk(net.body)
    return StructuralCircuit(
        graph=builder.graph(),
        style=style,
        input_groups=input_groups,
        output_group=output,
        name=net.name,
    )


# ---------------------------------------------------------------------------
# duality transforms

def mirror(e: nl.Expr) -> nl.Expr:
    """Swap And and Or throughout; Var and Not nodes pass unchanged."""
    if isinstance(e, nl.Var):
        return e
    if isinstance(e, nl.Not):
        return nl.Not(mirror(e.child))
    if isinstance(e, nl.And):
        return nl.Or(mirror(e.left), mirror(e.right))
    return nl.And(mirror(e.left), mirror(e.right))


def mirror_circuit(circuit: StructuralCircuit) -> StructuralCircuit:
    """Exchange true and inverted roles in every pin group; wiring untouched.

    Driving the mirrored circuit with complemented inputs reads the
    complement of the original output, which is De Morgan's law acted out
    by the wiring itself.
    """
    return StructuralCircuit(
        graph=circuit.graph,
        style=circuit.style,
        input_groups={
            var: [g.mirrored() for g in groups]
            for var, groups in circuit.input_groups.items()
        },
        output_group=circuit.output_group.mirrored(),
        name=f"mirror({circuit.name})",
    )


# ---------------------------------------------------------------------------
# text format

def circuit_to_text(circuit: StructuralCircuit) -> str:
    lines = [f"style {circuit.style.value}"]
    for v, label in enumerate(circuit.graph.labels):
        lines.append(f"v {v} {label}")
    for e in circuit.graph.edges:
        lines.append(f"e {e.u} {e.v} {e.kind.value}")
    for var, groups in circuit.input_groups.items():
        for k, group in enumerate(groups, start=1):
            ids = " ".join(str(p) for p in group.pins())
            lines.append(f"in {var} {k} {ids}")
    out_ids = " ".join(str(p) for p in circuit.output_group.pins())
    lines.append(f"out {out_ids}")
    return "\n".join(lines) + "\n"


def circuit_from_text(text: str) -> StructuralCircuit:
    style = None
    labels: dict[int, str] = {}
    edges: list[Edge] = []
    input_groups: dict[str, list[PinGroup]] = {}
    output: PinGroup | None = None

    def parse_group(parts, lineno):
        want = 4 if style is Style.FOUR_PIN else 3
        if style is None:
            raise CircuitFormatError(f"line {lineno}: group before style line")
        if len(parts) != want:
            raise CircuitFormatError(f"line {lineno}: expected {want} pin ids")
        ids = [int(p) for p in parts]
        return PinGroup4(*ids) if style is Style.FOUR_PIN else PinGroup3(*ids)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        tag = parts[0]
        try:
            if tag == "style":
                style = Style(parts[1])
            elif tag == "v":
                labels[int(parts[1])] = " ".join(parts[2:])
            elif tag == "e":
                kind = EdgeKind(parts[3])
                edges.append(Edge(int(parts[1]), int(parts[2]), kind))
            elif tag == "in":
                group = parse_group(parts[3:], lineno)
                input_groups.setdefault(parts[1], []).append(group)
            elif tag == "out":
                output = parse_group(parts[1:], lineno)
            else:
                raise CircuitFormatError(f"line {lineno}: unknown tag {tag!r}")
        except (ValueError, IndexError) as exc:
            raise CircuitFormatError(f"line {lineno}: {raw!r} ({exc})") from None

    if style is None or output is None:
        raise CircuitFormatError("missing style or out line")
    if sorted(labels) != list(range(len(labels))):
        raise CircuitFormatError("vertex ids must be dense from 0")
    graph = Graph(tuple(labels[i] for i in range(len(labels))), tuple(edges))
    return StructuralCircuit(
        graph=graph, style=style, input_groups=input_groups, output_group=output
    )
