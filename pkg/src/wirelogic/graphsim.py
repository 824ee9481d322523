"""Reachability engine: graph storage, path-finding DFS, drive application,
output readout, circuit audit and exhaustive oracle verification.

The simulation model: internal gate wiring is undirected, input drives are
directed edges from a group's ground (or plus pin) into the rail selected
by the bit value.  An output reads One when only its true rail is reachable
and Zero when only its inverted rail is; both or neither are fault states
kept as explicit readings so wiring hazards surface instead of hiding.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import TYPE_CHECKING, NamedTuple, Optional, Sequence

from . import netlist as nl
from .errors import ExplicitCapExceeded, MissingVariable

if TYPE_CHECKING:  # pragma: no cover
    from .weaver import PinGroup3, PinGroup4, StructuralCircuit

DEFAULT_SEED = 42  # documented constant for sampled verification
VERIFY_EXHAUSTIVE_CAP = 16
VERIFY_SAMPLES = 10_000


class EdgeKind(Enum):
    UNDIRECTED = "u"
    DIRECTED = "d"


class Edge(NamedTuple):
    u: int
    v: int
    kind: EdgeKind = EdgeKind.UNDIRECTED


@dataclass(frozen=True)
class Graph:
    """Labeled vertices plus a mixed list of undirected and directed edges."""

    labels: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))
        n = len(self.labels)
        for e in self.edges:
            if not (0 <= e.u < n and 0 <= e.v < n):
                raise ValueError(f"edge {e} out of range for {n} vertices")
            if e.u == e.v:
                raise ValueError(f"self-loop on vertex {e.u}")

    @property
    def count(self) -> int:
        return len(self.labels)

    @cached_property
    def _adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[set[int]] = [set() for _ in range(self.count)]
        for e in self.edges:
            adj[e.u].add(e.v)
            if e.kind is EdgeKind.UNDIRECTED:
                adj[e.v].add(e.u)
        return tuple(tuple(sorted(s)) for s in adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Successors of v in ascending vertex-id order."""
        return self._adjacency[v]

    def with_edges(self, extra: Sequence[Edge]) -> "Graph":
        return Graph(self.labels, self.edges + tuple(extra))


Path = list  # vertex ids; consecutive entries joined by a traversable edge


def dfs_path(g: Graph, start: int, goal: int) -> Optional[Path]:
    """Depth-first path search with an explicit stack.

    The stack holds the current path; unvisited neighbors are taken in
    ascending vertex-id order, so results are fully deterministic.
    Returns the discovered path or None.
    """
    if not (0 <= start < g.count and 0 <= goal < g.count):
        raise ValueError(f"query ({start}, {goal}) out of range")
    visited = [False] * g.count
    visited[start] = True
    stack = [start]
    while stack:
        if stack[-1] == goal:
            return list(stack)
        step = None
        for w in g.neighbors(stack[-1]):
            if not visited[w]:
                step = w
                break
        if step is None:
            stack.pop()
        else:
            visited[step] = True
            stack.append(step)
    return None


def path_is_valid(g: Graph, path: Sequence[int]) -> bool:
    """Replay check: every hop follows a traversable edge, no repeats."""
    if len(set(path)) != len(path):
        return False
    return all(b in g.neighbors(a) for a, b in zip(path, path[1:]))


# ---------------------------------------------------------------------------
# readings

class ReadingKind(Enum):
    ZERO = "Zero"
    ONE = "One"
    SHORT_FAULT = "ShortFault"
    OPEN_FAULT = "OpenFault"


@dataclass(frozen=True)
class OutputReading:
    kind: ReadingKind
    true_path: Optional[tuple[int, ...]] = None
    false_path: Optional[tuple[int, ...]] = None

    @property
    def value(self) -> Optional[int]:
        if self.kind is ReadingKind.ONE:
            return 1
        if self.kind is ReadingKind.ZERO:
            return 0
        return None

    @property
    def is_fault(self) -> bool:
        return self.kind in (ReadingKind.SHORT_FAULT, ReadingKind.OPEN_FAULT)

    def __str__(self):
        return self.kind.value


def _classify(true_path, false_path) -> OutputReading:
    tp = tuple(true_path) if true_path else None
    fp = tuple(false_path) if false_path else None
    if tp and fp:
        kind = ReadingKind.SHORT_FAULT
    elif tp:
        kind = ReadingKind.ONE
    elif fp:
        kind = ReadingKind.ZERO
    else:
        kind = ReadingKind.OPEN_FAULT
    return OutputReading(kind, tp, fp)


def _drive_edges(group, bit: int) -> list[Edge]:
    """The directed edge injecting one bit into one occurrence group."""
    if hasattr(group, "tp"):
        return [Edge(group.tp, group.tm, EdgeKind.DIRECTED) if bit
                else Edge(group.fp, group.fm, EdgeKind.DIRECTED)]
    return [Edge(group.g, group.t, EdgeKind.DIRECTED) if bit
            else Edge(group.g, group.f, EdgeKind.DIRECTED)]


def apply_assignment(circuit: "StructuralCircuit", assignment: nl.Assignment) -> Graph:
    """Copy of the circuit graph plus one directed drive edge per occurrence."""
    nl.check_assignment(list(circuit.input_groups), assignment)
    extra = []
    for var, groups in circuit.input_groups.items():
        for group in groups:
            extra.extend(_drive_edges(group, assignment[var]))
    return circuit.graph.with_edges(extra)


def read_output(g: Graph, out) -> OutputReading:
    """Classify an output group by reachability of its two rails."""
    if hasattr(out, "tp"):
        return _classify(dfs_path(g, out.tp, out.tm), dfs_path(g, out.fp, out.fm))
    return _classify(dfs_path(g, out.g, out.t), dfs_path(g, out.g, out.f))


def simulate(circuit: "StructuralCircuit", assignment: nl.Assignment) -> OutputReading:
    return read_output(apply_assignment(circuit, assignment), circuit.output_group)


# ---------------------------------------------------------------------------
# audit (reachability matrix from input drives to output terminals)

@dataclass(frozen=True)
class AuditRow:
    start: str
    end: str
    reachable: bool


@dataclass(frozen=True)
class AuditReport:
    mode: str  # "per-occurrence" or "joint"
    rows: tuple[AuditRow, ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["start", "end", "result"])
        for row in self.rows:
            writer.writerow([row.start, row.end, "O" if row.reachable else "X"])
        return buf.getvalue()


def _group_pins(group) -> list[tuple[str, int]]:
    if hasattr(group, "tp"):
        return [("TP", group.tp), ("TM", group.tm), ("FP", group.fp), ("FM", group.fm)]
    return [("T", group.t), ("G", group.g), ("F", group.f)]


def _terminals(circuit) -> list[int]:
    return [pin for _, pin in _group_pins(circuit.output_group)]


def audit(circuit: "StructuralCircuit", joint: bool = False) -> AuditReport:
    """Reachability matrix from every input drive to every output terminal.

    Per-occurrence mode applies one single drive edge at a time and walks
    from the driven group's injection point.  Joint mode drives all
    occurrence groups of a variable together and starts from the same-role
    pins across those groups, which reproduces the row structure of a
    whole-variable test bench (rows = variables x pin roles x terminals).
    """
    labels = circuit.graph.labels
    rows: list[AuditRow] = []
    if joint:
        for var, groups in circuit.input_groups.items():
            roles = [name for name, _ in _group_pins(groups[0])]
            for role_index, role in enumerate(roles):
                drive_bit = _joint_drive_bit(role)
                extra = []
                if drive_bit is not None:
                    for group in groups:
                        extra.extend(_drive_edges(group, drive_bit))
                driven = circuit.graph.with_edges(extra)
                starts = [_group_pins(g)[role_index][1] for g in groups]
                start_label = ",".join(labels[s] for s in starts)
                for term in _terminals(circuit):
                    ok = any(dfs_path(driven, s, term) is not None for s in starts)
                    rows.append(AuditRow(start_label, labels[term], ok))
        return AuditReport("joint", tuple(rows))

    for var, groups in circuit.input_groups.items():
        for group in groups:
            for bit in (1, 0):
                drive = _drive_edges(group, bit)
                driven = circuit.graph.with_edges(drive)
                start = drive[0].u
                start_label = f"{labels[drive[0].u]},{labels[drive[0].v]}"
                for term in _terminals(circuit):
                    ok = dfs_path(driven, start, term) is not None
                    rows.append(AuditRow(start_label, labels[term], ok))
    return AuditReport("per-occurrence", tuple(rows))


def _joint_drive_bit(role: str) -> Optional[int]:
    # true-rail rows probe the driven-1 network, inverted-rail rows the
    # driven-0 network; ground/minus rows probe the passive wiring alone
    if role in ("T", "TP"):
        return 1
    if role in ("F", "FP"):
        return 0
    return None


# ---------------------------------------------------------------------------
# verification against the netlist oracle

@dataclass(frozen=True)
class VerificationCase:
    assignment: dict
    expected: int
    reading: OutputReading

    @property
    def ok(self) -> bool:
        return self.reading.value == self.expected and not self.reading.is_fault


@dataclass(frozen=True)
class VerificationReport:
    circuit_name: str
    inputs: tuple[str, ...]
    total: int
    mismatches: tuple[VerificationCase, ...]
    faults: tuple[VerificationCase, ...]
    cases: tuple[VerificationCase, ...] = field(repr=False)
    exhaustive: bool = True

    @property
    def passed(self) -> bool:
        return not self.mismatches and not self.faults

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        mode = "exhaustive" if self.exhaustive else "sampled"
        return (
            f"{self.circuit_name}: {status}, "
            f"{self.total - len(self.mismatches)}/{self.total} assignments match "
            f"({mode}; {len(self.faults)} fault readings)"
        )

    def to_csv(self, labels: Sequence[str]) -> str:
        """Rows per (output query, assignment): witness path or X."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["startend"] + list(self.inputs) + ["result"])
        for attr in ("true_path", "false_path"):
            for case in self.cases:
                path = getattr(case.reading, attr)
                result = " ".join(labels[v] for v in path) if path else "X"
                bits = [str(case.assignment[v]) for v in self.inputs]
                writer.writerow([_query_name(attr)] + bits + [result])
        return buf.getvalue()


def _query_name(attr: str) -> str:
    return "out.G->out.T" if attr == "true_path" else "out.G->out.F"


def verify(
    circuit: "StructuralCircuit",
    net: nl.Netlist,
    exhaustive: Optional[bool] = None,
    samples: int = VERIFY_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """Compare circuit readings against netlist evaluation.

    Exhaustive up to VERIFY_EXHAUSTIVE_CAP inputs; beyond that, uniform
    sampling with a fixed seed.  Requesting exhaustive enumeration past
    the cap raises ExplicitCapExceeded.
    """
    names = list(net.inputs)
    if sorted(names) != sorted(circuit.input_groups):
        raise MissingVariable(
            f"circuit inputs {sorted(circuit.input_groups)} differ from "
            f"netlist inputs {sorted(names)}"
        )
    n = len(names)
    if exhaustive is None:
        exhaustive = n <= VERIFY_EXHAUSTIVE_CAP
    if exhaustive and n > VERIFY_EXHAUSTIVE_CAP:
        raise ExplicitCapExceeded(
            f"{n} inputs exceed the exhaustive cap of {VERIFY_EXHAUSTIVE_CAP}"
        )
    if exhaustive:
        assignments = nl.assignments(names)
    else:
        rng = random.Random(seed)
        assignments = [{v: rng.randint(0, 1) for v in names} for _ in range(samples)]

    cases = []
    mismatches = []
    faults = []
    for assignment in assignments:
        case = VerificationCase(
            assignment=assignment,
            expected=nl.evaluate(net, assignment),
            reading=simulate(circuit, assignment),
        )
        cases.append(case)
        if case.reading.is_fault:
            faults.append(case)
        elif case.reading.value != case.expected:
            mismatches.append(case)
    return VerificationReport(
        circuit_name=circuit.name,
        inputs=tuple(names),
        total=len(cases),
        mismatches=tuple(mismatches),
        faults=tuple(faults),
        cases=tuple(cases),
        exhaustive=exhaustive,
    )


# ---------------------------------------------------------------------------
# legacy edge-list export

def export_legacy(g: Graph, start: int) -> str:
    """Directed adjacency-pair format: ``n m``, then one ``v1 v2`` line per
    directed pair (undirected edges become two pairs), then the start
    vertex.  Vertex ids are 1-based to suit 1..n loop conventions.
    """
    pairs = []
    for e in g.edges:
        pairs.append((e.u + 1, e.v + 1))
        if e.kind is EdgeKind.UNDIRECTED:
            pairs.append((e.v + 1, e.u + 1))
    lines = [f"{g.count} {len(pairs)}"]
    lines.extend(f"{u} {v}" for u, v in pairs)
    lines.append(str(start + 1))
    return "\n".join(lines) + "\n"
