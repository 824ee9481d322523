"""Device-count and propagation-delay comparison.

A semiconductor realization needs one switching transistor per input,
two per simple logic operation (AND/OR) and one per NOT; the wiring
realization needs only the input switches.  Delay is compared through the
RC time constant of each technology's parameters.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from . import netlist as nl
from .errors import InvalidParams


@dataclass(frozen=True)
class GateCounts:
    inputs: int        # distinct input signals
    simple_ops: int    # AND and OR nodes in the desugared tree
    inverters: int     # NOT nodes

    def __post_init__(self):
        if min(self.inputs, self.simple_ops, self.inverters) < 0:
            raise ValueError(f"counts must be non-negative: {self}")


@dataclass(frozen=True)
class RCParams:
    resistance: float   # ohms
    capacitance: float  # farads

    def __post_init__(self):
        if self.resistance <= 0 or self.capacitance <= 0:
            raise InvalidParams(f"resistance and capacitance must be > 0: {self}")


def counts_from_netlist(net: nl.Netlist) -> GateCounts:
    simple_ops = 0
    inverters = 0

    def walk(e):
        nonlocal simple_ops, inverters
        if isinstance(e, nl.Var):
            return
        if isinstance(e, nl.Not):
            inverters += 1
            walk(e.child)
            return
        simple_ops += 1
        walk(e.left)
        walk(e.right)

    walk(net.body)
    return GateCounts(inputs=len(net.inputs), simple_ops=simple_ops, inverters=inverters)


def semiconductor_devices(c: GateCounts) -> int:
    return c.inputs + 2 * c.simple_ops + c.inverters


def structural_devices(c: GateCounts) -> int:
    # only the input switches remain; the logic itself is wiring
    return c.inputs


def rc_delay(p: RCParams) -> float:
    """Time constant of an RC stage, in seconds."""
    return p.resistance * p.capacitance


@dataclass(frozen=True)
class CostReport:
    circuit_name: str
    counts: GateCounts
    input_occurrences: int
    semiconductor_devices: int
    structural_devices: int
    device_ratio: float
    semiconductor_delay: float
    structural_delay: float
    structural_dominates: bool

    def to_text(self) -> str:
        c = self.counts
        return "\n".join([
            f"circuit:               {self.circuit_name}",
            f"inputs (distinct):     {c.inputs}",
            f"input occurrences:     {self.input_occurrences}",
            f"simple ops (AND/OR):   {c.simple_ops}",
            f"inverters (NOT):       {c.inverters}",
            f"semiconductor devices: {self.semiconductor_devices}",
            f"structural devices:    {self.structural_devices}",
            f"device ratio:          {self.device_ratio:.3f}",
            f"semiconductor delay:   {self.semiconductor_delay:.6e} s",
            f"structural delay:      {self.structural_delay:.6e} s",
            f"structural dominates:  {'yes' if self.structural_dominates else 'no'}",
        ]) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([
            "circuit", "inputs", "occurrences", "simple_ops", "inverters",
            "semiconductor_devices", "structural_devices", "device_ratio",
            "semiconductor_delay_s", "structural_delay_s", "structural_dominates",
        ])
        writer.writerow([
            self.circuit_name, self.counts.inputs, self.input_occurrences,
            self.counts.simple_ops, self.counts.inverters,
            self.semiconductor_devices, self.structural_devices,
            f"{self.device_ratio:.6f}",
            f"{self.semiconductor_delay:.6e}", f"{self.structural_delay:.6e}",
            int(self.structural_dominates),
        ])
        return buf.getvalue()


def compare(net: nl.Netlist, semiconductor: RCParams, structural: RCParams) -> CostReport:
    counts = counts_from_netlist(net)
    semi_devices = semiconductor_devices(counts)
    struct_devices = structural_devices(counts)
    tau_semi = rc_delay(semiconductor)
    tau_struct = rc_delay(structural)
    return CostReport(
        circuit_name=net.name,
        counts=counts,
        input_occurrences=nl.occurrences(net.body),
        semiconductor_devices=semi_devices,
        structural_devices=struct_devices,
        device_ratio=semi_devices / struct_devices if struct_devices else float("inf"),
        semiconductor_delay=tau_semi,
        structural_delay=tau_struct,
        structural_dominates=struct_devices <= semi_devices and tau_struct <= tau_semi,
    )
