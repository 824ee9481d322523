"""wirelogic: structural logic circuits built from wiring alone.

Boolean netlists compile to dual-rail pin-group wiring graphs in which a
gate is nothing but connection topology; simulation is graph reachability,
verification is exhaustive comparison against the boolean oracle, and the
result can be costed and plotted as conductive-ink G-code.
"""

from . import costmodel, dualrail, errors, fabricate, graphsim, netlist, pulse, weaver

__all__ = [
    "costmodel",
    "dualrail",
    "errors",
    "fabricate",
    "graphsim",
    "netlist",
    "pulse",
    "weaver",
]

__version__ = "0.1.0"
