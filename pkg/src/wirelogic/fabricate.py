"""Conductive-trace layout and plotter G-code emission.

The router places each pin group as a vertical column on a pitch grid
(ground row at the bottom, so the signal-rail twist of a NOT gate costs a
single crossing) and runs every graph edge as an orthogonal staple: a
short exit foot, a riser, a private horizontal track above the pin field,
and a descent into the target pin.  Fan offsets and track heights are
chosen so traces of different nets never touch; where they must cross,
the crossing is recorded as a bridge and plotted as a pen-up hop, since
single-layer conductive ink cannot cross nets wet.

All geometry is computed on an integer quarter-pitch grid, then emitted
in millimetres rounded to 0.01 mm; keep the pitch at 0.1 mm or more so
rounding cannot merge distinct coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import LayoutOverflow, UnsupportedWord
from .weaver import PinGroup4, StructuralCircuit, Style

# grid constants in quarter-pitch quanta
_Q_PER_PITCH = 4
_GROUP_SPACING = 32      # 8 * pitch between group columns
_MARGIN = 16             # 4 * pitch left margin
_FAN_STEP = 2            # pitch/2 between riser offsets in one fan
_STUB_LEN = 1            # pitch/4 pad stub below each pin
_OVER_RISE = 2           # pitch/2 detour row for a second arrival at a pin
_TRACK_CLEAR = 6         # 1.5 * pitch between top pin row and first track
_TRACK_STEP = 4          # one pitch between tracks

_ROWS3 = {0: 12, 1: 4, 2: 8}        # vertex offset within group -> row (t, g, f)
_ROWS4 = {0: 16, 1: 12, 2: 8, 3: 4}  # tp, tm, fp, fm

Point = tuple[float, float]


@dataclass(frozen=True)
class Bridge:
    trace_index: int     # the trace that hops (drawn later of the two)
    segment_index: int   # segment of that trace containing the crossing
    x: float
    y: float


@dataclass(frozen=True)
class Layout:
    pitch: float
    traces: tuple[tuple[Point, ...], ...]
    bridges: tuple[Bridge, ...]


def _mm(q: int, pitch: float) -> float:
    return round(q * pitch / _Q_PER_PITCH, 2)


def layout(
    circuit: StructuralCircuit,
    pitch: float = 2.0,
    max_width: float = 2000.0,
    max_height: float = 2000.0,
) -> Layout:
    """Route a compiled circuit onto the grid; deterministic throughout."""
    if pitch <= 0:
        raise ValueError(f"pitch must be positive, got {pitch}")
    groups = circuit.all_groups()
    width = 4 if circuit.style is Style.FOUR_PIN else 3
    rows = _ROWS4 if circuit.style is Style.FOUR_PIN else _ROWS3

    def column(v):
        return _MARGIN + (v // width) * _GROUP_SPACING

    def row(v):
        return rows[v % width]

    # canonical orientation: lower column is the source side
    edges = []
    for index, e in enumerate(circuit.graph.edges):
        u, v = e.u, e.v
        if column(u) == column(v):
            raise ValueError("cannot route an edge inside a single pin group")
        if column(u) > column(v):
            u, v = v, u
        edges.append((index, u, v))

    arrivals: dict[int, list[int]] = {}
    for index, u, v in edges:
        arrivals.setdefault(v, []).append(index)

    # fan slots per group side; top rows take the smallest offsets so a
    # riser from a lower pin clears the feet of the pins above it
    east: dict[int, list] = {}
    west: dict[int, list] = {}
    for index, u, v in edges:
        east.setdefault(u // width, []).append((-row(u), index))
        west.setdefault(v // width, []).append((-row(v), index))
    east_off = {}
    west_off = {}
    for fan, out in ((east, east_off), (west, west_off)):
        for members in fan.values():
            members.sort()
            for slot, (_, index) in enumerate(members):
                out[index] = (slot + 1) * _FAN_STEP

    # private track row per edge; narrow spans sit low so nested staples
    # never cross
    spans = {}
    for index, u, v in edges:
        spans[index] = (column(u) + east_off[index], column(v) - west_off[index])
    top_row = max(rows.values())
    track_y = {}
    order = sorted(spans, key=lambda i: (spans[i][1] - spans[i][0], i))
    for rank, index in enumerate(order):
        track_y[index] = top_row + _TRACK_CLEAR + rank * _TRACK_STEP

    qtraces: list[list[tuple[int, int]]] = []
    for v in range(circuit.graph.count):
        x, y = column(v), row(v)
        qtraces.append([(x, y - _STUB_LEN), (x, y)])
    for index, u, v in sorted(edges):
        x0, y0 = column(u), row(u)
        x1, y1 = column(v), row(v)
        xr0 = x0 + east_off[index]
        xr1 = x1 - west_off[index]
        ty = track_y[index]
        pts = [(x0, y0), (xr0, y0), (xr0, ty), (xr1, ty)]
        if arrivals[v].index(index) == 0:
            pts += [(xr1, y1), (x1, y1)]
        else:
            # second arrival at this pin: detour above and drop straight in
            over = y1 + _OVER_RISE
            pts += [(xr1, over), (x1, over), (x1, y1)]
        qtraces.append(pts)

    max_x = max(x for pts in qtraces for x, _ in pts) + _MARGIN
    max_y = (max(track_y.values()) if track_y else top_row) + _TRACK_STEP
    if _mm(max_x, pitch) > max_width or _mm(max_y, pitch) > max_height:
        raise LayoutOverflow(
            f"routed board {_mm(max_x, pitch)} x {_mm(max_y, pitch)} mm exceeds "
            f"bound {max_width} x {max_height} mm"
        )

    bridges = _scan_crossings(qtraces, pitch)
    traces = tuple(
        tuple((_mm(x, pitch), _mm(y, pitch)) for x, y in pts) for pts in qtraces
    )
    return Layout(pitch=pitch, traces=traces, bridges=bridges)


def _segments(points):
    return list(zip(points, points[1:]))


def _classify_pair(p1, p2, q1, q2):
    """Intersection of two axis-aligned segments: proper / touch / overlap."""
    (ax1, ay1), (ax2, ay2) = sorted((p1, p2))
    (bx1, by1), (bx2, by2) = sorted((q1, q2))
    a_vert = ax1 == ax2
    b_vert = bx1 == bx2
    if a_vert == b_vert:
        if a_vert:
            if ax1 != bx1:
                return None
            lo, hi = max(ay1, by1), min(ay2, by2)
        else:
            if ay1 != by1:
                return None
            lo, hi = max(ax1, bx1), min(ax2, bx2)
        if lo > hi:
            return None
        if lo == hi:
            return ("touch", (ax1, lo) if a_vert else (lo, ay1))
        return ("overlap", None)
    if b_vert:  # let segment a be the vertical one
        (ax1, ay1, ax2, ay2), (bx1, by1, bx2, by2) = (bx1, by1, bx2, by2), (ax1, ay1, ax2, ay2)
    if not (bx1 <= ax1 <= bx2 and ay1 <= by1 <= ay2):
        return None
    point = (ax1, by1)
    if ay1 < by1 < ay2 and bx1 < ax1 < bx2:
        return ("proper", point)
    return ("touch", point)


def _scan_crossings(qtraces, pitch) -> tuple[Bridge, ...]:
    indexed = []
    for ti, pts in enumerate(qtraces):
        for si, (p0, p1) in enumerate(_segments(pts)):
            indexed.append((ti, si, p0, p1))
    bridges = []
    for a in range(len(indexed)):
        ti, si, p0, p1 = indexed[a]
        for b in range(a + 1, len(indexed)):
            tj, sj, q0, q1 = indexed[b]
            if ti == tj and abs(si - sj) <= 1:
                continue  # consecutive segments share their corner
            hit = _classify_pair(p0, p1, q0, q1)
            if hit is None:
                continue
            kind, point = hit
            if kind == "proper":
                if tj >= ti:
                    hop_t, hop_s = tj, sj
                else:
                    hop_t, hop_s = ti, si
                bridges.append((hop_t, hop_s, point))
            elif kind == "overlap":
                raise RuntimeError("router produced overlapping trace segments")
            else:
                ends_a = point in (p0, p1)
                ends_b = point in (q0, q1)
                if not (ends_a and ends_b):
                    raise RuntimeError(f"router produced a mid-segment touch at {point}")
    bridges.sort()
    return tuple(
        Bridge(t, s, _mm(x, pitch), _mm(y, pitch)) for t, s, (x, y) in bridges
    )


# ---------------------------------------------------------------------------
# G-code

@dataclass(frozen=True)
class GCodeCommand:
    word: str  # G21, G90, G0 or G1
    x: Optional[float] = None
    y: Optional[float] = None
    z: Optional[float] = None
    feed: Optional[float] = None

    def to_line(self) -> str:
        if self.word in ("G21", "G90"):
            return self.word
        if self.word == "G0":
            return f"G0 X{self.x:.2f} Y{self.y:.2f} Z{self.z:.2f}"
        return f"G1 X{self.x:.2f} Y{self.y:.2f} F{self.feed:.2f}"


@dataclass(frozen=True)
class GCodeProgram:
    commands: tuple[GCodeCommand, ...]

    def to_text(self) -> str:
        return "\n".join(c.to_line() for c in self.commands) + "\n"


def emit_gcode(
    plan: Layout, feed: float = 600.0, draw_z: float = 0.2, travel_z: float = 5.0
) -> GCodeProgram:
    """Plot every trace; at each bridge raise the pen, pass over, drop back."""
    if feed <= 0:
        raise ValueError(f"feed must be positive, got {feed}")
    if travel_z <= draw_z:
        raise ValueError(f"travel_z {travel_z} must exceed draw_z {draw_z}")
    hop = round(plan.pitch / 4, 2)
    hops = _hop_windows(plan, hop)
    out = [GCodeCommand("G21"), GCodeCommand("G90")]
    for ti, pts in enumerate(plan.traces):
        x0, y0 = pts[0]
        out.append(GCodeCommand("G0", x=x0, y=y0, z=travel_z))
        out.append(GCodeCommand("G0", x=x0, y=y0, z=draw_z))
        for si, (a, b) in enumerate(_segments(pts)):
            for (hx0, hy0), (hx1, hy1) in hops.get((ti, si), ()):
                out.append(GCodeCommand("G1", x=hx0, y=hy0, feed=feed))
                out.append(GCodeCommand("G0", x=hx0, y=hy0, z=travel_z))
                out.append(GCodeCommand("G0", x=hx1, y=hy1, z=travel_z))
                out.append(GCodeCommand("G0", x=hx1, y=hy1, z=draw_z))
            out.append(GCodeCommand("G1", x=b[0], y=b[1], feed=feed))
        xl, yl = pts[-1]
        out.append(GCodeCommand("G0", x=xl, y=yl, z=travel_z))
    return GCodeProgram(tuple(out))


def _hop_windows(plan: Layout, hop: float):
    """Per (trace, segment): merged pen-up intervals ordered along travel."""
    per_segment: dict[tuple[int, int], list[float]] = {}
    for bridge in plan.bridges:
        pts = plan.traces[bridge.trace_index]
        ax, ay = pts[bridge.segment_index]
        # one coordinate difference is zero on an axis-aligned segment
        along = abs(bridge.x - ax) + abs(bridge.y - ay)
        per_segment.setdefault((bridge.trace_index, bridge.segment_index), []).append(along)
    windows = {}
    for (ti, si), positions in per_segment.items():
        pts = plan.traces[ti]
        (ax, ay), (bx, by) = pts[si], pts[si + 1]
        length = abs(bx - ax) + abs(by - ay)
        ux = (bx - ax) / length
        uy = (by - ay) / length
        spans: list[list[float]] = []
        for c in sorted(positions):
            lo, hi = max(c - hop, 0.0), min(c + hop, length)
            if spans and lo <= spans[-1][1]:
                spans[-1][1] = hi
            else:
                spans.append([lo, hi])
        windows[(ti, si)] = [
            (
                (round(ax + ux * lo, 2), round(ay + uy * lo, 2)),
                (round(ax + ux * hi, 2), round(ay + uy * hi, 2)),
            )
            for lo, hi in spans
        ]
    return windows


def parse_gcode(text: str) -> GCodeProgram:
    """Strict parser for the emitted subset; anything else is rejected."""
    commands = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        words = line.split()
        head = words[0]
        if head in ("G21", "G90"):
            if len(words) > 1:
                raise UnsupportedWord(words[1], lineno)
            commands.append(GCodeCommand(head))
            continue
        if head not in ("G0", "G1"):
            raise UnsupportedWord(head, lineno)
        wanted = "XYZ" if head == "G0" else "XYF"
        values = {}
        for word in words[1:]:
            letter = word[0]
            if letter not in wanted or letter in values:
                raise UnsupportedWord(word, lineno)
            try:
                values[letter] = float(word[1:])
            except ValueError:
                raise UnsupportedWord(word, lineno) from None
        if sorted(values) != sorted(wanted):
            raise UnsupportedWord(head, lineno)
        if head == "G0":
            commands.append(GCodeCommand("G0", x=values["X"], y=values["Y"], z=values["Z"]))
        else:
            commands.append(GCodeCommand("G1", x=values["X"], y=values["Y"], feed=values["F"]))
    return GCodeProgram(tuple(commands))


# ---------------------------------------------------------------------------
# SVG preview

def layout_svg(plan: Layout) -> str:
    """Minimal preview: traces as polylines, bridges as circles."""
    xs = [x for pts in plan.traces for x, _ in pts] or [0.0]
    ys = [y for pts in plan.traces for _, y in pts] or [0.0]
    pad = plan.pitch
    x0, y0 = min(xs) - pad, min(ys) - pad
    w, h = max(xs) - x0 + pad, max(ys) - y0 + pad
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0:.2f} {y0:.2f} {w:.2f} {h:.2f}">'
    ]
    for pts in plan.traces:
        path = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
        parts.append(
            f'<polyline points="{path}" fill="none" stroke="black" stroke-width="0.2"/>'
        )
    for b in plan.bridges:
        parts.append(
            f'<circle cx="{b.x:.2f}" cy="{b.y:.2f}" r="{plan.pitch / 4:.2f}" '
            'fill="none" stroke="red" stroke-width="0.2"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
