"""Clock-pulse signal replication.

Wiring two consumers straight onto one signal invites back-current, so a
signal is replicated in time instead: gate it with a square clock and with
the clock's complement, giving two half-period copies whose OR restores
the original exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .dualrail import DualBit, dand, decode, dnot, dor, encode, parse_pair
from .errors import InvalidPeriod, LengthMismatch


@dataclass(frozen=True)
class Waveform:
    """A time-sampled dual-rail signal; period is the nominal tick cycle."""

    period: int
    samples: tuple[DualBit, ...]

    def __post_init__(self):
        if self.period < 1:
            raise InvalidPeriod(f"period must be positive, got {self.period}")
        if not self.samples:
            raise ValueError("waveform needs at least one sample")
        object.__setattr__(self, "samples", tuple(self.samples))

    def __len__(self):
        return len(self.samples)

    def bits(self) -> list[int]:
        return [decode(s) for s in self.samples]


def clock(period: int, length: int) -> Waveform:
    """Square wave: high for the first half of each period, then low."""
    if period < 2 or period % 2:
        raise InvalidPeriod(f"period must be an even integer >= 2, got {period}")
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    half = period // 2
    return Waveform(period, tuple(encode(1 if t % period < half else 0) for t in range(length)))


def constant(bit: int, length: int, period: int = 2) -> Waveform:
    return Waveform(period, tuple(encode(bit) for _ in range(length)))


def random_waveform(rng: random.Random, length: int, period: int = 2) -> Waveform:
    return Waveform(period, tuple(encode(rng.randint(0, 1)) for _ in range(length)))


def _require_same_length(a: Waveform, b: Waveform) -> None:
    if len(a) != len(b):
        raise LengthMismatch(f"waveform lengths differ: {len(a)} vs {len(b)}")


def split(a: Waveform, cp: Waveform) -> tuple[Waveform, Waveform]:
    """Replicate a into two disjoint half-period copies.

    The first copy is a AND cp, the second a AND (NOT cp); at any tick at
    most one of them carries a 1, so no branch ever feeds current back.
    """
    _require_same_length(a, cp)
    first = tuple(dand(s, c) for s, c in zip(a.samples, cp.samples))
    second = tuple(dand(s, dnot(c)) for s, c in zip(a.samples, cp.samples))
    return Waveform(a.period, first), Waveform(a.period, second)


def recover(b: Waveform, c: Waveform) -> Waveform:
    """OR the two split copies back into the original signal."""
    _require_same_length(b, c)
    return Waveform(b.period, tuple(dor(x, y) for x, y in zip(b.samples, c.samples)))


# ---------------------------------------------------------------------------
# text format and display

def waveform_to_text(w: Waveform) -> str:
    lines = [f"period {w.period}"]
    lines.extend(f"{s.alpha} {s.beta}" for s in w.samples)
    return "\n".join(lines) + "\n"


def waveform_from_text(text: str) -> Waveform:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("period"):
        raise ValueError("waveform text must start with a 'period <T>' line")
    period = int(lines[0].split()[1])
    samples = tuple(parse_pair(ln) for ln in lines[1:])
    return Waveform(period, samples)


def timing_diagram(named: list[tuple[str, Waveform]]) -> str:
    """ASCII diagram, one row per signal: '-' marks 1 ticks, '_' marks 0."""
    width = max(len(name) for name, _ in named)
    rows = []
    for name, w in named:
        shape = "".join("-" if bit else "_" for bit in w.bits())
        rows.append(f"{name.ljust(width)} {shape}")
    return "\n".join(rows)
