"""Inverse-signal-pair algebra.

One logical bit travels as an ordered pair (alpha, beta) where beta is
always the complement of alpha.  Logic on such pairs needs no devices:
NOT is a component swap, AND and OR act componentwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidPair

Bit = int  # restricted to 0 or 1


@dataclass(frozen=True)
class DualBit:
    """An (alpha, beta) pair carrying one bit; beta == NOT alpha always."""

    alpha: Bit
    beta: Bit

    def __post_init__(self):
        if self.alpha not in (0, 1) or self.beta not in (0, 1):
            raise InvalidPair(f"components must be 0 or 1, got {(self.alpha, self.beta)}")
        if self.beta != 1 - self.alpha:
            raise InvalidPair(f"beta must invert alpha, got {(self.alpha, self.beta)}")

    def __str__(self):
        return f"({self.alpha},{self.beta})"


ZERO = DualBit(0, 1)
ONE = DualBit(1, 0)


def encode(b: Bit) -> DualBit:
    """Lift a plain bit into its inverse-signal pair."""
    if b not in (0, 1):
        raise InvalidPair(f"bit must be 0 or 1, got {b!r}")
    return ONE if b else ZERO


def decode(d: DualBit) -> Bit:
    """The logical value of a pair is its alpha component."""
    return d.alpha


def parse_pair(text: str) -> DualBit:
    """Parse the textual form "(1,0)" used in reports and waveform files.

    This is the single validated deserialization entry point; a pair with
    alpha == beta is rejected with InvalidPair.
    """
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = [p.strip() for p in body.replace(",", " ").split()]
    if len(parts) != 2 or any(p not in ("0", "1") for p in parts):
        raise InvalidPair(f"cannot parse signal pair from {text!r}")
    return DualBit(int(parts[0]), int(parts[1]))


def dnot(a: DualBit) -> DualBit:
    """NOT by swapping the pair components."""
    return DualBit(a.beta, a.alpha)


def dand(a: DualBit, b: DualBit) -> DualBit:
    """AND of alphas; the beta side keeps the invariant via OR."""
    return DualBit(a.alpha & b.alpha, a.beta | b.beta)


def dor(a: DualBit, b: DualBit) -> DualBit:
    """OR of alphas; the beta side keeps the invariant via AND."""
    return DualBit(a.alpha | b.alpha, a.beta & b.beta)
