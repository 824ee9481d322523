"""Exception types shared across the toolchain."""


class WirelogicError(Exception):
    """Base class for all errors raised by this package."""


class InvalidPair(WirelogicError):
    """A raw signal pair violates the beta == NOT alpha invariant."""


class NetlistSyntaxError(WirelogicError):
    """Netlist text failed to parse."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class MixedPrecedenceError(NetlistSyntaxError):
    """Distinct binary operators chained without parentheses."""


class MissingVariable(WirelogicError):
    """An assignment does not cover exactly the expected variables."""


class ExplicitCapExceeded(WirelogicError):
    """Exhaustive enumeration was requested past the hard input cap."""


class FanOutUnsupported(WirelogicError):
    """An intermediate signal would have to drive more than one gate."""


class InvalidPeriod(WirelogicError):
    """Clock period must be an even integer of at least 2 ticks."""


class LengthMismatch(WirelogicError):
    """Waveform operands must have equal sample counts."""


class InvalidParams(WirelogicError):
    """Physical parameters out of range (non-positive R or C)."""


class LayoutOverflow(WirelogicError):
    """Routed layout exceeds the configured board bounds."""


class UnsupportedWord(WirelogicError):
    """G-code text contains a word outside the supported subset."""

    def __init__(self, word, line_number):
        self.word = word
        self.line_number = line_number
        super().__init__(f"unsupported g-code word {word!r} on line {line_number}")


class CircuitFormatError(WirelogicError):
    """Circuit file text does not match the export format."""
