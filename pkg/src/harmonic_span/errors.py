"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class HarmonicSpanError(Exception):
    """Base class for all errors raised by this package."""


class UnsupportedModulus(HarmonicSpanError):
    """A modulus falls outside the shapes the log-sine reduction can handle.

    Raised instead of falling back to numerics: for these moduli the
    canonical atom set is not known to be a basis.
    """

    def __init__(self, modulus: int, reason: str = "", index: str | None = None):
        self.modulus = modulus
        self.reason = reason
        self.index = index
        msg = f"unsupported modulus {modulus}"
        if reason:
            msg += f": {reason}"
        if index is not None:
            msg += f" (while decomposing H_{{{index}}})"
        super().__init__(msg)


class PoleError(HarmonicSpanError, ValueError):
    """Evaluation at a pole: H_r at a negative integer, or cot(pi*a/q) with q | a."""


class CyclotomicDivisionByZero(HarmonicSpanError, ZeroDivisionError):
    """Division by the zero element of a cyclotomic field."""


class ConductorError(HarmonicSpanError, ValueError):
    """Embedding into a conductor that is not a multiple of the source conductor."""


class ConductorCapExceeded(HarmonicSpanError):
    """An operation needs a conductor above the active cap."""

    def __init__(self, conductor: int, cap: int):
        self.conductor = conductor
        self.cap = cap
        super().__init__(f"conductor {conductor} exceeds the active cap {cap}")


class InsufficientPrecision(HarmonicSpanError, ValueError):
    """The requested numerical search cannot be trusted at the given precision."""


class InvariantViolation(HarmonicSpanError, AssertionError):
    """An internal consistency check failed (a bug, never a user error)."""
