"""Exception hierarchy shared by all revgate modules."""

from __future__ import annotations


class RevGateError(Exception):
    """Base class for every error raised by this package."""


class EncodingError(RevGateError, ValueError):
    """A symbol, word or index is outside the declared alphabet/length."""


class GateMismatchError(RevGateError, ValueError):
    """Two gates cannot be combined (different alphabet or arity)."""


class TableSizeError(RevGateError):
    """A dense image table would exceed the configured cap."""


class CircuitError(RevGateError, ValueError):
    """A circuit is malformed (bad wires, missing names, wrong widths)."""


class AncillaViolation(RevGateError):
    """Some input assignment leaves an ancilla away from its initial symbol.

    ``witness`` is the offending input word (internal symbols), ``wire`` the
    ancilla wire that failed, ``expected``/``found`` its initial and final symbol.
    """

    def __init__(self, message, witness=None, wire=None, expected=None, found=None):
        super().__init__(message)
        self.witness = witness
        self.wire = wire
        self.expected = expected
        self.found = found


class NotInClassError(RevGateError):
    """The target gate is not a member of the requested gate class."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DisconnectedError(RevGateError):
    """A transposition would cross components of the adjacency graph."""


class NoWitnessError(RevGateError):
    """No tensor-power witness exists (the gate has m(F) = 0)."""


class NoFixedPointError(RevGateError):
    """A gate offered to single-generator combination has no fixed point."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class BudgetExceeded(RevGateError):
    """An oracle search ran past its element/point budget."""


class PreconditionError(RevGateError, ValueError):
    """An operation was called outside its stated domain (e.g. ``k < 3``)."""
