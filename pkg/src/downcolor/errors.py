"""Exception types shared across the package."""

from __future__ import annotations


class DowncolorError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(DowncolorError, ValueError):
    """Malformed textual input.

    `line` is the 1-based line number of the offending line, when known.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CyclicGraphError(DowncolorError, ValueError):
    """An operation that requires an acyclic digraph met a cycle.

    `cycle` names one offending cycle as a list of vertex labels
    (closed: first label repeated at the end).
    """

    def __init__(self, cycle: list[str]):
        super().__init__("digraph contains a cycle: " + " -> ".join(cycle))
        self.cycle = cycle


class ColoringError(DowncolorError, ValueError):
    """A coloring failed validation against a digraph or hypergraph.

    For down-coloring violations `witness` is a triple of labels
    (u, v, w): u and v share a color but both lie in the closed
    down-set of w.
    """

    def __init__(self, message: str, witness: tuple[str, str, str] | None = None):
        super().__init__(message)
        self.witness = witness


class CapExceededError(DowncolorError, RuntimeError):
    """An exact search refused to start (vertex cap) or gave up (budget).

    When a search ran out of budget, `partial` holds the best coloring
    found so far and `lower`/`upper` bracket the true optimum.
    """

    def __init__(self, message: str, partial=None, lower: int | None = None,
                 upper: int | None = None):
        super().__init__(message)
        self.partial = partial
        self.lower = lower
        self.upper = upper


class BibdError(DowncolorError, ValueError):
    """A block system failed BIBD validation.

    `reason` is one of "non-uniform-block-size", "non-constant-replication",
    "non-constant-pair-coverage".
    """

    def __init__(self, message: str, reason: str):
        super().__init__(message)
        self.reason = reason
