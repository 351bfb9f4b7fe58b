"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class VFreeError(Exception):
    """Base class for all errors raised by :mod:`vfree`."""


class ParseError(VFreeError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class PreconditionViolated(VFreeError):
    pass


class NoSaturation(VFreeError):
    """No matching covers the requested node set.

    ``witness`` is a set of nodes ``W`` with ``|N(W)| < |W|``.
    """

    def __init__(self, witness: frozenset[int], neighbours: frozenset[int]):
        self.witness = witness
        self.neighbours = neighbours
        super().__init__(
            f"Hall violator of size {len(witness)} with only "
            f"{len(neighbours)} neighbours: {sorted(witness)}")


class NotOddlyUniform(PreconditionViolated):
    pass


class NotQuasiRegular(PreconditionViolated):
    pass


class DegreeBoundViolated(PreconditionViolated):
    def __init__(self, node: tuple[str, int], degree: int, bound: int):
        self.node = node
        super().__init__(f"node {node[0]}{node[1]} has degree {degree} > {bound}")


class InvalidInstance(PreconditionViolated):
    pass


class InternalTheoremViolation(VFreeError):
    """A step that a theorem guarantees to succeed has failed.

    Never expected on valid input; signals a bug.
    """


class InvalidSolution(VFreeError):
    pass


class NotVFree(InvalidSolution):
    def __init__(self, component):
        self.component = component
        super().__init__(f"V-path component {component.describe()}")


class CoverageGap(InvalidSolution):
    def __init__(self, node: tuple[str, int]):
        self.node = node
        super().__init__(f"node {node[0]}{node[1]} is not covered")


class NotPerfectMatching(InvalidSolution):
    def __init__(self, node: str):
        self.node = node
        super().__init__(f"triple set is not a perfect matching at node {node}")


class BudgetExceeded(VFreeError):
    pass


class InfeasibleParams(VFreeError):
    pass
