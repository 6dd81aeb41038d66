"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class DSTError(Exception):
    """Base class for all errors raised by sotif_dst."""


# frame
class FrameError(DSTError, ValueError):
    pass


class DuplicateLabel(FrameError):
    pass


class EmptyLabel(FrameError):
    pass


class FrameTooLarge(FrameError):
    pass


class FrameTooLargeForEnumeration(FrameError):
    pass


class UnknownLabel(FrameError, KeyError):
    def __str__(self) -> str:  # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""


class FrameMismatch(FrameError):
    pass


# mass functions
class MassError(DSTError, ValueError):
    pass


class EmptySetMass(MassError):
    pass


class NotNormalized(MassError):
    pass


class NegativeMass(MassError):
    pass


class AllMassOnEmptySet(MassError):
    pass


# combination
class EmptyList(DSTError, ValueError):
    pass


class TotalConflict(DSTError, ArithmeticError):
    """Dempster's rule is undefined because the conflict coefficient is 1.

    ``step`` is the index (in the folded list) of the mass function whose
    combination with the running result hit total conflict, or ``None`` for
    a plain pairwise call. ``source`` is filled in by scenario fusion.
    """

    def __init__(self, message: str, *, step: int | None = None, source: str | None = None):
        super().__init__(message)
        self.step = step
        self.source = source


# scenario
class ScenarioError(DSTError):
    pass


class ParseError(ScenarioError):
    def __init__(self, message: str, *, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class SchemaError(ScenarioError):
    pass


class ValidationError(ScenarioError):
    """One or more domain-invariant violations found while loading a scenario.

    ``findings`` lists every violation, not just the first one.
    """

    def __init__(self, findings):
        self.findings = list(findings)
        super().__init__("; ".join(str(f) for f in self.findings))


class CyclicGraph(ScenarioError, ValueError):
    def __init__(self, cycle: list[str]):
        super().__init__("cycle " + "->".join(cycle))
        self.cycle = cycle


class UnknownState(ScenarioError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class UnknownSource(ScenarioError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


# analysis
class AnalysisError(DSTError, ValueError):
    pass


class EmptyInput(AnalysisError):
    pass


class DegenerateThresholds(AnalysisError):
    pass


class OutOfRange(AnalysisError):
    pass
