"""Exception hierarchy shared by every pastelab module."""
from __future__ import annotations


class PasteLabError(Exception):
    """Base class for all library errors."""


# -- input and structure -----------------------------------------------------

class ParseError(PasteLabError):
    """Malformed scheme file (bad JSON, wrong shapes, unknown dart syntax)."""


class StructureError(PasteLabError):
    """Well-formed file describing an illegal graph."""

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class EmbeddingError(PasteLabError):
    """Rotation data inconsistent with a plane embedding."""


class EmptyWidths(PasteLabError, ValueError):
    pass


class UnknownVertex(PasteLabError, KeyError):
    def __str__(self):
        return f"unknown vertex {self.args[0]!r}"


# -- pasting-scheme validation -------------------------------------------------

class ValidationError(PasteLabError):
    """One violated pasting-scheme condition."""

    def __init__(self, message, data=None):
        self.data = data
        super().__init__(message)

    @property
    def kind(self) -> str:
        return type(self).__name__


class NotAnchorable(ValidationError):
    pass


class MultipleSources(ValidationError):
    """The number of local sources is not one (the list may be empty)."""


class MultipleSinks(ValidationError):
    pass


class CycleFound(ValidationError):
    pass


class PartitionViolation(ValidationError):
    pass


class ProhibitedConfiguration(ValidationError):
    pass


class ExtremaViolation(ValidationError):
    pass


class InvalidScheme(PasteLabError):
    """Aggregate of every violation found while validating one graph."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(f"{e.kind}: {e}" for e in self.errors))

    @property
    def kinds(self) -> list[str]:
        return [e.kind for e in self.errors]


# -- paths and sub-schemes -----------------------------------------------------

class NotParallel(PasteLabError):
    pass


class NotAbove(PasteLabError):
    pass


class NotReachable(PasteLabError):
    pass


class TrivialPath(PasteLabError):
    pass


class NotTopCell(PasteLabError):
    pass


class NotBottomCell(PasteLabError):
    pass


class NotAPath(PasteLabError):
    pass


# -- hom posets ----------------------------------------------------------------

class NotFullPath(PasteLabError):
    pass


class NotInPge(PasteLabError):
    """A cube point violates a directly-above constraint."""


# -- posets, categories, nerves --------------------------------------------------

class NotAPoset(PasteLabError):
    pass


class NotFull(PasteLabError):
    pass


class NotDwyer(PasteLabError):
    pass


class NotMonotone(PasteLabError):
    pass


class NotOneWay(PasteLabError):
    pass


class NotStrictlyBelow(PasteLabError):
    pass


class PreconditionFailed(PasteLabError):
    pass


class NotSubcomplex(PasteLabError):
    pass


# -- computads -------------------------------------------------------------------

class NotAnArrow(PasteLabError):
    pass


class NotBottomAttachable(PasteLabError):
    pass


class NotAnEdge(PasteLabError, KeyError):
    pass
