# vortex/exceptions.py
from __future__ import annotations

from typing import Any, Optional


class VortexError(ValueError):
    """Base class for every error raised by the vortex library."""


class MalformedComplexError(VortexError):
    """A cell references something that is not in its complex."""


class ComplexParseError(MalformedComplexError):
    """
    A complex file does not conform to the .cx format.

    `locus` is the element path inside the document, e.g. "edges[3]".
    """

    def __init__(self, message: str, locus: str = "") -> None:
        self.locus = locus
        super().__init__(f"{locus}: {message}" if locus else message)


class IncompatibleSpaceError(VortexError):
    """Two complexes disagree about the coordinates of a shared vertex id."""


class EmbeddingError(VortexError):
    """The straight-line drawing is not a planar embedding."""


class NotAVortexError(VortexError):
    def __init__(self, message: str, pair: Optional[tuple[Any, Any]] = None) -> None:
        self.pair = pair
        super().__init__(message)


class NotAShapeError(VortexError):
    pass


class NotANerveError(VortexError):
    pass


class NotPathConnectedError(NotANerveError):
    pass


class FamilySizeError(VortexError):
    pass


class GeneratorSizeError(VortexError):
    pass


class BettiDomainError(VortexError):
    pass


class UnsupportedDimensionError(VortexError):
    pass


class ProbeError(VortexError):
    pass
