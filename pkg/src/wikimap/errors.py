"""Exception types raised across the pipeline."""


class WikimapError(Exception):
    """Base class for all pipeline errors."""


class ParseError(WikimapError):
    """A dump could not be parsed; carries a byte offset when known."""

    def __init__(self, message, offset=None):
        super().__init__(message if offset is None else f"{message} (byte offset {offset})")
        self.offset = offset


class MalformedXml(ParseError):
    pass


class UnterminatedStringLiteral(ParseError):
    pass


class EmptyTitle(WikimapError, ValueError):
    pass


class SerializationError(WikimapError):
    pass


class SnapshotError(WikimapError):
    pass


class ChecksumMismatch(SnapshotError):
    pass


class VersionMismatch(SnapshotError):
    pass


class DomainError(WikimapError, ValueError):
    pass


class EmptyNetwork(WikimapError):
    pass


class InsufficientTail(WikimapError):
    pass


class DegenerateSupport(WikimapError):
    pass


class RootMissing(WikimapError, KeyError):
    pass


class EmptyGraph(WikimapError):
    pass


class NonFiniteCoordinate(WikimapError, ValueError):
    pass


class CanvasTooSmall(WikimapError, ValueError):
    pass


class MissingCoordinate(WikimapError, KeyError):
    pass
