"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so new error types should subclass the
closest existing one rather than :class:`ResolventError` directly.
"""


class ResolventError(Exception):
    """Base class for all library errors."""


class GraphError(ResolventError, ValueError):
    """Invalid graph construction input."""


class SelfLoop(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class CapacityExceeded(ResolventError):
    """Graph has more vertices than the exact solvers support."""


class Disconnected(ResolventError):
    """Some pair of vertices has no connecting path."""


class EmptySet(ResolventError, ValueError):
    pass


class ParseError(ResolventError, ValueError):
    """Malformed textual graph input."""


class MalformedHeader(ParseError):
    pass


class MalformedPayload(ParseError):
    pass


class TruncatedPayload(ParseError):
    pass


class TrailingBits(ParseError):
    pass


class UnsupportedSize(ResolventError):
    """Requested size is outside what a format or enumerator handles."""


class BadParams(ResolventError, ValueError):
    pass


class ConnectivityRetryExhausted(ResolventError):
    pass
