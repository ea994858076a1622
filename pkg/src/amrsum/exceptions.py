"""Exception types raised across the package."""


class AmrSumError(Exception):
    """Base class for all errors raised by this package."""


class PenmanSyntaxError(AmrSumError, ValueError):
    """Malformed PENMAN text.

    ``position`` is the 0-based character offset in the input at which the
    problem was detected.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class InvalidGraphError(AmrSumError, ValueError):
    """A graph that violates the structural invariants (bad root, dangling
    edge endpoint, unreachable node, or a cyclic parent chain)."""


class InvalidAlignmentError(AmrSumError, ValueError):
    """A token/node alignment that is out of range or does not resolve."""


class CorpusFormatError(AmrSumError, ValueError):
    """A corpus file that violates its documented format."""


class MissingGraphError(AmrSumError, ValueError):
    """An operation that needs sentence graphs was given unparsed sentences."""


class ExternalToolError(AmrSumError, RuntimeError):
    """An external parser/generator subprocess failed or broke protocol."""


class ConfigurationError(AmrSumError, ValueError):
    """Invalid run configuration."""
