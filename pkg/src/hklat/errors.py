"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class HklatError(Exception):
    """Base class for all errors raised by hklat."""


class ContractViolation(HklatError, ValueError):
    """An operation was called with arguments violating its precondition."""


class UnsupportedRank(ContractViolation):
    """The lattice rank is outside what the operation supports."""


class InputFormatError(HklatError, ValueError):
    """Malformed lattice or vector input (bad JSON, asymmetric Gram, ...)."""
