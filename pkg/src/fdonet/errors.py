"""Exception hierarchy. The CLI maps each class to one diagnostic line."""


class FdonetError(Exception):
    """Base class for all package errors."""

    kind = "error"


class ConfigError(FdonetError, ValueError):
    kind = "config"


class SchemaError(FdonetError, ValueError):
    kind = "schema"


class NumericError(FdonetError, ArithmeticError):
    kind = "numeric"


class ModelFileError(FdonetError, ValueError):
    kind = "io"
