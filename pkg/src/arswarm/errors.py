"""Exception hierarchy.

Every error carries the process exit code the command-line front end maps it
to: 1 for configuration problems, 2 for bad input data, 3 for numerical
failures.
"""


class ArswarmError(Exception):
    exit_code = 1


class ConfigurationError(ArswarmError, ValueError):
    exit_code = 1


class DataError(ArswarmError, ValueError):
    exit_code = 2


class NumericalError(ArswarmError, ArithmeticError):
    exit_code = 3


# -- data errors ---------------------------------------------------------------

class EmptySeries(DataError):
    pass


class NonFiniteSample(DataError):
    def __init__(self, index):
        super().__init__(f"non-finite sample at index {index}")
        self.index = index


class SeriesTooShort(DataError):
    pass


class LengthMismatch(DataError):
    pass


class EmptyInput(DataError):
    pass


class LagTooLarge(DataError):
    pass


class ConstantSeries(DataError):
    pass


class ConstantActual(DataError):
    pass


class ColumnNotFound(DataError):
    pass


class ParseError(DataError):
    def __init__(self, line, message=None):
        super().__init__(message or f"cannot parse value on line {line}")
        self.line = line


class SeriesFileNotFound(DataError, FileNotFoundError):
    pass


# -- numerical errors ----------------------------------------------------------

class SingularDesign(NumericalError):
    pass


class NumericallySingular(NumericalError):
    pass


class ObjectiveNonFinite(NumericalError):
    pass


class NonPositiveVariance(NumericalError):
    pass


class DegenerateRatio(NumericalError):
    pass


class NonPositiveBaseline(NumericalError):
    pass


# -- configuration errors ------------------------------------------------------

class PhiOutOfRange(ConfigurationError):
    pass


class InvalidLength(ConfigurationError):
    pass


class InvalidModelSpec(ConfigurationError):
    pass
