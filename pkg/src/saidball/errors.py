"""Exception hierarchy shared by the kernels and the command-line tool."""


class SaidBallError(Exception):
    """Base class for every error raised by this package."""


class ScalarParseError(SaidBallError, ValueError):
    """A scalar literal does not follow the accepted grammar."""


class InvalidNodesError(SaidBallError, ValueError):
    """Nodes are not strictly increasing inside the open interval (0, 1)."""


class IndexRangeError(SaidBallError, IndexError):
    pass


class ExchangeRequiredError(SaidBallError, ArithmeticError):
    """Neville elimination hit a zero pivot above a nonzero entry."""


class SingularMatrixError(SaidBallError, ArithmeticError):
    pass


class ConvergenceError(SaidBallError, ArithmeticError):
    """An iterative eigenvalue method exceeded its iteration cap."""


class NotSquarefreeError(SaidBallError, ValueError):
    """The polynomial has a repeated factor, so roots cannot be isolated."""


class OracleSizeError(SaidBallError, ValueError):
    """The exact oracle refuses problems beyond its size cap."""
