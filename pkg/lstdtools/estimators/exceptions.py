class LstdToolsError(Exception):
    """
    Base class for every error raised by lstdtools
    """


class DimensionMismatch(LstdToolsError, ValueError):
    pass


class InconsistentDimension(LstdToolsError, ValueError):
    pass


class InsufficientData(LstdToolsError, ValueError):
    pass


class EmptyTrajectory(LstdToolsError, ValueError):
    pass


class IndexOutOfRange(LstdToolsError, IndexError):
    pass


class ParseError(LstdToolsError, ValueError):
    def __init__(self, message, line_number=None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class MissingOracleValue(LstdToolsError, KeyError):
    def __init__(self, key):
        self.key = key
        super().__init__(f"the oracle holds no true value for state {key!r}")

    def __str__(self):
        return self.args[0]


class NumericalError(LstdToolsError, ArithmeticError):
    pass


class SingularMatrix(NumericalError):
    def __init__(self, message, pivot=None):
        self.pivot = pivot
        super().__init__(message)


class SingularUpdate(NumericalError):
    """
    A rank-one update whose Sherman-Morrison denominator vanished.

    Parameters
    ----------
    denominator : float
        The offending value of 1 + v^T M^{-1} u
    step : int
        Index of the update within its sequence of pairs, None for a single update
    trajectory : int
        Index of the trajectory the update came from, when known
    """

    def __init__(self, denominator, step=None, trajectory=None):
        self.denominator = denominator
        self.step = step
        self.trajectory = trajectory
        super().__init__(self._message())

    def _message(self):
        location = []
        if self.trajectory is not None:
            location.append(f"trajectory {self.trajectory}")
        if self.step is not None:
            location.append(f"step {self.step}")
        where = f" at {', '.join(location)}" if location else ""
        return (
            f"rank-one update is numerically singular{where}: "
            f"|1 + v'M^-1 u| = {abs(self.denominator):.3e}"
        )

    def located(self, step=None, trajectory=None):
        """
        Returns a copy of this error with its location filled in
        """
        return SingularUpdate(
            self.denominator,
            step=self.step if step is None else step,
            trajectory=self.trajectory if trajectory is None else trajectory,
        )
