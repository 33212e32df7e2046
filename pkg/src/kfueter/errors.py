"""Exception types raised across the toolkit."""


class KFueterError(Exception):
    """Base class for all toolkit errors."""


class EvalAtSingularity(KFueterError, ZeroDivisionError):
    """A field with an r2 denominator was evaluated where r2 vanishes."""


class NonPolynomialInput(KFueterError, ValueError):
    """An operation that needs polynomial coefficients got a denominator."""


class NotClosed(KFueterError, ValueError):
    """A form expected to be closed has a nonzero exterior derivative."""


class NotHarmonic(KFueterError, ValueError):
    """A function expected to be harmonic has a nonzero Laplacian."""


class NoSolutionInAnsatz(KFueterError):
    """The graded rational ansatz has no solution within the denominator bound."""

    def __init__(self, max_denom, degree=None, detail=""):
        self.max_denom = max_denom
        self.degree = degree
        msg = f"no solution with denominator r2^m, m <= {max_denom}"
        if degree is not None:
            msg += f" (homogeneous part of degree {degree})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class ParseError(KFueterError, SyntaxError):
    """Malformed expression text; ``pos`` is the 0-based offset of the problem."""

    def __init__(self, message, pos):
        self.pos = pos
        super().__init__(f"{message} at position {pos}")


class NonR2Denominator(KFueterError, ValueError):
    """Division by something other than a constant multiple of a power of r2."""

    def __init__(self, message, pos=None):
        self.pos = pos
        super().__init__(message if pos is None else f"{message} at position {pos}")
