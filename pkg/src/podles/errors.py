"""Exception hierarchy.  Every error carries a stable ``code`` used by the CLI."""


class PodlesError(Exception):
    code = "podles-error"
    exit_status = 1


class AlgebraMismatch(PodlesError, ValueError):
    code = "algebra-mismatch"


class NotInSubalgebra(PodlesError, ValueError):
    code = "not-in-subalgebra"


class DegreeBoundTooSmall(PodlesError, ValueError):
    code = "degree-bound-too-small"


class CalibrationError(PodlesError, RuntimeError):
    code = "calibration-infeasible"


class UncalibratedPairing(PodlesError, RuntimeError):
    code = "uncalibrated-pairing"


class WindowExhausted(PodlesError, ValueError):
    code = "window-exhausted"
    exit_status = 3


class MathDomainError(PodlesError, ArithmeticError):
    code = "math-domain"
    exit_status = 3


class PoleProximityError(MathDomainError):
    code = "pole-proximity"

    def __init__(self, message, pole=None):
        super().__init__(message)
        self.pole = pole


class DivergentRegion(MathDomainError):
    code = "divergent-region"


class FitFailed(MathDomainError):
    code = "fit-failed"


class ParseError(PodlesError, ValueError):
    code = "parse-error"
    exit_status = 2

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class VerificationFailed(PodlesError):
    code = "verification-failed"
    exit_status = 4
