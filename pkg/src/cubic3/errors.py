"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class Cubic3Error(ValueError):
    """Domain error: an input violated a precondition of an operation."""

    code = "domain_error"

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details


class ParseError(Cubic3Error):
    code = "parse_error"

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}", position=position)
        self.position = position


class NonHomogeneousDegree3(Cubic3Error):
    code = "non_homogeneous_degree3"


class DimensionMismatch(Cubic3Error):
    code = "dimension_mismatch"


class ShapeError(Cubic3Error):
    """A form is not in the monomial shape an operation requires."""

    code = "shape_error"


class RankError(Cubic3Error):
    code = "rank_error"


class BoundViolation(Cubic3Error):
    code = "bound_violation"
