"""Exception hierarchy shared by every module."""


class DGKitError(Exception):
    """Base class for library errors."""


class DimensionError(DGKitError, ValueError):
    """Matrix or complex shapes do not fit together."""


class NotAlternatingError(DGKitError, ValueError):
    pass


class PreconditionError(DGKitError, ValueError):
    """A mathematical precondition of an operation does not hold.

    Examples: asking for homology over a polynomial ring, or a soft
    truncation whose quotient needs linear algebra over a non-field.
    """


class AxiomError(DGKitError, ValueError):
    """A structure failed one of its defining axioms.

    ``violation`` carries a human readable description of the first
    failing basis tuple.
    """

    def __init__(self, message, violation=None):
        super().__init__(message)
        self.violation = violation


class ParseError(DGKitError, ValueError):
    pass
