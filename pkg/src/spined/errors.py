"""Exception hierarchy.

Every error that points at a concrete element (or tuple of elements) carries
it in ``witness`` so reports can show where a check broke.
"""


class SemigroupError(Exception):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class OutOfRange(SemigroupError, ValueError):
    pass


class NonAssociative(SemigroupError, ValueError):
    pass


class NotIdempotent(SemigroupError, ValueError):
    pass


class NotAdequate(SemigroupError, ValueError):
    pass


class NotClosed(SemigroupError, ValueError):
    pass


class InternalInconsistency(SemigroupError, AssertionError):
    """Two routes that must agree did not. Always an implementation bug."""


class PreconditionFailed(SemigroupError, ValueError):
    pass


# transversal analysis, in the order the analyzer checks them
class NotAdequateSub(SemigroupError, ValueError):
    pass


class NotStarSub(SemigroupError, ValueError):
    pass


class NotAbundant(NotStarSub):
    pass


class NoDecomposition(SemigroupError, ValueError):
    pass


class NotUniqueDecomposition(SemigroupError, ValueError):
    pass


class NotQuasiIdeal(SemigroupError, ValueError):
    pass


# construction
class AxiomsFailed(SemigroupError, ValueError):
    pass


class ConstructionFailed(SemigroupError, ValueError):
    pass


class ClosureFailed(ConstructionFailed):
    pass


class IsoFailed(SemigroupError, ValueError):
    pass


class DataInvalid(SemigroupError, ValueError):
    pass


class NotRegular(SemigroupError, ValueError):
    pass


class NotInverseSub(SemigroupError, ValueError):
    pass


class UniquenessFailed(SemigroupError, ValueError):
    pass


class NotRegularOutcome(ConstructionFailed):
    pass


class NotLeftNormal(SemigroupError, ValueError):
    pass


class NotSemilatticeTransversal(SemigroupError, ValueError):
    pass


# harness
class ParamOutOfRange(SemigroupError, ValueError):
    pass


class DocumentSyntaxError(SemigroupError, ValueError):
    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, column {column}: {message}", witness=(line, column))
        self.line = line
        self.column = column
