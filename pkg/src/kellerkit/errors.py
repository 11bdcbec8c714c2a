"""Exception hierarchy shared by all modules."""


class KellerkitError(Exception):
    """Base class for all package errors."""


class StructuralError(KellerkitError, ValueError):
    """Operands do not fit together (variable counts, lengths, shapes)."""


class ParseError(KellerkitError, ValueError):
    """Malformed polynomial, map or config text."""


class PreconditionError(KellerkitError, ValueError):
    """An operation was called outside its hypotheses (e.g. a non-Keller map)."""


class InputError(KellerkitError, ValueError):
    """User-supplied data failed verification (e.g. a relation that does not hold)."""


class UnsupportedError(KellerkitError):
    """The request is valid but outside what the implementation computes."""


class NotSupportedError(UnsupportedError):
    """The mathematical case itself is open (general cubic recovery)."""


class DegenerateSampleError(KellerkitError):
    """Random specializations kept landing on a non-generic locus."""


class BudgetExceeded(KellerkitError):
    """A Groebner computation hit its pair or term cap."""


class InternalInconsistency(KellerkitError, AssertionError):
    """Two independent computations disagree where theory says they cannot."""


class GeneratorBudgetError(KellerkitError):
    """Rejection sampling ran out of attempts."""


class SchemaError(KellerkitError, ValueError):
    """A persisted report does not match the expected schema."""


class CounterexampleCandidate(KellerkitError):
    """A Keller map failed inversion or the degree bound; carries the record."""

    def __init__(self, message, record=None):
        super().__init__(message)
        self.record = record
