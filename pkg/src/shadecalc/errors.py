"""Error taxonomy shared across the package; the CLI maps these to its
exit-code contract (1 parse, 2 genericity, 3 precondition)."""


class ShadecalcError(Exception):
    pass


class CurveFileError(ShadecalcError):
    """Malformed curve file or flag input."""


class PreconditionError(ShadecalcError):
    """Input violates an operation's mathematical precondition
    (singular curve, real points present, intersecting real loci...)."""


class GenericityError(ShadecalcError):
    """A projection center failed certification, or no generic center was
    found within the retry budget."""

    def __init__(self, message, attempts=None):
        super().__init__(message)
        self.attempts = attempts or []


class InstabilityError(ShadecalcError):
    """Cross-checked centers disagreed; carries both ledgers."""

    def __init__(self, message, reports=None):
        super().__init__(message)
        self.reports = reports or []
