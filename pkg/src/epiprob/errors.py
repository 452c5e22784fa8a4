"""Exception hierarchy shared by every module."""


class EpiError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class VocabularyError(EpiError):
    """A sentence mentions an atom the world does not assign."""


class CapacityError(EpiError):
    """A problem exceeds a brute-force size guard."""


class LpInputError(EpiError):
    pass


class DomainError(EpiError, ValueError):
    """An argument lies outside the operation's domain."""


class InfeasibleError(EpiError):
    """A constraint system that must be feasible is not."""


class ConditioningError(EpiError):
    """Conditioning on an event whose upper probability is zero."""


class MissingMarginalError(EpiError, KeyError):
    pass


class ConsistencyError(EpiError):
    """The evidential corpus would become inconsistent."""


class EvidenceRejected(EpiError):
    """An evidence report failed the evidential-level gate."""

    def __init__(self, item, error_rate, level):
        self.item = item
        self.error_rate = error_rate
        self.level = level
        super().__init__(
            f"evidence rejected: reliability {1 - error_rate:.6g} < e = {level:.6g}"
        )


class ParseError(Exception):
    """Raised by the kbformat parsers; carries positioned diagnostics."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0] if self.diagnostics else None
        super().__init__(str(first) if first else "parse error")
