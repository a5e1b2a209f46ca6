"""Exception hierarchy.

Instance problems are ``ValueError`` subclasses that carry a ``where``
string naming the offending vertex, edge or face, so a validation report
can be printed directly from them.
"""


class DehnGraphError(Exception):
    """Base class for every error raised by this package."""


class InstanceError(DehnGraphError, ValueError):
    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where

    @property
    def kind(self):
        return type(self).__name__

    def __str__(self):
        msg = super().__str__()
        return f"{msg} [{self.where}]" if self.where else msg


class MalformedInstance(InstanceError):
    pass


class LabelCycleViolation(InstanceError):
    pass


class CorrespondenceViolation(InstanceError):
    pass


class ParityViolation(InstanceError):
    pass


class SignAlternationViolation(InstanceError):
    pass


class TrivialLoop(InstanceError):
    pass


class NonCellular(InstanceError):
    pass


class EulerMismatch(InstanceError):
    pass


class DimensionMismatch(DehnGraphError, ValueError):
    pass


class NotMinimal(DehnGraphError, ValueError):
    pass


class TrivialType(DehnGraphError, ValueError):
    pass


class EmptyLabelSet(DehnGraphError, ValueError):
    pass


class EmptyFamily(DehnGraphError, ValueError):
    pass


class HypothesisViolated(DehnGraphError, ValueError):
    pass


class NotAllTypes(DehnGraphError, ValueError):
    def __init__(self, message, missing=None):
        super().__init__(message)
        self.missing = missing


class InconsistentSides(DehnGraphError, ValueError):
    pass


class NotSphere(DehnGraphError, ValueError):
    pass


class NotConnected(DehnGraphError, ValueError):
    pass


class NotGreatWeb(DehnGraphError, ValueError):
    pass


class UnsupportedFormat(DehnGraphError, ValueError):
    pass


class NoneFound(DehnGraphError, RuntimeError):
    """A search that a theorem guarantees to succeed came back empty."""


class TheoremViolation(DehnGraphError, RuntimeError):
    """A checked statement failed on a valid instance; indicates a bug."""
