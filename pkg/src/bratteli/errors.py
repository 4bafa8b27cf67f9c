"""Exception hierarchy shared by all modules."""


class BratteliError(Exception):
    """Base class for every error raised by this package."""


class InvalidDiagram(BratteliError):
    """A diagram failed validation; carries the offending issue."""

    def __init__(self, issue):
        self.issue = issue
        super().__init__(str(issue))


class CapExceeded(BratteliError):
    """A path enumeration would produce more paths than the cap allows."""


class NoTail(BratteliError):
    """An operation needed a periodic tail that the diagram does not declare."""


class NoExcessSlack(BratteliError):
    """Level insertion was requested at a level where every slack is <= 1."""


class NotNormalized(BratteliError):
    """The diagram does not satisfy the slack condition the operation needs."""


class TailSlackUnsupported(BratteliError):
    """The declared tail would keep producing slack forever."""


class NoNextLevel(BratteliError):
    """An embedding was requested past the last level of the truncation."""


class MultiplicityMismatch(BratteliError):
    """Two homomorphisms have different multiplicity matrices."""


class NotHomomorphism(BratteliError):
    """Claimed matrix-unit images fail the matrix-unit relations."""


class IntertwinerError(BratteliError):
    """No exact unitary intertwiner exists over the Gaussian rationals."""


class Bd1SyntaxError(BratteliError):
    """Malformed bd1 text; carries the 1-based line number."""

    def __init__(self, line, message):
        self.line = line
        super().__init__("line %d: %s" % (line, message))


class Bd1SemanticError(BratteliError):
    """Well-formed bd1 text describing an invalid diagram or point set."""
