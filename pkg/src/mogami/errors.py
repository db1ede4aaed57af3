"""Exception hierarchy.

Every domain error carries a stable machine-readable token (its class
name); the CLI prints ``error=<token>`` on stderr and exits 1.
"""


class MogamiError(Exception):
    @property
    def token(self):
        return type(self).__name__


# -- construction ------------------------------------------------------------

class DuplicateFacet(MogamiError):
    pass


class SelfPairedFacet(MogamiError):
    pass


class BadCorr(MogamiError):
    pass


class FoldedComplexError(MogamiError):
    """A cell is identified with itself by a nontrivial map.

    Such complexes fall outside the regular-CW world; orientation-based
    computations (Euler characteristic, homology) refuse to run on them.
    """


# -- moves -------------------------------------------------------------------

class NotBoundary(MogamiError):
    pass


class SameFacet(MogamiError):
    pass


class KindMismatch(MogamiError):
    pass


class AmbiguousCorr(MogamiError):
    pass


class NotHealable(MogamiError):
    pass


class NotInterior(MogamiError):
    pass


class InteriorVertex(MogamiError):
    pass


class StepRejected(MogamiError):
    def __init__(self, index, reason):
        super().__init__(f"step {index}: {reason}")
        self.index = index
        self.reason = reason


# -- reduction ---------------------------------------------------------------

class NotLC(MogamiError):
    pass


# -- matching ----------------------------------------------------------------

class CrossingMatching(MogamiError):
    pass


class NotOrderable(MogamiError):
    pass


class NotComplete(MogamiError):
    pass


# -- collapse ----------------------------------------------------------------

class NotSpanningTree(MogamiError):
    pass


class BudgetExceeded(MogamiError):
    pass


class BallRequired(MogamiError):
    pass


# -- builders ----------------------------------------------------------------

class FacetReuse(MogamiError):
    pass


class NotStronglyConnected(MogamiError):
    pass


class InterfaceNotConnected(MogamiError):
    pass


class NoIncidenceOrder(MogamiError):
    pass


# -- storage / formats -------------------------------------------------------

class CorruptStore(MogamiError):
    pass


class FormatError(MogamiError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
