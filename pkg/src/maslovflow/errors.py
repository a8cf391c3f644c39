"""Exception and warning types shared across the package.

Everything raised on purpose derives from MaslovError so callers can catch
one base class.  Conditions that are suspicious but survivable (a Robin
operator with a near-zero eigenvalue, a degenerate correction term) are
warnings instead.
"""


class MaslovError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(MaslovError):
    """Array shapes are inconsistent with each other or with n."""


class RankDeficient(MaslovError):
    """A frame (or boundary-condition block) does not have full rank."""


class NotLagrangian(MaslovError):
    """A frame fails the isotropy condition X^t Y - Y^t X = 0."""


class NumericalFailure(MaslovError):
    """A matrix inverse or inverse square root is too ill-conditioned."""


class EigensolverFailure(MaslovError):
    """The eigensolver did not converge or returned non-unit eigenvalues."""


class RefinementExhausted(MaslovError):
    """Grid bisection hit its depth limit without resolving the motion."""


class AmbiguousCrossing(MaslovError):
    """A phase hugs pi below resolution while drifting; the signed count
    cannot be certified."""


class JunctionMismatch(MaslovError):
    """Concatenation endpoints disagree beyond tolerance."""


class PathTooCoarse(MaslovError):
    """Consecutive path samples are too far apart and no refiner exists."""


class EndpointsNotFixed(MaslovError):
    """A homotopy family moves its endpoints."""


class NoCrossing(MaslovError):
    """A crossing form was requested at a parameter with trivial
    intersection."""


class InvalidBoundaryCondition(MaslovError):
    """Boundary data violates rank or self-adjointness requirements."""


class InvalidPotential(MaslovError):
    """Potential data is malformed or violates a standing hypothesis,
    e.g. an asymptotic limit with a negative eigenvalue."""


class IntegratorFailure(MaslovError):
    """The frame evolution produced non-finite values or lost the
    Lagrangian invariant."""


class BoxNotClosed(MaslovError):
    """The four edge indices of a parameter rectangle do not sum to zero."""


class LambdaNotBelowSpectrum(MaslovError):
    """The spectral shift placed the sweep line on top of an eigenvalue."""


class TruncationInsufficient(MaslovError):
    """Doubling the spatial truncation changed a count that should be
    stable."""


class DiscretizationUnstable(MaslovError):
    """Refining the finite-difference grid changed the negative-eigenvalue
    count."""


class DegenerateRobinWarning(UserWarning):
    """The recovered Robin operator has an eigenvalue near zero."""


class DegenerateProblemWarning(UserWarning):
    """A correction term is degenerate; the Morse count may sit on a
    boundary case."""
