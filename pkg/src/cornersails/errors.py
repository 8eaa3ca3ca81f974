"""Exception hierarchy shared by all modules."""


class CornersailsError(Exception):
    """Base class for every error raised by this package."""


class ResourceLimit(CornersailsError):
    """A configured desk-scale cap was hit (CLI exit code 3)."""


class RankDeficient(CornersailsError):
    """Matrix does not have full row rank where full rank is required."""


class DimensionTooLarge(ResourceLimit):
    """Cone or hull dimension beyond the supported desk scale."""


class ConeNotPointed(CornersailsError):
    """Inequality system has a nontrivial lineality space."""


class NoIntegerSolution(CornersailsError):
    """The system A x = b has no solution over the integers."""


class PointOutsideCone(CornersailsError):
    """Irreducibility was queried for a point outside its cone."""


class EmptySail(CornersailsError):
    """No lattice point found inside the cone within the candidate bound."""


class NoBasisContainsTau(CornersailsError):
    """The index set tau cannot be extended to a nonsingular basis."""


class InvalidPoint(CornersailsError):
    """Integer point violates the sign/feasibility pattern a checker needs."""


class InvalidVertex(InvalidPoint):
    """Point fails the vertex-side preconditions of a transference checker."""


class DomainError(CornersailsError):
    """Arguments outside the mathematical domain of an inequality."""


class NotInSemigroup(CornersailsError):
    """Right side b is not representable as a nonnegative combination."""


class Infeasible(CornersailsError):
    """Enumerated feasible set is empty."""


class SearchSpaceTooLarge(ResourceLimit):
    """Enumeration would exceed the configured cap."""


class SearchBudgetExceeded(ResourceLimit):
    """Shell search exhausted its certified budget; signals a library bug."""


class Unstable(CornersailsError):
    """Box-growing rounds were exhausted without a stable vertex set."""


class GenerationFailed(CornersailsError):
    """Random instance generation failed after bounded retries."""


class SailOracleMismatch(CornersailsError):
    """Fast sail computation and brute-force oracle disagree; a bug signal."""
