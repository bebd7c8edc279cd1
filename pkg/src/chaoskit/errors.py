"""Exception types shared across the package.

Every failure mode that callers are expected to handle gets its own
class so that tests (and the command line driver) can match on type
rather than on message text.
"""


class ChaoskitError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(ChaoskitError):
    """Operator/vector shapes are incompatible."""


class InvalidWeights(ChaoskitError):
    """A weight sequence is the wrong length or contains zeros."""


class SingularOperator(ChaoskitError):
    """Inversion requested for a numerically singular matrix."""


class DimensionCap(ChaoskitError):
    """A dense computation was requested above its size cap."""


class ConvergenceFailure(ChaoskitError):
    """An iterative estimate did not settle within its budget."""


class SingularBlock(ChaoskitError):
    """A perturbation block with lambda = epsilon has no inverse."""


class DegreeTooLarge(ChaoskitError):
    """Polynomial degree must be smaller than the truncation dimension."""


class NotUnimodular(ChaoskitError):
    """A scalar that must lie on the unit circle does not."""


class ParseError(ChaoskitError):
    """Malformed JSON input."""


class NonpositiveArgument(ChaoskitError):
    """A quantity that must be strictly positive was not."""


class OddGrid(ChaoskitError):
    """The half-swap discretization needs an even number of cells."""


class DegenerateIntegral(ChaoskitError):
    """Quadrature endpoints coincide or are reversed."""


class ConstantPolynomial(ChaoskitError):
    """A symbol with no z-dependence was passed where roots are needed."""


class RootOnCircle(ChaoskitError):
    """A root sits on the unit circle within tolerance; the count
    of roots strictly inside the disk is ill-defined."""


class NotCowenDouglas(ChaoskitError):
    """Probing found no consistent finite eigenvector-bundle rank."""


class BoundaryUncertain(ChaoskitError):
    """The modulus range straddles 1 too closely to call."""


class OutsideDisk(ChaoskitError):
    """A kernel/eigenvector point must lie strictly inside the disk."""


class UnknownFamily(ChaoskitError):
    """Unrecognized family tag for a parameter map."""


class UnknownScenario(ChaoskitError):
    """Unrecognized scenario name on the command line."""


class InvalidConfig(ChaoskitError):
    """A JSON operator spec or scenario config failed validation."""


class PlotDataEmpty(ChaoskitError):
    """A plot was requested for a table with no rows."""
