"""Exception types shared across the library.

Errors split into two families: *mathematical refusals* (the input is
well formed but the requested construction does not exist or cannot be
certified) and plain usage errors.  The CLI maps refusals to exit
code 2 and everything else to exit code 1.
"""


class DirconvError(Exception):
    """Base class for all library errors."""


class MathematicalRefusal(DirconvError):
    """The computation is refused on mathematical grounds, not by a bug."""


# -- semigroup ---------------------------------------------------------------

class EmptyTruncation(DirconvError):
    """Requested a window with a negative size bound or no elements."""


class OnlyZero(MathematicalRefusal):
    """The truncation window contains no non-zero element."""


class NotEnumerated(DirconvError):
    """An element lies outside the completed enumeration window."""


# -- algebra -----------------------------------------------------------------

class BackendMismatch(DirconvError):
    """Operands live on different enumerated windows."""


class NotInvertible(MathematicalRefusal):
    """Convolution inverse requested for a function vanishing at 0."""


# -- solver ------------------------------------------------------------------

class DegenerateConstant(MathematicalRefusal):
    """The anchor polynomial is a non-zero constant, so it has no roots."""


class ZeroPolynomial(MathematicalRefusal):
    """Every coefficient vanishes at 0; no anchor root can be selected."""


class NotASimpleRoot(MathematicalRefusal):
    """The requested anchor value is not a simple root of the anchor polynomial."""


class NoSimpleRoots(MathematicalRefusal):
    """The anchor polynomial has no simple roots.

    Carries the root report and, when available, explicit obstruction
    values proving unsolvability (``proven_unsolvable``) or leaving
    existence undecided.
    """

    def __init__(self, message, report=None, obstructions=(), proven_unsolvable=False):
        super().__init__(message)
        self.report = report
        self.obstructions = tuple(obstructions)
        self.proven_unsolvable = proven_unsolvable


class SingularJacobian(MathematicalRefusal):
    """The base-point Jacobian of a polynomial system is (numerically) singular."""


class InconsistentBasePoint(MathematicalRefusal):
    """The supplied base point does not annihilate the system at 0."""


class PreconditionFailed(DirconvError):
    """An operation-specific precondition does not hold."""


# -- certificate -------------------------------------------------------------

class ZeroDerivative(MathematicalRefusal):
    """The anchor polynomial has zero derivative at the requested root."""


class AllCoefficientsZero(MathematicalRefusal):
    """Every coefficient norm vanishes; the instance is trivial."""


class NoPositiveR(MathematicalRefusal):
    """The damping ratio is non-positive everywhere sampled; no certificate."""


class CertificateViolated(DirconvError):
    """A certificate check failed; indicates a bug or an under-reported norm.

    Carries the offending level and the partial validation report.
    """

    def __init__(self, message, level=None, report=None):
        super().__init__(message)
        self.level = level
        self.report = report


# -- series ------------------------------------------------------------------

class OutOfHalfPlane(MathematicalRefusal):
    """Evaluation point lies outside the certified half-plane."""


# -- cli ---------------------------------------------------------------------

class SpecError(DirconvError):
    """A problem specification failed to parse or validate.

    ``path`` points at the offending field, e.g. ``equation.coefficients[2]``.
    """

    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
