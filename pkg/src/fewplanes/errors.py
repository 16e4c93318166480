"""Exception hierarchy shared by all fewplanes modules."""


class FewplanesError(Exception):
    """Base class for all library errors."""


class FieldOrderError(FewplanesError):
    """A cyclotomic order promotion exceeded the configured cap."""


class NotRealError(FewplanesError):
    """Sign or comparison requested for a scalar that is not a real number."""


class CollinearInputError(FewplanesError):
    """Three collinear points were passed where a spanning triple is required."""


class TargetEqualsCenterError(FewplanesError):
    """A projection target coincides with the projection center."""


class DuplicatePointError(FewplanesError):
    """A point set constructor received two equal projective points."""


class GenerationError(FewplanesError):
    """A randomized generator could not satisfy its constraints."""


class ValidationFailure(FewplanesError):
    """An operation required a valid point set (no 3 collinear, not coplanar)."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"point set failed validation: {report.describe()}")


class NotCoplanarError(FewplanesError):
    """A planar operation received a non-coplanar point set."""


class CapExceededError(FewplanesError):
    """Input size exceeds the configured limit for the dual arrangement."""


class ArrangementError(FewplanesError):
    """The dual arrangement violated a structural assertion."""


class NotRatherGoodError(FewplanesError):
    """Double-diamond extraction requires a rather good edge."""


class StructureViolation(FewplanesError):
    """A combinatorially guaranteed local structure failed an exact check."""


class PointNotOnBaseLocusError(FewplanesError):
    """The point is not a common zero of both forms of the pencil."""


class SingularPointError(FewplanesError):
    """The gradient vanishes, so there is no tangent plane."""


class EqualOrDegenerateKernelsError(FewplanesError):
    """The two polar kernels at the point do not cut out a line."""


class DependentFormsError(FewplanesError):
    """A pencil requires two linearly independent quadratic forms."""


class CoincidentIntersectionPointsError(FewplanesError):
    """The three plane pairs do not intersect in eight distinct points."""


class DegenerateConfigurationError(FewplanesError):
    """Planes of a configuration fail to meet in the expected dimension."""


class PencilDegenerateAtPoleError(FewplanesError):
    """The sphere form has no linear part at the projection pole."""


class NoSegmentLongEnoughError(FewplanesError):
    """No rather-good segment reaches the requested minimum length."""


class BudgetExceededError(FewplanesError):
    """More outliers than the caller allowed."""
