"""Exception types shared across the package.

Every failure mode that callers are expected to catch gets its own class;
anything else surfaces as a plain ValueError/TypeError from validation.
"""


class PolydetError(Exception):
    """Base class for all package-specific errors."""


class PoleAtOne(PolydetError):
    """Evaluation requested inside the guard radius of the pole at s = 1."""


class DomainError(PolydetError):
    """Argument outside the documented domain of an evaluator."""


class FieldMismatch(PolydetError):
    """Character or ideal data attached to a different number field."""


class UnsupportedCharacter(PolydetError):
    """Character outside the supported family for the requested operation."""


class NearZeroOfL(PolydetError):
    """Logarithmic derivative requested too close to a zero of L."""


class PathLeavesOmega(PolydetError):
    """Integration path touches the excluded cut set of the branch domain."""


class BranchStepTooLarge(PolydetError):
    """Branch tracking step exceeded pi in imaginary part; refine the path."""


class GammaPole(PolydetError):
    """Gamma factor evaluated at (or too near) a non-positive integer."""


class DegenerateSample(PolydetError):
    """Sample point gives a vanishing denominator in a ratio computation."""


class NonClosedLoop(PolydetError):
    """A closed contour was required but first and last waypoints differ."""


class ResidualTooLarge(PolydetError):
    """Integer-valued quantity computed with too large a residual."""


class ContourInvalid(PolydetError):
    """Hankel contour parameters violate their constraints."""


class ParseError(PolydetError):
    """Zero table or character file could not be parsed.

    Carries the 1-based line number when the failure is tied to a line.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NonMonotoneError(PolydetError):
    """Zero ordinates are not strictly increasing."""


class EmptyZeroTable(PolydetError):
    """Zero table contains no ordinates."""


class StencilLeavesDomain(PolydetError):
    """Finite difference stencil would leave the convergence half plane."""
