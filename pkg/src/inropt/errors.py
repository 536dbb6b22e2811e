"""Exception hierarchy for inropt."""


class InroptError(Exception):
    """Base class for all inropt errors."""


class NonHermitianInput(InroptError):
    """Input matrix violates the Hermitian symmetry tolerance."""


class ConvergenceFailure(InroptError):
    """An eigenvalue iteration exhausted its budget without converging."""


class SingularPencil(InroptError):
    """The level-set pencil is singular and no perturbation fallback applies."""


class EmptyLevelSet(InroptError):
    """No level-set crossing survived filtering (level below the minimum,
    or the filter tolerance is too tight)."""


class InvalidGamma(InroptError):
    """Curvature bound is non-negative after the substitution rule."""


class DegenerateSupports(InroptError):
    """Two quadratic supports coincide on the query interval."""


class ReducedSolveFailure(InroptError):
    """The inner small-scale solver of the subspace loop did not converge."""


class VerificationFailure(InroptError):
    """A post-solve certificate check failed (signals solver inaccuracy)."""


class NotPositiveDefiniteMass(InroptError):
    """The leading QEP coefficient failed its positive-definiteness check."""


class InvalidParams(InroptError):
    """Invalid parameters for a gallery generator."""
