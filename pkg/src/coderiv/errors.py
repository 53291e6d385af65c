"""Exception types shared across the package.

Every error carries enough data to reconstruct what failed; nothing is
reported as a bare string when a witness is available.
"""


class CoderivError(Exception):
    """Base class for all package errors."""


class NonAssociative(CoderivError):
    def __init__(self, i, j, k, left, right):
        self.triple = (i, j, k)
        self.left = left
        self.right = right
        super().__init__(
            f"(b{i}*b{j})*b{k} != b{i}*(b{j}*b{k}): {left} != {right}"
        )


class BadUnit(CoderivError):
    def __init__(self, i):
        self.index = i
        super().__init__(f"unit does not act as identity on basis element {i}")


class GradingViolation(CoderivError):
    def __init__(self, i, j):
        self.pair = (i, j)
        super().__init__(f"product b{i}*b{j} is not homogeneous of degree "
                         f"deg(b{i})+deg(b{j})")


class NonPrimeCharacteristic(CoderivError):
    def __init__(self, p):
        self.p = p
        super().__init__(f"{p} is not prime")


class MissingTruncation(CoderivError):
    pass


class DegreeMismatch(CoderivError):
    pass


class ShapeMismatch(CoderivError):
    pass


class NotACoboundary(CoderivError):
    """Raised by the boundary solver when no preimage exists.

    Carries the first homological degree where the residual class is
    nonzero, together with a witness (generator and residual element).
    """

    def __init__(self, degree, generator, residual):
        self.degree = degree
        self.generator = generator
        self.residual = residual
        super().__init__(
            f"no solution at homological degree {degree} "
            f"(witness generator {generator})"
        )


class WindowExhausted(CoderivError):
    def __init__(self, what, degree):
        self.what = what
        self.degree = degree
        super().__init__(f"{what}: truncation window cannot certify "
                         f"homological degree {degree}")


class NotExact(CoderivError):
    def __init__(self, degree, homology_dim):
        self.degree = degree
        self.homology_dim = homology_dim
        super().__init__(f"complex not exact at degree {degree} "
                         f"(homology dimension {homology_dim})")


class NotAugmented(CoderivError):
    pass


class InternalInconsistency(CoderivError):
    pass


class NotACocycle(CoderivError):
    pass


class RelationNotQuadratic(CoderivError):
    pass


class RestrictionFailure(CoderivError):
    pass


class NotHomogeneous(CoderivError):
    pass
