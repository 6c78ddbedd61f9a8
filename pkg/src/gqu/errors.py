"""Exception types raised across the package.

Every diagnostic carries a minimal witness (a point, a pair, an element
index or a pair of sets) so that failures can be replayed by hand.
"""


class GquError(Exception):
    """Base class for all package errors."""


class UniverseMismatch(GquError, ValueError):
    pass


class PointOutOfRange(GquError, ValueError):
    pass


class NotUnionClosed(GquError):
    def __init__(self, first, second):
        self.witness = (first, second)
        super().__init__(
            f"union of {list(first)} and {list(second)} is missing from the family"
        )


class NotStrong(GquError):
    def __init__(self, message="the whole universe is not open"):
        super().__init__(message)


class MissingDiagonal(GquError):
    def __init__(self, element, point):
        self.element = element
        self.point = point
        super().__init__(f"base element {element} lacks the diagonal pair ({point}, {point})")


class NoSquareRefinement(GquError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"no base element V satisfies V o V <= element {element}")


class EmptyBase(GquError, ValueError):
    pass


class CeilingExceeded(GquError, ValueError):
    pass


class PreconditionViolated(GquError, ValueError):
    pass


class CapExceeded(GquError):
    def __init__(self, stage, j, cap):
        self.stage = stage
        self.j = j
        self.cap = cap
        super().__init__(f"no admissible index for stage ({stage}, {j}) within {cap} indices")


class CertificateError(GquError):
    """An escape certificate failed a spot check or cannot be used."""
