"""Exception types raised by qschur."""


class QSchurError(Exception):
    """Base class for all library errors."""


class DomainError(QSchurError, ValueError):
    """Arguments fall outside the domain where an operation is defined."""


class DegenerateClassError(DomainError):
    """A real quaternion was given where a non-trivial conjugacy sphere is needed."""


class NotHermitianError(QSchurError, ValueError):
    """A matrix expected to be Hermitian is not, beyond tolerance."""


class ShapeError(QSchurError, ValueError):
    """Matrix dimensions do not conform."""
