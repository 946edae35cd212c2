"""Exception hierarchy shared by all modules."""


class DyadicError(ValueError):
    pass


class DimensionError(DyadicError):
    pass


class SingularError(DyadicError):
    pass


class NotProgressiveError(DyadicError):
    pass


class NotDyadicError(DyadicError):
    pass


class NotDigitalError(DyadicError):
    """A point set admits no digital construction.

    ``reason`` is one of ``duplicate_x``, ``point_mismatch`` or ``not_dyadic``.
    """

    REASONS = ("duplicate_x", "point_mismatch", "not_dyadic")

    def __init__(self, reason: str, detail: str = ""):
        if reason not in self.REASONS:
            raise ValueError(f"unknown reason {reason!r}")
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)


class InvalidSeed(DyadicError):
    pass


class UnsupportedDimension(DyadicError):
    pass


class InfeasibleSize(DyadicError):
    pass
