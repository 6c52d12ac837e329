"""Exception types shared across the solver."""


class PlyCoverError(Exception):
    """Base class for solver errors."""


class UncoveredPoint(PlyCoverError):
    """A point lies in no available square."""

    def __init__(self, point_id):
        self.point_id = point_id
        super().__init__(f"point {point_id} is not covered by any square")


class UniverseTooLarge(PlyCoverError):
    def __init__(self, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(f"{size} squares exceed the exact-search cap of {cap}")


class GeneralPositionViolation(PlyCoverError):
    def __init__(self, violations):
        self.violations = list(violations)
        head = "; ".join(str(v) for v in self.violations[:5])
        more = len(self.violations) - 5
        if more > 0:
            head += f"; ... ({more} more)"
        super().__init__(f"instance not in general position: {head}")


class DegenerateSquare(PlyCoverError):
    def __init__(self, square_id, n_corners):
        self.square_id = square_id
        self.n_corners = n_corners
        super().__init__(
            f"square {square_id} contains {n_corners} cell corners (expected exactly 1)"
        )


class MalformedRegion(PlyCoverError):
    pass


class InstanceParseError(PlyCoverError):
    pass
