"""Exception hierarchy shared by all solvers."""


class IntervaggError(Exception):
    """Base class for every error raised by this package."""


class InputError(IntervaggError, ValueError):
    """Raised when a weight vector cannot be turned into a distribution."""


class EmptyInput(InputError):
    def __init__(self):
        super().__init__("input is empty")


class NonPositiveComponent(InputError):
    """A component is zero or negative. ``index`` is 1-based."""

    def __init__(self, index, value):
        self.index = index
        self.value = value
        super().__init__(f"component {index} is not strictly positive: {value!r}")


class SumOutOfTolerance(InputError):
    def __init__(self, total, tolerance):
        self.total = total
        self.tolerance = tolerance
        super().__init__(f"components sum to {total!r}, not 1 within {tolerance:g}")


class ComponentOutOfRange(InputError):
    def __init__(self, index, value):
        self.index = index
        self.value = value
        super().__init__(f"component {index} outside (0, 1]: {value!r}")


class SumMismatch(IntervaggError, ValueError):
    def __init__(self, a_sum, b_sum):
        self.a_sum = a_sum
        self.b_sum = b_sum
        super().__init__(f"vectors have different totals: {a_sum!r} vs {b_sum!r}")


class LengthMismatch(IntervaggError, ValueError):
    def __init__(self, expected, got):
        super().__init__(f"partition covers {expected} items but distribution has {got}")


class InvalidM(IntervaggError, ValueError):
    def __init__(self, m, n):
        self.m = m
        self.n = n
        super().__init__(f"number of classes m={m} must satisfy 1 <= m <= n={n}")


class TableIncomplete(IntervaggError, ValueError):
    pass


class InstanceTooLarge(IntervaggError, ValueError):
    def __init__(self, count, limit):
        self.count = count
        self.limit = limit
        super().__init__(f"{count} candidate partitions exceeds the enumeration limit {limit}")
