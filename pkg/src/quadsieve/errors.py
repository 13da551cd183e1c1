"""Exception types shared across the package."""


class QuadsieveError(Exception):
    """Base class for all errors raised by this package."""


class RangeError(QuadsieveError):
    """An exact result would exceed the supported integer range.

    Arithmetic is never allowed to wrap; operations whose true result
    does not fit the supported width refuse instead.
    """


class NoRootsError(QuadsieveError):
    """The congruence 4*z**2 + 1 = 0 has no solution for this modulus."""


class BadFactorizationError(QuadsieveError):
    """A supplied factorization does not describe the given integer."""
