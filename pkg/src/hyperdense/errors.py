"""Exception types shared across the package."""

from __future__ import annotations


class HyperdenseError(Exception):
    """Base class for all package errors."""


class ReducibleError(HyperdenseError, ValueError):
    """A polynomial expected to be irreducible has a nontrivial factor."""

    def __init__(self, poly, factor):
        super().__init__(f"polynomial {poly} is reducible: factor {factor}")
        self.poly = poly
        self.factor = factor


class DegreeCapError(HyperdenseError):
    """A field construction would exceed the configured degree cap."""

    def __init__(self, message, partial_degrees=()):
        super().__init__(message)
        self.partial_degrees = tuple(partial_degrees)


class NotDefinedOverK(HyperdenseError):
    """An arrangement is not stable under the Galois group over the base field."""

    def __init__(self, message, missing=None):
        super().__init__(message)
        self.missing = missing


class CertificationError(HyperdenseError):
    """Numerical root certification failed within the precision cap."""


class NotAUnitError(HyperdenseError, ValueError):
    """A supplied generator is not a unit (or S-unit)."""


class NotCMError(HyperdenseError, ValueError):
    """A construction that requires a CM field was given a non-CM field."""


class DimensionError(HyperdenseError, ValueError):
    """Inconsistent dimensions in user-supplied data."""
