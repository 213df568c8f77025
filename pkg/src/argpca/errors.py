"""Exception types shared across the package."""


class ArgPcaError(Exception):
    """Base class for numerical and data errors raised by this package."""


class DegenerateDataError(ArgPcaError):
    """Data matrix is rank deficient beyond the null direction from centering."""


class RidgeSingularityError(ArgPcaError):
    """The negative ridge is (near-)singular: the smallest spiked sample
    eigenvalue coincides with the average of the non-spiked ones."""


class DegenerateGeometryError(ArgPcaError):
    """A subspace computation collapsed (rank loss, zero vector, or a
    near-singular reference Gram matrix)."""


class ConfigError(ArgPcaError):
    """An experiment configuration file is missing, malformed, or invalid."""
