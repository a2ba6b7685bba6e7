"""Exception and warning types shared across the toolkit."""


class CounterPdcError(Exception):
    """Base class for all toolkit errors."""


class OutOfRangeError(CounterPdcError):
    """Wavelength outside the validity window of a dispersion model."""


class ModeCutoffError(CounterPdcError):
    """The fundamental waveguide mode is not guided at the requested wavelength."""


class NoPhasematchError(CounterPdcError):
    """No phasematched signal/idler pair exists in the search window."""


class NonPositiveDenominatorError(CounterPdcError):
    """Grating solve failed because k_p - k_s + k_i is not positive."""


class NotNormalizedError(CounterPdcError):
    """Joint amplitude handed to the decomposition is not unit-normalized."""


class DecompositionError(CounterPdcError):
    """The singular-value factorization backend failed to converge."""


class ConfigError(CounterPdcError):
    """Invalid or unknown entry in a run configuration."""


class GridTooCoarseWarning(UserWarning):
    """The frequency grid undersamples the narrower marginal of the state."""
