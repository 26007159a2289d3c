"""Exceptions raised while turning target correlations into spectra."""


class TargetError(ValueError):
    """Raised when a target correlation triple cannot be realized."""


class IndefiniteSpectrumError(TargetError):
    """Raised when an autospectrum has negative values beyond the clip tolerance.

    A genuinely negative spectral density means the target autocorrelation
    is not positive semidefinite on the grid.
    """

    def __init__(self, message: str, bins: list[tuple[int, ...]], worst: float):
        super().__init__(message)
        self.bins = bins
        self.worst = worst


class InfeasibleTargetError(TargetError):
    """Raised when the cross-spectrum violates |S_xy|^2 <= S_xx S_yy."""
