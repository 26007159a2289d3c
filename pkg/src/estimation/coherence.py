"""Coherence diagnostic on measured or target spectra."""

import numpy as np
from numpy.typing import NDArray

from src.estimation.correlations import EstimationError
from src.estimation.schemas import CorrelationEstimate
from src.spectral.schemas import SpectralTriple


def coherence_profile(
    source: CorrelationEstimate | SpectralTriple,
) -> NDArray[np.float64]:
    """|S_xy| / sqrt(S_xx S_yy) per frequency bin.

    An estimate contributes its ensemble-mean periodograms, a triple its
    target spectra.

    Raises:
        EstimationError: If an autospectrum bin is zero or the estimate
            carries no periodograms.
    """
    if isinstance(source, SpectralTriple):
        sxx, syy, sxy = source.sxx, source.syy, source.sxy
    else:
        if source.pxx is None or source.pyy is None or source.pxy is None:
            raise EstimationError("estimate carries no periodograms")
        sxx, syy, sxy = source.pxx, source.pyy, source.pxy

    product = sxx * syy
    zero = ~(product > 0)
    if np.any(zero):
        first = tuple(int(i) for i in np.argwhere(zero)[0])
        raise EstimationError(
            f"autospectrum is zero at bin {first} "
            f"({int(np.count_nonzero(zero))} bins); coherence undefined"
        )
    return np.abs(sxy) / np.sqrt(product)
