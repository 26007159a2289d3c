"""Sampling of target correlation models on the periodic lattice."""

import numpy as np
import structlog
from numpy.typing import NDArray

from src.spectral.errors import TargetError
from src.spectral.schemas import CorrelationFamily, CorrelationModel, FrequencyGrid

logger = structlog.get_logger()


def sample_correlation(
    model: CorrelationModel,
    grid: FrequencyGrid,
) -> NDArray[np.float64]:
    """Evaluate a correlation model at every lattice lag of the grid.

    Lags are taken as periodic minimum-image distances, so for a 1-D grid
    C(n) for n > L/2 equals C(L - n) and for fields the distance of lag
    (n_1, ..., n_d) is sqrt(sum_i min(n_i, L - n_i)^2).

    Tabulated models accept either ``L/2 + 1`` values for lags 0..L/2
    (1-D only, mirrored like the parametric families) or ``L**d`` values
    holding the raw periodic lag array in C order, which may be uneven.

    Args:
        model: Target correlation model
        grid: Lattice to sample on

    Returns:
        Array of shape ``grid.shape`` with C at every lag.

    Raises:
        TargetError: If the table length does not fit the grid or the
            sampled values are not finite.
    """
    if model.family is CorrelationFamily.TABULATED:
        values = _sample_table(model, grid)
    else:
        if (
            model.family is CorrelationFamily.POWER_LAW_MAKSE
            and grid.dim == 1
            and model.gamma >= 1
        ):
            logger.warning(
                "power-law exponent outside (0, 1) for a sequence",
                gamma=model.gamma,
            )
        values = model.evaluate(grid.lag_distance())

    if not np.all(np.isfinite(values)):
        raise TargetError(f"{model.family.value} correlation is not finite on grid")
    return values


def _sample_table(model: CorrelationModel, grid: FrequencyGrid) -> NDArray[np.float64]:
    table = model.amplitude * np.asarray(model.table, dtype=np.float64)
    half = grid.length // 2 + 1

    if table.size == grid.size:
        return table.reshape(grid.shape)
    if grid.dim == 1 and table.size == half:
        return table[grid.folded_index()]
    raise TargetError(
        f"tabulated correlation has {table.size} values; grid of side "
        f"{grid.length} in {grid.dim}-D needs {grid.size}"
        + (f" or {half}" if grid.dim == 1 else "")
    )
