"""Ensemble generation: target preparation, seed splitting and workers."""

from collections.abc import Iterable, Iterator
from concurrent.futures import ThreadPoolExecutor

import structlog

from src.coupling.coefficients import (
    CoefficientError,
    coefficients_from_spectra,
    verify_coefficients,
)
from src.coupling.schemas import CoefficientSet
from src.spectral.feasibility import fit_cross_amplitude
from src.spectral.schemas import SpectralTriple, TargetModels
from src.spectral.transform import build_triple
from src.synthesis.fields import radial_spectra, synthesize_field_pair
from src.synthesis.noise import child_seed
from src.synthesis.schemas import GeneratorConfig, RealizationPair
from src.synthesis.sequences import synthesize_pair

logger = structlog.get_logger()

# Realizations submitted per worker before results are drained
CHUNK_PER_WORKER = 2


def resolve_models(cfg: GeneratorConfig) -> TargetModels:
    """Target models with the cross amplitude fitted to cfg.max_coherence."""
    if cfg.max_coherence is None:
        return cfg.models
    return fit_cross_amplitude(cfg.models, cfg.grid, cfg.max_coherence, cfg.path)


def prepare_triple(cfg: GeneratorConfig) -> SpectralTriple:
    """Spectral triple of the configured targets on the generator grid."""
    models = resolve_models(cfg)
    if cfg.dim >= 2:
        return radial_spectra(models, cfg.grid, cfg.path)
    return build_triple(models, cfg.grid, cfg.path)


def prepare_coefficients(
    cfg: GeneratorConfig, triple: SpectralTriple | None = None
) -> CoefficientSet:
    """Build and verify the coefficient set driving every realization.

    Raises:
        TargetError: If the targets are indefinite or infeasible.
        CoefficientError: If the built coefficients fail verification.
    """
    triple = triple if triple is not None else prepare_triple(cfg)
    cs = coefficients_from_spectra(triple)
    residual = verify_coefficients(cs, triple)
    if not residual.passed:
        raise CoefficientError(
            f"coefficient residual {residual.max_residual:.3e} at bin "
            f"{residual.worst_bin} exceeds {residual.tolerance:g} x scale"
        )
    return cs


def synthesize_realization(
    cfg: GeneratorConfig, cs: CoefficientSet, index: int
) -> RealizationPair:
    """Realization ``index`` of the ensemble, driven by its child seed."""
    seed = child_seed(cfg.master_seed, index)
    if cfg.dim == 1:
        return synthesize_pair(cfg, cs, seed, realization=index)
    return synthesize_field_pair(cfg, cs, seed, realization=index)


def generate_ensemble(
    cfg: GeneratorConfig,
    cs: CoefficientSet | None = None,
    *,
    indices: Iterable[int] | None = None,
) -> Iterator[RealizationPair]:
    """Stream the realizations of an ensemble in index order.

    Each realization depends only on (cfg, index), so the output is
    identical for any worker count and any requested order of indices.

    Args:
        cfg: Generator configuration
        cs: Precomputed coefficient set (built from cfg when omitted)
        indices: Realization indices to produce (default 0..n-1)

    Yields:
        SequencePair (d = 1) or FieldPair (d >= 2) per index.
    """
    cs = cs if cs is not None else prepare_coefficients(cfg)
    order = list(range(cfg.n_realizations) if indices is None else indices)
    logger.info(
        "generating ensemble",
        n_realizations=len(order),
        length=cfg.length,
        dim=cfg.dim,
        workers=cfg.workers,
    )

    if cfg.workers == 1:
        for index in order:
            yield synthesize_realization(cfg, cs, index)
        return

    chunk = cfg.workers * CHUNK_PER_WORKER
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        for start in range(0, len(order), chunk):
            batch = order[start : start + chunk]
            yield from pool.map(
                lambda index: synthesize_realization(cfg, cs, index), batch
            )
