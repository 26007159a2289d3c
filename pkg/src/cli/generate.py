"""``generate``: synthesize an ensemble and write it with its manifest."""

import argparse
from collections.abc import Callable, Iterable, Iterator
from contextlib import ExitStack
from pathlib import Path
from typing import Literal

import structlog
from pydantic import Field

from src.cli.base import (
    ExitCode,
    TargetOptions,
    UsageError,
    add_grid_arguments,
    add_target_arguments,
    build_options,
    default_out,
)
from src.output.formats import (
    CgspWriter,
    open_pair_writer,
    write_pairs,
    write_trajectory_csv,
)
from src.output.manifest import RunManifest
from src.spectral.schemas import SpectralPath
from src.synthesis.ensemble import (
    generate_ensemble,
    prepare_coefficients,
    prepare_triple,
    resolve_models,
)
from src.synthesis.fields import self_affine_surface
from src.synthesis.schemas import GeneratorConfig, RealizationPair
from src.synthesis.sequences import cumulate

logger = structlog.get_logger()

SUFFIX = {"cgsp": ".cgsp", "csv": ".csv"}

PairSink = Callable[[RealizationPair], None]


class GenerateOptions(TargetOptions):
    """Options of the generate subcommand."""

    length: int | None = Field(default=None, description="Side length L")
    dim: int = Field(default=1, ge=1, le=3)
    samples: int = Field(default=1, ge=1, description="Number of realizations")
    seed: int = Field(default=0, ge=0, description="Master seed")
    out: Path = Field(default_factory=default_out, description="Output directory")
    path: SpectralPath = "fft"
    format: Literal["cgsp", "csv"] = "cgsp"
    cumulate: bool = False
    surface: bool = False
    workers: int | None = Field(default=None, ge=1)
    from_manifest: Path | None = None


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "generate",
        help="synthesize coupled sequences or fields",
        argument_default=argparse.SUPPRESS,
    )
    add_target_arguments(parser)
    add_grid_arguments(parser)
    parser.add_argument("--samples", type=int, help="number of realizations")
    parser.add_argument("--seed", type=int, help="64-bit master seed")
    parser.add_argument("--out", type=Path, help="output directory")
    parser.add_argument("--format", choices=("cgsp", "csv"), help="data format")
    parser.add_argument(
        "--cumulate", action="store_true", help="also write running-sum trajectories"
    )
    parser.add_argument(
        "--surface", action="store_true", help="also write self-affine surfaces (2-D)"
    )
    parser.add_argument("--workers", type=int, help="synthesis threads")
    parser.add_argument(
        "--from-manifest", type=Path, help="rerun the generation a manifest records"
    )
    parser.set_defaults(handler=run)


def _manifest_for(opts: GenerateOptions) -> RunManifest:
    """Manifest skeleton of a fresh run, or the recorded one for a rerun."""
    if opts.from_manifest is not None:
        recorded = RunManifest.load(opts.from_manifest)
        config = recorded.config
        if opts.workers is not None:
            config = config.model_copy(update={"workers": opts.workers})
        return recorded.model_copy(update={"config": config, "outputs": []})

    if opts.length is None:
        raise UsageError("--length is required (or --from-manifest)")
    if opts.cumulate and opts.dim != 1:
        raise UsageError("--cumulate needs --dim 1")
    if opts.surface and opts.dim != 2:
        raise UsageError("--surface needs --dim 2")

    extra = {"workers": opts.workers} if opts.workers is not None else {}
    config = GeneratorConfig(
        length=opts.length,
        dim=opts.dim,
        master_seed=opts.seed,
        n_realizations=opts.samples,
        models=opts.target_models(),
        path=opts.path,
        max_coherence=opts.resolved_max_coherence(),
        **extra,
    )
    return RunManifest(
        config=config,
        data_format=opts.format,
        cumulate=opts.cumulate,
        surface=opts.surface,
        cross_amplitude=config.models.xy.amplitude,
        max_coherence=0.0,
    )


def _tee(
    pairs: Iterable[RealizationPair], sinks: list[PairSink]
) -> Iterator[RealizationPair]:
    for pair in pairs:
        for sink in sinks:
            sink(pair)
        yield pair


def _trajectory_sink(
    out: Path, manifest: RunManifest, stack: ExitStack, outputs: list[str]
) -> PairSink:
    """Running sums per realization: one ``t,X,Y`` file each, or one CGSP file."""
    cfg = manifest.config
    if manifest.data_format == "csv":

        def write_csv(pair: RealizationPair) -> None:
            name = f"trajectories_{pair.realization}.csv"
            write_trajectory_csv(out / name, cumulate(pair))
            outputs.append(name)

        return write_csv

    name = "trajectories.cgsp"
    writer = stack.enter_context(
        CgspWriter(out / name, cfg.grid.shape, cfg.n_realizations)
    )
    outputs.append(name)

    def write_binary(pair: RealizationPair) -> None:
        trajectory = cumulate(pair)
        writer.write(trajectory.X, trajectory.Y)

    return write_binary


def _surface_sink(
    out: Path, manifest: RunManifest, stack: ExitStack, outputs: list[str]
) -> PairSink:
    cfg = manifest.config
    name = f"surfaces{SUFFIX[manifest.data_format]}"
    writer = stack.enter_context(
        open_pair_writer(
            out / name, manifest.data_format, cfg.grid.shape, cfg.n_realizations
        )
    )
    outputs.append(name)

    def write(pair: RealizationPair) -> None:
        surfaces = self_affine_surface(pair)
        writer.write(surfaces.h_x, surfaces.h_y)

    return write


def run(args: argparse.Namespace) -> int:
    opts = build_options(GenerateOptions, args)
    manifest = _manifest_for(opts)
    cfg = manifest.config

    triple = prepare_triple(cfg)
    cs = prepare_coefficients(cfg, triple)
    manifest.max_coherence = triple.feasibility.max_coherence
    manifest.cross_amplitude = resolve_models(cfg).xy.amplitude

    pairs_name = f"pairs{SUFFIX[manifest.data_format]}"
    outputs = [pairs_name]
    with ExitStack() as stack:
        sinks: list[PairSink] = []
        if manifest.cumulate:
            sinks.append(_trajectory_sink(opts.out, manifest, stack, outputs))
        if manifest.surface:
            sinks.append(_surface_sink(opts.out, manifest, stack, outputs))
        write_pairs(
            opts.out / pairs_name,
            manifest.data_format,
            _tee(generate_ensemble(cfg, cs), sinks),
            cfg.n_realizations,
        )

    manifest.outputs = outputs
    manifest.write(opts.out)
    logger.info(
        "generation finished",
        out=str(opts.out),
        n_realizations=cfg.n_realizations,
        max_coherence=manifest.max_coherence,
    )
    print(f"wrote {cfg.n_realizations} realizations to {opts.out}")
    return ExitCode.OK
