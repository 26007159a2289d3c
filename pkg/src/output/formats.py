"""CGSP binary and CSV data formats.

CGSP layout, all little-endian:

    b"CGSP"                      magic
    uint32 version               currently 1
    uint32 d                     grid dimension
    uint32 shape[d]              side per axis
    uint32 count                 realizations
    float64 data                 x then y per realization, C order

CSV pair files have columns ``realization,index,x,y`` with ``index`` the
flat C-order site index; table files have ``lag,value,stderr``. Floats
are written with repr so they read back bit for bit.
"""

import csv
import itertools
import math
import struct
from collections.abc import Iterable, Iterator
from pathlib import Path
from types import TracebackType

import numpy as np
import structlog
from numpy.typing import NDArray
from pydantic import BaseModel, Field

from src.synthesis.noise import child_seed
from src.synthesis.schemas import (
    FieldPair,
    RealizationPair,
    SequencePair,
    TrajectoryPair,
)

logger = structlog.get_logger()

MAGIC = b"CGSP"
FORMAT_VERSION = 1
VALUE_DTYPE = np.dtype("<f8")
PAIR_COLUMNS = ("realization", "index", "x", "y")
TABLE_COLUMNS = ("lag", "value", "stderr")
TRAJECTORY_COLUMNS = ("t", "X", "Y")


class FormatError(Exception):
    """Raised for corrupt, truncated or mismatched data files."""


class CgspHeader(BaseModel):
    """Parsed CGSP header."""

    version: int = Field(description="Format version")
    shape: tuple[int, ...] = Field(description="Grid shape, one side per axis")
    count: int = Field(ge=0, description="Number of realizations")

    @property
    def dim(self) -> int:
        return len(self.shape)

    @property
    def values_per_array(self) -> int:
        return math.prod(self.shape)

    def pack(self) -> bytes:
        return MAGIC + struct.pack(
            f"<{3 + self.dim}I", self.version, self.dim, *self.shape, self.count
        )


class CgspWriter:
    """Stream realizations into a CGSP file.

    The realization count is fixed in the header, so closing the writer
    after a different number of pairs raises FormatError.
    """

    def __init__(self, path: str | Path, shape: tuple[int, ...], count: int):
        self.path = Path(path)
        self.header = CgspHeader(version=FORMAT_VERSION, shape=shape, count=count)
        self._written = 0
        self._handle = None

    def __enter__(self) -> "CgspWriter":
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._handle = self.path.open("wb")
        self._handle.write(self.header.pack())
        return self

    def write(self, x: NDArray[np.float64], y: NDArray[np.float64]) -> None:
        if x.shape != self.header.shape or y.shape != self.header.shape:
            raise FormatError(
                f"pair of shape {x.shape}/{y.shape} does not match header "
                f"{self.header.shape}"
            )
        self._handle.write(np.ascontiguousarray(x, dtype=VALUE_DTYPE).tobytes())
        self._handle.write(np.ascontiguousarray(y, dtype=VALUE_DTYPE).tobytes())
        self._written += 1

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc: BaseException | None,
        tb: TracebackType | None,
    ) -> None:
        self._handle.close()
        if exc_type is None and self._written != self.header.count:
            raise FormatError(
                f"{self.path}: header announces {self.header.count} realizations, "
                f"{self._written} written"
            )


def write_cgsp(path: str | Path, pairs: Iterable[RealizationPair], count: int) -> int:
    """Write a pair stream to a CGSP file; returns the number of pairs."""
    stream = iter(pairs)
    first = next(stream, None)
    if first is None:
        raise FormatError(f"{path}: no realizations to write")
    with CgspWriter(path, first.shape, count) as writer:
        for pair in itertools.chain([first], stream):
            writer.write(pair.x, pair.y)
    logger.info("cgsp written", path=str(path), count=count, shape=first.shape)
    return count


def read_header(path: str | Path) -> CgspHeader:
    """Parse and validate the header of a CGSP file.

    Raises:
        FormatError: Bad magic, unsupported version or truncated header.
    """
    with Path(path).open("rb") as handle:
        return _read_header(handle, path)


def _read_header(handle, path: str | Path) -> CgspHeader:
    if handle.read(4) != MAGIC:
        raise FormatError(f"{path}: not a CGSP file")
    fixed = handle.read(8)
    if len(fixed) != 8:
        raise FormatError(f"{path}: truncated header")
    version, dim = struct.unpack("<2I", fixed)
    if version != FORMAT_VERSION:
        raise FormatError(f"{path}: unsupported format version {version}")
    if not 1 <= dim <= 3:
        raise FormatError(f"{path}: invalid dimension {dim}")
    rest = handle.read(4 * (dim + 1))
    if len(rest) != 4 * (dim + 1):
        raise FormatError(f"{path}: truncated header")
    *shape, count = struct.unpack(f"<{dim + 1}I", rest)
    return CgspHeader(version=version, shape=tuple(shape), count=count)


def _pair(
    x: NDArray[np.float64],
    y: NDArray[np.float64],
    index: int,
    master_seed: int | None,
) -> RealizationPair:
    seed = None if master_seed is None else child_seed(master_seed, index)
    kind = SequencePair if x.ndim == 1 else FieldPair
    return kind(x=x, y=y, seed_used=seed, realness_residual=0.0, realization=index)


def read_cgsp(
    path: str | Path, master_seed: int | None = None
) -> Iterator[RealizationPair]:
    """Stream the realizations stored in a CGSP file.

    Args:
        path: CGSP file
        master_seed: Master seed of the run, to label pairs with child seeds

    Yields:
        SequencePair (d = 1) or FieldPair per stored realization.

    Raises:
        FormatError: Truncated data or trailing bytes.
    """
    with Path(path).open("rb") as handle:
        header = _read_header(handle, path)
        nbytes = header.values_per_array * VALUE_DTYPE.itemsize
        for index in range(header.count):
            block = handle.read(2 * nbytes)
            if len(block) != 2 * nbytes:
                raise FormatError(
                    f"{path}: truncated at realization {index} of {header.count}"
                )
            values = np.frombuffer(block, dtype=VALUE_DTYPE).astype(np.float64)
            x = values[: header.values_per_array].reshape(header.shape)
            y = values[header.values_per_array :].reshape(header.shape)
            yield _pair(x, y, index, master_seed)
        if handle.read(1):
            raise FormatError(f"{path}: trailing bytes after {header.count} pairs")


class CsvPairWriter:
    """Stream realizations into a ``realization,index,x,y`` CSV file."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._written = 0
        self._handle = None
        self._writer = None

    def __enter__(self) -> "CsvPairWriter":
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._handle = self.path.open("w", newline="")
        self._writer = csv.writer(self._handle)
        self._writer.writerow(PAIR_COLUMNS)
        return self

    def write(self, x: NDArray[np.float64], y: NDArray[np.float64]) -> None:
        for i, (xv, yv) in enumerate(zip(x.ravel(), y.ravel(), strict=True)):
            self._writer.writerow((self._written, i, repr(float(xv)), repr(float(yv))))
        self._written += 1

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc: BaseException | None,
        tb: TracebackType | None,
    ) -> None:
        self._handle.close()


def open_pair_writer(
    path: str | Path, data_format: str, shape: tuple[int, ...], count: int
) -> CgspWriter | CsvPairWriter:
    """Writer for ``data_format`` ("cgsp" or "csv"), not yet entered."""
    if data_format == "csv":
        return CsvPairWriter(path)
    return CgspWriter(path, shape, count)


def write_pairs_csv(path: str | Path, pairs: Iterable[RealizationPair]) -> int:
    """Write pairs as ``realization,index,x,y`` rows; returns the pair count."""
    count = 0
    with CsvPairWriter(path) as writer:
        for pair in pairs:
            writer.write(pair.x, pair.y)
            count += 1
    logger.info("csv pairs written", path=str(path), count=count)
    return count


def write_pairs(
    path: str | Path,
    data_format: str,
    pairs: Iterable[RealizationPair],
    count: int,
) -> int:
    """Write a pair stream as ``data_format`` ("cgsp" or "csv")."""
    if data_format == "csv":
        return write_pairs_csv(path, pairs)
    return write_cgsp(path, pairs, count)


def read_pairs_csv(
    path: str | Path, dim: int = 1, master_seed: int | None = None
) -> list[RealizationPair]:
    """Read a pair CSV back; ``dim`` restores the grid shape of field data.

    Raises:
        FormatError: Bad columns, non-numeric values, gaps in the index or
            a site count that is not a d-th power.
    """
    rows: dict[int, tuple[list[float], list[float]]] = {}
    with Path(path).open(newline="") as handle:
        reader = csv.reader(handle)
        if tuple(next(reader, ())) != PAIR_COLUMNS:
            raise FormatError(f"{path}: expected columns {','.join(PAIR_COLUMNS)}")
        for line_no, row in enumerate(reader, start=2):
            try:
                realization, index = int(row[0]), int(row[1])
                x, y = float(row[2]), float(row[3])
            except (IndexError, ValueError) as exc:
                raise FormatError(f"{path}:{line_no}: malformed row {row}") from exc
            xs, ys = rows.setdefault(realization, ([], []))
            if index != len(xs):
                raise FormatError(f"{path}:{line_no}: index {index} out of order")
            xs.append(x)
            ys.append(y)

    if not rows:
        raise FormatError(f"{path}: no data rows")
    pairs = []
    for realization in sorted(rows):
        xs, ys = rows[realization]
        side = round(len(xs) ** (1.0 / dim))
        if side**dim != len(xs):
            raise FormatError(
                f"{path}: realization {realization} has {len(xs)} sites, "
                f"not a {dim}-D square grid"
            )
        shape = (side,) * dim
        pairs.append(
            _pair(
                np.array(xs).reshape(shape),
                np.array(ys).reshape(shape),
                realization,
                master_seed,
            )
        )
    return pairs


def write_table_csv(
    path: str | Path,
    lags: NDArray,
    values: NDArray[np.float64],
    stderr: NDArray[np.float64],
) -> None:
    """Write a ``lag,value,stderr`` table."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(TABLE_COLUMNS)
        for lag, value, err in zip(lags, values, stderr, strict=True):
            writer.writerow((int(lag), repr(float(value)), repr(float(err))))


def read_table_csv(
    path: str | Path,
) -> tuple[NDArray[np.int64], NDArray[np.float64], NDArray[np.float64]]:
    """Read a ``lag,value,stderr`` table back into arrays."""
    with Path(path).open(newline="") as handle:
        reader = csv.reader(handle)
        if tuple(next(reader, ())) != TABLE_COLUMNS:
            raise FormatError(f"{path}: expected columns {','.join(TABLE_COLUMNS)}")
        try:
            rows = [(int(r[0]), float(r[1]), float(r[2])) for r in reader]
        except (IndexError, ValueError) as exc:
            raise FormatError(f"{path}: malformed table row") from exc
    lags, values, errs = zip(*rows, strict=True) if rows else ((), (), ())
    return (
        np.array(lags, dtype=np.int64),
        np.array(values, dtype=np.float64),
        np.array(errs, dtype=np.float64),
    )


def write_trajectory_csv(path: str | Path, trajectory: TrajectoryPair) -> None:
    """Write running sums as ``t,X,Y`` rows with t starting at 1."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(TRAJECTORY_COLUMNS)
        for t, (xv, yv) in enumerate(zip(trajectory.X, trajectory.Y, strict=True), 1):
            writer.writerow((t, repr(float(xv)), repr(float(yv))))
