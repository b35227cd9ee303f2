"""Snapshot, report, and table IO.

CSV layouts (one row per agent per recorded round):

- angle:    ``round,agent_id,wealth``
- market:   ``period,agent_id,x,y,wealth,price``
- pairwise: ``round,agent_id,is_monopolist,x,y,wealth,ref_price``

KDE tables are ``grid,density``.  Analysis reports are JSON.  Floats
are written with shortest round-trip formatting and all files are
written atomically (temp file + rename), so concurrent replicas never
expose partial output.
"""

import csv
import json
import os
import threading
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .angle import AngleResult
from .config import ExperimentConfig
from .errors import ConfigError
from .market import MarketResult
from .pairwise import PairwiseResult
from .stats import KdeEstimate

HEADERS = {
    "angle": ("round", "agent_id", "wealth"),
    "market": ("period", "agent_id", "x", "y", "wealth", "price"),
    "pairwise": ("round", "agent_id", "is_monopolist", "x", "y", "wealth", "ref_price"),
}


@dataclass(frozen=True)
class SnapshotFrame:
    """All agent rows of one recorded round, column-wise."""

    round: int
    data: dict[str, np.ndarray]


@dataclass(frozen=True)
class SnapshotFile:
    """A parsed snapshot CSV: model kind plus per-round frames."""

    kind: str
    frames: tuple[SnapshotFrame, ...]

    def last(self) -> SnapshotFrame:
        return self.frames[-1]


def atomic_write_text(path, text: str) -> None:
    """Write text to path via a same-directory temp file and rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.parent / f".{path.name}.tmp-{os.getpid()}-{threading.get_ident()}"
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _fmt(value) -> str:
    return repr(float(value))


def write_result_csv(path, result) -> str:
    """Write a run result's snapshots as CSV; returns the model kind."""
    if isinstance(result, AngleResult):
        kind = "angle"
        lines = [",".join(HEADERS[kind])]
        for snap in result.snapshots:
            for agent, wealth in enumerate(snap.wealth):
                lines.append(f"{snap.round},{agent},{_fmt(wealth)}")
    elif isinstance(result, MarketResult):
        kind = "market"
        lines = [",".join(HEADERS[kind])]
        for snap in result.snapshots:
            price = _fmt(snap.price)
            for agent in range(snap.x.size):
                lines.append(
                    f"{snap.period},{agent},{_fmt(snap.x[agent])},{_fmt(snap.y[agent])},"
                    f"{_fmt(snap.wealth[agent])},{price}"
                )
    elif isinstance(result, PairwiseResult):
        kind = "pairwise"
        lines = [",".join(HEADERS[kind])]
        for snap in result.snapshots:
            price = _fmt(snap.ref_price)
            for agent in range(snap.x.size):
                lines.append(
                    f"{snap.round},{agent},{int(snap.is_monopolist[agent])},"
                    f"{_fmt(snap.x[agent])},{_fmt(snap.y[agent])},"
                    f"{_fmt(snap.wealth[agent])},{price}"
                )
    else:
        raise ConfigError(f"unknown result type {type(result).__name__}")
    atomic_write_text(path, "\n".join(lines) + "\n")
    return kind


def write_kde_csv(path, kde: KdeEstimate) -> None:
    """Write a density estimate as a grid,density table."""
    lines = ["grid,density"]
    for g, d in zip(kde.grid, kde.density):
        lines.append(f"{_fmt(g)},{_fmt(d)}")
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_kde_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Read a grid,density table back as two arrays."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["grid", "density"]:
            raise ConfigError(f"{path}: expected header grid,density, got {header}")
        grid = []
        density = []
        for row in reader:
            if not row:
                continue
            if len(row) != 2:
                raise ConfigError(f"{path}: malformed row {row!r}")
            grid.append(float(row[0]))
            density.append(float(row[1]))
    if not grid:
        raise ConfigError(f"{path}: no data rows")
    return np.asarray(grid), np.asarray(density)


def write_report_json(path, report: dict) -> None:
    """Write an analysis report as stable, human-readable JSON."""
    atomic_write_text(path, json.dumps(report, indent=2, sort_keys=True) + "\n")


def write_config_json(path, config: ExperimentConfig) -> None:
    """Record the exact configuration a run used."""
    atomic_write_text(path, config.to_json())


def read_snapshot_csv(path) -> SnapshotFile:
    """Parse a snapshot CSV written by write_result_csv.

    The model kind is detected from the header.  Rows are grouped into
    frames by their round index, in file order.
    """
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        kind = None
        for name, columns in HEADERS.items():
            if header == list(columns):
                kind = name
                break
        if kind is None:
            raise ConfigError(f"{path}: header {header} is not a recognized snapshot layout")
        columns = HEADERS[kind]
        grouped: dict[int, list[list[float]]] = {}
        order: list[int] = []
        for row in reader:
            if not row:
                continue
            if len(row) != len(columns):
                raise ConfigError(f"{path}: row has {len(row)} fields, expected {len(columns)}")
            try:
                rnd = int(row[0])
                values = [float(v) for v in row[1:]]
            except ValueError as exc:
                raise ConfigError(f"{path}: malformed row {row!r}") from exc
            if rnd not in grouped:
                grouped[rnd] = []
                order.append(rnd)
            grouped[rnd].append(values)
    if not order:
        raise ConfigError(f"{path}: no data rows")
    frames = []
    for rnd in order:
        block = np.asarray(grouped[rnd], dtype=np.float64)
        data: dict[str, np.ndarray] = {}
        for idx, name in enumerate(columns[1:]):
            col = block[:, idx]
            if name == "agent_id":
                data[name] = col.astype(np.int64)
            elif name == "is_monopolist":
                data[name] = col.astype(bool)
            else:
                data[name] = col
        frames.append(SnapshotFrame(rnd, data))
    return SnapshotFile(kind, tuple(frames))
