"""CSV spectra and run manifests."""
from __future__ import annotations

import datetime as _dt
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .spectrum import Extremum, SpectrumGrid

HEADER = "# supersplit-spectrum v1"


def fmt(x: float) -> str:
    """17 significant digits: lossless for IEEE doubles."""
    return format(float(x), ".17g")


def format_spectrum_csv(grid: SpectrumGrid, value_column: str = "intensity",
                        comments: list = ()) -> str:
    lines = [HEADER, f"delta,{value_column}"]
    lines += [f"{fmt(d)},{fmt(v)}" for d, v in zip(grid.delta_values, grid.intensity)]
    lines += [f"# extremum,{e.kind},{fmt(e.position)},{fmt(e.value)}" for e in grid.extrema]
    lines += [f"# {c}" for c in comments]
    return "\n".join(lines) + "\n"


def write_spectrum_csv(path, grid: SpectrumGrid, value_column: str = "intensity",
                       comments: list = ()) -> Path:
    path = Path(path)
    with open(path, "w", newline="\n") as fh:
        fh.write(format_spectrum_csv(grid, value_column, comments))
    return path


@dataclass
class SpectrumFile:
    columns: tuple
    data: np.ndarray
    extrema: list
    comments: list = field(default_factory=list)

    def grid(self) -> SpectrumGrid:
        return SpectrumGrid(self.data[:, 0].copy(), self.data[:, 1].copy(),
                            list(self.extrema), quantity=self.columns[1])

    def comment_values(self, key: str) -> list:
        """Fields after ``key`` in ``# key,...`` comment lines."""
        return [c.split(",")[1:] for c in self.comments if c.split(",")[0] == key]


def read_spectrum_csv(path) -> SpectrumFile:
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0] != HEADER:
        raise ValueError(f"{path}: missing header {HEADER!r}")
    columns = tuple(lines[1].split(","))
    rows, extrema, comments = [], [], []
    for line in lines[2:]:
        if line.startswith("# extremum,"):
            _, kind, pos, val = line[2:].split(",")
            extrema.append(Extremum(float(pos), float(val), kind))
        elif line.startswith("# "):
            comments.append(line[2:])
        elif line:
            rows.append([float(x) for x in line.split(",")])
    return SpectrumFile(columns, np.array(rows).reshape(-1, len(columns)), extrema, comments)


def write_manifest(out_path, command: str, parameters: dict, version: str) -> Path:
    """JSON sidecar ``<out>.manifest.json`` describing how ``out_path`` was made."""
    out_path = Path(out_path)
    manifest = {
        "command": command,
        "parameters": parameters,
        "version": version,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "outputs": [str(out_path)],
    }
    path = out_path.with_name(out_path.name + ".manifest.json")
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path
