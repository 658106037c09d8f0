from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from reach.geomsets import support_rows


@dataclass
class Polygon:
    dims: Tuple[int, int]
    vertices: np.ndarray = field(default_factory=lambda: np.zeros((0, 2)))
    empty: bool = False
    piece: Optional[int] = None

    @property
    def area(self) -> float:
        if self.empty or self.vertices.shape[0] < 3:
            return 0.0
        x, y = self.vertices[:, 0], self.vertices[:, 1]
        return float(0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def project2d(S, dims: Tuple[int, int], n_angles: int = 128, piece: Optional[int] = None) -> Polygon:
    """Outer polygon of the projection of S onto coordinates ``dims`` (0-based).

    Support values along ``n_angles`` uniform directions define halfplanes;
    consecutive boundary lines are intersected to get the vertices.
    """
    if n_angles < 3:
        raise ValueError("projection needs at least 3 directions")
    i, j = dims
    angles = 2.0 * np.pi * np.arange(n_angles) / n_angles
    planar = np.column_stack([np.cos(angles), np.sin(angles)])
    directions = np.zeros((n_angles, S.dim))
    directions[:, i] = planar[:, 0]
    directions[:, j] = planar[:, 1]
    values = support_rows(S, directions)
    if np.any(np.isneginf(values)):
        return Polygon(dims=dims, empty=True, piece=piece)

    vertices = []
    for k in range(n_angles):
        nxt = (k + 1) % n_angles
        lines = np.vstack([planar[k], planar[nxt]])
        vertices.append(np.linalg.solve(lines, np.array([values[k], values[nxt]])))
    return Polygon(dims=dims, vertices=np.vstack(vertices), piece=piece)


def write_polygons(polygons: Sequence[Polygon], directory: Path, prefix: str = "projection") -> Path:
    """One CSV (x, y rows) per polygon plus a JSON index; returns the index path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    index = []
    for polygon in polygons:
        i, j = polygon.dims
        stem = f"{prefix}_{i + 1}_{j + 1}"
        if polygon.piece is not None:
            stem += f"_{polygon.piece}"
        path = directory / f"{stem}.csv"
        with path.open("w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(["x", "y"])
            for x, y in polygon.vertices:
                writer.writerow([repr(float(x)), repr(float(y))])
        index.append({
            "file": path.name,
            "dims": [i + 1, j + 1],
            "piece": polygon.piece,
            "area": polygon.area,
            "empty": polygon.empty,
        })
    index_path = directory / f"{prefix}_index.json"
    index_path.write_text(json.dumps(index, indent=2), encoding="utf-8")
    return index_path


def project_all(
    sets: Iterable[Tuple[Optional[int], object]],
    pairs: Sequence[Tuple[int, int]],
    n_angles: int,
) -> List[Polygon]:
    """Project every (piece, set) entry onto every 0-based coordinate pair."""
    polygons = []
    for piece, S in sets:
        for pair in pairs:
            polygons.append(project2d(S, pair, n_angles, piece))
    return polygons
