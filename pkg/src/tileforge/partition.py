"""Connected partitions of the (m+2)-cube whose parts all touch each other.

The partition is defined by a piecewise labeling of cube coordinates.  Its
parts are pairwise adjacent inside the cube ("internally adjacent") and also
across cube translates by (m+1) along every axis ("externally adjacent"),
which is what later makes shell assemblies connected.  Dimension 3 is the
base case; higher dimensions stack labeled copies and rotate the top slab.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .lattice import LatticeTile, Point, TileError, difference, inflate, union


class PartitionError(TileError):
    """Invalid partition parameters or inconsistent case labeling."""


def _case_hits(m: int, x: int, y: int, z: int) -> list[int]:
    """Labels claimed by the 3-D case table; empty means a free coordinate."""
    hits = []
    if z == 0 and 0 <= x <= m and 1 <= y <= m:
        hits.append(y)
    if z == m + 1 and 1 <= x <= m and 0 <= y <= m:
        hits.append(x)
    if x == 0 and 1 <= y <= m and 1 <= z <= m:
        hits.append(y)
    if y == 0 and 1 <= x <= m and 1 <= z <= m:
        hits.append(x)
    if 1 <= x <= m + 1 and 1 <= y <= m + 1 and 1 <= z <= m:
        hits.append(z)
    return hits


def _hits(m: int, point: tuple[int, ...]) -> list[int]:
    if len(point) == 3:
        return _case_hits(m, *point)
    last = point[-1]
    if 0 <= last <= m:
        return _hits(m, point[:-1])
    # top slab: rotate the first two coordinates a quarter turn
    x1, x2 = point[0], point[1]
    return _hits(m, (m + 1 - x2, x1) + point[2:-1])


def part_label(m: int, point: tuple[int, ...]) -> int:
    """Part index (1..m) of a cube coordinate; free coordinates map to 1."""
    d = len(point)
    if d < 3:
        raise PartitionError("the construction needs dimension >= 3")
    if m < 1:
        raise PartitionError("part count m must be positive")
    if any(not (0 <= c <= m + 1) for c in point):
        raise PartitionError(f"point {point} outside the (m+2)-cube")
    hits = _hits(m, point)
    if not hits:
        return 1  # free coordinate
    if len(set(hits)) > 1:
        raise PartitionError(
            f"case table assigns conflicting labels {sorted(set(hits))} "
            f"to {point}")
    return hits[0]


def is_free_coordinate(m: int, point: tuple[int, ...]) -> bool:
    return not _hits(m, point)


@dataclass(frozen=True)
class CubePartition:
    """m labeled parts covering {0..m+1}^dim exactly once."""

    dim: int
    m: int
    parts: tuple[LatticeTile, ...]  # parts[i] is the tile labeled i+1
    free_cells: frozenset[Point]   # all carry label 1

    @property
    def side(self) -> int:
        return self.m + 2

    def part(self, label: int) -> LatticeTile:
        return self.parts[label - 1]

    def label_map(self) -> dict[Point, int]:
        out: dict[Point, int] = {}
        for i, p in enumerate(self.parts):
            for cell in p:
                out[cell] = i + 1
        return out


@dataclass(frozen=True)
class DecoratedPartition:
    """Tripled partition; part 1 carries one bump and one dent per axis."""

    dim: int
    m: int
    parts: tuple[LatticeTile, ...]

    @property
    def side(self) -> int:
        return 3 * self.m + 6

    def part(self, label: int) -> LatticeTile:
        return self.parts[label - 1]


def partition_cube(dim: int, m: int) -> CubePartition:
    """Label every coordinate of {0..m+1}^dim and group the parts."""
    if dim < 3:
        raise PartitionError("the construction needs dimension >= 3")
    if m < 1:
        raise PartitionError("part count m must be positive")
    buckets: list[list[tuple[int, ...]]] = [[] for _ in range(m)]
    free: list[tuple[int, ...]] = []
    for point in product(range(m + 2), repeat=dim):
        hits = _hits(m, point)
        if not hits:
            free.append(point)
            buckets[0].append(point)
            continue
        if len(set(hits)) > 1:
            raise PartitionError(
                f"case table assigns conflicting labels to {point}")
        buckets[hits[0] - 1].append(point)
    parts = tuple(LatticeTile(b, dim=dim, name=f"Q{i + 1}")
                  for i, b in enumerate(buckets))
    total = sum(len(p) for p in parts)
    assert total == (m + 2) ** dim
    return CubePartition(dim=dim, m=m, parts=parts, free_cells=frozenset(free))


@dataclass
class AdjacencyReport:
    ok: bool
    failures: list[tuple]
    pairs_checked: int

    def __bool__(self) -> bool:
        return self.ok


def check_internal_adjacency(cp: CubePartition) -> AdjacencyReport:
    """Every pair of parts shares a unit-vector contact inside the cube."""
    label = cp.label_map()
    touched: set[tuple[int, int]] = set()
    for cell, lab in label.items():
        for axis in range(cp.dim):
            nbr = cell[:axis] + (cell[axis] + 1,) + cell[axis + 1:]
            other = label.get(nbr)
            if other is not None and other != lab:
                touched.add((min(lab, other), max(lab, other)))
    failures = [(i, j) for i in range(1, cp.m + 1)
                for j in range(i + 1, cp.m + 1) if (i, j) not in touched]
    return AdjacencyReport(not failures, failures,
                           cp.m * (cp.m - 1) // 2)


def check_external_adjacency(cp: CubePartition) -> AdjacencyReport:
    """Parts of neighboring cube translates touch along every signed axis.

    Because all parts live in the cube of side m+2, the translate contact is
    equivalent to a + (m+1)v = b with a in part i and b in part j.
    """
    label = cp.label_map()
    step = cp.m + 1
    achieved: list[set[tuple[int, int]]] = [set() for _ in range(cp.dim)]
    for cell, lab in label.items():
        for axis in range(cp.dim):
            far = cell[:axis] + (cell[axis] + step,) + cell[axis + 1:]
            other = label.get(far)
            if other is not None:
                achieved[axis].add((lab, other))
    failures = []
    for i in range(1, cp.m + 1):
        for j in range(1, cp.m + 1):
            if i == j:
                continue
            for axis in range(cp.dim):
                if (i, j) not in achieved[axis]:
                    failures.append((i, j, axis, +1))
    return AdjacencyReport(not failures, failures,
                           cp.m * (cp.m - 1) * cp.dim)


def bump_cells(dim: int, m: int) -> list[Point]:
    """One cell per axis just outside the tripled cube, at (-1, 1, ..., 1)."""
    return [tuple(-1 if i == k else 1 for i in range(dim))
            for k in range(dim)]


def dent_cells(dim: int, m: int) -> list[Point]:
    """One cell per axis on the far corner column, at (3m+5, 1, ..., 1)."""
    far = 3 * m + 5
    return [tuple(far if i == k else 1 for i in range(dim))
            for k in range(dim)]


def decorate(cp: CubePartition) -> DecoratedPartition:
    """Triple every part; add per-axis bumps to part 1 and carve its dents."""
    tripled = [inflate(p, 3) for p in cp.parts]
    bumps = LatticeTile(bump_cells(cp.dim, cp.m), dim=cp.dim)
    dents = LatticeTile(dent_cells(cp.dim, cp.m), dim=cp.dim)
    first = tripled[0]
    first_set = first.cell_set()
    for b in bumps:
        if b in first_set:
            raise PartitionError(f"bump cell {b} already occupied")
    for dcell in dents:
        if dcell not in first_set:
            raise PartitionError(f"dent cell {dcell} not present to remove")
    decorated_first = difference(
        union([first, bumps], name=first.name), dents, name=first.name)
    parts = (decorated_first,) + tuple(tripled[1:])
    total = sum(len(p) for p in parts)
    side = 3 * cp.m + 6
    assert total == side ** cp.dim
    return DecoratedPartition(dim=cp.dim, m=cp.m, parts=parts)
