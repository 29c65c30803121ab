"""Integer-lattice geometry core: point-set tiles, Minkowski sums, connectivity.

A tile is a finite set of cells in Z^d, stored as a read-only, lexicographically
sorted (N, d) int64 array.  All operations are pure: they return new tiles and
never mutate their inputs, so values are safe to share across threads.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy import ndimage

Point = tuple[int, ...]

# Above this bounding-box volume, connectivity falls back from dense labeling
# to a sparse search.
_DENSE_VOLUME_LIMIT = 200_000_000


class TileError(ValueError):
    """Invalid tile value or operation."""


class EmptyTileError(TileError):
    """Operation requires a non-empty tile."""


class MinkowskiOverlapError(TileError):
    """Two summand pairs produced the same cell.

    ``witness`` holds one collision as ``((a1, b1), (a2, b2))`` with
    ``a1 + b1 == a2 + b2``.
    """

    def __init__(self, witness):
        self.witness = witness
        (a1, b1), (a2, b2) = witness
        super().__init__(
            f"overlapping Minkowski sum: {a1} + {b1} == {a2} + {b2}"
        )


def _as_cell_array(cells, dim: int | None) -> tuple[np.ndarray, int]:
    """Normalize any iterable of points into a sorted unique (N, d) array."""
    if isinstance(cells, np.ndarray):
        arr = np.asarray(cells, dtype=np.int64)
        if arr.ndim != 2:
            raise TileError(f"cell array must be 2-D, got shape {arr.shape}")
    else:
        pts = [tuple(int(x) for x in p) for p in cells]
        if not pts:
            if dim is None:
                raise TileError("empty tile needs an explicit dim")
            return np.empty((0, dim), dtype=np.int64), dim
        lengths = {len(p) for p in pts}
        if len(lengths) != 1:
            raise TileError(f"mixed point dimensions: {sorted(lengths)}")
        arr = np.array(pts, dtype=np.int64)
    if arr.shape[0] == 0:
        if dim is None and arr.shape[1] == 0:
            raise TileError("empty tile needs an explicit dim")
        dim = dim if dim is not None else arr.shape[1]
        return np.empty((0, dim), dtype=np.int64), dim
    if dim is not None and arr.shape[1] != dim:
        raise TileError(f"points have dimension {arr.shape[1]}, expected {dim}")
    arr = np.unique(arr, axis=0)  # sorts rows lexicographically
    return arr, arr.shape[1]


class LatticeTile:
    """Finite set of integer points in Z^d.

    Empty tiles are representable (gadget algebra needs them as the neutral
    element of union) but are rejected by ``normalize`` and ``is_connected``.
    """

    __slots__ = ("dim", "name", "_cells", "_cellset")

    def __init__(self, cells: Iterable[Sequence[int]] | np.ndarray,
                 dim: int | None = None, name: str = "tile"):
        arr, d = _as_cell_array(cells, dim)
        if d < 1:
            raise TileError("dimension must be at least 1")
        arr.setflags(write=False)
        self.dim = d
        self.name = name
        self._cells = arr
        self._cellset: frozenset[Point] | None = None

    @classmethod
    def _from_sorted(cls, arr: np.ndarray, dim: int, name: str) -> "LatticeTile":
        """Wrap an array already known to be unique and lex-sorted."""
        t = cls.__new__(cls)
        arr = np.asarray(arr, dtype=np.int64)
        arr.setflags(write=False)
        t.dim = dim
        t.name = name
        t._cells = arr
        t._cellset = None
        return t

    @property
    def cells(self) -> np.ndarray:
        return self._cells

    @property
    def is_empty(self) -> bool:
        return self._cells.shape[0] == 0

    def __len__(self) -> int:
        return self._cells.shape[0]

    def __iter__(self) -> Iterator[Point]:
        for row in self._cells:
            yield tuple(int(x) for x in row)

    def __contains__(self, point) -> bool:
        return tuple(int(x) for x in point) in self.cell_set()

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatticeTile):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self._cells, other._cells)

    def __repr__(self) -> str:
        return f"LatticeTile(name={self.name!r}, dim={self.dim}, cells={len(self)})"

    def cell_set(self) -> frozenset[Point]:
        if self._cellset is None:
            self._cellset = frozenset(map(tuple, self._cells.tolist()))
        return self._cellset

    def bbox(self) -> tuple[np.ndarray, np.ndarray]:
        """(min corner, max corner); errors on the empty tile."""
        if self.is_empty:
            raise EmptyTileError("empty tile has no bounding box")
        return self._cells.min(axis=0), self._cells.max(axis=0)

    def extents(self) -> np.ndarray:
        lo, hi = self.bbox()
        return hi - lo + 1

    def translate(self, v: Sequence[int]) -> "LatticeTile":
        vec = np.asarray(tuple(int(x) for x in v), dtype=np.int64)
        if vec.shape != (self.dim,):
            raise TileError(f"translation vector must have dim {self.dim}")
        # adding a constant preserves lexicographic order
        return LatticeTile._from_sorted(self._cells + vec, self.dim, self.name)

    def rename(self, name: str) -> "LatticeTile":
        return LatticeTile._from_sorted(self._cells, self.dim, name)

    def to_json(self) -> dict:
        return {"dim": self.dim, "name": self.name,
                "cells": self._cells.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "LatticeTile":
        if "dim" not in obj or "cells" not in obj:
            raise TileError("tile JSON needs 'dim' and 'cells'")
        return cls(obj["cells"], dim=int(obj["dim"]),
                   name=str(obj.get("name", "tile")))

    def to_xyz(self) -> str:
        """One space-separated coordinate line per cell, lex-sorted."""
        return "\n".join(" ".join(str(int(x)) for x in row)
                         for row in self._cells) + ("\n" if len(self) else "")


def tile(cells, dim: int | None = None, name: str = "tile") -> LatticeTile:
    """Convenience constructor accepting any iterable of points."""
    return LatticeTile(cells, dim=dim, name=name)


def unit_vectors(dim: int) -> list[np.ndarray]:
    """The 2 * dim signed axis-parallel unit vectors."""
    out = []
    for axis in range(dim):
        for sign in (1, -1):
            v = np.zeros(dim, dtype=np.int64)
            v[axis] = sign
            out.append(v)
    return out


def cube(side: int, dim: int, name: str = "cube") -> LatticeTile:
    """The {0..side-1}^dim block."""
    if side < 1:
        raise TileError("cube side must be positive")
    pts = np.array(list(product(range(side), repeat=dim)), dtype=np.int64)
    return LatticeTile._from_sorted(pts, dim, name)


def _pack_frame(arrays: Sequence[np.ndarray], pad: int = 0):
    """Common packing frame (lo, strides) for several cell arrays."""
    los = np.min([a.min(axis=0) for a in arrays if len(a)], axis=0) - pad
    his = np.max([a.max(axis=0) for a in arrays if len(a)], axis=0) + pad
    extents = (his - los + 1).astype(object)
    if int(np.prod(extents)) >= 2 ** 62:
        return None  # caller must fall back to tuple sets
    strides = np.ones(len(extents), dtype=np.int64)
    for i in range(len(extents) - 2, -1, -1):
        strides[i] = strides[i + 1] * int(extents[i + 1])
    return los.astype(np.int64), strides


def _pack(arr: np.ndarray, frame) -> np.ndarray:
    lo, strides = frame
    return ((arr - lo) * strides).sum(axis=1)


def normalize(t: LatticeTile) -> LatticeTile:
    """Translate so the bounding-box minimum corner is the origin."""
    if t.is_empty:
        raise EmptyTileError("empty tile has no normal form")
    lo, _ = t.bbox()
    return t.translate(-lo)


def minkowski_sum(a: LatticeTile, b: LatticeTile) -> LatticeTile:
    """Elementwise sum set; errors if any two summand pairs collide."""
    if a.dim != b.dim:
        raise TileError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if a.is_empty or b.is_empty:
        return LatticeTile([], dim=a.dim, name=a.name)
    sums = (a.cells[:, None, :] + b.cells[None, :, :]).reshape(-1, a.dim)
    uniq, first_idx, counts = np.unique(
        sums, axis=0, return_index=True, return_counts=True)
    if uniq.shape[0] != sums.shape[0]:
        dup_row = uniq[counts > 1][0]
        flat = np.nonzero((sums == dup_row).all(axis=1))[0][:2]
        nb = len(b)
        pairs = []
        for f in flat:
            i, j = divmod(int(f), nb)
            pairs.append((tuple(int(x) for x in a.cells[i]),
                          tuple(int(x) for x in b.cells[j])))
        raise MinkowskiOverlapError((pairs[0], pairs[1]))
    order = np.lexsort(uniq.T[::-1])
    return LatticeTile._from_sorted(uniq[order], a.dim, a.name)


def scale(t: LatticeTile, c: int) -> LatticeTile:
    """c * A = {c * a}; distinct cells stay distinct for c >= 1."""
    if c < 1:
        raise TileError("scale factor must be positive")
    return LatticeTile._from_sorted(t.cells * c, t.dim, t.name)


def inflate(t: LatticeTile, c: int) -> LatticeTile:
    """Replace each cell with a c^d block: c*T (+) {0..c-1}^d."""
    if c < 1:
        raise TileError("inflation factor must be positive")
    if c == 1 or t.is_empty:
        return t
    out = minkowski_sum(scale(t, c), cube(c, t.dim))
    assert len(out) == (c ** t.dim) * len(t)
    return out.rename(t.name)


def union(tiles: Sequence[LatticeTile], name: str = "union",
          require_disjoint: bool = False) -> LatticeTile:
    """Set union of tiles; optionally error (with witness) on any shared cell."""
    parts = [t for t in tiles if not t.is_empty]
    if not parts:
        dims = {t.dim for t in tiles}
        if len(dims) != 1:
            raise TileError("union of empty list needs consistent dims")
        return LatticeTile([], dim=dims.pop(), name=name)
    dim = parts[0].dim
    if any(t.dim != dim for t in parts):
        raise TileError("union requires equal dimensions")
    stacked = np.concatenate([t.cells for t in parts], axis=0)
    uniq, counts = np.unique(stacked, axis=0, return_counts=True)
    if require_disjoint and (counts > 1).any():
        witness = tuple(int(x) for x in uniq[counts > 1][0])
        raise TileError(f"tiles overlap at cell {witness}")
    return LatticeTile(uniq, dim=dim, name=name)


def difference(a: LatticeTile, b: LatticeTile, name: str | None = None) -> LatticeTile:
    """Cells of a that are not cells of b."""
    if a.dim != b.dim:
        raise TileError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if a.is_empty or b.is_empty:
        return a if name is None else a.rename(name)
    frame = _pack_frame([a.cells, b.cells])
    if frame is None:
        keep = sorted(a.cell_set() - b.cell_set())
        return LatticeTile(keep, dim=a.dim, name=name or a.name)
    mask = ~np.isin(_pack(a.cells, frame), _pack(b.cells, frame))
    return LatticeTile._from_sorted(a.cells[mask], a.dim, name or a.name)


def tiles_overlap(a: LatticeTile, b: LatticeTile) -> bool:
    if a.dim != b.dim:
        raise TileError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if a.is_empty or b.is_empty:
        return False
    frame = _pack_frame([a.cells, b.cells])
    if frame is None:
        return not a.cell_set().isdisjoint(b.cell_set())
    return bool(np.isin(_pack(a.cells, frame), _pack(b.cells, frame)).any())


def are_adjacent(a: LatticeTile, b: LatticeTile) -> bool:
    """True iff some cell of a and some cell of b differ by a unit vector."""
    if tiles_overlap(a, b):
        raise TileError("tiles overlap")
    if a.is_empty or b.is_empty:
        return False
    frame = _pack_frame([a.cells, b.cells], pad=1)
    if frame is None:
        bs = b.cell_set()
        return any(tuple(np.add(p, v)) in bs
                   for p in a.cell_set() for v in unit_vectors(a.dim))
    kb = np.sort(_pack(b.cells, frame))
    for v in unit_vectors(a.dim):
        ka = _pack(a.cells + v, frame)
        if np.isin(ka, kb).any():
            return True
    return False


def _connected_sparse(t: LatticeTile) -> bool:
    """Breadth-first search over the cell set; no dense grid needed."""
    cells = t.cell_set()
    moves = [tuple(v) for v in unit_vectors(t.dim)]
    start = next(iter(cells))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for p in frontier:
            for v in moves:
                q = tuple(p[i] + v[i] for i in range(t.dim))
                if q in cells and q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen) == len(cells)


def is_connected(t: LatticeTile) -> bool:
    """True iff the unit-adjacency graph on cells has a single component."""
    if t.is_empty:
        raise EmptyTileError("connectivity of the empty tile is undefined")
    if len(t) == 1:
        return True
    lo, hi = t.bbox()
    volume = int(np.prod((hi - lo + 1).astype(object)))
    if volume > _DENSE_VOLUME_LIMIT:
        return _connected_sparse(t)
    grid = np.zeros(tuple(int(e) for e in (hi - lo + 1)), dtype=np.uint8)
    idx = tuple((t.cells - lo).T)
    grid[idx] = 1
    structure = ndimage.generate_binary_structure(t.dim, 1)
    _, count = ndimage.label(grid, structure=structure)
    return count == 1
