"""Generic exact-cover translational tiling over finite boxes and tori.

``solve`` is a deterministic backtracking search that always picks the
uncovered cell with the fewest admissible placements (fail-first).  An UNSAT
answer therefore carries an exhaustive-search guarantee.  ``verify`` checks a
certificate independently of how it was produced, and ``brute_force_decide``
is a deliberately naive reference enumerator kept separate from the search
path so the two can be compared.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .lattice import LatticeTile, Point, TileError


class CellBudgetError(RuntimeError):
    """Region exceeds the configured cell budget (distinct from UNSAT)."""


@dataclass(frozen=True)
class Region:
    """Finite region to tile: a box or a torus, minus obstacle cells."""

    mode: str  # "bounded" | "torus"
    dims: tuple[int, ...]
    holes: frozenset[Point] = frozenset()

    def __post_init__(self):
        if self.mode not in ("bounded", "torus"):
            raise ValueError(f"unknown region mode {self.mode!r}")
        if not self.dims or any(d < 1 for d in self.dims):
            raise ValueError("region dims must all be >= 1")
        for h in self.holes:
            if len(h) != len(self.dims):
                raise ValueError(f"hole {h} has wrong dimension")
            if any(not (0 <= h[i] < self.dims[i]) for i in range(len(h))):
                raise ValueError(f"hole {h} outside region bounds")

    @property
    def dim(self) -> int:
        return len(self.dims)

    @property
    def volume(self) -> int:
        v = 1
        for d in self.dims:
            v *= d
        return v

    @classmethod
    def torus(cls, dims: Sequence[int], holes=()) -> "Region":
        dims = tuple(int(d) for d in dims)
        reduced = frozenset(
            tuple(int(c) % dims[i] for i, c in enumerate(h)) for h in holes)
        return cls("torus", dims, reduced)

    @classmethod
    def box(cls, dims: Sequence[int], holes=()) -> "Region":
        return cls("bounded", tuple(int(d) for d in dims),
                   frozenset(tuple(int(c) for c in h) for h in holes))

    def cells(self) -> list[Point]:
        """All non-hole cells, lexicographically sorted."""
        return [p for p in product(*(range(d) for d in self.dims))
                if p not in self.holes]

    def to_json(self) -> dict:
        return {"mode": self.mode, "dims": list(self.dims),
                "holes": sorted(list(h) for h in self.holes)}

    @classmethod
    def from_json(cls, obj: dict) -> "Region":
        return cls(str(obj["mode"]), tuple(int(d) for d in obj["dims"]),
                   frozenset(tuple(int(c) for c in h)
                             for h in obj.get("holes", [])))


@dataclass(frozen=True)
class Placement:
    tile_id: int
    offset: Point


@dataclass
class TilingCertificate:
    region: Region
    tiles: list[LatticeTile]
    placements: list[Placement] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "region": self.region.to_json(),
            "tiles": [t.to_json() for t in self.tiles],
            "placements": [{"tile": p.tile_id, "offset": list(p.offset)}
                           for p in self.placements],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TilingCertificate":
        return cls(
            region=Region.from_json(obj["region"]),
            tiles=[LatticeTile.from_json(t) for t in obj["tiles"]],
            placements=[Placement(int(p["tile"]), tuple(int(c) for c in p["offset"]))
                        for p in obj["placements"]],
        )


def _placement_footprint(tile_pts: list[Point], offset: Point,
                         region: Region) -> frozenset[Point] | None:
    """Cells covered by one placement, or None if it is invalid."""
    dims = region.dims
    out = set()
    for p in tile_pts:
        q = tuple(p[i] + offset[i] for i in range(len(dims)))
        if region.mode == "torus":
            q = tuple(q[i] % dims[i] for i in range(len(dims)))
        elif any(not (0 <= q[i] < dims[i]) for i in range(len(dims))):
            return None
        if q in region.holes or q in out:
            return None
        out.add(q)
    return frozenset(out)


def _candidate_offsets(tile: LatticeTile, region: Region):
    if region.mode == "torus":
        return product(*(range(d) for d in region.dims))
    lo, hi = tile.bbox()
    ranges = []
    for i, d in enumerate(region.dims):
        start, stop = -int(lo[i]), d - 1 - int(hi[i])
        if stop < start:
            return iter(())
        ranges.append(range(start, stop + 1))
    return product(*ranges)


def _check_tiles(region: Region, tiles: Sequence[LatticeTile]):
    if not tiles:
        raise TileError("need at least one tile")
    for t in tiles:
        if t.is_empty:
            raise TileError("cannot tile with an empty tile")
        if t.dim != region.dim:
            raise TileError(
                f"tile dim {t.dim} does not match region dim {region.dim}")


def solve(region: Region, tiles: Sequence[LatticeTile],
          max_cells: int = 1_000_000) -> TilingCertificate | None:
    """Tile the region exactly, or return None after exhaustive search.

    Raises CellBudgetError when the region is larger than ``max_cells``;
    that outcome is distinct from UNSAT.
    """
    _check_tiles(region, tiles)
    if region.volume > max_cells:
        raise CellBudgetError(
            f"region has {region.volume} cells, budget is {max_cells}")

    cells = region.cells()
    n = len(cells)
    index = {c: i for i, c in enumerate(cells)}
    if n == 0:
        return TilingCertificate(region, list(tiles), [])

    tile_pts = [list(t) for t in tiles]
    placements: list[tuple[int, Point]] = []
    pcells: list[tuple[int, ...]] = []
    cover: list[list[int]] = [[] for _ in range(n)]
    for ti, pts in enumerate(tile_pts):
        for off in _candidate_offsets(tiles[ti], region):
            foot = _placement_footprint(pts, off, region)
            if foot is None:
                continue
            pid = len(placements)
            idxs = tuple(sorted(index[q] for q in foot))
            placements.append((ti, off))
            pcells.append(idxs)
            for ci in idxs:
                cover[ci].append(pid)

    covered = bytearray(n)
    blocked = [0] * len(placements)
    avail = [len(cover[c]) for c in range(n)]
    uncovered_count = n

    def place(pid: int) -> list[int]:
        newly = []
        for c in pcells[pid]:
            covered[c] = 1
        for c in pcells[pid]:
            for q in cover[c]:
                blocked[q] += 1
                if blocked[q] == 1:
                    newly.append(q)
        for q in newly:
            for e in pcells[q]:
                if not covered[e]:
                    avail[e] -= 1
        return newly

    def unplace(pid: int, newly: list[int]):
        for q in reversed(newly):
            for e in pcells[q]:
                if not covered[e]:
                    avail[e] += 1
        for c in pcells[pid]:
            for q in cover[c]:
                blocked[q] -= 1
        for c in pcells[pid]:
            covered[c] = 0

    def choose() -> int:
        """Uncovered cell with fewest admissible placements; -1 on dead end."""
        best_c = -1
        best_a = None
        for c in range(n):
            if covered[c]:
                continue
            a = avail[c]
            if a == 0:
                return -1
            if best_a is None or a < best_a:
                best_c, best_a = c, a
                if a == 1:
                    break
        return best_c

    # frame: [candidates, next_index, placed_pid or None, undo list]
    frames: list[list] = []

    def advance() -> bool:
        nonlocal uncovered_count
        while frames:
            top = frames[-1]
            if top[2] is not None:
                unplace(top[2], top[3])
                uncovered_count += len(pcells[top[2]])
                top[2] = top[3] = None
            if top[1] < len(top[0]):
                pid = top[0][top[1]]
                top[1] += 1
                top[3] = place(pid)
                top[2] = pid
                uncovered_count -= len(pcells[pid])
                return True
            frames.pop()
        return False

    while True:
        if uncovered_count == 0:
            chosen = sorted((placements[f[2]] for f in frames),
                            key=lambda p: (p[0], p[1]))
            cert = TilingCertificate(
                region, list(tiles),
                [Placement(ti, tuple(off)) for ti, off in chosen])
            assert verify(cert), "internal error: SAT result failed verify"
            return cert
        c = choose()
        if c >= 0:
            cands = [q for q in cover[c] if blocked[q] == 0]
            frames.append([cands, 0, None, None])
        if not advance():
            return None


def certificate_violation(cert: TilingCertificate) -> str | None:
    """First violation found, or None when the certificate is exact."""
    region = cert.region
    dims = region.dims
    seen_placements = set()
    coverage: dict[Point, int] = {}
    for p in cert.placements:
        key = (p.tile_id, p.offset)
        if key in seen_placements:
            return f"duplicated placement {key}"
        seen_placements.add(key)
        if not (0 <= p.tile_id < len(cert.tiles)):
            return f"placement references unknown tile {p.tile_id}"
        for cell in cert.tiles[p.tile_id]:
            q = tuple(cell[i] + p.offset[i] for i in range(len(dims)))
            if region.mode == "torus":
                q = tuple(q[i] % dims[i] for i in range(len(dims)))
            elif any(not (0 <= q[i] < dims[i]) for i in range(len(dims))):
                return f"placement {key} exits bounds at {q}"
            if q in region.holes:
                return f"placement {key} covers hole {q}"
            if q in coverage:
                return f"cell {q} covered more than once"
            coverage[q] = 1
    expected = region.volume - len(region.holes)
    if len(coverage) != expected:
        return f"covered {len(coverage)} cells, region has {expected}"
    return None


def verify(cert: TilingCertificate) -> bool:
    """Exact-partition check, independent of the search."""
    return certificate_violation(cert) is None


def brute_force_decide(region: Region, tiles: Sequence[LatticeTile]) -> bool:
    """Reference enumerator: expand the lexicographically first uncovered cell.

    No fail-first heuristic, no incremental bookkeeping; exists purely as an
    independent oracle for ``solve``.
    """
    _check_tiles(region, tiles)
    universe = frozenset(region.cells())
    tile_pts = [list(t) for t in tiles]
    dims = region.dims
    d = len(dims)

    def footprint(pts: list[Point], offset: Point) -> frozenset[Point] | None:
        out = set()
        for p in pts:
            q = tuple(p[i] + offset[i] for i in range(d))
            if region.mode == "torus":
                q = tuple(q[i] % dims[i] for i in range(d))
            if q in out:
                return None
            out.add(q)
        return frozenset(out)

    limit = max(sys.getrecursionlimit(), len(universe) + 100)
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(limit)
    try:
        def extend(remaining: frozenset[Point]) -> bool:
            if not remaining:
                return True
            target = min(remaining)
            for pts in tile_pts:
                for anchor in pts:
                    offset = tuple(target[i] - anchor[i] for i in range(d))
                    foot = footprint(pts, offset)
                    if foot is not None and foot <= remaining:
                        if extend(remaining - foot):
                            return True
            return False

        return extend(universe)
    finally:
        sys.setrecursionlimit(old_limit)
