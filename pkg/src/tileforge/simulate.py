"""Simulating disconnected tiles with connected ones.

The shell tile is assembled by placing one decorated partition part on each
boundary cell of an l-cube frame, spaced by the partition period.  It is
connected, and it tiles space exactly on the period lattice; gluing scaled
copies of it along any input tile therefore yields a connected tile whose
tilings correspond one-to-one with the input's.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .lattice import (
    LatticeTile,
    Point,
    TileError,
    minkowski_sum,
    normalize,
    scale,
    tiles_overlap,
    union,
)
from .partition import (
    DecoratedPartition,
    bump_cells,
    decorate,
    dent_cells,
    partition_cube,
)
from .solver import CellBudgetError

DEFAULT_CELL_BUDGET = 10 ** 8


def shell_points(dim: int, frame: int) -> list[Point]:
    """Boundary cells of the frame cube, lexicographically sorted."""
    if frame < 3:
        raise TileError("frame side must be at least 3")
    inner = range(1, frame - 1)
    return [p for p in product(range(frame), repeat=dim)
            if any(c not in inner for c in p)]


def shell_part_count(dim: int, frame: int) -> int:
    return frame ** dim - (frame - 2) ** dim


@dataclass
class SimulationPlan:
    """Size report for a simulation, computed without building anything."""

    dim: int
    frame: int
    part_count: int
    period: int
    input_cells: list[int]
    output_cells: list[int]

    @property
    def shell_tile_cells(self) -> int:
        return self.period ** self.dim

    def total_output_cells(self) -> int:
        return sum(self.output_cells)


@dataclass
class SimulationResult:
    plan: SimulationPlan
    shell_cells: list[Point]
    shell_tile: LatticeTile
    tiles: list[LatticeTile]


def build_shell_tile(dim: int, frame: int,
                     max_cells: int = DEFAULT_CELL_BUDGET) -> LatticeTile:
    """Connected tile covering one decorated part per frame boundary cell."""
    if dim < 3:
        raise TileError("shell construction needs dimension >= 3")
    m = shell_part_count(dim, frame)
    period = 3 * m + 6
    if period ** dim > max_cells:
        raise CellBudgetError(
            f"shell tile would have {period ** dim} cells, "
            f"budget is {max_cells}")
    dp = decorate(partition_cube(dim, m))
    pts = shell_points(dim, frame)
    assert len(pts) == m
    pieces = [dp.part(i + 1).translate(np.array(x) * period)
              for i, x in enumerate(pts)]
    s = union(pieces, name="S", require_disjoint=True)
    assert len(s) == period ** dim
    return s


def verify_lattice_partition(t: LatticeTile, period: int) -> bool:
    """True iff translates of t by period * Z^d partition Z^d.

    Checked exactly on the torus (Z/period)^d: the tile must hit every
    residue class exactly once.
    """
    if period < 1:
        raise TileError("period must be positive")
    if t.is_empty:
        return False
    if len(t) != period ** t.dim:
        return False
    residues = np.unique(t.cells % period, axis=0)
    return residues.shape[0] == len(t)


def _fit_frame(tiles: list[LatticeTile]) -> int:
    extents = max(int(t.extents().max()) for t in tiles)
    return max(3, extents)


def plan_simulation(tiles: list[LatticeTile]) -> SimulationPlan:
    """Predict frame, period and output sizes without materializing."""
    if not tiles:
        raise TileError("need at least one tile")
    dim = tiles[0].dim
    if dim < 3:
        raise TileError("simulation needs dimension >= 3")
    if any(t.dim != dim for t in tiles):
        raise TileError("all tiles must share one dimension")
    norm = [normalize(t) for t in tiles]
    frame = _fit_frame(norm)
    m = shell_part_count(dim, frame)
    period = 3 * m + 6
    return SimulationPlan(
        dim=dim, frame=frame, part_count=m, period=period,
        input_cells=[len(t) for t in norm],
        output_cells=[len(t) * period ** dim for t in norm])


def simulate_set(tiles: list[LatticeTile],
                 max_cells: int = DEFAULT_CELL_BUDGET) -> SimulationResult:
    """Replace k tiles (possibly disconnected) by k connected equivalents."""
    plan = plan_simulation(tiles)
    needed = plan.total_output_cells() + plan.shell_tile_cells
    if needed > max_cells:
        raise CellBudgetError(
            f"simulation would materialize {needed} cells, "
            f"budget is {max_cells}; use plan_simulation for a dry run")
    shell = build_shell_tile(plan.dim, plan.frame, max_cells=max_cells)
    out = []
    for t in tiles:
        base = normalize(t)
        built = minkowski_sum(scale(base, plan.period), shell).rename(t.name)
        assert len(built) == len(base) * plan.period ** plan.dim
        out.append(built)
    return SimulationResult(
        plan=plan,
        shell_cells=shell_points(plan.dim, plan.frame),
        shell_tile=shell,
        tiles=out)


@dataclass
class ForcingReport:
    """Outcome of the local bump/dent alignment checks on part 1."""

    ok: bool
    failures: list[str]
    window_offsets_checked: int
    plug_candidates_checked: int

    def __bool__(self) -> bool:
        return self.ok


def check_local_forcing(dp: DecoratedPartition, radius: int = 2) -> ForcingReport:
    """Local evidence that copies of part 1 must sit on the period lattice.

    Three finite checks:
      * every small non-zero offset within ``radius`` makes two copies of
        part 1 collide;
      * translating by one period along any axis fits without collision and
        the incoming bump plugs the matching dent hole exactly;
      * each dent hole is pluggable by a bump of another copy only at the
        single axis-period offset (any other bump-to-dent offset collides).
    """
    dim, m = dp.dim, dp.m
    period = 3 * m + 6
    first = dp.part(1)
    first_set = first.cell_set()
    bumps = bump_cells(dim, m)
    dents = dent_cells(dim, m)
    failures: list[str] = []

    window = 0
    for eps in product(range(-radius, radius + 1), repeat=dim):
        if all(e == 0 for e in eps):
            continue
        window += 1
        if not tiles_overlap(first, first.translate(eps)):
            failures.append(f"offset {eps}: copies of part 1 do not collide")

    for axis in range(dim):
        for sign in (1, -1):
            v = tuple(period * sign if i == axis else 0 for i in range(dim))
            shifted = first.translate(v)
            if tiles_overlap(first, shifted):
                failures.append(f"period offset {v}: copies collide")
                continue
            if sign > 0:
                # the dent hole on my positive face must be filled by the
                # incoming copy's bump
                if dents[axis] not in shifted.cell_set():
                    failures.append(
                        f"period offset {v}: dent {dents[axis]} left uncovered")
            else:
                # my own bump must sit exactly in the negative neighbor's dent
                hole = tuple(dents[axis][i] + v[i] for i in range(dim))
                if hole not in first_set:
                    failures.append(
                        f"period offset {v}: neighbor dent {hole} left uncovered")

    plugs = 0
    for axis, dent in enumerate(dents):
        fitting: list[tuple[int, ...]] = []
        for bump in bumps:
            u = tuple(dent[i] - bump[i] for i in range(dim))
            plugs += 1
            if not tiles_overlap(first, first.translate(u)):
                fitting.append(u)
        expected = tuple(period if i == axis else 0 for i in range(dim))
        if fitting != [expected]:
            failures.append(
                f"dent {dent}: non-colliding plug offsets {fitting}, "
                f"expected only {expected}")

    return ForcingReport(not failures, failures, window, plugs)
