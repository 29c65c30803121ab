"""One-dimensional blockers and towers, and the brick/filler polycube pair.

Blockers are period-6 obstacle tiles whose leftover gaps a length-2 domino
can always fill except for one all-on configuration.  Towers interleave n
scaled blockers so that, placed with period 6n, the gap column is fillable
by {0, n} unless the three tower offsets agree mod n.  The brick mounts one
tower triple per forbidden value-triple of a cyclic triomino set; together
with the ring-column filler it turns grid solutions into exact torus tilings
and vice versa.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import product
from math import gcd

from .boardgames import CyclicTriominoSet, GridAssignment, Triple, check_triomino, validate_cyclic
from .lattice import LatticeTile, TileError, difference, inflate, union
from .solver import Placement, Region, TilingCertificate, solve

BLOCKER_KINDS = ("alpha", "beta", "gamma")

_BLOCKER_TABLE: dict[tuple[str, int], tuple[int, ...]] = {
    ("alpha", 0): (),
    ("alpha", 1): (0, 5),
    ("beta", 0): (1, 4),
    ("beta", 1): (),
    ("gamma", 0): (),
    ("gamma", 1): (2, 3),
}

_STATE_NAMES = {0: "off", 1: "on", "off": "off", "on": "on"}
_STATE_BITS = {"off": 0, "on": 1, 0: 0, 1: 1}


@dataclass(frozen=True)
class Blocker:
    kind: str
    state: str  # "off" | "on"
    cells: LatticeTile


def blocker(kind: str, state) -> Blocker:
    if kind not in BLOCKER_KINDS:
        raise ValueError(f"unknown blocker kind {kind!r}")
    if state not in _STATE_BITS:
        raise ValueError(f"unknown blocker state {state!r}")
    bit = _STATE_BITS[state]
    cells = LatticeTile([(c,) for c in _BLOCKER_TABLE[(kind, bit)]],
                        dim=1, name=f"{kind}_{bit}")
    return Blocker(kind=kind, state=_STATE_NAMES[state], cells=cells)


def blocker_truth_table() -> dict[tuple[int, int, int], bool]:
    """Fillability of the period-6 gap for every on/off combination.

    The gap left by the three placed blockers is tiled (or not) by the
    domino {0, 1} on the 6-cell torus; exactly the all-on case fails.
    """
    domino = LatticeTile([(0,), (1,)], dim=1, name="domino")
    out = {}
    for i, j, k in product((0, 1), repeat=3):
        holes = set()
        for kind, bit in (("alpha", i), ("beta", j), ("gamma", k)):
            holes.update((c,) for c in _BLOCKER_TABLE[(kind, bit)])
        region = Region.torus((6,), holes)
        out[(i, j, k)] = solve(region, [domino]) is not None
    return out


@dataclass(frozen=True)
class Tower:
    kind: str
    n: int
    cells: LatticeTile


def tower_cells(kind: str, n: int) -> tuple[int, ...]:
    """Scaled-blocker layout: the on blocker at slot 0, off ones after."""
    if kind not in BLOCKER_KINDS:
        raise ValueError(f"unknown tower kind {kind!r}")
    if gcd(n, 6) != 1:
        raise ValueError(f"tower modulus {n} must be coprime to 6")
    cells = []
    for i in range(n):
        bit = 1 if i == 0 else 0
        cells.extend(n * c + 6 * i for c in _BLOCKER_TABLE[(kind, bit)])
    if len(set(cells)) != len(cells):
        raise TileError(f"{kind} tower blockers overlap for n={n}")
    return tuple(sorted(cells))


def tower(kind: str, n: int) -> Tower:
    cells = tower_cells(kind, n)
    return Tower(kind=kind, n=n,
                 cells=LatticeTile([(c,) for c in cells], dim=1,
                                   name=f"{kind}_tower"))


def column_obstacles(n: int, dz_alpha: int, dz_beta: int,
                     dz_gamma: int) -> frozenset[int]:
    """Occupied z-residues of a gap column carrying three shifted towers."""
    period = 6 * n
    holes: set[int] = set()
    for kind, dz in (("alpha", dz_alpha), ("beta", dz_beta),
                     ("gamma", dz_gamma)):
        cells = {(c + dz) % period for c in tower_cells(kind, n)}
        if holes & cells:
            raise TileError(
                f"{kind} tower overlaps another tower in the same column")
        holes |= cells
    return frozenset(holes)


def tower_check(n: int, a: int, b: int, c: int) -> bool:
    """Can {0, n} fill the 6n-torus column around towers shifted by 6a/6b/6c?

    False exactly when a, b, c agree modulo n.
    """
    holes = column_obstacles(n, 6 * a, 6 * b, 6 * c)
    region = Region.torus((6 * n,), {(h,) for h in holes})
    piece = LatticeTile([(0,), (n,)], dim=1, name="spaced_domino")
    return solve(region, [piece]) is not None


def ring_cells() -> list[tuple[int, int]]:
    """The 3x3 square around the origin, minus its center."""
    return [(dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1)
            if (dx, dy) != (0, 0)]


def filler_tile(n: int) -> LatticeTile:
    """Two rings, one at height 0 and one at height n; 16 cells."""
    if n < 1:
        raise ValueError("filler spacing must be positive")
    return LatticeTile([(dx, dy, z) for dx, dy in ring_cells()
                        for z in (0, n)], dim=3, name="filler")


def filler_hole_patch() -> LatticeTile:
    """Flat 3x3 patch whose presence makes a region unfillable by the filler.

    Any filler covering the patch center leaves its own central hole inside
    the patch, and that hole can never be covered.
    """
    return LatticeTile([(dx, dy, 0) for dx in (-1, 0, 1)
                        for dy in (-1, 0, 1)], dim=3, name="hole_patch")


@dataclass(frozen=True)
class LayoutEntry:
    """Tower triple i realizes the forbidden triple of orientation group."""

    index: int          # 1-based gap-column index inside the brick
    group: int          # 1..4, which orientation rule the triple came from
    triple: Triple      # first coordinate is 0 under the canonical choice


@dataclass(frozen=True)
class GadgetSet:
    n: int
    m: int
    layout: tuple[LayoutEntry, ...]
    filler: LatticeTile
    empty_brick: LatticeTile
    brick: LatticeTile
    filler3: LatticeTile | None = None
    brick3: LatticeTile | None = None

    @property
    def decorated(self) -> bool:
        return self.brick3 is not None and self.filler3 is not None

    def pole_center(self, index: int) -> tuple[int, int]:
        return (3 * index - 1, 2)

    def brick_box(self) -> tuple[int, int, int]:
        return (3 * self.m + 2, 5, 6 * self.n)

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "m": self.m,
            "layout": [{"index": e.index, "group": e.group,
                        "triple": list(e.triple)} for e in self.layout],
            "filler": self.filler.to_json(),
            "empty_brick": self.empty_brick.to_json(),
            "brick": self.brick.to_json(),
        }
        if self.filler3 is not None:
            out["filler3"] = self.filler3.to_json()
        if self.brick3 is not None:
            out["brick3"] = self.brick3.to_json()
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "GadgetSet":
        return cls(
            n=int(obj["n"]),
            m=int(obj["m"]),
            layout=tuple(LayoutEntry(int(e["index"]), int(e["group"]),
                                     tuple(int(v) for v in e["triple"]))
                         for e in obj["layout"]),
            filler=LatticeTile.from_json(obj["filler"]),
            empty_brick=LatticeTile.from_json(obj["empty_brick"]),
            brick=LatticeTile.from_json(obj["brick"]),
            filler3=(LatticeTile.from_json(obj["filler3"])
                     if "filler3" in obj else None),
            brick3=(LatticeTile.from_json(obj["brick3"])
                    if "brick3" in obj else None),
        )


def representatives(ts: CyclicTriominoSet) -> tuple[tuple[Triple, ...], ...]:
    """Canonical representatives of the forbidden orbits, per orientation.

    Every diagonal orbit contains exactly one triple whose first coordinate
    is 0; picking those gives a shifted-union that reproduces the complement
    exactly, which is asserted.
    """
    if not validate_cyclic(ts):
        raise ValueError("rule set is not closed under the diagonal shift")
    n = ts.n
    full = set(product(range(n), repeat=3))
    out = []
    for rel in ts.rules:
        complement = full - rel
        reps = tuple(sorted(t for t in complement if t[0] == 0))
        rebuilt = {tuple((v + k) % n for v in t) for t in reps
                   for k in range(n)}
        assert rebuilt == complement and len(rebuilt) == n * len(reps)
        out.append(reps)
    return tuple(out)


def empty_brick_tile(m: int, n: int) -> LatticeTile:
    """(3m+2) x 5 x 6n cuboid with one ring column carved per tower triple."""
    carved = {(3 * i + 2 + dx, 2 + dy)
              for i in range(m) for dx, dy in ring_cells()}
    cells = [(x, y, z)
             for x in range(3 * m + 2) for y in range(5)
             if (x, y) not in carved
             for z in range(6 * n)]
    return LatticeTile(cells, dim=3, name="empty_brick")


_TOWER_KIND_BY_SLOT = {0: "alpha", 1: "beta", 2: "gamma",
                       3: "beta", 4: "gamma", 5: "beta"}


def _tower_offset(slot: int, index: int, m: int) -> tuple[int, int]:
    i = index
    if slot == 0:
        return (3 * i - 1, 2)
    if slot in (1, 5):
        return (3 * i - 3 * m - 3, 2)
    if slot == 2:
        return (3 * i - 1, -3)
    if slot == 3:
        return (3 * i + 3 * m + 1, 2)
    if slot == 4:
        return (3 * i - 1, 7)
    raise ValueError(f"tower slot {slot} out of range")


def tower_gadget(slot: int, index: int, shift: int, m: int,
                 n: int) -> LatticeTile:
    """Ring-column tower: a 1-D tower swept around a gap column."""
    kind = _TOWER_KIND_BY_SLOT[slot]
    ox, oy = _tower_offset(slot, index, m)
    zs = tower_cells(kind, n)
    cells = [(ox + dx, oy + dy, z - 6 * shift)
             for dx, dy in ring_cells() for z in zs]
    return LatticeTile(cells, dim=3, name=f"tower_{kind}_{index}")


def build_gadgets(ts: CyclicTriominoSet) -> GadgetSet:
    """Assemble the filler and the tower-decorated brick for a rule set."""
    n = ts.n
    if gcd(n, 6) != 1:
        raise ValueError(f"modulus {n} must be coprime to 6")
    reps = representatives(ts)
    layout = []
    idx = 1
    for group, triples in enumerate(reps, start=1):
        for t in triples:
            layout.append(LayoutEntry(index=idx, group=group, triple=t))
            idx += 1
    m = len(layout)
    base = empty_brick_tile(m, n)
    pieces = [base]
    for e in layout:
        a, b, c = e.triple
        pieces.append(tower_gadget(0, e.index, a, m, n))
        pieces.append(tower_gadget(e.group, e.index, b, m, n))
        pieces.append(tower_gadget(e.group + 1, e.index, c, m, n))
    brick = union(pieces, name="brick", require_disjoint=True)
    return GadgetSet(
        n=n, m=m, layout=tuple(layout),
        filler=filler_tile(n),
        empty_brick=base,
        brick=brick,
    )


def decorate_gadgets(gs: GadgetSet) -> GadgetSet:
    """Triple the brick and filler; stud the brick with aligning bumps/dents.

    Bumps go on the negative x/y faces at each 18-step height and once on
    the negative z face; matching dents are carved from the opposite faces,
    so the total cell count is unchanged.
    """
    n, m = gs.n, gs.m
    tripled = inflate(gs.brick, 3).rename("brick3")
    bumps = [(-1, 1, 1 + 18 * i) for i in range(n)]
    bumps += [(1, -1, 1 + 18 * i) for i in range(n)]
    bumps.append((1, 1, -1))
    dents = [(9 * m + 5, 1, 1 + 18 * i) for i in range(n)]
    dents += [(1, 14, 1 + 18 * i) for i in range(n)]
    dents.append((1, 1, 18 * n - 1))
    cellset = tripled.cell_set()
    for cell in bumps:
        if cell in cellset:
            raise TileError(f"bump cell {cell} collides with the brick")
    for cell in dents:
        if cell not in cellset:
            raise TileError(f"dent cell {cell} is not a brick cell")
    brick3 = difference(
        union([tripled, LatticeTile(bumps, dim=3)], name="brick3"),
        LatticeTile(dents, dim=3), name="brick3")
    assert len(brick3) == 27 * len(gs.brick)
    filler3 = inflate(gs.filler, 3).rename("filler3")
    return replace(gs, brick3=brick3, filler3=filler3)


def _neighbor_shifts(grid: GridAssignment, x: int, y: int,
                     entry: LayoutEntry) -> tuple[int, int, int]:
    """z-shifts (in units of 6) of the three towers meeting at one column."""
    a, b, c = entry.triple
    v = grid.at(x, y)
    g = entry.group
    if g == 1:
        vb, vc = grid.at(x + 1, y), grid.at(x, y + 1)
        beta_shift, gamma_shift = vb - b, vc - c
    elif g == 2:
        vb, vc = grid.at(x, y + 1), grid.at(x - 1, y)
        gamma_shift, beta_shift = vb - b, vc - c
    elif g == 3:
        vb, vc = grid.at(x - 1, y), grid.at(x, y - 1)
        beta_shift, gamma_shift = vb - b, vc - c
    else:
        vb, vc = grid.at(x, y - 1), grid.at(x + 1, y)
        gamma_shift, beta_shift = vb - b, vc - c
    return (v - a, beta_shift, gamma_shift)


class ColumnUnsolvableError(RuntimeError):
    """A gap column admitted no filler tiling; carries the violated triple."""

    def __init__(self, entry: LayoutEntry, position: tuple[int, int]):
        self.entry = entry
        self.position = position
        super().__init__(
            f"column {entry.index} at brick {position} is unfillable; "
            f"forbidden triple {entry.triple} of group {entry.group} realized")


def realize_tiling(ts: CyclicTriominoSet, gs: GadgetSet,
                   grid: GridAssignment, scaled: bool = False) -> TilingCertificate:
    """Turn a grid solution into an exact brick+filler tiling certificate.

    Bricks are placed on the array lattice with z layered by grid value;
    every gap column then carries exactly one alpha, beta and gamma tower,
    and its leftover rings are filled by running the 1-D column instance
    through the exact-cover solver.  With ``scaled`` the certificate uses
    the tripled, bump-decorated variants on the 27x larger torus.
    """
    if not check_triomino(ts, grid):
        raise ValueError("grid is not a valid solution for this rule set")
    if scaled and not gs.decorated:
        raise ValueError("gadget set has no scaled variants; "
                         "run decorate_gadgets first")
    n, m = gs.n, gs.m
    px, py = grid.px, grid.py
    bw, bd, bh = gs.brick_box()
    factor = 3 if scaled else 1
    dims = (bw * px * factor, bd * py * factor, bh * factor)
    region = Region.torus(dims)
    tiles = [gs.brick3 if scaled else gs.brick,
             gs.filler3 if scaled else gs.filler]
    placements: list[Placement] = []

    spaced = LatticeTile([(0,), (n,)], dim=1)
    column_cache: dict[tuple[int, int, int], list[int]] = {}

    for x in range(px):
        for y in range(py):
            v = grid.at(x, y)
            bx, by, bz = bw * x, bd * y, 6 * v
            placements.append(Placement(0, (bx * factor, by * factor,
                                            bz * factor)))
            for entry in gs.layout:
                da, db, dg = _neighbor_shifts(grid, x, y, entry)
                key = ((6 * da) % bh, (6 * db) % bh, (6 * dg) % bh)
                zs = column_cache.get(key)
                if zs is None:
                    holes = column_obstacles(n, *key)
                    cert = solve(Region.torus((bh,), {(h,) for h in holes}),
                                 [spaced])
                    if cert is None:
                        raise ColumnUnsolvableError(entry, (x, y))
                    zs = sorted(p.offset[0] for p in cert.placements)
                    column_cache[key] = zs
                cx, cy = gs.pole_center(entry.index)
                fx, fy = bx + cx, by + cy
                for z in zs:
                    placements.append(
                        Placement(1, (fx * factor, fy * factor, z * factor)))
    return TilingCertificate(region=region, tiles=tiles,
                             placements=placements)
