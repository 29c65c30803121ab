"""Domino and cyclic-triomino rule systems on doubly periodic grids.

A domino set constrains horizontally and vertically adjacent values; a cyclic
triomino set constrains L-shaped triples in all four orientations and is
closed under adding a constant to every value.  ``encode_domino`` embeds an
arbitrary domino set into a cyclic triomino set; ``lift_solution`` and
``project_solution`` transport periodic solutions across that embedding in
both directions.

Only doubly periodic assignments are representable here.  Checkers on the
period torus are exact for those, and every constructive transport in this
module produces periodic witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd, lcm

Pair = tuple[int, int]
Triple = tuple[int, int, int]

# displacement of orientation i (1-based); index wraps modulo 4
_U = {1: (1, 0), 2: (0, 1), 3: (-1, 0), 4: (0, -1)}


def _u(i: int) -> tuple[int, int]:
    return _U[(i - 1) % 4 + 1]


@dataclass(frozen=True)
class DominoSet:
    """Values 1..m with ordered horizontal (r1) and vertical (r2) rules."""

    m: int
    r1: frozenset[Pair]
    r2: frozenset[Pair]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("value count m must be positive")
        for name, rel in (("R1", self.r1), ("R2", self.r2)):
            for a, b in rel:
                if not (1 <= a <= self.m and 1 <= b <= self.m):
                    raise ValueError(f"{name} pair ({a}, {b}) out of range")

    @classmethod
    def make(cls, m: int, r1, r2) -> "DominoSet":
        return cls(m, frozenset(map(tuple, r1)), frozenset(map(tuple, r2)))

    def to_json(self) -> dict:
        return {"m": self.m,
                "R1": sorted(map(list, self.r1)),
                "R2": sorted(map(list, self.r2))}

    @classmethod
    def from_json(cls, obj: dict) -> "DominoSet":
        return cls.make(int(obj["m"]), obj.get("R1", []), obj.get("R2", []))


@dataclass(frozen=True)
class CyclicTriominoSet:
    """Values in Z_n; four orientation rules closed under diagonal shift."""

    n: int
    rules: tuple[frozenset[Triple], frozenset[Triple],
                 frozenset[Triple], frozenset[Triple]]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("modulus n must be positive")
        if len(self.rules) != 4:
            raise ValueError("need exactly four orientation rules")
        for idx, rel in enumerate(self.rules, start=1):
            for t in rel:
                if len(t) != 3 or any(not (0 <= v < self.n) for v in t):
                    raise ValueError(f"S{idx} triple {t} out of range")

    def rule(self, i: int) -> frozenset[Triple]:
        return self.rules[(i - 1) % 4]

    @classmethod
    def make(cls, n: int, s1, s2, s3, s4) -> "CyclicTriominoSet":
        return cls(n, tuple(frozenset(map(tuple, s))
                            for s in (s1, s2, s3, s4)))

    @classmethod
    def from_complement_representatives(cls, n: int,
                                        forbidden) -> "CyclicTriominoSet":
        """Allow everything except the diagonal orbits of the given triples.

        ``forbidden`` is a sequence of four triple collections, one per
        orientation.
        """
        full = set(product(range(n), repeat=3))
        rules = []
        for reps in forbidden:
            banned = {tuple((v + k) % n for v in t)
                      for t in reps for k in range(n)}
            rules.append(full - banned)
        return cls.make(n, *rules)

    def to_json(self) -> dict:
        out = {"n": self.n}
        for i, rel in enumerate(self.rules, start=1):
            out[f"S{i}"] = sorted(map(list, rel))
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "CyclicTriominoSet":
        n = int(obj["n"])
        rules = []
        closure = bool(obj.get("cyclic_closure", False))
        for i in range(1, 5):
            triples = {tuple(int(v) for v in t) for t in obj.get(f"S{i}", [])}
            if closure:
                triples = {tuple((v + k) % n for v in t)
                           for t in triples for k in range(n)}
            rules.append(triples)
        return cls.make(n, *rules)


@dataclass(frozen=True)
class GridAssignment:
    """Doubly periodic function Z^2 -> values; values[x][y], periods (px, py)."""

    px: int
    py: int
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.px < 1 or self.py < 1:
            raise ValueError("grid periods must be positive")
        if len(self.values) != self.px or any(len(col) != self.py
                                              for col in self.values):
            raise ValueError("values must be a px-by-py array")

    @classmethod
    def make(cls, values) -> "GridAssignment":
        vals = tuple(tuple(int(v) for v in col) for col in values)
        return cls(len(vals), len(vals[0]) if vals else 0, vals)

    def at(self, x: int, y: int) -> int:
        return self.values[x % self.px][y % self.py]

    def shifted(self, k: int, n: int) -> "GridAssignment":
        return GridAssignment(self.px, self.py, tuple(
            tuple((v + k) % n for v in col) for col in self.values))

    def equivalent_to(self, other: "GridAssignment") -> bool:
        """Equal as functions on Z^2 (compared on the common period torus)."""
        px, py = lcm(self.px, other.px), lcm(self.py, other.py)
        return all(self.at(x, y) == other.at(x, y)
                   for x in range(px) for y in range(py))

    def to_json(self) -> dict:
        return {"px": self.px, "py": self.py,
                "values": [list(col) for col in self.values]}

    @classmethod
    def from_json(cls, obj: dict) -> "GridAssignment":
        g = cls.make(obj["values"])
        if g.px != int(obj.get("px", g.px)) or g.py != int(obj.get("py", g.py)):
            raise ValueError("grid periods disagree with values array")
        return g


def validate_cyclic(ts: CyclicTriominoSet) -> bool:
    """True iff every rule is closed under the diagonal shift mod n."""
    n = ts.n
    for rel in ts.rules:
        for (a, b, c) in rel:
            if ((a + 1) % n, (b + 1) % n, (c + 1) % n) not in rel:
                return False
    return True


def check_domino(ds: DominoSet, grid: GridAssignment) -> bool:
    """Both neighbor rules hold at every torus cell (with wraparound)."""
    for col in grid.values:
        for v in col:
            if not (1 <= v <= ds.m):
                raise ValueError(f"grid value {v} outside 1..{ds.m}")
    for x in range(grid.px):
        for y in range(grid.py):
            v = grid.at(x, y)
            if (v, grid.at(x + 1, y)) not in ds.r1:
                return False
            if (v, grid.at(x, y + 1)) not in ds.r2:
                return False
    return True


def check_triomino(ts: CyclicTriominoSet, grid: GridAssignment) -> bool:
    """All four L-triple constraints hold at every torus cell."""
    for col in grid.values:
        for v in col:
            if not (0 <= v < ts.n):
                raise ValueError(f"grid value {v} outside Z_{ts.n}")
    for x in range(grid.px):
        for y in range(grid.py):
            v = grid.at(x, y)
            for i in range(1, 5):
                ux, uy = _u(i)
                wx, wy = _u(i + 1)
                triple = (v, grid.at(x + ux, y + uy), grid.at(x + wx, y + wy))
                if triple not in ts.rule(i):
                    return False
    return True


def representative_tables(ds: DominoSet) -> tuple[set[Triple], ...]:
    """The four generator tables of the embedding, before orbit closure.

    The shared table L marks cells that carry an actual value; the extra
    triples transcribe the horizontal rule onto orientations 1 and 3 and the
    vertical rule onto orientations 2 and 4, with the operand order arranged
    so both endpoints of each rule sit on the value-carrying sublattice.
    """
    L = {(w, 0, 0) for w in range(1, ds.m + 1)}
    k1 = L | {(0, b, a) for (a, b) in ds.r1}
    k2 = L | {(0, a, b) for (a, b) in ds.r2}
    k3 = L | {(0, a, b) for (a, b) in ds.r1}
    k4 = L | {(0, b, a) for (a, b) in ds.r2}
    return (k1, k2, k3, k4)


def smallest_modulus(m: int, coprime_six: bool = True) -> int:
    """Smallest legal modulus for encoding m values."""
    n = 2 * m + 1
    while coprime_six and gcd(n, 6) != 1:
        n += 1
    return n


def encode_domino(ds: DominoSet, n: int,
                  require_coprime_six: bool = False) -> CyclicTriominoSet:
    """Embed a domino set into a cyclic triomino set over Z_n (n >= 2m+1)."""
    if n < 2 * ds.m + 1:
        raise ValueError(f"modulus {n} too small; need at least {2 * ds.m + 1}")
    if require_coprime_six and gcd(n, 6) != 1:
        raise ValueError(f"modulus {n} must be coprime to 6")
    rules = []
    for table in representative_tables(ds):
        closed = {tuple((v + k) % n for v in t)
                  for t in table for k in range(n)}
        # n >= 2m+1 keeps the diagonal orbits of distinct generators disjoint
        assert len(closed) == n * len(table), "orbit collision in encoding"
        rules.append(closed)
    ts = CyclicTriominoSet.make(n, *rules)
    assert validate_cyclic(ts)
    return ts


def _checkerboard_site(x: int, y: int, delta: int) -> tuple[int, int]:
    """Domino coordinate whose image on the triomino board is (x, y)."""
    return ((x - y + delta) // 2, (-x - y + delta) // 2)


def _board_image(tx: int, ty: int, delta: int) -> tuple[int, int]:
    """Triomino coordinate carrying the domino value at (tx, ty)."""
    return (tx - ty, -tx - ty + delta)


def lift_solution(ds: DominoSet, grid: GridAssignment,
                  delta: int = 0) -> GridAssignment:
    """Embed a domino solution as a triomino solution.

    Domino values land on the checkerboard sites of parity ``delta``; all
    other cells read 0.  One domino step right maps to the board step
    (1, -1) and one step up to (-1, -1), so both neighbor rules are read off
    by L-triples whose corner sits on a zero cell.  The output periods are
    doubled to 2*lcm(px, py) so the checkerboard closes up on the torus.
    """
    if delta not in (0, 1):
        raise ValueError("delta must be 0 or 1")
    if not check_domino(ds, grid):
        raise ValueError("grid is not a valid domino solution")
    p = 2 * lcm(grid.px, grid.py)
    vals = []
    for x in range(p):
        col = []
        for y in range(p):
            if (x + y) % 2 == delta:
                tx, ty = _checkerboard_site(x, y, delta)
                col.append(grid.at(tx, ty))
            else:
                col.append(0)
        vals.append(tuple(col))
    return GridAssignment(p, p, tuple(vals))


def project_solution(ts: CyclicTriominoSet, ds: DominoSet,
                     grid: GridAssignment) -> GridAssignment:
    """Recover a domino solution from a canonical triomino solution.

    The input must carry a constant value on one checkerboard parity and
    values from a common shifted copy of 1..m on the other; the global shift
    is subtracted before reading the sublattice off.
    """
    if not check_triomino(ts, grid):
        raise ValueError("grid is not a valid triomino solution")
    if grid.px % 2 or grid.py % 2:
        raise ValueError(
            "non-canonical triomino solution: odd periods cannot carry "
            "a checkerboard structure")
    n, m = ts.n, ds.m

    matches = []
    for parity in (0, 1):
        zero_vals = {grid.at(x, y)
                     for x in range(grid.px) for y in range(grid.py)
                     if (x + y) % 2 == parity}
        if len(zero_vals) != 1:
            continue
        k = zero_vals.pop()
        others = {(grid.at(x, y) - k) % n
                  for x in range(grid.px) for y in range(grid.py)
                  if (x + y) % 2 != parity}
        if all(1 <= v <= m for v in others):
            matches.append((parity, k))
    if not matches:
        raise ValueError("non-canonical triomino solution: no constant "
                         "parity class carrying shifted domino values")
    assert len(matches) == 1  # n >= 2m+1 rules out a second match
    parity, k = matches[0]
    delta = 1 - parity

    period = lcm(grid.px, grid.py)
    vals = []
    for tx in range(period):
        col = []
        for ty in range(period):
            bx, by = _board_image(tx, ty, delta)
            col.append((grid.at(bx, by) - k) % n)
        vals.append(tuple(col))
    out = GridAssignment(period, period, tuple(vals))
    if not check_domino(ds, out):
        raise ValueError("projected grid violates the domino rules")
    return out
