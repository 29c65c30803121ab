"""Deterministic voxel exports: xyz cell lists and OBJ cube meshes."""

from __future__ import annotations

from .lattice import LatticeTile, TileError
from .solver import TilingCertificate

# quad corners per cube face, wound counterclockwise seen from outside
_FACES = (
    ((0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 1, 0)),  # -x
    ((1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 0, 1)),  # +x
    ((0, 0, 0), (1, 0, 0), (1, 0, 1), (0, 0, 1)),  # -y
    ((0, 1, 0), (0, 1, 1), (1, 1, 1), (1, 1, 0)),  # +y
    ((0, 0, 0), (0, 1, 0), (1, 1, 0), (1, 0, 0)),  # -z
    ((0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)),  # +z
)


def certificate_cells(cert: TilingCertificate) -> LatticeTile:
    """All covered cells of a certificate as one tile (torus-reduced)."""
    dims = cert.region.dims
    cells = []
    for p in cert.placements:
        for cell in cert.tiles[p.tile_id]:
            q = tuple(cell[i] + p.offset[i] for i in range(len(dims)))
            if cert.region.mode == "torus":
                q = tuple(q[i] % dims[i] for i in range(len(dims)))
            cells.append(q)
    return LatticeTile(cells, dim=len(dims), name="certificate")


def obj_mesh(t: LatticeTile) -> str:
    """One unit cube per cell with shared vertices deduplicated.

    Vertices are numbered in first-encounter order over lex-sorted cells, so
    the output is byte-stable for a given tile.
    """
    if t.dim != 3:
        raise TileError("OBJ export needs a 3-D tile")
    if t.is_empty:
        raise TileError("cannot mesh an empty tile")
    vertex_index: dict[tuple[int, int, int], int] = {}
    vertex_lines: list[str] = []
    face_lines: list[str] = []
    for cell in t:
        for face in _FACES:
            ids = []
            for corner in face:
                v = (cell[0] + corner[0], cell[1] + corner[1],
                     cell[2] + corner[2])
                idx = vertex_index.get(v)
                if idx is None:
                    idx = len(vertex_index) + 1
                    vertex_index[v] = idx
                    vertex_lines.append(f"v {v[0]} {v[1]} {v[2]}")
                ids.append(idx)
            face_lines.append("f " + " ".join(map(str, ids)))
    header = [f"# tileforge mesh: {t.name}",
              f"# {len(t)} cells, {len(vertex_index)} vertices"]
    return "\n".join(header + vertex_lines + face_lines) + "\n"
