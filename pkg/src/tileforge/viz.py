"""Static matplotlib figures for offline inspection of tiles and reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib import colormaps

from .lattice import LatticeTile
from .solver import TilingCertificate

_MAX_RENDER_CELLS = 60_000


class RenderError(ValueError):
    """Input cannot be rendered as a figure."""


def _voxel_axes(fig):
    ax = fig.add_subplot(111, projection="3d")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_zlabel("z")
    return ax


def _bounded_grid(cells: np.ndarray):
    lo = cells.min(axis=0)
    extent = cells.max(axis=0) - lo + 1
    if int(np.prod(extent.astype(object))) > 4_000_000:
        raise RenderError("bounding box too large to rasterize; export xyz instead")
    return lo, extent


def render_tile(tile: LatticeTile, path: str, title: str | None = None) -> None:
    """Voxel plot (3-D), cell map (2-D) or strip (1-D) of a single tile."""
    if tile.is_empty:
        raise RenderError("cannot render an empty tile")
    if len(tile) > _MAX_RENDER_CELLS:
        raise RenderError(
            f"tile has {len(tile)} cells; figure rendering is capped at "
            f"{_MAX_RENDER_CELLS}, export xyz instead")
    fig = plt.figure(figsize=(6, 6))
    if tile.dim == 3:
        lo, extent = _bounded_grid(tile.cells)
        grid = np.zeros(tuple(int(e) for e in extent), dtype=bool)
        grid[tuple((tile.cells - lo).T)] = True
        ax = _voxel_axes(fig)
        ax.voxels(grid, facecolors="#4878cf", edgecolors="#22324f", linewidth=0.3)
        ax.set_box_aspect(extent)
    elif tile.dim == 2:
        lo, extent = _bounded_grid(tile.cells)
        grid = np.zeros(tuple(int(e) for e in extent), dtype=float)
        grid[tuple((tile.cells - lo).T)] = 1.0
        ax = fig.add_subplot(111)
        ax.imshow(grid.T, origin="lower", cmap="Blues", vmin=0, vmax=1.4)
        ax.set_xlabel("x")
        ax.set_ylabel("y")
    elif tile.dim == 1:
        ax = fig.add_subplot(111)
        xs = tile.cells[:, 0]
        ax.scatter(xs, np.zeros_like(xs), marker="s", s=200, c="#4878cf")
        ax.set_yticks([])
        ax.set_xlabel("x")
    else:
        raise RenderError(f"no renderer for dimension {tile.dim}")
    ax.set_title(title or tile.name)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_certificate(cert: TilingCertificate, path: str) -> None:
    """Voxel plot of a 3-D certificate, one color per tile id."""
    region = cert.region
    if region.dim != 3:
        raise RenderError("certificate rendering needs a 3-D region")
    if region.volume > _MAX_RENDER_CELLS:
        raise RenderError(
            f"region has {region.volume} cells; rendering capped at "
            f"{_MAX_RENDER_CELLS}")
    dims = region.dims
    grid = np.zeros(dims, dtype=bool)
    colors = np.empty(dims, dtype=object)
    cmap = colormaps["tab10"]
    for p in cert.placements:
        color = cmap(p.tile_id % 10)
        for cell in cert.tiles[p.tile_id]:
            q = tuple((cell[i] + p.offset[i]) % dims[i] for i in range(3))
            grid[q] = True
            colors[q] = color
    fig = plt.figure(figsize=(7, 7))
    ax = _voxel_axes(fig)
    ax.voxels(grid, facecolors=colors, edgecolors="#333333", linewidth=0.2)
    ax.set_box_aspect(dims)
    ax.set_title(f"{len(cert.placements)} placements on {region.mode} {dims}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_blocker_table(table: dict[tuple[int, int, int], bool],
                         path: str) -> None:
    """Occupancy strips for all eight on/off combinations with verdicts."""
    from .gadgets import blocker  # local import to avoid a cycle

    rows = sorted(table)
    fig, axes = plt.subplots(len(rows), 1, figsize=(5, 0.65 * len(rows)),
                             sharex=True)
    for ax, (i, j, k) in zip(np.atleast_1d(axes), rows):
        occupied = set()
        for kind, bit in (("alpha", i), ("beta", j), ("gamma", k)):
            occupied.update(c[0] for c in blocker(kind, bit).cells)
        strip = np.array([[1.0 if c in occupied else 0.0 for c in range(6)]])
        ax.imshow(strip, cmap="Greys", vmin=0, vmax=1.3, aspect="auto")
        verdict = "fillable" if table[(i, j, k)] else "stuck"
        ax.set_ylabel(f"{i}{j}{k}", rotation=0, labelpad=18, va="center")
        ax.set_yticks([])
        ax.text(5.6, 0, verdict, va="center",
                color="#2a7f2a" if table[(i, j, k)] else "#b02020")
    np.atleast_1d(axes)[-1].set_xticks(range(6))
    fig.suptitle("gap fillability per blocker state (shaded = occupied)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_tower_criterion(n: int, verdicts: dict[tuple[int, int, int], bool],
                           path: str) -> None:
    """Untileable fraction over the offset differences (a-b, b-c) mod n."""
    acc = np.zeros((n, n))
    cnt = np.zeros((n, n))
    for (a, b, c), tileable in verdicts.items():
        d1, d2 = (a - b) % n, (b - c) % n
        acc[d1, d2] += 0.0 if tileable else 1.0
        cnt[d1, d2] += 1.0
    frac = np.divide(acc, cnt, out=np.zeros_like(acc), where=cnt > 0)
    fig, ax = plt.subplots(figsize=(5, 4.5))
    im = ax.imshow(frac.T, origin="lower", cmap="RdYlGn_r", vmin=0, vmax=1)
    ax.set_xlabel("(a - b) mod n")
    ax.set_ylabel("(b - c) mod n")
    ax.set_title(f"untileable columns, n = {n}")
    fig.colorbar(im, ax=ax, label="fraction untileable")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_suite_summary(reports, path: str) -> None:
    """Horizontal bars of case counts per suite, failures highlighted."""
    names = [r.suite for r in reports]
    passed = [r.cases - len(r.failures) for r in reports]
    failed = [len(r.failures) for r in reports]
    fig, ax = plt.subplots(figsize=(7, 0.5 * len(names) + 1.5))
    ys = np.arange(len(names))
    ax.barh(ys, passed, color="#2a7f2a", label="pass")
    ax.barh(ys, failed, left=passed, color="#b02020", label="fail")
    ax.set_yticks(ys, names)
    ax.set_xlabel("cases")
    ax.legend(loc="lower right")
    ax.set_title("verification suite results")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_partition_layers(cp, path: str) -> None:
    """Label map of every z layer of a 3-D cube partition."""
    if cp.dim != 3:
        raise RenderError("layer rendering needs a 3-D partition")
    side = cp.side
    label = cp.label_map()
    free = cp.free_cells
    layers = side
    cols = min(layers, 7)
    rows = (layers + cols - 1) // cols
    fig, axes = plt.subplots(rows, cols, figsize=(2.1 * cols, 2.3 * rows))
    axes = np.atleast_1d(axes).ravel()
    cmap = colormaps["tab20"]
    for z in range(layers):
        ax = axes[z]
        img = np.zeros((side, side, 4))
        for x in range(side):
            for y in range(side):
                lab = label[(x, y, z)]
                color = cmap((lab - 1) % 20)
                if (x, y, z) in free:
                    color = (*color[:3], 0.35)
                img[x, y] = color
        ax.imshow(np.transpose(img, (1, 0, 2)), origin="lower")
        ax.set_title(f"z = {z}", fontsize=8)
        ax.set_xticks([])
        ax.set_yticks([])
    for ax in axes[layers:]:
        ax.axis("off")
    fig.suptitle(f"cube partition, m = {cp.m} (pale = free coordinates)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
