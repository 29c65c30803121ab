"""tileforge: lattice-tile constructions, gadgets and exact-cover search."""

from .boardgames import (
    CyclicTriominoSet,
    DominoSet,
    GridAssignment,
    check_domino,
    check_triomino,
    encode_domino,
    lift_solution,
    project_solution,
    smallest_modulus,
    validate_cyclic,
)
from .gadgets import (
    GadgetSet,
    blocker,
    blocker_truth_table,
    build_gadgets,
    decorate_gadgets,
    realize_tiling,
    representatives,
    tower,
    tower_check,
)
from .lattice import (
    EmptyTileError,
    LatticeTile,
    MinkowskiOverlapError,
    TileError,
    are_adjacent,
    inflate,
    is_connected,
    minkowski_sum,
    normalize,
    tile,
)
from .partition import (
    CubePartition,
    DecoratedPartition,
    check_external_adjacency,
    check_internal_adjacency,
    decorate,
    part_label,
    partition_cube,
)
from .simulate import (
    build_shell_tile,
    check_local_forcing,
    plan_simulation,
    simulate_set,
    verify_lattice_partition,
)
from .solver import (
    CellBudgetError,
    Placement,
    Region,
    TilingCertificate,
    brute_force_decide,
    solve,
    verify,
)
from .suites import SuiteParams, run_suite

__version__ = "0.1.0"
