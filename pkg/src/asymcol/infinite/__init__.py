"""The colouring construction on finite windows of infinite locally finite graphs."""

from .engine import (
    BlockTower,
    InterleavePlan,
    StabilizerRestriction,
    SuborbitDecomposition,
    TruncationReport,
    build_block_tower,
    colour_window,
    coset_representative,
    coset_suborbit_image,
    coset_targets,
    interleave_construct,
    stabilizer_classes,
    stabilizer_restriction,
    suborbits,
    tree_structural_check,
    verify_truncation,
)
from .lazy import (
    BallTruncation,
    LazyGraph,
    ball,
    extendable_automorphisms,
    parse_family,
    window_automorphisms,
)
