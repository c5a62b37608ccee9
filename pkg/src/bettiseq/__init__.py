"""Betti-sequence vectorizations of persistent homology for 2-D point clouds."""

__version__ = "0.1.0"

from .pointcloud import (  # noqa: E402
    DistanceMatrix,
    Generator,
    PointCloud,
    distances_from_points,
    enclosing_radius,
    gen_perturbed_lattice,
    gen_sierpinski,
    gen_uniform,
    gen_uniform_with_hole,
    pairwise_distances,
)
from .filtration import FilteredComplex, Simplex, build_rips  # noqa: E402
from .homology import (  # noqa: E402
    PersistenceDiagram,
    PersistencePair,
    betti_numbers_at,
    persistence_h0,
    persistence_h1,
)
from .diagram import (  # noqa: E402
    Barcode,
    FiltrationGrid,
    from_barcode,
    region_contains,
    to_barcode,
    truncate_essential,
)
from .vectorize import (  # noqa: E402
    BettiVector,
    Variant,
    betti_grid_sample,
    betti_interval,
    betti_new,
    cumulative,
    normalize_sup,
    normalized_cumulative,
    stable_betti,
)
from .metrics import (  # noqa: E402
    Matching,
    bottleneck,
    brute_force_wasserstein,
    sup_distance,
    wasserstein,
)

__all__ = [
    "Barcode",
    "BettiVector",
    "DistanceMatrix",
    "FilteredComplex",
    "FiltrationGrid",
    "Generator",
    "Matching",
    "PersistenceDiagram",
    "PersistencePair",
    "PointCloud",
    "Simplex",
    "Variant",
    "betti_grid_sample",
    "betti_interval",
    "betti_new",
    "betti_numbers_at",
    "bottleneck",
    "brute_force_wasserstein",
    "build_rips",
    "cumulative",
    "distances_from_points",
    "enclosing_radius",
    "from_barcode",
    "gen_perturbed_lattice",
    "gen_sierpinski",
    "gen_uniform",
    "gen_uniform_with_hole",
    "normalize_sup",
    "normalized_cumulative",
    "pairwise_distances",
    "persistence_h0",
    "persistence_h1",
    "region_contains",
    "stable_betti",
    "sup_distance",
    "to_barcode",
    "truncate_essential",
    "wasserstein",
]
