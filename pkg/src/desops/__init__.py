"""Set operations over described elements.

Subsets of a finite carrier interact through their descriptions: a
probe assigns each element a real feature vector, and intersections,
unions, nerve complexes, and convexity checks are taken with respect to
those descriptions, exactly or up to a Euclidean tolerance.
"""

from .core import (
    Description,
    DimensionMismatch,
    DuplicateId,
    Element,
    Glossa,
    GlossaError,
    InvalidDescription,
    NotAMember,
    build_glossa,
    check_eta,
    min_distance_sq,
)
from .imaging import (
    DiscRegion,
    EmptyRegionError,
    ExperimentParams,
    HexagonRegion,
    ImageError,
    PolygonRegion,
    build_image_glossa,
    load_image,
    region_bbox,
    region_contains,
    region_to_set,
    render_mask,
    render_overlay,
    run_experiment,
    save_image,
)
from .nerve import (
    ConvexityReport,
    EquiconvexityCheck,
    MissingCoords,
    RepresentabilityReport,
    SimplicialComplex,
    check_convexity_theorem,
    check_d_convex_union_representable,
    convex_hull_2d,
    descriptive_nerve,
    downward_closure,
    is_digitally_convex,
    kary_descriptive_union,
    kwise_descriptive_intersection,
    lattice_hull_fill,
    point_in_hull,
)
from .setops import (
    VARIANTS,
    DescriptiveResult,
    UnionConfig,
    check_injective,
    descriptive_intersection,
    descriptive_union,
    matching_fiber,
    oracle_descriptive_intersection,
    oracle_descriptive_op,
    oracle_descriptive_union,
    variant_config,
)
from .verify import VerifyReport, run_verify

__version__ = "0.1.0"
