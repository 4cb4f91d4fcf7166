"""Difference cycles: cyclic combinatorial 3-manifolds on Z_n.

A difference cycle (a_0:...:a_d) with a_0 + ... + a_d = n is the orbit of
the simplex <0, a_0, a_0+a_1, ...> under v -> v+1 mod n; unions of such
orbits are the complexes with a transitive cyclic symmetry.  This package
builds and verifies them, computes their invariants, classifies all of them
for a given n, and handles infinite series of them, including a family of
lens spaces covering every L((k+2)^2-1, k+2).
"""

from .classify import (
    EnumerationResult,
    Registry,
    RegistryError,
    RidgeOrbit,
    all_difference_cycles,
    are_isomorphic,
    classify,
    dedupe_multipliers,
    iso_classes,
    registry,
    ridge_orbits,
)
from .cycles import (
    CyclicComplex,
    DifferenceCycle,
    FacetComplex,
    InvalidCycleError,
    InvalidMultiplierError,
    ParseError,
    as_facet_complex,
    canonicalize,
    expand,
    multipliers,
    multiply,
    parse,
    parse_complex,
    parse_cycle,
)
from .groups import (
    AbelianInvariants,
    GroupPresentation,
    abelianization,
    export_presentation,
    fundamental_group,
    parse_presentation,
    tietze_simplify,
)
from .homology import (
    HomologyGroups,
    homology,
    is_2_neighborly,
    is_orientable,
)
from .lens import (
    REFERENCE_COMPLEXES,
    HeegaardReport,
    LensParams,
    LensVerificationError,
    WindingData,
    lens_equivalent,
    lens_series,
    lens_type_of_series,
    segment_census,
    verify_lens_member,
    verify_reference_complex,
    winding_solve,
)
from .series import (
    ClassificationGapError,
    DenseSeriesReport,
    SeriesError,
    SeriesSpec,
    UnitReduction,
    dense_extendable,
    enumerate_dense_series,
    extend_dense,
    extend_order_l,
    link_relabeling,
    minimal_start,
    order_l_admissible,
    reduce_by_unit,
)
from .smith import invariant_factors, rank, smith_normal_form
from .topology import (
    Slicing,
    boundary_complex,
    collapse,
    euler_characteristic,
    export_off,
    f_vector,
    is_circle_1d,
    is_closed_pseudomanifold,
    is_closed_surface,
    is_combinatorial_manifold,
    is_connected,
    is_manifold_all_links,
    is_orientable_surface,
    is_sphere_2d,
    link,
    slicing,
    solid_torus_certificate,
    span,
    surface_type,
)

__version__ = "0.1.0"
