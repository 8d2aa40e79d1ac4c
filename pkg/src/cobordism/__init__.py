"""Exact formal group laws, Lazard-ring coordinates and cobordism characteristic numbers."""

from .algebra import GradedVariable, Poly, PolyRing, TruncatedSeries, series_reverse, series_substitute
from .fgl import (
    FormalGroupLaw,
    LazardElement,
    RingMap,
    additive_map,
    builtin_fgl,
    check_fgl_axioms,
    formal_inverse,
    lazard_eq,
    multiplicative_map,
    n_series,
    specialize,
    universal_fgl,
)
from .genera import (
    FormalClass,
    MorphismDatum,
    adams_check,
    class_in_lazard,
    gdf_verify,
    rost_check,
    s_d_hom,
    t_d1,
)
from .theories import (
    c1_line_bundle,
    chi_structure_sheaf,
    chow_theory,
    extract_fgl,
    k0_c1_check,
    k_theory,
    pb_basis_check,
    pushforward_point,
    theory_ring,
    universal_theory,
)
from .varieties import (
    Ambient,
    ChowClass,
    CompleteIntersection,
    DisjointUnion,
    Product,
    chern_number,
    chow_degree,
    hypersurface,
    load_catalog,
    newton_sd,
    projective_space,
    s_number,
    standard_catalog,
    tangent_chern,
)

__version__ = "0.1.0"
