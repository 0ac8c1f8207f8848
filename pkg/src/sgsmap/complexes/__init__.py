"""Simplicial complexes, chain complexes, homology and cup products."""

from .chains import (
    BudgetExceeded,
    Chain,
    ChainComplex,
    GradedHomology,
    Mod2Homology,
    add_chains,
    boundary_of,
    chain_complex,
    cohomology,
    cross,
    cross_all,
    homology,
    mod2_homology,
    relative_homology,
)
from .cochains import Cocycle, NotACocycleError, cap_product, coboundary, cup_product, evaluate, is_cocycle, pullback
from .constructions import (
    GlueError,
    barycentric_subdivision,
    cone,
    disjoint_union,
    glue,
    normalize_labels,
    point,
    product,
    product_all,
    simplex,
    sphere,
    staircase,
)
from .kunneth import TorsionError, kunneth_free, sphere_homology
from .orientation import (
    NonOrientableError,
    NotPseudomanifoldError,
    fundamental_class,
    is_closed_pseudomanifold,
    is_orientable,
    pseudomanifold_defects,
)
from .simplicial import Simplex, SimplicialComplex, Vertex, from_text, to_text
