"""Finite acyclic categories, their nerves and integer (co)homology.

The built-in models assemble a functor between two finite categories whose
classifying map is the Hopf map; :func:`hopfcat.verify.verify_hopf` checks
the construction end to end.
"""
from .category import (
    CatPresentation,
    FiniteCategory,
    Functor,
    Generator,
    NaturalTransformation,
    PresentationError,
    check_functor,
    check_natural,
    is_acyclic,
    ordinal,
    parse_presentation,
    realize,
    realize_category,
)
from .constructions import cone, mapping_cylinder, product_with_arrow, pushout
from .homology import cohomology, cup_product, homology, hopf_invariant
from .nerve import (
    SemiSimplicialSet,
    SimplicialMap,
    comparison_k,
    cylinder_condition,
    is_simplicial_iso,
    nerve,
    nerve_map,
    simplicial_mapping_cylinder,
    simplicial_pushout,
)

__version__ = "0.1.0"
