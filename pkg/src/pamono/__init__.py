"""Partial monoids, double and n-fold categories as finite composition tables."""
from .core import (
    UNDEFINED,
    AxiomViolation,
    InvalidStructureError,
    Kind,
    PartialMonoidStructure,
    StructureError,
    ValidationReport,
    check_derived_properties,
    compose,
    detect_groupoid,
    units,
    validate_structure,
)
from .double import (
    CellDecomposition,
    CubicalClassification,
    DoubleStructure,
    classify_cubical,
    derive_cells,
    detect_one_object,
    detect_two_category,
    exchange_witnesses,
    validate_double,
)
from .generators import (
    CategoryPresentation,
    category_to_pm,
    commutative_monoid_double,
    monoid_to_pm,
    ncube_pair_groupoid,
    pair_double_groupoid,
    pm_to_category,
)
from .morphism import CarrierMap, are_isomorphic, check_homomorphism, compose_maps
from .nfold import CellLattice, MultiStructure, cell_lattice, validate_nfold

__all__ = [name for name in dir() if not name.startswith("_")]
