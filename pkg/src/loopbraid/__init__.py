"""Loop braid group representations from ribbon fusion category data."""
from .basis import PairedFusionTree, dim_hom, enumerate_left_basis, enumerate_paired_basis
from .builtin import TYParams, ising, tambara_yamagami, trivial
from .category import (
    DEFAULT_TOL,
    CategoryError,
    FusionRules,
    RibbonCategory,
    validate_structure,
    verify_hexagon,
    verify_pentagon,
)
from .catfile import load_category, save_category
from .oracle import oracle_equivalence, oracle_generator_matrix
from .rep import LBRep, build_lb_representation, check_trivial_double_braiding, verify_lb_relations
from .words import LoopBraidWord, evaluate, parse_word, relation_instances

__all__ = [
    "PairedFusionTree",
    "dim_hom",
    "enumerate_left_basis",
    "enumerate_paired_basis",
    "TYParams",
    "ising",
    "tambara_yamagami",
    "trivial",
    "DEFAULT_TOL",
    "CategoryError",
    "FusionRules",
    "RibbonCategory",
    "validate_structure",
    "verify_hexagon",
    "verify_pentagon",
    "load_category",
    "save_category",
    "oracle_equivalence",
    "oracle_generator_matrix",
    "LBRep",
    "build_lb_representation",
    "check_trivial_double_braiding",
    "verify_lb_relations",
    "LoopBraidWord",
    "evaluate",
    "parse_word",
    "relation_instances",
]
