"""Finite lattices, quantales on them, and the enumeration of small quantales
whose unit fails to distribute over meets."""

from __future__ import annotations

from .enumerate import (
    CatalogueEntry,
    Constraint,
    census_strict,
    classify_seven,
    enumerate_lattices,
    enumerate_quantales,
    parse_constraint,
    quantale_canonical,
)
from .errors import (
    ConditionsFail,
    LatticeError,
    ParseError,
    QuantaleError,
    QuantaleKitError,
    TooLarge,
    ValidationError,
)
from .io import export_dot, load_model, save_model
from .lattice import (
    L6,
    L7,
    M3,
    N5,
    Lattice,
    approximable,
    boolean_lattice,
    chain,
    distributivity_report,
    extend_lattice,
    isolated_info,
    lattice_from_covers,
    pattern_scan,
    totally_below,
    validate_lattice,
)
from .quantale import (
    Nucleus,
    Quantale,
    extend_quantale,
    group_quantale,
    quantale_profile,
    quotient_by_nucleus,
    unitally_nondistributive,
    validate_quantale,
)

__version__ = "0.1.0"

__all__ = [
    "approximable",
    "boolean_lattice",
    "CatalogueEntry",
    "census_strict",
    "chain",
    "classify_seven",
    "ConditionsFail",
    "Constraint",
    "distributivity_report",
    "enumerate_lattices",
    "enumerate_quantales",
    "extend_lattice",
    "export_dot",
    "extend_quantale",
    "group_quantale",
    "isolated_info",
    "L6",
    "L7",
    "Lattice",
    "lattice_from_covers",
    "load_model",
    "LatticeError",
    "M3",
    "N5",
    "Nucleus",
    "parse_constraint",
    "ParseError",
    "pattern_scan",
    "Quantale",
    "quantale_canonical",
    "quantale_profile",
    "QuantaleError",
    "QuantaleKitError",
    "quotient_by_nucleus",
    "save_model",
    "TooLarge",
    "totally_below",
    "unitally_nondistributive",
    "validate_lattice",
    "validate_quantale",
    "ValidationError",
    "__version__",
]
