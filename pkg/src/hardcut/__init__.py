"""Thickened-expander handlebodies whose balanced cuts are expensive.

Graph generation and expansion certificates live in :mod:`hardcut.graph`,
closed-form geometry in :mod:`hardcut.geometry`, the cell model and case
analysis in :mod:`hardcut.handlebody`, cut search in
:mod:`hardcut.cutsearch`, and the scaling experiment in
:mod:`hardcut.harness`.
"""

from .cutsearch import (
    CutResult,
    exact_balanced_min_cut,
    local_search_refine,
    randomized_search,
    spectral_sweep_cut,
)
from .errors import HardCutError
from .estimators import BalancedCutSearch, ExpansionCertifier
from .geometry import ConstantChainReport, verify_constant_chain
from .graph import (
    ExpansionCertificate,
    Multigraph,
    edge_boundary,
    exact_expansion,
    generate_regular,
    spectral_expansion_bound,
)
from .handlebody import (
    CaseReport,
    FractionalCut,
    GeometryParams,
    HandlebodyModel,
    VertexCut,
    build_model,
    case_analysis,
    classify_cells,
    discrete_cut_area,
    model_lower_bound,
    normalize,
    side_volumes,
    theorem_lower_bound,
)

__version__ = "0.1.0"

__all__ = [
    "BalancedCutSearch",
    "CaseReport",
    "ConstantChainReport",
    "CutResult",
    "ExpansionCertificate",
    "ExpansionCertifier",
    "FractionalCut",
    "GeometryParams",
    "HandlebodyModel",
    "HardCutError",
    "Multigraph",
    "VertexCut",
    "build_model",
    "case_analysis",
    "classify_cells",
    "discrete_cut_area",
    "edge_boundary",
    "exact_balanced_min_cut",
    "exact_expansion",
    "generate_regular",
    "local_search_refine",
    "model_lower_bound",
    "normalize",
    "randomized_search",
    "side_volumes",
    "spectral_expansion_bound",
    "spectral_sweep_cut",
    "theorem_lower_bound",
    "verify_constant_chain",
]
