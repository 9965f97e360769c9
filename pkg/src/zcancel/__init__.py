"""Combinatorial tools for A^1-fibered affine surfaces and cylinder cancellation."""

from .blowups import (
    BlowupSequence,
    BlowupStep,
    derive_sequence,
    extended_graph,
    pseudominimalize,
    replay,
)
from .cancellation import (
    Verdict,
    check_verdict,
    cylinders_isomorphic,
    generate_family,
    zariski_status,
)
from .covering import DPDDivisor, cover_order, dpd_cover, hj_inverse, hj_string, singularity_type
from .divisors import BaseCurve, GraphDivisor, Mode, iso
from .equations import (
    DanielewskiForm,
    MMForm,
    build_recursion,
    classify,
    mm_classify,
    tree_of_equation,
    verify_witness,
)
from .errors import InputError, ZcancelError
from .invariants import analyze, class_group, picard_number, vertex_count
from .stretching import StretchSpec, stretch
from .trees import FiberTree, bush, canonical_form, chain, validate_contractible

__all__ = [
    "BaseCurve",
    "BlowupSequence",
    "BlowupStep",
    "DPDDivisor",
    "DanielewskiForm",
    "FiberTree",
    "GraphDivisor",
    "InputError",
    "MMForm",
    "Mode",
    "StretchSpec",
    "Verdict",
    "ZcancelError",
    "analyze",
    "build_recursion",
    "bush",
    "canonical_form",
    "chain",
    "check_verdict",
    "class_group",
    "classify",
    "cover_order",
    "cylinders_isomorphic",
    "derive_sequence",
    "dpd_cover",
    "extended_graph",
    "generate_family",
    "hj_inverse",
    "hj_string",
    "iso",
    "mm_classify",
    "picard_number",
    "pseudominimalize",
    "replay",
    "singularity_type",
    "stretch",
    "tree_of_equation",
    "validate_contractible",
    "verify_witness",
    "vertex_count",
    "zariski_status",
]
