"""Exact analysis of p-ary bent functions, their Cayley graphs and association schemes."""
from .cayley import CayleyGraph, classify_lst, component_graphs, feasibility_verdict, srg_check
from .construct import OrthogonalArray, RowPartition, bent_from_oa, bush_construct, validate_oa
from .cyclotomic import CycInt
from .duality import classify_regularity, dual_by_distinguished_index, verify_dual_structure
from .ff import ExtField, ext_field, point_space
from .pfunc import PAryFunction, anf_interpolate, level_sets, parse_poly, render_anf
from .scheme import (
    amorphic_check,
    amorphic_parameters,
    constants_by_trace,
    imy_predicted,
    is_bent_by_constants,
    scheme_check,
)
from .spectral import is_bent, is_bent_by_derivatives, walsh_transform

__version__ = "0.1.0"
