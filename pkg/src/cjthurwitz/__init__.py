"""Exact computation of cut/join/twist weighted Hurwitz numbers by three
independent routes: operator actions, cut-and-join recursions, and
tropical cover enumeration."""

from .action import (JMVariant, SymFunc, act, action_matrix, inner_product,
                     jm_apply, parse_symfunc, structure_coefficient)
from .exact import (BRat, CJTPoly, Poly1, TruncSeries, is_cj_balanced,
                    specialize_b, specialize_point)
from .matchings import (FpfInvolution, StepKind, canonical_involution,
                        classify_step, conjugate, enumerate_fpf,
                        enumerate_type_class, involution_type, make_tau)
from .partitions import content, partitions_of
from .recursions import (b_double_h, connected_from_disconnected,
                         disconnected_from_connected, refined_monotone_H,
                         refined_monotone_N, refined_simple_h,
                         single_monotone_N)
from .tropical import (TropCover, export_dot, polynomiality_probe,
                       single_monotone_tropical, sweep_b_double)

__all__ = [
    "BRat", "CJTPoly", "FpfInvolution", "JMVariant", "Poly1", "StepKind",
    "SymFunc", "TropCover", "TruncSeries", "act", "action_matrix",
    "b_double_h", "canonical_involution", "classify_step",
    "conjugate", "connected_from_disconnected", "content",
    "disconnected_from_connected", "enumerate_fpf", "enumerate_type_class",
    "export_dot", "inner_product", "involution_type", "is_cj_balanced",
    "jm_apply", "make_tau", "parse_symfunc", "partitions_of",
    "polynomiality_probe", "refined_monotone_H", "refined_monotone_N",
    "refined_simple_h", "single_monotone_N", "single_monotone_tropical",
    "specialize_b", "specialize_point", "structure_coefficient",
    "sweep_b_double",
]

__version__ = "0.1.0"
