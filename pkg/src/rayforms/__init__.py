"""Extended form class groups C_N(d_K) of imaginary quadratic fields."""

from .arith import Mat2Z, ResiduePair, crt, euler_phi, ext_gcd, hnf_lattice, kronecker, sl2_lift
from .classgroup import (
    ClassGroup,
    FormClassRep,
    enumerate_classes,
    order_via_pairs,
    order_via_units,
    project,
    ring_class_group,
)
from .galois import ActionDatum, action_datum, frame_matrix
from .jsonio import group_to_json, parse_group
from .forms import BQF, apply_matrix, make_form, reduce, root
from .quadfield import Field, FracIdeal, QuadNum, make_field

__all__ = [
    "ActionDatum",
    "action_datum",
    "frame_matrix",
    "group_to_json",
    "parse_group",
    "BQF",
    "ClassGroup",
    "Field",
    "FormClassRep",
    "FracIdeal",
    "Mat2Z",
    "QuadNum",
    "ResiduePair",
    "apply_matrix",
    "crt",
    "enumerate_classes",
    "euler_phi",
    "ext_gcd",
    "hnf_lattice",
    "kronecker",
    "make_field",
    "make_form",
    "order_via_pairs",
    "order_via_units",
    "project",
    "reduce",
    "ring_class_group",
    "root",
    "sl2_lift",
]
