"""Seaweed Lie algebras: meander combinatorics, explicit regular functionals,
and exact verification of kernel dimensions over the rationals."""

from .algebra import (
    GL,
    TYPE_A,
    TYPE_B,
    TYPE_C,
    BasisElement,
    SeaweedSpec,
    admissible_positions,
    basis,
    dimension,
    format_spec,
    parse_spec,
)
from .configuration import configurations, core_and_peaks
from .functionals import (
    Functional,
    PeakPolicy,
    anti_transpose,
    base_functional,
    construct,
    construct_A,
    construct_B,
    construct_C,
    construct_gl,
    rotate,
    shift,
    transpose,
)
from .kernel import (
    RelationsMatrix,
    assemble_system,
    block_structure_check,
    fn_closed_form_check,
    generic_index_oracle,
    is_regular,
    kernel_dim,
    relations_matrix,
)
from .meander import (
    Meander,
    build_full_meander,
    build_meander,
    build_shortened_meander,
    index,
)
from .winding import (
    HomotopyType,
    Move,
    Signature,
    component_meander,
    homotopy_type,
    index_from_homotopy,
    parse_signature,
    reduced_homotopy_type,
    signature,
    signature_str,
    wind_down_step,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
