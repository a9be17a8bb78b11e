from .rings import PARAMETER, BlockId, PolyRing, Variable
from .orders import DEGREVLEX, LEX, MonomialOrder
from .groebner import buchberger, computation_deadline, is_groebner, normal_form
from .ideals import (
    Ideal,
    dimension,
    eliminate,
    hilbert_value,
    ideal_equal_radical,
    intersect,
    multigraded_hilbert,
    radical_contains,
    saturate,
    saturate_by_variable_ideal,
)
from .syntax import format_laurent, format_polynomial, parse_laurent, parse_polynomial

__all__ = [
    "PARAMETER",
    "BlockId",
    "PolyRing",
    "Variable",
    "DEGREVLEX",
    "LEX",
    "MonomialOrder",
    "buchberger",
    "computation_deadline",
    "is_groebner",
    "normal_form",
    "Ideal",
    "dimension",
    "eliminate",
    "hilbert_value",
    "ideal_equal_radical",
    "intersect",
    "multigraded_hilbert",
    "radical_contains",
    "saturate",
    "saturate_by_variable_ideal",
    "format_laurent",
    "format_polynomial",
    "parse_laurent",
    "parse_polynomial",
]
