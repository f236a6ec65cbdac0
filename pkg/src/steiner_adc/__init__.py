"""Strong Steiner complexes: construction, checking, nerves and identities."""
from .constructions import (DualitySelector, PushoutResult, SpanOfMaps, degreewise_pushout,
                            direct_sum, dual, iso_search, suspend, tensor, wedge)
from .core import (ADCMap, BasedADC, ChainElement, CoefficientOverflow, MapShapeError,
                   StructureError, Violation, compose_maps, validate_complex, validate_map)
from .io import ParseError, export_dot, parse_adc, serialize_adc
from .nerve import NerveCell, atom, axiom_suite, compose, enumerate_cells, validate_cell
from .shapes import cube, globe, oriental, theta, unit
from .steiner_check import (SearchBudgetExceeded, automorphisms, basis_preorder,
                            is_strong_steiner, is_total_order, strongly_loop_free, unital)

__version__ = "0.1.0"

__all__ = [
    "ADCMap",
    "BasedADC",
    "ChainElement",
    "CoefficientOverflow",
    "DualitySelector",
    "MapShapeError",
    "NerveCell",
    "ParseError",
    "PushoutResult",
    "SearchBudgetExceeded",
    "SpanOfMaps",
    "StructureError",
    "Violation",
    "atom",
    "automorphisms",
    "axiom_suite",
    "basis_preorder",
    "compose",
    "compose_maps",
    "cube",
    "degreewise_pushout",
    "direct_sum",
    "dual",
    "enumerate_cells",
    "export_dot",
    "globe",
    "is_strong_steiner",
    "is_total_order",
    "iso_search",
    "oriental",
    "parse_adc",
    "serialize_adc",
    "strongly_loop_free",
    "suspend",
    "tensor",
    "theta",
    "unit",
    "unital",
    "validate_cell",
    "validate_complex",
    "validate_map",
    "wedge",
]
