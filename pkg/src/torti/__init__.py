"""Invariants of torti-rational knots and the 2-bridge links they come from."""

from .bridge import alexander_bridge, alexander_bridge_oracle, bridge_polynomial, verify_structure
from .cfrac import (
    Rational,
    StandardCFrac,
    canonical_decomposition,
    dual,
    evaluate,
    expand_even,
    parse_fraction,
)
from .errors import (
    ConsistencyError,
    InputError,
    TortiError,
    UnsupportedHypothesisError,
    UsageError,
)
from .knot import (
    TortiKnot,
    alexander_knot,
    classify_genus_one,
    gamma_series,
    genus,
    invariant_report,
    is_fibred,
    is_monic,
    is_unknot,
    reduce,
    satellite_invariants,
)
from .polynomial import BiLaurent, UniLaurent

__version__ = "0.1.0"
