"""Fences, circular fences and gates: ideals, filters and their rank sequences."""

from .bijections import (
    Phi,
    Phi_bar,
    Phi_bar_inverse,
    Phi_inverse,
    TraceStep,
    block_structure,
    phi,
    phi_bar,
    phi_bar_inverse,
    phi_inverse,
    phi_sequence,
)
from .chains import (
    ChainDecomposition,
    SaturatedChain,
    classify_cd,
    lcd,
    linear_extensions,
    search_extensions,
)
from .encodings import (
    Encoding,
    EncodingError,
    circular_filter,
    circular_ideal,
    decode,
    encode_filter,
    encode_ideal,
    fence_filter,
    fence_ideal,
    format_encoding,
    gate_filter,
    gate_ideal,
    is_valid,
    reverse,
    validate,
)
from .poset import (
    Composition,
    InvalidComposition,
    ParityError,
    Poset,
    alpha_delta,
    build_circular_fence,
    build_fence,
    build_gate,
    compositions,
    compositions_up_to,
    dual,
    is_filter,
    is_ideal,
)
from .ranks import (
    RankSequence,
    classify,
    enumerate_filters,
    enumerate_ideals,
    fence_rank_sequence,
    predicted_heavy_kind,
    rank_sequence,
)
from .rowmotion import check_mesic, orbits, rho

__version__ = "0.1.0"
