"""Exact slopes of U_2 on overconvergent Hilbert modular forms over Q(sqrt 5), level U_0(4)."""
from .basis import FinitePart, MonomialIndex, WeightCharacter, pairing, weight_tuple
from .exactfield import INF, CyclotomicRational, ExtendedInt, val2
from .newton import (
    CharSeries,
    SlopeMultiset,
    char_series,
    hodge_polygon,
    newton_polygon,
    np_of_blocks,
    serre_coefficients,
    slopes,
    stable_prefix,
)
from .recipe import predict_slopes, verify_theorem, weight_independence_check
from .upmatrix import (
    GeneratorConstants,
    block_diagonal,
    build_truncation,
    class_membership,
    sample_class_member,
    valuation_matrix,
)

__version__ = "0.1.0"
