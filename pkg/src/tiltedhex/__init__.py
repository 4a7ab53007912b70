"""Exact tiling counts for tilted halved hexagons, checked against a brute-force oracle."""

from .closedform import (
    HalvedHexParams,
    HexParams,
    InvalidParams,
    NonIntegerResult,
    SemiHexParams,
    TiltedParams,
    count_halved_hexagon,
    count_hexagon,
    count_semihexagon,
    count_tilted,
    phi,
)
from .exactnum import DivisionByZero, PoleError, pochhammer, product_ratio
from .lattice import (
    Lozenge,
    MatchGraph,
    Region,
    Tiling,
    TriCell,
    build_halved_hexagon,
    build_hexagon,
    build_semihexagon,
    build_tilted_region,
    congruent,
    dual_graph,
    remove_forced,
)
from .oracle import check_kuo_graph, check_kuo_region, count_matchings, enumerate_tilings

__version__ = "0.1.0"
