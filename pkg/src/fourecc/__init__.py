"""3-edge cuts and 4-edge-connected components of multigraphs."""

from .cuts import Cut3, EnumStats, NotThreeEdgeConnectedError, all_3cuts, type3_cuts
from .decompose import SplitGraph, four_ecc, four_ecc_3ec, is_3ec, kecc, three_ecc, two_ecc
from .dfs import DfsFrame, NotConnectedError, build_dfs_frame
from .graph import (
    GraphFormatError,
    Multigraph,
    Partition,
    connected_components,
    contract_classes,
    format_graph,
    generate_3ec_graph,
    generate_random_graph,
    parse_graph,
)
from .mpoints import InvariantViolation, MPointTable, compute_low_m, compute_m_points

__all__ = [
    "Cut3",
    "DfsFrame",
    "EnumStats",
    "GraphFormatError",
    "InvariantViolation",
    "MPointTable",
    "Multigraph",
    "NotConnectedError",
    "NotThreeEdgeConnectedError",
    "Partition",
    "SplitGraph",
    "all_3cuts",
    "build_dfs_frame",
    "compute_low_m",
    "compute_m_points",
    "connected_components",
    "contract_classes",
    "format_graph",
    "four_ecc",
    "four_ecc_3ec",
    "generate_3ec_graph",
    "generate_random_graph",
    "is_3ec",
    "kecc",
    "parse_graph",
    "three_ecc",
    "two_ecc",
    "type3_cuts",
]
