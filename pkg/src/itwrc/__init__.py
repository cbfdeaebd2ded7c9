"""Rate regions and cut-set bounds for the interference two-way relay channel.

A library + CLI for computing, optimizing, and cross-verifying achievable
rate regions of a three-end-node interference two-way relay channel over
discrete memoryless channels, with a Gaussian instantiation bridged by
quantization.
"""

__version__ = "0.1.0"

from .channel import ChannelSpec, assemble_joint, build_twrc_reduction, validate_channel
from .polytope import (
    RateConstraint,
    RatePolytope,
    RegionFrontier,
    contains,
    fm_eliminate,
    frontier_union,
    substitute,
    vertices_2d,
)
from .prob import JointPmf, cond_mutual_information, entropy, marginalize
from .schemes import (
    DfNoRsInput,
    DfRsInput,
    PdfCfEvaluation,
    PdfCfInput,
    PureCfInput,
    cutset_rectangle,
    df_nors_region,
    df_rs_region,
    df_rs_split_system,
    pdfcf_feasible,
    pdfcf_region,
    pdfcf_split_system,
    pure_cf_region,
)
from .search import SearchBudget, maximize_weighted_sum, sample_input, trace_frontier
from .gaussian import GaussianItwrc, LinkGains, awgn_point_to_point_rate, quantize_to_dm

__all__ = [
    "ChannelSpec",
    "DfNoRsInput",
    "DfRsInput",
    "GaussianItwrc",
    "JointPmf",
    "LinkGains",
    "PdfCfEvaluation",
    "PdfCfInput",
    "PureCfInput",
    "RateConstraint",
    "RatePolytope",
    "RegionFrontier",
    "SearchBudget",
    "assemble_joint",
    "awgn_point_to_point_rate",
    "build_twrc_reduction",
    "cond_mutual_information",
    "contains",
    "cutset_rectangle",
    "df_nors_region",
    "df_rs_region",
    "df_rs_split_system",
    "entropy",
    "fm_eliminate",
    "frontier_union",
    "marginalize",
    "maximize_weighted_sum",
    "pdfcf_feasible",
    "pdfcf_region",
    "pdfcf_split_system",
    "pure_cf_region",
    "quantize_to_dm",
    "sample_input",
    "substitute",
    "trace_frontier",
    "validate_channel",
    "vertices_2d",
]
