"""Scalar AWGN instantiation bridged to the discrete engine by quantization.

Links are ideal full-duplex (no self-interference terms): the relay does not
hear itself and the base station pre-cancels its own transmit signal, so

    YR = g_bs_rn * X0 + g_ue2_rn * X2 + Z_rn
    Y0 = g_ue2_bs * X2 + g_rn_bs * XR + Z_bs
    Y1 = g_bs_ue1 * X0 + g_ue2_ue1 * X2 + g_rn_ue1 * XR + Z_ue1

Inputs become small power-constrained constellations; outputs are binned at
equal-probability quantiles of the received marginal (clipped to a window of
+-clip standard deviations), which retains more information per level than
equal-width bins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri

from .channel import ChannelSpec, channel_from_factors
from .errors import ItwrcError

_CDF_GRID = 8193


@dataclass(frozen=True)
class LinkGains:
    """Real amplitude gains of the seven directed links."""

    bs_ue1: float = 0.0
    bs_rn: float = 0.0
    ue2_rn: float = 0.0
    ue2_ue1: float = 0.0
    rn_bs: float = 0.0
    rn_ue1: float = 0.0
    ue2_bs: float = 0.0


@dataclass(frozen=True)
class GaussianItwrc:
    gains: LinkGains
    power_bs: float = 1.0
    power_ue2: float = 1.0
    power_rn: float = 1.0
    noise_bs: float = 1.0
    noise_ue1: float = 1.0
    noise_rn: float = 1.0

    def __post_init__(self) -> None:
        if min(self.power_bs, self.power_ue2, self.power_rn) < 0:
            raise ItwrcError("transmit powers must be nonnegative")
        if min(self.noise_bs, self.noise_ue1, self.noise_rn) <= 0:
            raise ItwrcError("noise variances must be positive")


def awgn_point_to_point_rate(gain: float, power: float, noise: float = 1.0) -> float:
    """0.5 * log2(1 + gain^2 * power / noise) bits per channel use."""
    if noise <= 0:
        raise ItwrcError("noise variance must be positive")
    if power < 0:
        raise ItwrcError("power must be nonnegative")
    return 0.5 * math.log2(1.0 + gain * gain * power / noise)


def constellation(power: float, levels: int, placement: str = "gauss-quantile") -> np.ndarray:
    """Symmetric real constellation scaled to average power under uniform use."""
    if levels < 1:
        raise ItwrcError("need at least one constellation level")
    if levels == 1 or power == 0.0:
        return np.zeros(1)
    if placement == "uniform":
        points = np.linspace(-1.0, 1.0, levels)
    elif placement == "gauss-quantile":
        points = ndtri((np.arange(levels) + 0.5) / levels)
    else:
        raise ItwrcError(f"unknown placement {placement!r}")
    scale = math.sqrt(power / float(np.mean(points**2)))
    return points * scale


def quantile_edges(means: np.ndarray, sigma: float, levels: int, clip: float) -> np.ndarray:
    """Interior bin edges at equal-probability quantiles of the output marginal.

    The marginal is the uniform mixture of N(mean_i, sigma^2); quantiles are
    taken within a window of +-clip mixture standard deviations, and edge
    probabilities j/levels nest exactly when ``levels`` doubles, so
    refinement is a true partition refinement.
    """
    means = np.asarray(means, dtype=float).reshape(-1)
    center = float(means.mean())
    spread = math.sqrt(float(np.mean((means - center) ** 2)) + sigma * sigma)
    lo = center - clip * spread
    hi = center + clip * spread
    grid = np.linspace(lo, hi, _CDF_GRID)
    cdf = ndtr((grid[None, :] - means[:, None]) / sigma).mean(axis=0)
    cdf = (cdf - cdf[0]) / (cdf[-1] - cdf[0])
    targets = np.arange(1, levels) / levels
    return np.interp(targets, cdf, grid)


def binned_rows(means: np.ndarray, sigma: float, edges: np.ndarray) -> np.ndarray:
    """p(bin | mean): Gaussian mass between consecutive edges, tails absorbed."""
    means = np.asarray(means, dtype=float)
    cuts = ndtr((edges[None, :] - means[..., None]) / sigma)
    cum = np.concatenate(
        [np.zeros(means.shape + (1,)), cuts, np.ones(means.shape + (1,))], axis=-1
    )
    rows = np.diff(cum, axis=-1)
    return rows / rows.sum(axis=-1, keepdims=True)


def quantize_to_dm(
    g: GaussianItwrc,
    input_levels: int,
    output_levels: int,
    clip: float,
    placement: str = "gauss-quantile",
) -> ChannelSpec:
    """Discretize the AWGN network into a valid ChannelSpec.

    A node keeps a singleton alphabet when it has zero power or no nonzero
    outgoing gain; a receiver keeps a singleton alphabet when nothing reaches
    it.  This keeps single-link studies small; full scenarios should use
    modest level counts to stay under the dense-state cap downstream.
    """
    if input_levels < 2 or output_levels < 2:
        raise ItwrcError("need at least two input and output levels")
    if clip <= 0:
        raise ItwrcError("clip must be positive")
    ga = g.gains
    hears = {
        "bs": (ga.ue2_bs, ga.rn_bs),
        "ue1": (ga.bs_ue1, ga.ue2_ue1, ga.rn_ue1),
        "rn": (ga.bs_rn, ga.ue2_rn),
    }
    talks = {
        "bs": (ga.bs_ue1, ga.bs_rn),
        "ue2": (ga.ue2_rn, ga.ue2_ue1, ga.ue2_bs),
        "rn": (ga.rn_bs, ga.rn_ue1),
    }
    powers = {"bs": g.power_bs, "ue2": g.power_ue2, "rn": g.power_rn}

    def points_for(node: str) -> np.ndarray:
        if powers[node] == 0.0 or not any(gain != 0.0 for gain in talks[node]):
            return np.zeros(1)
        return constellation(powers[node], input_levels, placement)

    c0 = points_for("bs")
    c2 = points_for("ue2")
    cr = points_for("rn")
    nx0, nx2, nxr = len(c0), len(c2), len(cr)

    def receiver_rows(mean_grid: np.ndarray, sigma: float, active: bool) -> np.ndarray:
        if not active:
            return np.ones(mean_grid.shape + (1,))
        edges = quantile_edges(mean_grid, sigma, output_levels, clip)
        return binned_rows(mean_grid, sigma, edges)

    x0 = c0[:, None, None]
    x2 = c2[None, :, None]
    xr = cr[None, None, :]
    zero = np.zeros((nx0, nx2, nxr))

    mean_y0 = ga.ue2_bs * x2 + ga.rn_bs * xr + zero
    mean_y1 = ga.bs_ue1 * x0 + ga.ue2_ue1 * x2 + ga.rn_ue1 * xr + zero
    mean_yr = ga.bs_rn * x0 + ga.ue2_rn * x2 + zero

    p_y0 = receiver_rows(mean_y0, math.sqrt(g.noise_bs), any(v != 0 for v in hears["bs"]))
    p_y1 = receiver_rows(mean_y1, math.sqrt(g.noise_ue1), any(v != 0 for v in hears["ue1"]))
    p_yr = receiver_rows(mean_yr, math.sqrt(g.noise_rn), any(v != 0 for v in hears["rn"]))
    return channel_from_factors(p_y0, p_y1, p_yr)


def link_transition(
    gain: float,
    power: float,
    noise: float,
    input_levels: int,
    output_levels: int,
    clip: float,
    placement: str = "gauss-quantile",
) -> np.ndarray:
    """Quantized single point-to-point AWGN link as an (in, out) row matrix."""
    points = constellation(power, input_levels, placement)
    means = gain * points
    if np.all(means == means[0]):
        return np.ones((len(points), 1))
    edges = quantile_edges(means, math.sqrt(noise), output_levels, clip)
    return binned_rows(means, math.sqrt(noise), edges)


def dmc_mutual_information(px: np.ndarray, rows: np.ndarray) -> float:
    """I(X; Y) in bits for input pmf ``px`` and row-stochastic ``rows``."""
    px = np.asarray(px, dtype=float)
    joint = px[:, None] * rows
    py = joint.sum(axis=0)
    mask = joint > 0
    ratio = np.where(mask, joint / np.where(mask, px[:, None] * py[None, :], 1.0), 1.0)
    return float((joint[mask] * np.log2(ratio[mask])).sum())


def dmc_capacity(rows: np.ndarray, tol: float = 1e-10, max_iter: int = 20000) -> tuple[float, np.ndarray]:
    """Channel capacity of a DMC by Blahut-Arimoto iteration.

    Returns (capacity in bits, optimal input pmf).
    """
    rows = np.asarray(rows, dtype=float)
    n = rows.shape[0]
    px = np.full(n, 1.0 / n)
    log_rows = np.where(rows > 0, np.log(rows), 0.0)
    for _ in range(max_iter):
        py = px @ rows
        with np.errstate(divide="ignore", invalid="ignore"):
            divergence = (rows * (log_rows - np.where(py > 0, np.log(py), 0.0))).sum(axis=1)
        weights = px * np.exp(divergence)
        total = weights.sum()
        lower = math.log(total)
        upper = float(divergence.max())
        px = weights / total
        if upper - lower < tol * math.log(2):
            break
    return dmc_mutual_information(px, rows), px
