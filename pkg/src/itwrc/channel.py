"""The three-end-node interference two-way relay channel law.

A channel is the conditional law p(y0, y1, yR | x0, x2, xR) over finite
alphabets, stored as a dense tensor with axis order (x0, x2, xR, y0, y1, yR).
Node conventions: the base station transmits X0 and receives Y0, the uplink
user transmits X2, the downlink user receives Y1, and the relay transmits XR
and receives YR.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import AlphabetMismatch, InvalidChannel
from .prob import NORMALIZATION_TOL, JointPmf

# Canonical variable labels used in every assembled joint.
INPUT_VARS = ("X0", "X2", "XR")
OUTPUT_VARS = ("Y0", "Y1", "YR")

# Row sums may drift by this much before a channel is considered invalid.
ROW_SUM_TOL = 1e-12


@dataclass(frozen=True)
class ChannelSpec:
    """Transition law p(y0, y1, yR | x0, x2, xR).

    ``transition`` has shape (|X0|, |X2|, |XR|, |Y0|, |Y1|, |YR|).  Numeric
    validity (nonnegative entries, unit row sums) is checked by
    :func:`validate_channel`, not at construction, so defective tensors can
    still be loaded and reported on.
    """

    transition: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.transition, dtype=float)
        if t.ndim != 6:
            raise InvalidChannel(
                f"transition tensor needs 6 axes (x0, x2, xR, y0, y1, yR), got {t.ndim}"
            )
        t = t.copy()
        t.setflags(write=False)
        object.__setattr__(self, "transition", t)

    @property
    def input_sizes(self) -> tuple[int, int, int]:
        return self.transition.shape[:3]

    @property
    def output_sizes(self) -> tuple[int, int, int]:
        return self.transition.shape[3:]


@dataclass(frozen=True)
class ChannelViolation:
    kind: str  # "negative_entry" | "row_sum"
    index: tuple[int, ...]
    value: float


@dataclass(frozen=True)
class ChannelValidation:
    violations: tuple[ChannelViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_channel(spec: ChannelSpec) -> ChannelValidation:
    """Report every nonnegativity / row-sum violation (empty report iff valid)."""
    t = spec.transition
    violations: list[ChannelViolation] = []
    negative = np.argwhere(t < 0.0)
    for idx in negative:
        index = tuple(int(i) for i in idx)
        violations.append(ChannelViolation("negative_entry", index, float(t[index])))
    row_sums = t.sum(axis=(3, 4, 5))
    bad_rows = np.argwhere(np.abs(row_sums - 1.0) > ROW_SUM_TOL)
    for idx in bad_rows:
        index = tuple(int(i) for i in idx)
        violations.append(ChannelViolation("row_sum", index, float(row_sums[index])))
    return ChannelValidation(tuple(violations))


def require_valid(spec: ChannelSpec) -> ChannelSpec:
    report = validate_channel(spec)
    if not report.ok:
        first = report.violations[0]
        raise InvalidChannel(
            f"channel has {len(report.violations)} violation(s); first: "
            f"{first.kind} at {first.index} (value {first.value!r})"
        )
    return spec


def assemble_joint(spec: ChannelSpec, input_law: JointPmf) -> JointPmf:
    """Joint over inputs, auxiliaries, and outputs: input law times channel rows.

    ``input_law`` must contain X0, X2, XR (any extra variables are carried
    along).  The result's variables are the input law's followed by Y0, Y1,
    YR.  The product is renormalized to absorb accumulated float drift; a
    drift beyond 1e-9 raises.
    """
    require_valid(spec)
    for v in INPUT_VARS:
        if v not in input_law.variables:
            raise AlphabetMismatch(f"input law is missing required variable {v!r}")
    for v in OUTPUT_VARS:
        if v in input_law.variables:
            raise AlphabetMismatch(f"input law already contains output variable {v!r}")
    for v, size in zip(INPUT_VARS, spec.input_sizes):
        declared = input_law.alphabet_sizes[input_law.axis(v)]
        if declared != size:
            raise AlphabetMismatch(
                f"alphabet of {v} is {declared} in the input law but {size} in the channel"
            )
    others = [v for v in input_law.variables if v not in INPUT_VARS]
    ordered = tensor_in_order(input_law, others + list(INPUT_VARS))
    probs = ordered[..., None, None, None] * spec.transition
    total = probs.sum()
    if abs(total - 1.0) > 1e-9:
        raise InvalidChannel(f"assembled joint sums to {total!r}")
    probs = probs / total
    variables = tuple(others) + INPUT_VARS + OUTPUT_VARS
    return JointPmf(variables, probs)


def tensor_in_order(joint: JointPmf, order: Sequence[str]) -> np.ndarray:
    """The probability tensor transposed into the requested variable order."""
    if set(order) != set(joint.variables) or len(order) != len(joint.variables):
        raise AlphabetMismatch("order must be a permutation of the joint's variables")
    axes = [joint.axis(v) for v in order]
    return np.transpose(joint.probs, axes)


def build_twrc_reduction(base: ChannelSpec) -> ChannelSpec:
    """Remove both direct user-to-endpoint links, rerouting them via the relay.

    The returned channel makes Y0 and Y1 depend on XR alone: the destination
    that used to hear a source directly now hears the relay's transmit symbol
    through the same link law (source slot pinned to xR, the destination's
    own transmit averaged out).  The relay observation law is kept as-is and
    outputs are conditionally independent given the inputs, so the Markov
    chains X2 - (XR, YR) - Y0 and X0 - (XR, YR) - Y1 hold by construction.
    """
    require_valid(base)
    t = base.transition
    nx0, nx2, nxr = base.input_sizes
    ny0, ny1, nyr = base.output_sizes

    p_y0 = t.sum(axis=(4, 5))  # (x0, x2, xR, y0)
    p_y1 = t.sum(axis=(3, 5))  # (x0, x2, xR, y1)
    p_yr = t.sum(axis=(3, 4))  # (x0, x2, xR, yR)

    # BS now listens to the relay through the former UE2 -> BS link.
    q_y0 = np.zeros((nxr, ny0))
    for xr in range(nxr):
        q_y0[xr] = p_y0[:, xr % nx2, xr, :].mean(axis=0)
    # UE1 now listens to the relay through the former BS -> UE1 link.
    q_y1 = np.zeros((nxr, ny1))
    for xr in range(nxr):
        q_y1[xr] = p_y1[xr % nx0, :, xr, :].mean(axis=0)

    new_t = (
        q_y0[None, None, :, :, None, None]
        * q_y1[None, None, :, None, :, None]
        * p_yr[:, :, :, None, None, :]
    )
    return require_valid(ChannelSpec(new_t))


def composite_size(sizes: Sequence[int]) -> int:
    """Alphabet size of a symbol packing several symbols into one."""
    return int(np.prod([int(n) for n in sizes]))


def composite_index(sizes: Sequence[int], symbols: Sequence[int]) -> int:
    """Row-major packing: (s0, s1, ...) -> s0 * prod(sizes[1:]) + ...

    This is the documented index mapping for composite outputs such as a
    relay observing both transmit symbols as one output letter.
    """
    return int(np.ravel_multi_index(tuple(symbols), tuple(sizes)))


def channel_from_factors(
    p_y0: np.ndarray, p_y1: np.ndarray, p_yr: np.ndarray
) -> ChannelSpec:
    """Channel with conditionally independent outputs.

    Each factor has shape (|X0|, |X2|, |XR|, |Y|) and gives that receiver's
    conditional law given all three inputs.
    """
    p_y0 = np.asarray(p_y0, dtype=float)
    p_y1 = np.asarray(p_y1, dtype=float)
    p_yr = np.asarray(p_yr, dtype=float)
    if not (p_y0.shape[:3] == p_y1.shape[:3] == p_yr.shape[:3]):
        raise AlphabetMismatch("output factors disagree on input alphabet sizes")
    t = (
        p_y0[:, :, :, :, None, None]
        * p_y1[:, :, :, None, :, None]
        * p_yr[:, :, :, None, None, :]
    )
    return ChannelSpec(t)


def noiseless_orthogonal(nx0: int = 2, nx2: int = 2, nxr: int = 2) -> ChannelSpec:
    """Y1 = X0, Y0 = X2, YR = (X0, X2) packed; XR is ignored.

    The canonical sanity channel: both messages go through clean one-bit-per
    -symbol pipes and the relay sees both inputs losslessly.
    """
    nyr = composite_size((nx0, nx2))
    p_y0 = np.zeros((nx0, nx2, nxr, nx2))
    p_y1 = np.zeros((nx0, nx2, nxr, nx0))
    p_yr = np.zeros((nx0, nx2, nxr, nyr))
    for x0 in range(nx0):
        for x2 in range(nx2):
            packed = composite_index((nx0, nx2), (x0, x2))
            p_y0[x0, x2, :, x2] = 1.0
            p_y1[x0, x2, :, x0] = 1.0
            p_yr[x0, x2, :, packed] = 1.0
    return channel_from_factors(p_y0, p_y1, p_yr)


def useless_channel(
    input_sizes: Sequence[int] = (2, 2, 2), output_sizes: Sequence[int] = (2, 2, 2)
) -> ChannelSpec:
    """All outputs uniform and independent of all inputs."""
    shape = tuple(input_sizes) + tuple(output_sizes)
    t = np.full(shape, 1.0 / np.prod(output_sizes))
    return ChannelSpec(t)


def random_channel(
    rng: np.random.Generator,
    input_sizes: Sequence[int] = (2, 2, 2),
    output_sizes: Sequence[int] = (2, 2, 2),
) -> ChannelSpec:
    """Dirichlet(1,...,1) rows; useful for randomized verification sweeps."""
    rows = int(np.prod(input_sizes))
    cols = int(np.prod(output_sizes))
    t = rng.dirichlet(np.ones(cols), size=rows)
    return ChannelSpec(t.reshape(tuple(input_sizes) + tuple(output_sizes)))
