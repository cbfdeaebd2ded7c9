"""Rate-region evaluators for a fixed channel and fixed coding-scheme input.

Four region families are computed from assembled joint distributions:

* the cut-set outer rectangle for a (possibly dependent) input law,
* decode-and-forward without rate splitting,
* decode-and-forward with rate splitting at the uplink user,
* mixed partial decode-and-forward plus compress-and-forward (with a pure
  compress-and-forward special case).

For the two schemes whose published two-rate form is obtained by eliminating
split rates, the raw constraint systems over the split rates are exposed as
well (``df_rs_split_system``, ``pdfcf_split_system``) so the elimination can
be re-done mechanically and cross-checked against the directly-coded region.

Constraint labels name the decoding step that produced each bound:
``relay{...}`` for joint decoding at the relay, ``bs{...}`` / ``ue1{...}``
for the destination nodes, ``direct{...}`` for the compression-aided direct
links, with the braces listing which message parts are involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .channel import ChannelSpec, assemble_joint, require_valid, tensor_in_order
from .errors import AlphabetMismatch, SchemeInputError
from .polytope import RateConstraint, RatePolytope, nonneg_constraints
from .prob import NORMALIZATION_TOL, EntropyCache, JointPmf

# Slack applied to the compress-and-forward feasibility gate.
FEASIBILITY_TOL = 1e-10


def _check_row_stochastic(name: str, rows: np.ndarray) -> None:
    rows = np.asarray(rows, dtype=float)
    if rows.min() < 0.0:
        raise SchemeInputError(f"{name} has a negative entry")
    sums = rows.sum(axis=-1)
    if np.abs(sums - 1.0).max() > NORMALIZATION_TOL:
        raise SchemeInputError(f"{name} rows must sum to 1 (max drift {np.abs(sums - 1.0).max()})")


def _check_map(name: str, table: np.ndarray, target_size: int) -> np.ndarray:
    table = np.asarray(table)
    if not np.issubdtype(table.dtype, np.integer):
        raise SchemeInputError(f"{name} must be an integer lookup table")
    if table.size and (table.min() < 0 or table.max() >= target_size):
        raise SchemeInputError(f"{name} maps outside the target alphabet of size {target_size}")
    return table


def _one_hot(table: np.ndarray, size: int) -> np.ndarray:
    out = np.zeros(table.shape + (size,))
    np.put_along_axis(out, table[..., None], 1.0, axis=-1)
    return out


# ---------------------------------------------------------------------------
# Scheme inputs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DfNoRsInput:
    """Decode-and-forward input without rate splitting.

    ``u0_x0`` is a joint pmf over (U0, X0), ``u2_x2`` over (U2, X2), and
    ``relay_map[u0, u2]`` is the relay's deterministic transmit symbol.
    """

    u0_x0: np.ndarray
    u2_x2: np.ndarray
    relay_map: np.ndarray

    def validate(self, spec: ChannelSpec) -> None:
        nx0, nx2, nxr = spec.input_sizes
        u0_x0 = np.asarray(self.u0_x0, dtype=float)
        u2_x2 = np.asarray(self.u2_x2, dtype=float)
        if u0_x0.ndim != 2 or u0_x0.shape[1] != nx0:
            raise AlphabetMismatch(f"u0_x0 must have shape (|U0|, {nx0})")
        if u2_x2.ndim != 2 or u2_x2.shape[1] != nx2:
            raise AlphabetMismatch(f"u2_x2 must have shape (|U2|, {nx2})")
        _check_row_stochastic("u0_x0 (as a joint)", u0_x0.reshape(1, -1))
        _check_row_stochastic("u2_x2 (as a joint)", u2_x2.reshape(1, -1))
        table = _check_map("relay_map", self.relay_map, nxr)
        if table.shape != (u0_x0.shape[0], u2_x2.shape[0]):
            raise SchemeInputError("relay_map must be indexed by (u0, u2)")


@dataclass(frozen=True)
class DfRsInput:
    """Decode-and-forward input with rate splitting at the uplink user.

    The uplink message is split into a common and a private part carried by
    (U2c, X2c) and (U2p, X2p); ``x2_map`` merges the two codeword symbols
    into the transmitted X2 and ``relay_map`` is the relay's deterministic
    function of the resolved message cells (u0, u2c, u2p).
    """

    u0: np.ndarray
    x0_given_u0: np.ndarray
    u2c: np.ndarray
    x2c_given_u2c: np.ndarray
    u2p: np.ndarray
    x2p_given_u2p: np.ndarray
    x2_map: np.ndarray
    relay_map: np.ndarray

    def validate(self, spec: ChannelSpec) -> None:
        nx0, nx2, nxr = spec.input_sizes
        u0 = np.asarray(self.u0, dtype=float)
        u2c = np.asarray(self.u2c, dtype=float)
        u2p = np.asarray(self.u2p, dtype=float)
        for name, row in (("u0", u0), ("u2c", u2c), ("u2p", u2p)):
            if row.ndim != 1:
                raise SchemeInputError(f"{name} must be a 1-D pmf")
            _check_row_stochastic(name, row[None, :])
        x0g = np.asarray(self.x0_given_u0, dtype=float)
        x2cg = np.asarray(self.x2c_given_u2c, dtype=float)
        x2pg = np.asarray(self.x2p_given_u2p, dtype=float)
        if x0g.shape[0] != u0.shape[0] or x0g.shape[1] != nx0:
            raise AlphabetMismatch(f"x0_given_u0 must have shape (|U0|, {nx0})")
        if x2cg.shape[0] != u2c.shape[0]:
            raise AlphabetMismatch("x2c_given_u2c rows must be indexed by u2c")
        if x2pg.shape[0] != u2p.shape[0]:
            raise AlphabetMismatch("x2p_given_u2p rows must be indexed by u2p")
        for name, rows in (
            ("x0_given_u0", x0g),
            ("x2c_given_u2c", x2cg),
            ("x2p_given_u2p", x2pg),
        ):
            _check_row_stochastic(name, rows)
        g = _check_map("x2_map", self.x2_map, nx2)
        if g.shape != (x2cg.shape[1], x2pg.shape[1]):
            raise SchemeInputError("x2_map must be indexed by (x2c, x2p)")
        f = _check_map("relay_map", self.relay_map, nxr)
        if f.shape != (u0.shape[0], u2c.shape[0], u2p.shape[0]):
            raise SchemeInputError("relay_map must be indexed by (u0, u2c, u2p)")


@dataclass(frozen=True)
class PdfCfInput:
    """Partial decode-and-forward plus compress-and-forward input.

    Each user superimposes a relay-decoded common layer (U, V) under its
    transmit symbol; the relay transmit law depends on the resolved common
    cells and the relay compresses its observation through the test channel
    ``compress`` with axes (yR, xR, u0, u2, v0, v2, yhat).
    """

    u0: np.ndarray
    v0_given_u0: np.ndarray
    x0_given_v0: np.ndarray
    u2: np.ndarray
    v2_given_u2: np.ndarray
    x2_given_v2: np.ndarray
    xr_given_u0_u2: np.ndarray
    compress: np.ndarray

    @property
    def yhat_size(self) -> int:
        return np.asarray(self.compress).shape[-1]

    def validate(self, spec: ChannelSpec) -> None:
        nx0, nx2, nxr = spec.input_sizes
        nyr = spec.output_sizes[2]
        u0 = np.asarray(self.u0, dtype=float)
        u2 = np.asarray(self.u2, dtype=float)
        for name, row in (("u0", u0), ("u2", u2)):
            if row.ndim != 1:
                raise SchemeInputError(f"{name} must be a 1-D pmf")
            _check_row_stochastic(name, row[None, :])
        v0g = np.asarray(self.v0_given_u0, dtype=float)
        x0g = np.asarray(self.x0_given_v0, dtype=float)
        v2g = np.asarray(self.v2_given_u2, dtype=float)
        x2g = np.asarray(self.x2_given_v2, dtype=float)
        xrg = np.asarray(self.xr_given_u0_u2, dtype=float)
        comp = np.asarray(self.compress, dtype=float)
        if v0g.shape[0] != u0.shape[0]:
            raise AlphabetMismatch("v0_given_u0 rows must be indexed by u0")
        if x0g.shape != (v0g.shape[1], nx0):
            raise AlphabetMismatch(f"x0_given_v0 must have shape (|V0|, {nx0})")
        if v2g.shape[0] != u2.shape[0]:
            raise AlphabetMismatch("v2_given_u2 rows must be indexed by u2")
        if x2g.shape != (v2g.shape[1], nx2):
            raise AlphabetMismatch(f"x2_given_v2 must have shape (|V2|, {nx2})")
        if xrg.shape != (u0.shape[0], u2.shape[0], nxr):
            raise AlphabetMismatch("xr_given_u0_u2 must have shape (|U0|, |U2|, |XR|)")
        expected = (nyr, nxr, u0.shape[0], u2.shape[0], v0g.shape[1], v2g.shape[1])
        if comp.shape[:-1] != expected:
            raise AlphabetMismatch(
                f"compress must have axes (yR, xR, u0, u2, v0, v2, yhat); expected {expected} + (yhat,)"
            )
        for name, rows in (
            ("v0_given_u0", v0g),
            ("x0_given_v0", x0g),
            ("v2_given_u2", v2g),
            ("x2_given_v2", x2g),
            ("xr_given_u0_u2", xrg.reshape(-1, nxr)),
            ("compress", comp.reshape(-1, comp.shape[-1])),
        ):
            _check_row_stochastic(name, rows)


@dataclass(frozen=True)
class PureCfInput:
    """Pure compress-and-forward: independent inputs, test channel p(yhat | yR, xR)."""

    x0: np.ndarray
    x2: np.ndarray
    xr: np.ndarray
    compress: np.ndarray

    @property
    def yhat_size(self) -> int:
        return np.asarray(self.compress).shape[-1]

    def validate(self, spec: ChannelSpec) -> None:
        nx0, nx2, nxr = spec.input_sizes
        nyr = spec.output_sizes[2]
        for name, row, size in (
            ("x0", np.asarray(self.x0, dtype=float), nx0),
            ("x2", np.asarray(self.x2, dtype=float), nx2),
            ("xr", np.asarray(self.xr, dtype=float), nxr),
        ):
            if row.shape != (size,):
                raise AlphabetMismatch(f"{name} must be a pmf of length {size}")
            _check_row_stochastic(name, row[None, :])
        comp = np.asarray(self.compress, dtype=float)
        if comp.shape[:-1] != (nyr, nxr):
            raise AlphabetMismatch("compress must have axes (yR, xR, yhat)")
        _check_row_stochastic("compress", comp.reshape(-1, comp.shape[-1]))


@dataclass(frozen=True)
class PdfCfEvaluation:
    """Outcome of evaluating the compress-and-forward style schemes.

    ``feasible`` records whether the compression constraint holds
    (``compression_lhs <= forward_rhs`` within FEASIBILITY_TOL).  When the
    region was requested and the input is infeasible, ``region`` is the
    explicit empty marker.  ``bin_rate`` is the covering rate of the relay's
    quantization codebook and ``forward_rate`` the rate at which the relay
    can convey its bin index to the weaker destination.
    """

    feasible: bool
    compression_lhs: float
    forward_rhs: float
    bin_rate: float
    forward_rate: float
    region: RatePolytope | None = None


# ---------------------------------------------------------------------------
# Joint assembly
# ---------------------------------------------------------------------------


def df_nors_joint(spec: ChannelSpec, input: DfNoRsInput) -> JointPmf:
    input.validate(spec)
    u0_x0 = np.asarray(input.u0_x0, dtype=float)
    u2_x2 = np.asarray(input.u2_x2, dtype=float)
    f = _one_hot(np.asarray(input.relay_map), spec.input_sizes[2])
    probs = np.einsum("ab,cd,ace->abcde", u0_x0, u2_x2, f)
    law = JointPmf(("U0", "X0", "U2", "X2", "XR"), probs)
    return assemble_joint(spec, law)


def df_rs_joint(spec: ChannelSpec, input: DfRsInput) -> JointPmf:
    input.validate(spec)
    b0 = np.asarray(input.u0, dtype=float)[:, None] * np.asarray(input.x0_given_u0, dtype=float)
    b2c = np.asarray(input.u2c, dtype=float)[:, None] * np.asarray(input.x2c_given_u2c, dtype=float)
    b2p = np.asarray(input.u2p, dtype=float)[:, None] * np.asarray(input.x2p_given_u2p, dtype=float)
    g = _one_hot(np.asarray(input.x2_map), spec.input_sizes[1])
    f = _one_hot(np.asarray(input.relay_map), spec.input_sizes[2])
    probs = np.einsum("ab,cd,ef,dfg,aceh->abcdefgh", b0, b2c, b2p, g, f)
    law = JointPmf(("U0", "X0", "U2c", "X2c", "U2p", "X2p", "X2", "XR"), probs)
    return assemble_joint(spec, law)


def pdfcf_joint(spec: ChannelSpec, input: PdfCfInput) -> JointPmf:
    input.validate(spec)
    b0 = np.einsum(
        "a,av,vx->avx",
        np.asarray(input.u0, dtype=float),
        np.asarray(input.v0_given_u0, dtype=float),
        np.asarray(input.x0_given_v0, dtype=float),
    )
    b2 = np.einsum(
        "b,bw,wy->bwy",
        np.asarray(input.u2, dtype=float),
        np.asarray(input.v2_given_u2, dtype=float),
        np.asarray(input.x2_given_v2, dtype=float),
    )
    probs = np.einsum("avx,bwy,abr->avxbwyr", b0, b2, np.asarray(input.xr_given_u0_u2, dtype=float))
    law = JointPmf(("U0", "V0", "X0", "U2", "V2", "X2", "XR"), probs)
    assembled = assemble_joint(spec, law)
    base_vars = ("U0", "U2", "V0", "V2", "X0", "X2", "XR", "Y0", "Y1", "YR")
    base = tensor_in_order(assembled, base_vars)
    comp = np.asarray(input.compress, dtype=float)  # (yR, xR, u0, u2, v0, v2, yhat)
    full = np.einsum("abcdefghij,jgabcdk->abcdefghijk", base, comp)
    return JointPmf(base_vars + ("YH",), full)


def pure_cf_joint(spec: ChannelSpec, input: PureCfInput) -> JointPmf:
    input.validate(spec)
    probs = np.einsum(
        "a,b,c->abc",
        np.asarray(input.x0, dtype=float),
        np.asarray(input.x2, dtype=float),
        np.asarray(input.xr, dtype=float),
    )
    law = JointPmf(("X0", "X2", "XR"), probs)
    assembled = assemble_joint(spec, law)
    base_vars = ("X0", "X2", "XR", "Y0", "Y1", "YR")
    base = tensor_in_order(assembled, base_vars)
    comp = np.asarray(input.compress, dtype=float)  # (yR, xR, yhat)
    full = np.einsum("abcdef,fcg->abcdefg", base, comp)
    return JointPmf(base_vars + ("YH",), full)


# ---------------------------------------------------------------------------
# Cut-set outer bound
# ---------------------------------------------------------------------------


def cutset_terms(spec: ChannelSpec, input_law: JointPmf) -> dict[str, float]:
    if set(input_law.variables) != {"X0", "X2", "XR"}:
        raise AlphabetMismatch("cut-set input law must be over exactly (X0, X2, XR)")
    cache = EntropyCache(assemble_joint(spec, input_law))
    mi = cache.mutual_information
    return {
        "dl sources-cut": mi({"X0"}, {"YR", "Y1"}, {"XR", "X2"}),
        "dl sinks-cut": mi({"X0", "XR"}, {"Y1"}, {"X2"}),
        "ul sources-cut": mi({"X2"}, {"YR", "Y0"}, {"XR", "X0"}),
        "ul sinks-cut": mi({"X2", "XR"}, {"Y0"}, {"X0"}),
    }


def cutset_rectangle(spec: ChannelSpec, input_law: JointPmf) -> tuple[float, float]:
    """Per-distribution outer rectangle (R_DL, R_UL): min over the two cuts."""
    terms = cutset_terms(spec, input_law)
    r_dl = min(terms["dl sources-cut"], terms["dl sinks-cut"])
    r_ul = min(terms["ul sources-cut"], terms["ul sinks-cut"])
    return r_dl, r_ul


def cutset_region(spec: ChannelSpec, input_law: JointPmf) -> RatePolytope:
    terms = cutset_terms(spec, input_law)
    one = Fraction(1)
    constraints = [
        RateConstraint({"R0": one}, terms["dl sources-cut"], label="R0 <= dl sources-cut"),
        RateConstraint({"R0": one}, terms["dl sinks-cut"], label="R0 <= dl sinks-cut"),
        RateConstraint({"R2": one}, terms["ul sources-cut"], label="R2 <= ul sources-cut"),
        RateConstraint({"R2": one}, terms["ul sinks-cut"], label="R2 <= ul sinks-cut"),
    ]
    constraints += nonneg_constraints(("R0", "R2"))
    return RatePolytope(("R0", "R2"), tuple(constraints))


# ---------------------------------------------------------------------------
# Decode-and-forward without rate splitting
# ---------------------------------------------------------------------------


def df_nors_terms(spec: ChannelSpec, input: DfNoRsInput) -> dict[str, float]:
    cache = EntropyCache(df_nors_joint(spec, input))
    mi = cache.mutual_information
    return {
        "ue1{0}": mi({"X0", "XR"}, {"Y1"}, {"U2", "X2"}),
        "relay{0}": mi({"X0"}, {"YR"}, {"X2", "U0", "U2"}),
        "bs{2}": mi({"X2", "XR"}, {"Y0"}, {"U0", "X0"}),
        "relay{2}": mi({"X2"}, {"YR"}, {"X0", "U0", "U2"}),
        "ue1{0,2}": mi({"X0", "X2", "XR"}, {"Y1"}),
        "relay{0,2}": mi({"X0", "X2"}, {"YR"}, {"U0", "U2"}),
    }


def df_nors_region(spec: ChannelSpec, input: DfNoRsInput) -> RatePolytope:
    t = df_nors_terms(spec, input)
    one = Fraction(1)
    constraints = [
        RateConstraint({"R0": one}, t["ue1{0}"], label="R0 <= ue1{0}"),
        RateConstraint({"R0": one}, t["relay{0}"], label="R0 <= relay{0}"),
        RateConstraint({"R2": one}, t["bs{2}"], label="R2 <= bs{2}"),
        RateConstraint({"R2": one}, t["relay{2}"], label="R2 <= relay{2}"),
        RateConstraint({"R0": one, "R2": one}, t["ue1{0,2}"], label="R0+R2 <= ue1{0,2}"),
        RateConstraint({"R0": one, "R2": one}, t["relay{0,2}"], label="R0+R2 <= relay{0,2}"),
    ]
    constraints += nonneg_constraints(("R0", "R2"))
    return RatePolytope(("R0", "R2"), tuple(constraints))


# ---------------------------------------------------------------------------
# Decode-and-forward with rate splitting
# ---------------------------------------------------------------------------


def df_rs_terms(spec: ChannelSpec, input: DfRsInput) -> dict[str, float]:
    cache = EntropyCache(df_rs_joint(spec, input))
    mi = cache.mutual_information
    aux = {"U0", "U2c", "U2p"}
    return {
        "relay{0}": mi({"X0"}, {"YR"}, aux | {"X2c", "X2p"}),
        "relay{2c}": mi({"X2c"}, {"YR"}, aux | {"X0", "X2p"}),
        "relay{2p}": mi({"X2p"}, {"YR"}, aux | {"X0", "X2c"}),
        "relay{0,2c}": mi({"X0", "X2c"}, {"YR"}, aux | {"X2p"}),
        "relay{0,2p}": mi({"X0", "X2p"}, {"YR"}, aux | {"X2c"}),
        "relay{2c,2p}": mi({"X2c", "X2p"}, {"YR"}, aux | {"X0"}),
        "relay{0,2c,2p}": mi({"X0", "X2c", "X2p"}, {"YR"}, aux),
        "bs{2c,2p}": mi({"U2c", "U2p", "X2c", "X2p", "XR"}, {"Y0"}, {"U0", "X0"}),
        "ue1{0}": mi({"X0", "XR"}, {"Y1"}, {"U2c", "X2c"}),
        "ue1{2c}": mi({"X2c", "XR"}, {"Y1"}, {"U0", "X0"}),
        "ue1{0,2c}": mi({"X0", "X2c", "XR"}, {"Y1"}),
    }


def df_rs_region(spec: ChannelSpec, input: DfRsInput) -> RatePolytope:
    """Directly-coded two-rate region for decode-and-forward with splitting.

    Every min expression is expanded into one half-space per alternative;
    compound bounds (a private-part rate plus the best common-part route)
    appear as summed right-hand sides.
    """
    t = df_rs_terms(spec, input)
    one = Fraction(1)
    r0 = {"R0": one}
    r2 = {"R2": one}
    rsum = {"R0": one, "R2": one}
    r2sum = {"R0": Fraction(2), "R2": one}
    constraints = [
        RateConstraint(r0, t["relay{0}"], label="R0 <= relay{0}"),
        RateConstraint(r0, t["ue1{0}"], label="R0 <= ue1{0}"),
        RateConstraint(r2, t["relay{2c,2p}"], label="R2 <= relay{2c,2p}"),
        RateConstraint(r2, t["bs{2c,2p}"], label="R2 <= bs{2c,2p}"),
        RateConstraint(r2, t["relay{2p}"] + t["relay{2c}"], label="R2 <= relay{2p}+relay{2c}"),
        RateConstraint(r2, t["relay{2p}"] + t["ue1{2c}"], label="R2 <= relay{2p}+ue1{2c}"),
        RateConstraint(rsum, t["relay{0,2c,2p}"], label="R0+R2 <= relay{0,2c,2p}"),
        RateConstraint(rsum, t["relay{2p}"] + t["relay{0,2c}"], label="R0+R2 <= relay{2p}+relay{0,2c}"),
        RateConstraint(rsum, t["relay{2p}"] + t["ue1{0,2c}"], label="R0+R2 <= relay{2p}+ue1{0,2c}"),
        RateConstraint(rsum, t["relay{0,2p}"] + t["relay{2c}"], label="R0+R2 <= relay{0,2p}+relay{2c}"),
        RateConstraint(rsum, t["relay{0,2p}"] + t["ue1{2c}"], label="R0+R2 <= relay{0,2p}+ue1{2c}"),
        RateConstraint(r2sum, t["relay{0,2p}"] + t["relay{0,2c}"], label="2R0+R2 <= relay{0,2p}+relay{0,2c}"),
        RateConstraint(r2sum, t["relay{0,2p}"] + t["ue1{0,2c}"], label="2R0+R2 <= relay{0,2p}+ue1{0,2c}"),
    ]
    constraints += nonneg_constraints(("R0", "R2"))
    return RatePolytope(("R0", "R2"), tuple(constraints))


def df_rs_split_system(spec: ChannelSpec, input: DfRsInput) -> RatePolytope:
    """Raw constraint system over the split rates (R0, R2c, R2p).

    Seven simultaneous-decoding bounds at the relay (every nonempty message
    subset), one decoding bound at the base station, and three at the
    interfered user, plus nonnegativity.
    """
    t = df_rs_terms(spec, input)
    one = Fraction(1)
    constraints = [
        RateConstraint({"R0": one}, t["relay{0}"], label="R0 <= relay{0}"),
        RateConstraint({"R2c": one}, t["relay{2c}"], label="R2c <= relay{2c}"),
        RateConstraint({"R2p": one}, t["relay{2p}"], label="R2p <= relay{2p}"),
        RateConstraint({"R0": one, "R2c": one}, t["relay{0,2c}"], label="R0+R2c <= relay{0,2c}"),
        RateConstraint({"R0": one, "R2p": one}, t["relay{0,2p}"], label="R0+R2p <= relay{0,2p}"),
        RateConstraint({"R2c": one, "R2p": one}, t["relay{2c,2p}"], label="R2c+R2p <= relay{2c,2p}"),
        RateConstraint(
            {"R0": one, "R2c": one, "R2p": one},
            t["relay{0,2c,2p}"],
            label="R0+R2c+R2p <= relay{0,2c,2p}",
        ),
        RateConstraint({"R2c": one, "R2p": one}, t["bs{2c,2p}"], label="R2c+R2p <= bs{2c,2p}"),
        RateConstraint({"R0": one}, t["ue1{0}"], label="R0 <= ue1{0}"),
        RateConstraint({"R2c": one}, t["ue1{2c}"], label="R2c <= ue1{2c}"),
        RateConstraint({"R0": one, "R2c": one}, t["ue1{0,2c}"], label="R0+R2c <= ue1{0,2c}"),
    ]
    constraints += nonneg_constraints(("R0", "R2c", "R2p"))
    return RatePolytope(("R0", "R2c", "R2p"), tuple(constraints))


# ---------------------------------------------------------------------------
# Partial decode-and-forward + compress-and-forward
# ---------------------------------------------------------------------------


def pdfcf_terms(spec: ChannelSpec, input: PdfCfInput) -> dict[str, float]:
    cache = EntropyCache(pdfcf_joint(spec, input))
    mi = cache.mutual_information
    aux = {"U0", "U2", "V0", "V2"}
    return {
        "direct{0}": mi({"X0"}, {"Y1", "YH"}, aux | {"XR"}),
        "direct{2}": mi({"X2"}, {"Y0", "YH"}, aux | {"X0", "XR"}),
        "relaymac{0}": mi({"V0"}, {"YR"}, {"XR", "U0", "U2", "V2"}),
        "relaymac{2}": mi({"V2"}, {"YR"}, {"XR", "U0", "U2", "V0"}),
        "relaymac{0,2}": mi({"V0", "V2"}, {"YR"}, {"XR", "U0", "U2"}),
        "bs{2}": mi({"U2", "V2"}, {"Y0"}, {"U0", "V0", "X0"}),
        "ue1mac{0}": mi({"U0", "V0"}, {"Y1"}, {"U2", "V2"}),
        "ue1mac{2}": mi({"U2", "V2"}, {"Y1"}, {"U0", "V0"}),
        "ue1mac{0,2}": mi({"U0", "U2", "V0", "V2"}, {"Y1"}),
        "cover bs-side": mi({"YH"}, {"YR"}, {"Y0", "X0", "XR", "V0", "V2"}),
        "cover ue1-side": mi({"YH"}, {"YR"}, {"Y1", "XR", "V0", "V2"}),
        "forward bs-side": mi({"XR"}, {"Y0"}, aux | {"X0"}),
        "forward ue1-side": mi({"XR"}, {"Y1"}, aux),
        "bin rate": mi({"YH"}, {"YR"}, {"XR", "V0", "V2"}),
    }


def _pdfcf_feasibility(t: dict[str, float]) -> tuple[bool, float, float]:
    lhs = max(t["cover bs-side"], t["cover ue1-side"])
    rhs = min(t["forward bs-side"], t["forward ue1-side"])
    return lhs <= rhs + FEASIBILITY_TOL, lhs, rhs


def pdfcf_feasible(spec: ChannelSpec, input: PdfCfInput) -> PdfCfEvaluation:
    """Evaluate only the compression feasibility gate (no region)."""
    t = pdfcf_terms(spec, input)
    feasible, lhs, rhs = _pdfcf_feasibility(t)
    return PdfCfEvaluation(
        feasible=feasible,
        compression_lhs=lhs,
        forward_rhs=rhs,
        bin_rate=t["bin rate"],
        forward_rate=rhs,
        region=None,
    )


def _pdfcf_region_from_terms(t: dict[str, float]) -> RatePolytope:
    one = Fraction(1)
    r0 = {"R0": one}
    r2 = {"R2": one}
    rsum = {"R0": one, "R2": one}
    d0 = t["direct{0}"]
    d2 = t["direct{2}"]
    constraints = [
        RateConstraint(r0, d0 + t["relaymac{0}"], label="R0 <= direct{0}+relaymac{0}"),
        RateConstraint(r0, d0 + t["ue1mac{0}"], label="R0 <= direct{0}+ue1mac{0}"),
        RateConstraint(r2, d2 + t["relaymac{2}"], label="R2 <= direct{2}+relaymac{2}"),
        RateConstraint(r2, d2 + t["bs{2}"], label="R2 <= direct{2}+bs{2}"),
        RateConstraint(r2, d2 + t["ue1mac{2}"], label="R2 <= direct{2}+ue1mac{2}"),
        RateConstraint(
            rsum, d0 + d2 + t["relaymac{0,2}"], label="R0+R2 <= direct{0}+direct{2}+relaymac{0,2}"
        ),
        RateConstraint(
            rsum, d0 + d2 + t["ue1mac{0,2}"], label="R0+R2 <= direct{0}+direct{2}+ue1mac{0,2}"
        ),
    ]
    constraints += nonneg_constraints(("R0", "R2"))
    return RatePolytope(("R0", "R2"), tuple(constraints))


def pdfcf_region(spec: ChannelSpec, input: PdfCfInput) -> PdfCfEvaluation:
    """Two-rate region, gated by the compression constraint.

    An infeasible input yields the explicit empty-region marker rather than a
    region with the compression constraint silently dropped.
    """
    t = pdfcf_terms(spec, input)
    feasible, lhs, rhs = _pdfcf_feasibility(t)
    if feasible:
        region = _pdfcf_region_from_terms(t)
    else:
        region = RatePolytope.empty_region(("R0", "R2"))
    return PdfCfEvaluation(
        feasible=feasible,
        compression_lhs=lhs,
        forward_rhs=rhs,
        bin_rate=t["bin rate"],
        forward_rate=rhs,
        region=region,
    )


def pdfcf_split_system(spec: ChannelSpec, input: PdfCfInput) -> RatePolytope:
    """Raw constraint system over the split rates (R0c, R0d, R2c, R2d).

    Emitted regardless of compression feasibility; callers combine it with
    the gate from :func:`pdfcf_feasible`.
    """
    t = pdfcf_terms(spec, input)
    one = Fraction(1)
    constraints = [
        RateConstraint({"R0c": one}, t["relaymac{0}"], label="R0c <= relaymac{0}"),
        RateConstraint({"R2c": one}, t["relaymac{2}"], label="R2c <= relaymac{2}"),
        RateConstraint(
            {"R0c": one, "R2c": one}, t["relaymac{0,2}"], label="R0c+R2c <= relaymac{0,2}"
        ),
        RateConstraint({"R2c": one}, t["bs{2}"], label="R2c <= bs{2}"),
        RateConstraint({"R0c": one}, t["ue1mac{0}"], label="R0c <= ue1mac{0}"),
        RateConstraint({"R2c": one}, t["ue1mac{2}"], label="R2c <= ue1mac{2}"),
        RateConstraint({"R0c": one, "R2c": one}, t["ue1mac{0,2}"], label="R0c+R2c <= ue1mac{0,2}"),
        RateConstraint({"R0d": one}, t["direct{0}"], label="R0d <= direct{0}"),
        RateConstraint({"R2d": one}, t["direct{2}"], label="R2d <= direct{2}"),
    ]
    constraints += nonneg_constraints(("R0c", "R0d", "R2c", "R2d"))
    return RatePolytope(("R0c", "R0d", "R2c", "R2d"), tuple(constraints))


def pure_cf_terms(spec: ChannelSpec, input: PureCfInput) -> dict[str, float]:
    cache = EntropyCache(pure_cf_joint(spec, input))
    mi = cache.mutual_information
    return {
        "direct{0}": mi({"X0"}, {"Y1", "YH"}, {"XR"}),
        "direct{2}": mi({"X2"}, {"Y0", "YH"}, {"X0", "XR"}),
        "cover bs-side": mi({"YH"}, {"YR"}, {"Y0", "X0", "XR"}),
        "cover ue1-side": mi({"YH"}, {"YR"}, {"Y1", "XR"}),
        "forward bs-side": mi({"XR"}, {"Y0"}, {"X0"}),
        "forward ue1-side": mi({"XR"}, {"Y1"}),
        "bin rate": mi({"YH"}, {"YR"}, {"XR"}),
    }


def pure_cf_region(spec: ChannelSpec, input: PureCfInput) -> PdfCfEvaluation:
    """Directly-coded pure compress-and-forward evaluation.

    Same constraint expressions as the mixed scheme with every auxiliary
    layer dropped; used as the reduction cross-check for the mixed evaluator
    with singleton auxiliaries.
    """
    t = pure_cf_terms(spec, input)
    lhs = max(t["cover bs-side"], t["cover ue1-side"])
    rhs = min(t["forward bs-side"], t["forward ue1-side"])
    feasible = lhs <= rhs + FEASIBILITY_TOL
    if feasible:
        one = Fraction(1)
        d0 = t["direct{0}"]
        d2 = t["direct{2}"]
        constraints = [
            RateConstraint({"R0": one}, d0, label="R0 <= direct{0}"),
            RateConstraint({"R2": one}, d2, label="R2 <= direct{2}"),
            RateConstraint({"R0": one, "R2": one}, d0 + d2, label="R0+R2 <= direct{0}+direct{2}"),
        ]
        constraints += nonneg_constraints(("R0", "R2"))
        region = RatePolytope(("R0", "R2"), tuple(constraints))
    else:
        region = RatePolytope.empty_region(("R0", "R2"))
    return PdfCfEvaluation(
        feasible=feasible,
        compression_lhs=lhs,
        forward_rhs=rhs,
        bin_rate=t["bin rate"],
        forward_rate=rhs,
        region=region,
    )
