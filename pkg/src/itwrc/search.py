"""Optimization of scheme inputs over distribution space.

Best-known frontiers are traced by weighted-sum scalarization over a fan of
weight directions; per direction the optimizer runs seeded random restarts
followed by cyclic coordinate ascent on the probability rows (blending each
row toward simplex vertices or the uniform row) and greedy flips of the
deterministic lookup tables.  The objective is non-concave, so results are
inner estimates; everything is reproducible from the master seed.
"""

from __future__ import annotations

import dataclasses
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .channel import ChannelSpec
from .errors import AlphabetMismatch, SchemeInputError
from .polytope import (
    FrontierPoint,
    RatePolytope,
    RegionFrontier,
    build_frontier,
    vertices_2d,
)
from .prob import JointPmf
from .schemes import (
    DfNoRsInput,
    DfRsInput,
    PdfCfInput,
    cutset_region,
    df_nors_region,
    df_rs_region,
    pdfcf_region,
)


class Scheme(str, Enum):
    CUTSET = "cutset"
    DF_NORS = "df_nors"
    DF_RS = "df_rs"
    PDFCF = "pdfcf"


@dataclass(frozen=True)
class AuxSizes:
    """Auxiliary-alphabet cardinalities used when sampling scheme inputs.

    ``yhat`` of ``None`` means one more letter than the relay observation.
    """

    u0: int = 2
    u2: int = 2
    u2c: int = 2
    u2p: int = 2
    v0: int = 2
    v2: int = 2
    yhat: int | None = None

    def __post_init__(self) -> None:
        for name in ("u0", "u2", "u2c", "u2p", "v0", "v2"):
            if getattr(self, name) < 1:
                raise SchemeInputError(f"auxiliary cardinality {name} must be >= 1")
        if self.yhat is not None and self.yhat < 1:
            raise SchemeInputError("yhat cardinality must be >= 1")

    def yhat_for(self, spec: ChannelSpec) -> int:
        return self.yhat if self.yhat is not None else spec.output_sizes[2] + 1


@dataclass(frozen=True)
class SearchBudget:
    restarts: int = 8
    sweeps: int = 2
    grid: int = 5
    seed: int = 0
    aux: AuxSizes = AuxSizes()

    def __post_init__(self) -> None:
        if self.restarts < 1 or self.sweeps < 1 or self.grid < 2:
            raise SchemeInputError("restarts and sweeps must be >= 1, grid >= 2")


def worker_count() -> int:
    """Worker cap from ITWRC_THREADS (defaults to a small pool)."""
    raw = os.environ.get("ITWRC_THREADS", "").strip()
    if raw:
        try:
            n = int(raw)
        except ValueError:
            n = 1
        return max(1, n)
    return min(4, os.cpu_count() or 1)


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def _dirichlet(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.dirichlet(np.ones(size))


def _dirichlet_rows(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    rows = int(np.prod(shape[:-1]))
    return rng.dirichlet(np.ones(shape[-1]), size=rows).reshape(shape)


def _random_map(rng: np.random.Generator, shape: tuple[int, ...], size: int) -> np.ndarray:
    # Mix purely random tables with modular-sum tables; the latter reach the
    # physically natural network-coding style relay functions immediately.
    if size > 1 and rng.random() < 0.5:
        grids = np.indices(shape)
        table = np.zeros(shape, dtype=np.int64)
        for axis_values in grids:
            table = table + axis_values
        return (table % size).astype(np.int64)
    return rng.integers(0, size, size=shape, dtype=np.int64)


def sample_input(scheme: Scheme, spec: ChannelSpec, budget: SearchBudget, rng: np.random.Generator):
    """A valid, correctly factorized random input for the given scheme."""
    nx0, nx2, nxr = spec.input_sizes
    aux = budget.aux
    scheme = Scheme(scheme)
    if scheme is Scheme.CUTSET:
        return JointPmf(("X0", "X2", "XR"), _dirichlet(rng, nx0 * nx2 * nxr).reshape(nx0, nx2, nxr))
    if scheme is Scheme.DF_NORS:
        return DfNoRsInput(
            u0_x0=_dirichlet(rng, aux.u0 * nx0).reshape(aux.u0, nx0),
            u2_x2=_dirichlet(rng, aux.u2 * nx2).reshape(aux.u2, nx2),
            relay_map=_random_map(rng, (aux.u0, aux.u2), nxr),
        )
    if scheme is Scheme.DF_RS:
        return DfRsInput(
            u0=_dirichlet(rng, aux.u0),
            x0_given_u0=_dirichlet_rows(rng, (aux.u0, nx0)),
            u2c=_dirichlet(rng, aux.u2c),
            x2c_given_u2c=_dirichlet_rows(rng, (aux.u2c, nx2)),
            u2p=_dirichlet(rng, aux.u2p),
            x2p_given_u2p=_dirichlet_rows(rng, (aux.u2p, nx2)),
            x2_map=_random_map(rng, (nx2, nx2), nx2),
            relay_map=_random_map(rng, (aux.u0, aux.u2c, aux.u2p), nxr),
        )
    if scheme is Scheme.PDFCF:
        nyr = spec.output_sizes[2]
        yhat = aux.yhat_for(spec)
        compress = _dirichlet_rows(rng, (nyr, nxr, aux.u0, aux.u2, aux.v0, aux.v2, yhat))
        # Blend toward a weak (near-uniform) test channel: mild compression is
        # feasible far more often, which keeps restarts productive.
        lam = rng.random()
        compress = lam * compress + (1.0 - lam) / yhat
        return PdfCfInput(
            u0=_dirichlet(rng, aux.u0),
            v0_given_u0=_dirichlet_rows(rng, (aux.u0, aux.v0)),
            x0_given_v0=_dirichlet_rows(rng, (aux.v0, nx0)),
            u2=_dirichlet(rng, aux.u2),
            v2_given_u2=_dirichlet_rows(rng, (aux.u2, aux.v2)),
            x2_given_v2=_dirichlet_rows(rng, (aux.v2, nx2)),
            xr_given_u0_u2=_dirichlet_rows(rng, (aux.u0, aux.u2, nxr)),
            compress=compress,
        )
    raise SchemeInputError(f"unknown scheme {scheme!r}")


def region_of(scheme: Scheme, spec: ChannelSpec, input) -> RatePolytope:
    """The (R0, R2) region of one scheme input; empty marker when infeasible."""
    scheme = Scheme(scheme)
    if scheme is Scheme.CUTSET:
        return cutset_region(spec, input)
    if scheme is Scheme.DF_NORS:
        return df_nors_region(spec, input)
    if scheme is Scheme.DF_RS:
        return df_rs_region(spec, input)
    if scheme is Scheme.PDFCF:
        return pdfcf_region(spec, input).region
    raise SchemeInputError(f"unknown scheme {scheme!r}")


# ---------------------------------------------------------------------------
# Coordinate ascent
# ---------------------------------------------------------------------------


def _blend_candidates(row: np.ndarray, steps: Sequence[float]) -> list[np.ndarray]:
    """Blends of a simplex row toward each vertex and toward uniform."""
    n = row.shape[0]
    if n == 1:
        return []
    targets = [np.eye(n)[k] for k in range(n)]
    targets.append(np.full(n, 1.0 / n))
    out = []
    for target in targets:
        for t in steps:
            cand = (1.0 - t) * row + t * target
            total = cand.sum()
            if total > 0:
                out.append(cand / total)
    return out


def _replace_field_row(input, field: str, index, new_row: np.ndarray):
    arr = np.array(getattr(input, field), dtype=float)
    arr[index] = new_row
    return dataclasses.replace(input, **{field: arr})


def _replace_table_entry(input, field: str, index, value: int):
    arr = np.array(getattr(input, field))
    arr[index] = value
    return dataclasses.replace(input, **{field: arr})


def _mutations(scheme: Scheme, spec: ChannelSpec, input, grid: int):
    """Candidate-generating closures for one cyclic ascent pass."""
    steps = [i / (grid - 1) for i in range(1, grid)]
    muts: list[Callable[[object], object]] = []

    def simplex_rows(field: str, arr: np.ndarray):
        flat_rows = arr.reshape(-1, arr.shape[-1])
        for r in range(flat_rows.shape[0]):
            index = np.unravel_index(r, arr.shape[:-1]) if arr.ndim > 1 else ()
            for cand in _blend_candidates(flat_rows[r], steps):
                muts.append(
                    lambda x, f=field, i=index, c=cand: _replace_field_row(x, f, i, c)
                )

    def whole_simplex(field: str, arr: np.ndarray):
        flat = arr.reshape(-1)
        for cand in _blend_candidates(flat, steps):
            shaped = cand.reshape(arr.shape)
            muts.append(lambda x, f=field, c=shaped: dataclasses.replace(x, **{f: c}))

    def table(field: str, arr: np.ndarray, size: int):
        for index in np.ndindex(arr.shape):
            for value in range(size):
                if value != arr[index]:
                    muts.append(
                        lambda x, f=field, i=index, v=value: _replace_table_entry(x, f, i, v)
                    )

    scheme = Scheme(scheme)
    if scheme is Scheme.CUTSET:
        flat = input.probs.reshape(-1)
        for cand in _blend_candidates(flat, steps):
            shaped = cand.reshape(input.probs.shape)
            muts.append(lambda x, c=shaped: JointPmf(x.variables, c))
        return muts
    if scheme is Scheme.DF_NORS:
        whole_simplex("u0_x0", np.asarray(input.u0_x0))
        whole_simplex("u2_x2", np.asarray(input.u2_x2))
        table("relay_map", np.asarray(input.relay_map), spec.input_sizes[2])
        return muts
    if scheme is Scheme.DF_RS:
        simplex_rows("u0", np.asarray(input.u0))
        simplex_rows("x0_given_u0", np.asarray(input.x0_given_u0))
        simplex_rows("u2c", np.asarray(input.u2c))
        simplex_rows("x2c_given_u2c", np.asarray(input.x2c_given_u2c))
        simplex_rows("u2p", np.asarray(input.u2p))
        simplex_rows("x2p_given_u2p", np.asarray(input.x2p_given_u2p))
        table("x2_map", np.asarray(input.x2_map), spec.input_sizes[1])
        table("relay_map", np.asarray(input.relay_map), spec.input_sizes[2])
        return muts
    if scheme is Scheme.PDFCF:
        simplex_rows("u0", np.asarray(input.u0))
        simplex_rows("v0_given_u0", np.asarray(input.v0_given_u0))
        simplex_rows("x0_given_v0", np.asarray(input.x0_given_v0))
        simplex_rows("u2", np.asarray(input.u2))
        simplex_rows("v2_given_u2", np.asarray(input.v2_given_u2))
        simplex_rows("x2_given_v2", np.asarray(input.x2_given_v2))
        simplex_rows("xr_given_u0_u2", np.asarray(input.xr_given_u0_u2))
        # The test channel has too many rows for per-row ascent; tune its
        # overall strength instead (blend toward uniform / sharpen).
        comp = np.asarray(input.compress, dtype=float)
        yhat = comp.shape[-1]
        if yhat > 1:
            for t in steps:
                blended = (1.0 - t) * comp + t / yhat
                muts.append(lambda x, c=blended: dataclasses.replace(x, compress=c))
            sharp = comp**2
            sharp = sharp / sharp.sum(axis=-1, keepdims=True)
            muts.append(lambda x, c=sharp: dataclasses.replace(x, compress=c))
        return muts
    raise SchemeInputError(f"unknown scheme {scheme!r}")


def best_vertex(poly: RatePolytope, w0: float, w2: float) -> tuple[float, tuple[float, float]] | None:
    """Max of w0*R0 + w2*R2 over vertices, lexicographic (R0, R2) tie-break."""
    if poly is None or poly.empty:
        return None
    verts = vertices_2d(poly)
    if not verts:
        return None
    best = max(verts, key=lambda v: (w0 * v[0] + w2 * v[1], v[0], v[1]))
    return w0 * best[0] + w2 * best[1], best


@dataclass(frozen=True)
class SearchResult:
    point: tuple[float, float]
    input: object
    value: float
    region: RatePolytope | None = None


def _ascend(
    scheme: Scheme,
    spec: ChannelSpec,
    budget: SearchBudget,
    weights: tuple[float, float],
    rng: np.random.Generator,
) -> SearchResult:
    w0, w2 = weights
    current = sample_input(scheme, spec, budget, rng)
    current_region = region_of(scheme, spec, current)
    scored = best_vertex(current_region, w0, w2)
    value, point = scored if scored else (-np.inf, (0.0, 0.0))
    for _ in range(budget.sweeps):
        improved = False
        for mutate in _mutations(scheme, spec, current, budget.grid):
            try:
                candidate = mutate(current)
                cand_region = region_of(scheme, spec, candidate)
            except (SchemeInputError, AlphabetMismatch):
                continue
            scored = best_vertex(cand_region, w0, w2)
            if scored is None:
                continue
            cand_value, cand_point = scored
            if cand_value > value + 1e-12:
                value, point, current, current_region = (
                    cand_value,
                    cand_point,
                    candidate,
                    cand_region,
                )
                improved = True
        if not improved:
            break
    if value == -np.inf:
        return SearchResult((0.0, 0.0), None, -np.inf, None)
    return SearchResult(point, current, value, current_region)


def _restart_rng(seed: int, direction: int, restart: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence((seed, direction, restart)))


def maximize_weighted_sum(
    scheme: Scheme,
    spec: ChannelSpec,
    weights: tuple[float, float],
    budget: SearchBudget,
    direction_index: int = 0,
) -> SearchResult:
    """Best weighted sum over all restarts; nested seeds keep it monotone in budget."""
    w0, w2 = weights
    if w0 < 0 or w2 < 0 or (w0 == 0 and w2 == 0):
        raise SchemeInputError("weights must be nonnegative and not both zero")
    best: SearchResult | None = None
    for r in range(budget.restarts):
        rng = _restart_rng(budget.seed, direction_index, r)
        result = _ascend(scheme, spec, budget, weights, rng)
        if best is None or result.value > best.value + 1e-15:
            best = result
    assert best is not None
    return best


def weight_directions(count: int) -> list[tuple[float, float]]:
    if count < 2:
        raise SchemeInputError("need at least 2 weight directions")
    angles = np.linspace(0.0, np.pi / 2.0, count)
    return [(float(np.cos(a)), float(np.sin(a))) for a in angles]


def trace_frontier(
    scheme: Scheme,
    spec: ChannelSpec,
    budget: SearchBudget,
    weight_count: int = 11,
) -> RegionFrontier:
    """Frontier union over all weight directions' best regions.

    Restart/direction tasks run on a thread pool (capped by ITWRC_THREADS);
    results are merged in (direction, restart) order so the frontier is
    bit-identical regardless of worker count.
    """
    scheme = Scheme(scheme)
    directions = weight_directions(weight_count)
    tasks = [(k, r) for k in range(len(directions)) for r in range(budget.restarts)]

    def run(task: tuple[int, int]) -> tuple[int, int, SearchResult]:
        k, r = task
        rng = _restart_rng(budget.seed, k, r)
        return k, r, _ascend(scheme, spec, budget, directions[k], rng)

    workers = min(worker_count(), max(1, len(tasks)))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, tasks))
    else:
        outcomes = [run(t) for t in tasks]

    best_per_direction: dict[int, tuple[int, SearchResult]] = {}
    for k, r, result in sorted(outcomes, key=lambda item: (item[0], item[1])):
        held = best_per_direction.get(k)
        if held is None or result.value > held[1].value + 1e-15:
            best_per_direction[k] = (r, result)

    points: list[FrontierPoint] = []
    for k in sorted(best_per_direction):
        _, result = best_per_direction[k]
        if result.region is None or result.input is None:
            continue
        for x, y in vertices_2d(result.region):
            points.append(FrontierPoint(x, y, scheme.value, result.input))
    if not points:
        return RegionFrontier(())
    return build_frontier(points)
