"""Rate-inequality system algebra.

Constraint systems in named rate variables (all constraints are of the form
``sum_i c_i * R_i <= b``), with Fourier-Motzkin elimination, 2D vertex
enumeration, membership tests, and Pareto-frontier union.  Coefficients are
exact rationals so the sign logic of elimination is exact; only the bounds
(mutual-information values) are floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import PolytopeError, UnknownVariable

# Geometric tolerance for membership / vertex dedup.
GEOM_TOL = 1e-9
# Fourier-Motzkin combinations whose constant row drops below this are infeasible.
FEAS_TOL = 1e-9


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**9)
    raise PolytopeError(f"coefficient {value!r} is not rational")


@dataclass(frozen=True)
class RateConstraint:
    """A single half-space ``sum coeffs[v] * v <= bound``."""

    coeffs: Mapping[str, Fraction]
    bound: float
    label: str = ""

    def __post_init__(self) -> None:
        coeffs = {v: _as_fraction(c) for v, c in dict(self.coeffs).items() if c != 0}
        object.__setattr__(self, "coeffs", coeffs)
        if not coeffs:
            raise PolytopeError("constraint needs at least one nonzero coefficient")
        if not math.isfinite(self.bound):
            raise PolytopeError(f"constraint bound {self.bound} is not finite")

    def coefficient(self, var: str) -> Fraction:
        return self.coeffs.get(var, Fraction(0))


def nonneg_constraints(variables: Iterable[str]) -> list[RateConstraint]:
    return [
        RateConstraint({v: Fraction(-1)}, 0.0, label=f"{v} >= 0") for v in variables
    ]


@dataclass(frozen=True)
class RatePolytope:
    """An intersection of half-spaces over named rate variables.

    The explicitly-empty marker (``empty=True``) is distinct from a region
    that happens to contain only the origin.
    """

    variables: tuple[str, ...]
    constraints: tuple[RateConstraint, ...]
    empty: bool = False

    def __post_init__(self) -> None:
        variables = tuple(self.variables)
        constraints = tuple(self.constraints)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "constraints", constraints)
        declared = set(variables)
        for con in constraints:
            extra = set(con.coeffs) - declared
            if extra:
                raise UnknownVariable(
                    f"constraint {con.label!r} references undeclared {sorted(extra)}"
                )

    @classmethod
    def empty_region(cls, variables: Iterable[str]) -> "RatePolytope":
        return cls(tuple(variables), (), empty=True)

    def matrix_form(self) -> tuple[np.ndarray, np.ndarray]:
        """(A, b) with the region = {x : A @ x <= b}."""
        a = np.zeros((len(self.constraints), len(self.variables)))
        b = np.zeros(len(self.constraints))
        index = {v: i for i, v in enumerate(self.variables)}
        for row, con in enumerate(self.constraints):
            for v, c in con.coeffs.items():
                a[row, index[v]] = float(c)
            b[row] = con.bound
        return a, b


def contains(poly: RatePolytope, point: Sequence[float], tol: float = GEOM_TOL) -> bool:
    """True iff every constraint holds within ``tol`` (empty region: never)."""
    if len(point) != len(poly.variables):
        raise PolytopeError(
            f"point has dimension {len(point)}, polytope has {len(poly.variables)}"
        )
    if poly.empty:
        return False
    if not poly.constraints:
        return True
    a, b = poly.matrix_form()
    return bool((a @ np.asarray(point, dtype=float) <= b + tol).all())


def substitute(
    poly: RatePolytope,
    var: str,
    replacement: Mapping[str, Fraction | int | float],
    constant: float = 0.0,
) -> RatePolytope:
    """Replace ``var`` by a linear expression and record its nonnegativity.

    The substituted expression ``replacement + constant`` stands in for a
    rate, so ``-(replacement) <= constant`` is appended.
    """
    if var not in poly.variables:
        raise UnknownVariable(f"variable {var!r} not declared")
    repl = {v: _as_fraction(c) for v, c in dict(replacement).items() if c != 0}
    new_vars = [v for v in poly.variables if v != var]
    for v in repl:
        if v not in new_vars:
            new_vars.append(v)
    if poly.empty:
        return RatePolytope.empty_region(new_vars)
    new_constraints: list[RateConstraint] = []
    for con in poly.constraints:
        k = con.coefficient(var)
        if k == 0:
            new_constraints.append(con)
            continue
        coeffs = {v: c for v, c in con.coeffs.items() if v != var}
        for v, c in repl.items():
            coeffs[v] = coeffs.get(v, Fraction(0)) + k * c
        new_constraints.append(
            RateConstraint(coeffs, con.bound - float(k) * constant, label=con.label)
        )
    neg = {v: -c for v, c in repl.items()}
    new_constraints.append(RateConstraint(neg, constant, label=f"{var} >= 0 (substituted)"))
    return RatePolytope(tuple(new_vars), tuple(new_constraints))


def _normalized_key(con: RateConstraint, variables: Sequence[str]):
    """Scale so coefficients are coprime integers; return (key, scale)."""
    denominators = [c.denominator for c in con.coeffs.values()]
    lcm = 1
    for d in denominators:
        lcm = lcm * d // math.gcd(lcm, d)
    numerators = [abs(int(c * lcm)) for c in con.coeffs.values()]
    g = 0
    for n in numerators:
        g = math.gcd(g, n)
    scale = Fraction(lcm, g if g else 1)
    key = tuple(con.coefficient(v) * scale for v in variables)
    return key, scale


def fm_eliminate(poly: RatePolytope, var: str) -> RatePolytope:
    """Project out ``var``: classic positive/negative pairing of half-spaces.

    Redundancy handling: exact duplicate-direction pruning always; in two
    variables an additional vertex-activity prune.  Infeasible combinations
    (0 <= negative) collapse to the explicit empty marker.
    """
    if var not in poly.variables:
        raise UnknownVariable(f"variable {var!r} not declared")
    new_vars = tuple(v for v in poly.variables if v != var)
    if poly.empty:
        return RatePolytope.empty_region(new_vars)

    zero: list[RateConstraint] = []
    positive: list[RateConstraint] = []
    negative: list[RateConstraint] = []
    for con in poly.constraints:
        k = con.coefficient(var)
        if k == 0:
            zero.append(con)
        elif k > 0:
            positive.append(con)
        else:
            negative.append(con)

    combined: list[RateConstraint] = []
    for pos in positive:
        kp = pos.coefficient(var)
        for neg in negative:
            kn = neg.coefficient(var)  # kn < 0
            coeffs: dict[str, Fraction] = {}
            for v in set(pos.coeffs) | set(neg.coeffs):
                if v == var:
                    continue
                c = pos.coefficient(v) * (-kn) + neg.coefficient(v) * kp
                if c != 0:
                    coeffs[v] = c
            bound = pos.bound * float(-kn) + neg.bound * float(kp)
            if not coeffs:
                if bound < -FEAS_TOL:
                    return RatePolytope.empty_region(new_vars)
                continue  # trivially true, drop
            label = f"{pos.label} & {neg.label}" if pos.label and neg.label else ""
            combined.append(RateConstraint(coeffs, bound, label=label))

    kept: dict[tuple, RateConstraint] = {}
    for con in zero + combined:
        key, scale = _normalized_key(con, new_vars)
        scaled = RateConstraint(
            {v: c * scale for v, c in con.coeffs.items()},
            con.bound * float(scale),
            label=con.label,
        )
        existing = kept.get(key)
        if existing is None or scaled.bound < existing.bound:
            kept[key] = scaled
    result = RatePolytope(new_vars, tuple(kept.values()))
    if len(new_vars) == 2:
        result = _prune_2d(result)
    return result


def _prune_2d(poly: RatePolytope) -> RatePolytope:
    """Drop constraints inactive at every vertex of a bounded 2D region."""
    try:
        verts = vertices_2d(poly)
    except PolytopeError:
        return poly
    if not verts:
        return poly
    pts = np.asarray(verts)
    a, b = poly.matrix_form()
    keep = []
    for i, con in enumerate(poly.constraints):
        activity = pts @ a[i] - b[i]
        if activity.max() >= -GEOM_TOL:
            keep.append(con)
    return RatePolytope(poly.variables, tuple(keep))


def _recession_directions(a: np.ndarray) -> np.ndarray:
    """Candidate extreme rays of {d : A d <= 0} in 2D."""
    candidates = [np.array([1.0, 0.0]), np.array([0.0, 1.0]),
                  np.array([-1.0, 0.0]), np.array([0.0, -1.0])]
    for row in a:
        norm = np.linalg.norm(row)
        if norm < GEOM_TOL:
            continue
        perp = np.array([-row[1], row[0]]) / norm
        candidates.append(perp)
        candidates.append(-perp)
    return np.asarray(candidates)


def vertices_2d(poly: RatePolytope, tol: float = GEOM_TOL) -> list[tuple[float, float]]:
    """All vertices of a bounded 2D region, counterclockwise, deduplicated.

    Returns ``[]`` for an empty region; raises for wrong dimension or an
    unbounded feasible region.
    """
    if len(poly.variables) != 2:
        raise PolytopeError(
            f"vertex enumeration needs exactly 2 variables, got {len(poly.variables)}"
        )
    if poly.empty:
        return []
    a, b = poly.matrix_form()
    n = len(poly.constraints)
    candidates: list[np.ndarray] = []
    for i in range(n):
        for j in range(i + 1, n):
            m = np.array([a[i], a[j]])
            det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
            if abs(det) < 1e-14:
                continue
            point = np.linalg.solve(m, np.array([b[i], b[j]]))
            if (a @ point <= b + tol).all():
                candidates.append(point)
    if not candidates:
        return []
    directions = _recession_directions(a)
    unbounded = (directions @ a.T <= 1e-12).all(axis=1)
    if unbounded.any():
        raise PolytopeError("region is unbounded; vertices are not defined")

    unique: list[np.ndarray] = []
    for p in candidates:
        if all(np.linalg.norm(p - q) > tol for q in unique):
            unique.append(p)
    if len(unique) == 1:
        return [tuple(map(float, unique[0]))]
    center = np.mean(unique, axis=0)
    unique.sort(key=lambda p: math.atan2(p[1] - center[1], p[0] - center[0]))
    start = min(range(len(unique)), key=lambda i: (unique[i][0], unique[i][1]))
    ordered = unique[start:] + unique[:start]
    return [tuple(map(float, p)) for p in ordered]


def convex_hull(points: Sequence[tuple[float, float]]) -> list[tuple[float, float]]:
    """Monotone-chain convex hull, counterclockwise, degeneracy-tolerant."""
    pts = sorted(set((float(x), float(y)) for x, y in points))
    if len(pts) <= 2:
        return pts

    def cross(o, p, q):
        return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])

    lower: list[tuple[float, float]] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull if hull else [pts[0]]


def pareto_maximal(points: Sequence[tuple[float, float]], tol: float = GEOM_TOL) -> list[tuple[float, float]]:
    """Points not componentwise dominated by any other point."""
    result = []
    for p in points:
        dominated = any(
            (q[0] >= p[0] - tol and q[1] >= p[1] - tol)
            and (q[0] > p[0] + tol or q[1] > p[1] + tol)
            for q in points
        )
        if not dominated:
            result.append(p)
    return result


@dataclass(frozen=True)
class FrontierPoint:
    """A Pareto point annotated with whatever input achieved it."""

    r0: float
    r2: float
    scheme: str | None = None
    payload: object | None = None


@dataclass(frozen=True)
class RegionFrontier:
    """Pareto-maximal corner points of a convex (time-shared) rate region.

    Points are sorted by increasing R0 (hence non-increasing R2); straight
    segments between consecutive points are achievable by time-sharing.
    """

    points: tuple[FrontierPoint, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))

    def vertex_list(self) -> list[tuple[float, float]]:
        return [(p.r0, p.r2) for p in self.points]

    def max_r2_at(self, r0: float) -> float:
        """Largest R2 on/below the frontier at the given R0 (-inf if beyond)."""
        if not self.points:
            return -math.inf
        pts = self.vertex_list()
        if r0 <= pts[0][0]:
            return pts[0][1]
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if r0 <= x1:
                if x1 == x0:
                    return min(y0, y1)
                t = (r0 - x0) / (x1 - x0)
                return y0 + t * (y1 - y0)
        return -math.inf

    def contains_point(self, r0: float, r2: float, slack: float = 0.0) -> bool:
        """Membership in the downward closure of the frontier region."""
        if not self.points:
            return False
        max_r0 = self.points[-1].r0
        if r0 > max_r0 + slack:
            return False
        return r2 <= self.max_r2_at(min(r0, max_r0)) + slack


def build_frontier(
    annotated: Sequence[FrontierPoint], tol: float = GEOM_TOL
) -> RegionFrontier:
    """Frontier of the convex hull of annotated points (time-sharing closure)."""
    if not annotated:
        return RegionFrontier(())
    bare = [(p.r0, p.r2) for p in annotated]
    hull = convex_hull(bare)
    pareto = pareto_maximal(hull, tol)
    pareto.sort(key=lambda p: (p[0], -p[1]))
    chosen: list[FrontierPoint] = []
    for x, y in pareto:
        source = min(
            (p for p in annotated if abs(p.r0 - x) <= tol and abs(p.r2 - y) <= tol),
            key=lambda p: (p.r0, p.r2),
            default=None,
        )
        if source is None:
            source = FrontierPoint(x, y)
        chosen.append(FrontierPoint(x, y, source.scheme, source.payload))
    return RegionFrontier(tuple(chosen))


def frontier_union(regions: Sequence[RatePolytope]) -> RegionFrontier:
    """Pareto frontier of the convex hull of all regions' vertices."""
    if not regions:
        raise PolytopeError("frontier_union requires at least one region")
    points: list[FrontierPoint] = []
    for poly in regions:
        for x, y in vertices_2d(poly):
            points.append(FrontierPoint(x, y))
    return build_frontier(points)
