"""Exact probability and information measures over finite-alphabet joints.

Everything downstream (channel assembly, rate-region evaluation, the verify
suites) reduces to conditional mutual informations computed here.  Joints are
dense numpy tensors with one axis per labeled variable; all information
quantities are in bits.  Conventions: ``0 * log 0 == 0``; conditional
information terms are clamped to zero when they dip below zero by no more
than ``CLAMP_TOL`` (pure floating-point noise) and rejected as inconsistent
beyond that.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import InvalidDistribution, StateSpaceError, UnknownVariable

# Tolerance for pmf normalization checks.
NORMALIZATION_TOL = 1e-12
# Tolerance used when cross-checking information identities.
INFO_IDENTITY_TOL = 1e-9
# Information values below -CLAMP_TOL indicate an inconsistent joint.
CLAMP_TOL = 1e-10
# Largest permitted number of joint states (product of alphabet sizes).
STATE_CAP = 2**20


def _as_label_tuple(labels: Iterable[str]) -> tuple[str, ...]:
    if isinstance(labels, str):
        return (labels,)
    return tuple(labels)


@dataclass(frozen=True)
class JointPmf:
    """A joint pmf over labeled finite-alphabet variables.

    ``probs`` has one axis per entry of ``variables``, in order.  Entries are
    nonnegative and sum to one within ``NORMALIZATION_TOL``.
    """

    variables: tuple[str, ...]
    probs: np.ndarray

    def __post_init__(self) -> None:
        variables = tuple(self.variables)
        probs = np.asarray(self.probs, dtype=float)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "probs", probs)
        if len(set(variables)) != len(variables):
            raise InvalidDistribution(f"duplicate variable labels in {variables}")
        if probs.ndim != len(variables):
            raise InvalidDistribution(
                f"tensor has {probs.ndim} axes but {len(variables)} variables declared"
            )
        if any(n < 1 for n in probs.shape):
            raise InvalidDistribution(f"empty alphabet in shape {probs.shape}")
        if probs.size > STATE_CAP:
            raise StateSpaceError(
                f"joint over {probs.size} states exceeds the dense cap of {STATE_CAP}; "
                "reduce alphabet or auxiliary cardinalities"
            )
        if probs.size and probs.min() < 0.0:
            raise InvalidDistribution(f"negative probability entry {probs.min()}")
        total = float(probs.sum())
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise InvalidDistribution(f"pmf sums to {total!r}, not 1")
        probs.setflags(write=False)

    @property
    def alphabet_sizes(self) -> tuple[int, ...]:
        return self.probs.shape

    def axis(self, label: str) -> int:
        try:
            return self.variables.index(label)
        except ValueError:
            raise UnknownVariable(
                f"variable {label!r} not among {self.variables}"
            ) from None

    def axes(self, labels: Iterable[str]) -> tuple[int, ...]:
        return tuple(self.axis(v) for v in _as_label_tuple(labels))


def marginalize(joint: JointPmf, keep: Iterable[str]) -> JointPmf:
    """Sum out every variable not in ``keep``, preserving declared order."""
    keep_set = set(_as_label_tuple(keep))
    if not keep_set:
        raise UnknownVariable("cannot marginalize onto an empty variable set")
    for label in keep_set:
        joint.axis(label)  # raises UnknownVariable on bad labels
    kept = tuple(v for v in joint.variables if v in keep_set)
    drop_axes = tuple(i for i, v in enumerate(joint.variables) if v not in keep_set)
    probs = joint.probs.sum(axis=drop_axes) if drop_axes else joint.probs
    return JointPmf(kept, probs)


def _plogp_sum(probs: np.ndarray) -> float:
    """Return sum of p*log2(p) with the 0*log0 := 0 convention."""
    flat = probs.reshape(-1)
    positive = flat[flat > 0.0]
    return float((positive * np.log2(positive)).sum())


def _marginal_probs(joint: JointPmf, labels: frozenset[str]) -> np.ndarray:
    drop = tuple(i for i, v in enumerate(joint.variables) if v not in labels)
    return joint.probs.sum(axis=drop) if drop else joint.probs


def _check_disjoint(*sets: tuple[str, frozenset[str]]) -> None:
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            name_a, a = sets[i]
            name_b, b = sets[j]
            common = a & b
            if common:
                raise UnknownVariable(
                    f"variable sets {name_a} and {name_b} overlap on {sorted(common)}"
                )


class EntropyCache:
    """Joint entropies of one fixed joint, memoized by variable subset.

    Region evaluators ask for dozens of conditional informations that share
    marginal entropies; caching them keeps scheme evaluation cheap enough for
    search loops.
    """

    def __init__(self, joint: JointPmf):
        self.joint = joint
        self._h: dict[frozenset[str], float] = {frozenset(): 0.0}

    def entropy(self, labels: Iterable[str]) -> float:
        key = frozenset(_as_label_tuple(labels))
        cached = self._h.get(key)
        if cached is not None:
            return cached
        for label in key:
            self.joint.axis(label)
        value = -_plogp_sum(_marginal_probs(self.joint, key))
        self._h[key] = value
        return value

    def conditional_entropy(self, vars: Iterable[str], given: Iterable[str] = ()) -> float:
        v = frozenset(_as_label_tuple(vars))
        g = frozenset(_as_label_tuple(given))
        if not v:
            raise UnknownVariable("entropy requires a nonempty variable set")
        _check_disjoint(("vars", v), ("given", g))
        value = self.entropy(v | g) - self.entropy(g)
        return _clamp_information(value)

    def mutual_information(
        self,
        a: Iterable[str],
        b: Iterable[str],
        c: Iterable[str] = (),
    ) -> float:
        sa = frozenset(_as_label_tuple(a))
        sb = frozenset(_as_label_tuple(b))
        sc = frozenset(_as_label_tuple(c))
        if not sa or not sb:
            raise UnknownVariable("mutual information requires nonempty variable sets")
        _check_disjoint(("A", sa), ("B", sb), ("C", sc))
        value = (
            self.entropy(sa | sc)
            + self.entropy(sb | sc)
            - self.entropy(sa | sb | sc)
            - self.entropy(sc)
        )
        return _clamp_information(value)


def _clamp_information(value: float) -> float:
    if value < 0.0:
        if value < -CLAMP_TOL:
            raise InvalidDistribution(
                f"information quantity {value} below -{CLAMP_TOL}; joint is inconsistent"
            )
        return 0.0
    return value


def entropy(joint: JointPmf, vars: Iterable[str], given: Iterable[str] = ()) -> float:
    """H(vars | given) in bits."""
    return EntropyCache(joint).conditional_entropy(vars, given)


def cond_mutual_information(
    joint: JointPmf,
    a: Iterable[str],
    b: Iterable[str],
    c: Iterable[str] = (),
) -> float:
    """I(A; B | C) in bits, clamped to zero within CLAMP_TOL."""
    return EntropyCache(joint).mutual_information(a, b, c)


def random_joint(
    rng: np.random.Generator,
    variables: Iterable[str],
    sizes: Iterable[int],
) -> JointPmf:
    """A Dirichlet(1,...,1) joint over the given variables (testing/search aid)."""
    variables = _as_label_tuple(variables)
    sizes = tuple(int(n) for n in sizes)
    flat = rng.dirichlet(np.ones(int(np.prod(sizes))))
    return JointPmf(variables, flat.reshape(sizes))


def product_joint(a: JointPmf, b: JointPmf) -> JointPmf:
    """Independent product of two joints over disjoint variable sets."""
    _check_disjoint(("left", frozenset(a.variables)), ("right", frozenset(b.variables)))
    probs = np.multiply.outer(a.probs, b.probs)
    return JointPmf(a.variables + b.variables, probs)
