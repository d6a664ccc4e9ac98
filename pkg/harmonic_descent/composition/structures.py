from __future__ import annotations
import typing as ty
import attrs
import numpy as np
from ..exceptions import DomainError


def _check_blocks(instance, attribute, blocks):
    if any(b < 1 for b in blocks):
        raise DomainError(f"composition blocks must be positive: {blocks}")
    if sum(blocks) != instance.n:
        raise DomainError(f"blocks {blocks} do not sum to n={instance.n}")


@attrs.define(frozen=True, kw_only=True)
class Composition:
    """An ordered sequence of positive block sizes summing to n; block k counts the
    sample points in the k-th occupied gap from the left"""

    n: int = attrs.field(validator=attrs.validators.ge(1))
    blocks: ty.Tuple[int, ...] = attrs.field(
        converter=lambda b: tuple(int(x) for x in b), validator=_check_blocks
    )

    @property
    def first_block(self) -> int:
        return self.blocks[0]

    def __len__(self) -> int:
        return len(self.blocks)


def _check_counts(instance, attribute, counts):
    if not counts or counts[-1] != 0:
        raise DomainError(f"occupancy counts must end at 0: {counts}")
    for prev, nxt in zip(counts, counts[1:]):
        if not nxt < prev:
            raise DomainError(f"occupancy counts must strictly decrease: {counts}")


@attrs.define(frozen=True)
class OccupancyTrajectory:
    """X_0(n) = n > X_1(n) > ... > 0, the number of points not in the first k
    occupied gaps"""

    counts: ty.Tuple[int, ...] = attrs.field(
        converter=lambda c: tuple(int(x) for x in c), validator=_check_counts
    )

    def visits(self, count: int) -> bool:
        return count in self.counts

    def blocks(self) -> ty.List[int]:
        return [a - b for a, b in zip(self.counts, self.counts[1:])]


def _check_sorted_positive(instance, attribute, points):
    if points.size != instance.n:
        raise DomainError(f"expected {instance.n} points, got {points.size}")
    if np.any(points <= 0.0) or np.any(np.diff(points) < 0.0):
        raise DomainError("exponential sample must be positive and sorted")


@attrs.define(frozen=True, kw_only=True)
class ExponentialSample:
    "Order statistics E_{1,n} <= ... <= E_{n,n} of n unit-mean exponentials"

    n: int = attrs.field(validator=attrs.validators.ge(1))
    points: np.ndarray = attrs.field(
        converter=lambda p: np.asarray(p, dtype=float),
        validator=_check_sorted_positive,
        eq=False,
    )

    def order_statistic(self, k: int) -> float:
        "E_{k,n}, 1-based"
        if not 1 <= k <= self.n:
            raise DomainError(f"order statistic index {k} not in [1, {self.n}]")
        return float(self.points[k - 1])


@attrs.define(frozen=True, kw_only=True)
class TruncatedSubordinatorPath:
    """Compound-Poisson path keeping only the jumps larger than epsilon

    There is no drift, so the value after the k-th jump is the running sum of the
    first k jump sizes. The path is extended until its value exceeds ``horizon``.
    """

    epsilon: float
    jump_times: np.ndarray = attrs.field(eq=False, repr=False)
    jump_sizes: np.ndarray = attrs.field(eq=False, repr=False)
    horizon: float

    @jump_sizes.validator
    def _check_sizes(self, _, sizes):
        if sizes.shape != self.jump_times.shape:
            raise DomainError("jump_times and jump_sizes must have equal length")
        if np.any(sizes <= self.epsilon):
            raise DomainError(f"all jumps must exceed the truncation level {self.epsilon}")

    @property
    def values(self) -> np.ndarray:
        "Path value just after each jump"
        return np.cumsum(self.jump_sizes)

    def first_passage(self, t: float) -> float:
        "S(S^<-(t)), the first path value strictly above t"
        values = self.values
        k = int(np.searchsorted(values, t, side="right"))
        if k >= values.size:
            raise DomainError(f"path was only simulated up to {self.horizon}, not {t}")
        return float(values[k])

    def overshoot(self, t: float) -> float:
        return self.first_passage(t) - t

    def gap_index(self, points: np.ndarray) -> np.ndarray:
        """Index of the gap containing each point; gap k is [S_k, S_{k+1}) with
        S_0 = 0"""
        return np.searchsorted(self.values, points, side="right")
