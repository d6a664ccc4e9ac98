from __future__ import annotations
import typing as ty
import attrs
import numpy as np
from ..exceptions import DomainError


MAX_SEED = 2**64 - 1


def _check_seed(instance, attribute, value):
    if not 0 <= value <= MAX_SEED:
        raise DomainError(f"seed must be an unsigned 64-bit integer, not {value}")


def _check_index(instance, attribute, value):
    if value < 0:
        raise DomainError(f"stream_index must be non-negative, not {value}")


def _check_lineage(instance, attribute, value):
    if any(r < 0 for r in value):
        raise DomainError(f"replicate indices must be non-negative, not {value}")


@attrs.define(eq=False)
class RngStream:
    """A reproducible random stream identified by (seed, stream_index, *lineage)

    The stream is a PCG64 generator seeded from
    ``numpy.random.SeedSequence(seed, spawn_key=(stream_index, *lineage))``, so
    distinct keys give independent sequences and equal keys give identical ones.
    The instance carries generator state and must not be shared between threads.

    Parameters
    ----------
    seed : int
        unsigned 64-bit seed
    stream_index : int
        index of the stream derived from the seed
    lineage : tuple of int
        replicate indices leading from the parent stream to this one, empty for a
        parent; Monte Carlo replicate r of a parent appends r
    """

    seed: int = attrs.field(default=0, converter=int, validator=_check_seed)
    stream_index: int = attrs.field(default=0, converter=int, validator=_check_index)
    lineage: ty.Tuple[int, ...] = attrs.field(
        default=(),
        converter=lambda v: tuple(int(r) for r in v),
        validator=_check_lineage,
    )
    _generator: np.random.Generator = attrs.field(init=False, repr=False)

    def __attrs_post_init__(self):
        self._generator = self.make_generator()

    def make_generator(self) -> np.random.Generator:
        "A fresh generator positioned at the start of this stream"
        seq = np.random.SeedSequence(
            self.seed, spawn_key=(self.stream_index,) + self.lineage
        )
        return np.random.Generator(np.random.PCG64(seq))

    @property
    def generator(self) -> np.random.Generator:
        return self._generator

    def replicate(self, r: int) -> RngStream:
        """The stream owned by Monte Carlo replicate ``r`` of this stream

        Replicates of different parents are independent of each other and of
        their parents."""
        return RngStream(
            seed=self.seed, stream_index=self.stream_index, lineage=self.lineage + (r,)
        )

    def key(self) -> ty.Tuple[int, ...]:
        return (self.seed, self.stream_index) + self.lineage

    def __eq__(self, other):
        if not isinstance(other, RngStream):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    ##################
    # Draw shortcuts #
    ##################

    def random(self, size: ty.Optional[int] = None):
        "Uniform on [0, 1)"
        return self._generator.random(size)

    def uniform_open(self, size: ty.Optional[int] = None):
        "Uniform on (0, 1], safe to pass through log or an inverse tail"
        return 1.0 - self._generator.random(size)

    def exponential(self, scale: float = 1.0, size: ty.Optional[int] = None):
        return self._generator.exponential(scale, size)

    def beta(self, a: float, b: float, size: ty.Optional[int] = None):
        return self._generator.beta(a, b, size)
