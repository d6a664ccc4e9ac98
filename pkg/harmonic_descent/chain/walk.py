from __future__ import annotations
import typing as ty
import attrs
from ..exceptions import DomainError
from ..numerics import RngStream
from .kernel import sample_decrement


ChainState = ty.NewType("ChainState", int)

ABSORBING_STATE = ChainState(1)


def _strictly_decreasing_to_one(instance, attribute, states):
    if not states or states[-1] != 1:
        raise DomainError(f"trajectory must end in the absorbing state 1: {states}")
    for prev, nxt in zip(states, states[1:]):
        if not 1 <= nxt < prev:
            raise DomainError(f"trajectory is not strictly decreasing: {states}")


@attrs.define(frozen=True, kw_only=True)
class Trajectory:
    """A realised path of the chain down to absorption, together with the stream
    that produced it"""

    states: ty.Tuple[int, ...] = attrs.field(
        converter=tuple, validator=_strictly_decreasing_to_one
    )
    seed: int
    stream_index: int

    def __len__(self) -> int:
        return len(self.states)

    def visits(self, state: int) -> bool:
        return state in self.states

    def decrements(self) -> ty.List[int]:
        return [a - b for a, b in zip(self.states, self.states[1:])]


def step(state: int, rng: RngStream) -> ChainState:
    """Moves the chain one step from ``state``

    Parameters
    ----------
    state : int
        current state, >= 1
    rng : RngStream
        source of the uniform driving the inverse-CDF draw

    Returns
    -------
    ChainState
        the next state; 1 is absorbing
    """
    if state < 1:
        raise DomainError(f"chain states are positive integers, not {state}")
    if state == 1:
        return ABSORBING_STATE
    return ChainState(state - sample_decrement(state, rng.random()))


def simulate(start: int, rng: RngStream) -> Trajectory:
    "Runs the chain from ``start`` until it is absorbed at 1"
    if start < 1:
        raise DomainError(f"chain states are positive integers, not {start}")
    states = [start]
    state = start
    while state > 1:
        state = step(state, rng)
        states.append(state)
    return Trajectory(states=states, seed=rng.seed, stream_index=rng.stream_index)
