import pytest
from harmonic_descent.exceptions import DomainError
from harmonic_descent.numerics import RngStream
from harmonic_descent.chain import Trajectory, simulate, step
from conftest import binomial_stderr, within_sigmas


def test_absorbing_state(rng):
    assert step(1, rng) == 1
    assert simulate(1, rng).states == (1,)


def test_two_goes_straight_to_one(rng):
    assert step(2, rng) == 1
    assert simulate(2, rng).states == (2, 1)


def test_step_from_three_frequency(rng):
    reps = 100_000
    twos = sum(step(3, rng) == 2 for _ in range(reps))
    p = 2 / 3
    assert within_sigmas(twos / reps, p, binomial_stderr(p, reps))


@pytest.mark.parametrize("start", [3, 10, 57, 1000])
def test_trajectories_strictly_decrease(seed, start):
    for r in range(200):
        traj = simulate(start, RngStream(seed=seed, stream_index=r))
        assert traj.states[0] == start
        assert traj.states[-1] == 1
        assert len(traj) <= start
        assert all(b < a for a, b in zip(traj.states, traj.states[1:]))
        assert sum(traj.decrements()) == start - 1
        assert traj.stream_index == r


def test_simulate_is_reproducible(seed):
    a = simulate(500, RngStream(seed=seed, stream_index=4))
    b = simulate(500, RngStream(seed=seed, stream_index=4))
    assert a == b


def test_trajectory_validation():
    with pytest.raises(DomainError):
        Trajectory(states=(5, 3, 3, 1), seed=0, stream_index=0)
    with pytest.raises(DomainError):
        Trajectory(states=(5, 3), seed=0, stream_index=0)
    traj = Trajectory(states=(5, 3, 1), seed=0, stream_index=0)
    assert traj.visits(3)
    assert not traj.visits(2)
    assert traj.decrements() == [2, 2]


@pytest.mark.parametrize("state", [0, -1])
def test_invalid_states(rng, state):
    with pytest.raises(DomainError):
        step(state, rng)
    with pytest.raises(DomainError):
        simulate(state, rng)
