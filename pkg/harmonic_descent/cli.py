from __future__ import annotations
import typing as ty
import sys
import logging
from pathlib import Path
import attrs
import click
from .exceptions import DomainError
from .numerics import MAX_SEED, RngStream
from .chain import (
    HittingQuery,
    convergence_table,
    hit_probability_exact,
    hit_probability_mc,
    simulate,
)
from .composition import DEFAULT_EPSILON, compare_first_blocks
from .renewal import chi_tail, hitting_via_overshoot, overshoot_mc
from .utils import write_csv
from .verify import SUITES, format_report, run_suite


logger = logging.getLogger("harmonic_descent")

DEFAULT_SEED = 0
DEFAULT_REPS = 10_000

COMMANDS = (
    "limit-table",
    "hit",
    "simulate",
    "verify",
    "verify-kernel",
    "verify-renewal",
    "verify-composition",
    "balls-in-boxes",
    "overshoot",
)

OVERSHOOT_GRID = tuple(0.25 * k for k in range(21))


def _check_command(instance, attribute, value):
    if value not in COMMANDS:
        raise DomainError(f"unknown command {value!r}")


def _check_reps(instance, attribute, value):
    if value < 1:
        raise DomainError(f"reps must be >= 1, not {value}")


def _check_epsilon(instance, attribute, value):
    if not 0.0 < value < 1.0:
        raise DomainError(f"epsilon must lie in (0, 1), not {value}")


@attrs.define(frozen=True, kw_only=True)
class RunConfig:
    """The validated settings of one CLI invocation"""

    command: str = attrs.field(validator=_check_command)
    seed: int = attrs.field(default=DEFAULT_SEED, converter=int)
    reps: int = attrs.field(default=DEFAULT_REPS, converter=int, validator=_check_reps)
    epsilon: float = attrs.field(
        default=DEFAULT_EPSILON, converter=float, validator=_check_epsilon
    )
    output_path: ty.Optional[Path] = attrs.field(
        default=None, converter=attrs.converters.optional(Path)
    )

    @seed.validator
    def _check_seed(self, _, value):
        if not 0 <= value <= MAX_SEED:
            raise DomainError(f"seed must be an unsigned 64-bit integer, not {value}")

    def rng(self, stream_index: int = 0) -> RngStream:
        "Parent stream; estimators sharing one run take distinct stream indices"
        return RngStream(seed=self.seed, stream_index=stream_index)

    def emit(self, header: ty.Sequence[str], rows: ty.Iterable[ty.Sequence]):
        text = write_csv(header, rows, self.output_path)
        if self.output_path is None:
            click.echo(text, nl=False)


def make_config(ctx: click.Context, **kwargs) -> RunConfig:
    try:
        return RunConfig(command=ctx.info_name, **kwargs)
    except DomainError as e:
        raise click.UsageError(str(e), ctx=ctx)


def _parse_int_list(ctx, param, value: str) -> ty.List[int]:
    if not value or not value.strip():
        return []
    try:
        values = [int(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter(f"expected a comma-separated list of integers: {value!r}")
    if any(v < 1 for v in values):
        raise click.BadParameter(f"all n must be positive: {value!r}")
    return values


##################
# Shared options #
##################


def seed_option(func):
    return click.option(
        "--seed",
        type=click.IntRange(0, MAX_SEED),
        default=DEFAULT_SEED,
        show_default=True,
        help="seed of the random streams; replicate r derives its own stream",
    )(func)


def reps_option(func):
    return click.option(
        "--reps",
        type=int,
        default=DEFAULT_REPS,
        show_default=True,
        help="number of Monte Carlo replicates",
    )(func)


def eps_option(func):
    return click.option(
        "--eps",
        "epsilon",
        type=float,
        default=DEFAULT_EPSILON,
        show_default=True,
        help="jump truncation level of the simulated subordinator",
    )(func)


def out_option(func):
    return click.option(
        "--out",
        "output_path",
        type=click.Path(dir_okay=False, path_type=Path),
        default=None,
        help="write the CSV here instead of stdout",
    )(func)


@click.group(
    name="harmonic-descent",
    help="""Exact, quadrature and Monte Carlo numerics for the harmonic descent
chain, its balls-in-boxes representation and the limiting overshoot law.
All output is deterministic given the flags, including --seed.""",
)
@click.option(
    "--loglevel",
    type=click.Choice(["debug", "info", "warning", "error"], case_sensitive=False),
    default="warning",
    show_default=True,
    help="level of the log messages written to stderr",
)
def cli(loglevel: str):
    pkg_logger = logging.getLogger("harmonic_descent")
    pkg_logger.setLevel(loglevel.upper())
    if not pkg_logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(
            logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
        )
        pkg_logger.addHandler(handler)


@cli.command(
    name="limit-table",
    help="""Exact hitting probabilities q_n(i) of state i + 1 from n + 1 next to the
limit h_i / (zeta(2) i), for i = 1..I_MAX and every n in the list with n > i.""",
)
@click.option("--i-max", type=click.IntRange(min=1), default=1, show_default=True)
@click.option(
    "--n",
    "n_list",
    default="",
    callback=_parse_int_list,
    help="comma-separated start indices n",
)
@out_option
@click.pass_context
def limit_table(ctx, i_max: int, n_list: ty.List[int], output_path: ty.Optional[Path]):
    config = make_config(ctx, output_path=output_path)
    rows = []
    for i in range(1, i_max + 1):
        starts = [n for n in n_list if n > i]
        for row in convergence_table(i, starts):
            rows.append((i, row.n, row.q, row.limit, row.gap))
    config.emit(("i", "n", "q_n_exact", "limit", "gap"), rows)


@cli.command(
    name="hit",
    help="""Probability that the chain started at START ever visits TARGET: exact
dynamic programming, direct simulation of the chain and the overshoot
representation of the equivalent balls-in-boxes event.""",
)
@click.option("--start", type=click.IntRange(min=2), required=True)
@click.option("--target", type=click.IntRange(min=2), required=True)
@reps_option
@seed_option
@eps_option
@out_option
@click.pass_context
def hit(ctx, start, target, reps, seed, epsilon, output_path):
    config = make_config(
        ctx, seed=seed, reps=reps, epsilon=epsilon, output_path=output_path
    )
    try:
        query = HittingQuery(start=start, target=target)
    except DomainError as e:
        raise click.UsageError(str(e), ctx=ctx)
    exact = hit_probability_exact(query)
    chain_mc, chain_se = hit_probability_mc(query, config.reps, config.rng())
    if start > target:
        over_mc, over_se = hitting_via_overshoot(
            start - 1, target - 1, config.epsilon, config.reps, config.rng(1)
        )
    else:
        over_mc, over_se = 1.0, 0.0
    config.emit(
        (
            "start",
            "target",
            "exact",
            "chain_mc",
            "chain_stderr",
            "overshoot_mc",
            "overshoot_stderr",
        ),
        [(start, target, exact, chain_mc, chain_se, over_mc, over_se)],
    )


@cli.command(name="simulate", help="Prints one trajectory of the chain from START.")
@click.option("--start", type=click.IntRange(min=1), required=True)
@seed_option
@out_option
@click.pass_context
def simulate_cmd(ctx, start, seed, output_path):
    config = make_config(ctx, seed=seed, output_path=output_path)
    trajectory = simulate(start, config.rng())
    text = " ".join(str(s) for s in trajectory.states) + "\n"
    if config.output_path is not None:
        with open(config.output_path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    else:
        click.echo(text, nl=False)


def _run_verify(ctx: click.Context, suite: str):
    checks = run_suite(suite)
    click.echo(format_report(suite, checks), nl=False)
    if not all(c.passed for c in checks):
        ctx.exit(1)


@cli.command(
    name="verify",
    help="Runs the named invariant suite; exits 1 if any check fails.",
)
@click.argument("suite", type=click.Choice(sorted(SUITES)))
@click.pass_context
def verify(ctx, suite):
    _run_verify(ctx, suite)


def _make_verify_command(suite: str):
    @cli.command(
        name=f"verify-{suite}",
        help=f"Runs the {suite} invariant suite; exits 1 if any check fails.",
    )
    @click.pass_context
    def command(ctx):
        _run_verify(ctx, suite)

    return command


verify_kernel = _make_verify_command("kernel")
verify_renewal = _make_verify_command("renewal")
verify_composition = _make_verify_command("composition")


@cli.command(
    name="balls-in-boxes",
    help="""First-block-size distribution of compositions of N drawn from the
truncated subordinator and from the decrement kernel, side by side.""",
)
@click.option("--n", "n", type=click.IntRange(min=1), default=20, show_default=True)
@reps_option
@seed_option
@eps_option
@out_option
@click.pass_context
def balls_in_boxes_cmd(ctx, n, reps, seed, epsilon, output_path):
    config = make_config(
        ctx, seed=seed, reps=reps, epsilon=epsilon, output_path=output_path
    )
    comparison = compare_first_blocks(n, config.reps, config.rng(), config.epsilon)
    logger.info(
        "total variation %.4g, chi-square p-value %.3g",
        comparison.total_variation,
        comparison.p_value,
    )
    rows = [
        (k, float(comparison.balls_in_boxes[k - 1]), float(comparison.kernel[k - 1]))
        for k in range(1, n + 1)
    ]
    config.emit(("first_block", "balls_in_boxes", "kernel"), rows)


@cli.command(
    name="overshoot",
    help="""Empirical tail of the first-passage overshoot over level T next to the
tail of its limit law chi.""",
)
@click.option("--t", "level", type=float, default=30.0, show_default=True)
@reps_option
@seed_option
@eps_option
@out_option
@click.pass_context
def overshoot(ctx, level, reps, seed, epsilon, output_path):
    config = make_config(
        ctx, seed=seed, reps=reps, epsilon=epsilon, output_path=output_path
    )
    if not level > 0.0:
        raise click.UsageError(f"level must be positive, not {level}", ctx=ctx)
    estimate = overshoot_mc(level, config.epsilon, config.reps, config.rng())
    logger.info("Kolmogorov-Smirnov distance to chi: %.4g", estimate.ks_distance())
    rows = [
        (y, estimate.empirical_tail(y), float(chi_tail(y))) for y in OVERSHOOT_GRID
    ]
    config.emit(("y", "empirical_tail", "chi_tail"), rows)


if __name__ == "__main__":
    cli(sys.argv[1:])
