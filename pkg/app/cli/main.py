import json
import logging
import sys
from fractions import Fraction

import click

from .bench_config import load_config, save_config
from ..core.adversaries.geometric import DoublingGuessPair, GreedyPrefixPair, default_prefix_budget, verify_prefix_lower_bound
from ..core.adversaries.star import sample_star_means, star_expectations
from ..core.adversaries.string_guessing import CoveringGuessPair, GuessZerosPair, verify_guessing_lower_bound
from ..core.advice.covering import b_bound
from ..core.advice.family_cache import FamilyCache
from ..core.config.defaults import DEFAULT_GEOMETRIC_F, DEFAULT_GUESSING_LOG2_A
from ..core.errors import AdviceBenchError, BatchAborted
from ..harness.generators import GENERATORS, GeneratorSpec, generate, instance_document, load_instance_document
from ..harness.runner import ALGORITHMS, batch, run_experiment, run_id_for, run_instance
from ..logging.logger_factory import LoggerFactory
from ..logging.logging_config import set_level

logger = LoggerFactory.get_logger("cli")

# generator kind used by `run` when --kind is omitted
DEFAULT_KINDS = {
    "covering": "asg_random",
    "sparsified-max": "random_graph",
    "sparsified-min": "random_graph",
    "best-bucket": "random_matching",
    "unrelated-norm": "random_unrelated",
    "related-norm": "random_related",
    "unrelated-cover": "random_unrelated",
    "last-edge": "star_adversary",
    "fixed-edge": "star_adversary",
}

DEFAULT_PROBLEMS = {
    "sparsified-min": "vertex_cover",
}

DEFAULT_OBJECTIVES = {
    "unrelated-cover": "minload",
}


def echo_json(data) -> None:
    click.echo(json.dumps(data, indent=2, sort_keys=True, default=str))


def fail(message: str, code: int = 1) -> None:
    click.echo(f"Error: {message}", err=True)
    sys.exit(code)


def exit_code_for(error: str) -> int:
    """Invariant violations get their own exit code so batch scripts can tell them apart."""
    return 2 if error.startswith("InvariantViolation") else 1


# -------------------------
# Config Commands
# -------------------------
@click.group()
def config():
    """Manage advicebench configuration"""
    pass


@config.command("set")
@click.argument("key")
@click.argument("value")
def config_set(key, value):
    config = load_config(with_env=False)
    # Try to cast bool/int if possible
    if value.lower() in ("true", "false"):
        value = value.lower() == "true"
    elif value.isdigit():
        value = int(value)
    config[key] = value
    save_config(config)
    click.echo(f"Set {key} = {value}")


@config.command("list")
def config_list():
    config = load_config()
    for k, v in config.items():
        click.echo(f"{k} = {v}")


# -------------------------
# Top-level CLI group
# -------------------------
@click.group()
@click.option("--debug", is_flag=True, help="Enable debug logging")
@click.pass_context
def cli(ctx, debug):
    """advicebench - simulate online algorithms with advice"""
    ctx.ensure_object(dict)
    ctx.obj['DEBUG'] = debug
    ctx.obj['CONFIG'] = load_config()
    if debug:
        set_level(logging.DEBUG)


def debug_log(ctx, msg, **kwargs):
    if ctx.obj.get('DEBUG'):
        logger.debug(msg, **kwargs)


@cli.command()
@click.pass_context
@click.option("--algo", "algorithm", required=True, type=click.Choice(sorted(ALGORITHMS)), help="Algorithm to run")
@click.option("--kind", type=click.Choice(sorted(GENERATORS)), help="Generator kind (defaults per algorithm)")
@click.option("--problem", help="AOC problem tag for graph generators")
@click.option("--n", "n", type=int, default=8, show_default=True)
@click.option("--m", "m", type=int, default=2, show_default=True)
@click.option("--c", "c", default="2", show_default=True, help="Competitive ratio of the base covering")
@click.option("--eps", "epsilon", default=None, help="Accuracy epsilon")
@click.option("--base", type=click.Choice(["greedy", "covering"]), default="greedy", show_default=True)
@click.option("--j", "j", type=int, default=1, show_default=True, help="Edge accepted by fixed-edge")
@click.option("--objective", default=None, help="linf, l1, l2, lp:<p> or minload")
@click.option("--decades", type=int, default=None, help="Weight decades for log-uniform weights")
@click.option("--weights", default=None, help="Uniform integer weight range LOW:HIGH")
@click.option("--seed", type=int, default=None)
@click.option("--trials", type=int, default=1, show_default=True)
@click.option("--workers", type=int, default=None)
@click.option("--instance", "instance_path", type=click.Path(exists=True, dir_okay=False), help="Run on a saved instance instead")
@click.option("--out", type=click.Path(dir_okay=False), help="JSON-lines report file")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), help="Per-n CSV summary (batches)")
def run(ctx, algorithm, kind, problem, n, m, c, epsilon, base, j, objective, decades, weights, seed, trials, workers, instance_path, out, csv_path):
    """Run one algorithm on a generated or saved instance"""
    cfg = ctx.obj['CONFIG']
    params = {"c": c, "base": base, "j": j}
    if epsilon is not None:
        params["epsilon"] = epsilon

    if instance_path:
        with open(instance_path, "r") as f:
            try:
                instance = load_instance_document(json.load(f))
            except AdviceBenchError as e:
                fail(str(e))
        report = run_instance(instance, algorithm, params, run_id_for(instance_document(instance), algorithm, params))
        _emit_report(report, out)
        return

    low, high = _weight_range(weights)
    spec = GeneratorSpec(
        kind=kind or DEFAULT_KINDS[algorithm],
        n=n,
        m=m,
        seed=seed if seed is not None else cfg["seed"],
        weight_decades=decades if decades is not None else cfg["weight_decades"],
        problem=problem or DEFAULT_PROBLEMS.get(algorithm),
        c=Fraction(c),
        weight_low=low,
        weight_high=high,
        objective=objective or DEFAULT_OBJECTIVES.get(algorithm, "linf"),
    )
    debug_log(ctx, "cli_command", operation="run", algorithm=algorithm, kind=spec.kind, n=n, trials=trials)
    if trials == 1:
        _emit_report(run_experiment(spec, algorithm, params), out)
        return
    try:
        summary = batch([spec], algorithm, params, trials, workers or cfg["workers"], out, csv_path)
    except BatchAborted as e:
        fail(f"{e} (seed {e.seed})", exit_code_for(e.error or ""))
    except AdviceBenchError as e:
        fail(str(e))
    echo_json(summary.to_dict())
    if summary.errors:
        sys.exit(1)


def _weight_range(text):
    if not text:
        return None, None
    try:
        low, high = (int(part) for part in text.split(":"))
    except ValueError:
        raise click.BadParameter(f"expected LOW:HIGH, got {text!r}", param_hint="--weights")
    return low, high


def _emit_report(report, out) -> None:
    if out:
        with open(out, "w") as f:
            f.write(json.dumps(report.to_dict(), sort_keys=True) + "\n")
    echo_json(report.to_dict())
    if report.error is not None:
        sys.exit(exit_code_for(report.error))
    if not report.feasible:
        sys.exit(1)


@cli.command()
@click.pass_context
@click.option("--kind", required=True, type=click.Choice(sorted(GENERATORS)))
@click.option("--n", "n", type=int, required=True)
@click.option("--m", "m", type=int, default=2, show_default=True)
@click.option("--problem", default=None)
@click.option("--objective", default="linf", show_default=True)
@click.option("--decades", type=int, default=None)
@click.option("--f", "f", default=str(DEFAULT_GEOMETRIC_F), show_default=True, help="Growth factor of geometric weights")
@click.option("--c", "c", default="2", show_default=True, help="Star adversary parameter")
@click.option("--seed", type=int, default=None)
@click.option("--out", type=click.Path(dir_okay=False), help="Write the instance here instead of stdout")
def gen(ctx, kind, n, m, problem, objective, decades, f, c, seed, out):
    """Generate a seeded instance as JSON"""
    cfg = ctx.obj['CONFIG']
    spec = GeneratorSpec(
        kind=kind,
        n=n,
        m=m,
        seed=seed if seed is not None else cfg["seed"],
        weight_decades=decades if decades is not None else cfg["weight_decades"],
        problem=problem,
        f=Fraction(f),
        c=Fraction(c),
        objective=objective,
    )
    try:
        document = instance_document(generate(spec))
    except AdviceBenchError as e:
        fail(str(e))
    if out:
        with open(out, "w") as fh:
            json.dump(document, fh, indent=2)
        click.echo(f"Wrote {kind} instance to {out}")
    else:
        echo_json(document)


# --theorem aliases for --family
THEOREM_FAMILIES = {"1": "guessing", "7": "prefix"}


@cli.command("verify-lb")
@click.pass_context
@click.option("--theorem", type=click.Choice(sorted(THEOREM_FAMILIES)), help="1: string guessing, 7: geometric prefixes")
@click.option("--family", "family", type=click.Choice(["guessing", "prefix"]))
@click.option("--n", "n", type=int, required=True)
@click.option("--bits", type=int, default=None, help="Advice budget (prefix default: floor(log2 n) - 1)")
@click.option("--log2a", default=str(DEFAULT_GUESSING_LOG2_A), show_default=True)
@click.option("--algo", "algorithm", default=None, help="guessing: zeros|covering, prefix: greedy|doubling")
@click.option("--problem", default="matching", show_default=True, help="Prefix family problem")
@click.option("--f", "f", default=str(DEFAULT_GEOMETRIC_F), show_default=True)
def verify_lb(ctx, theorem, family, n, bits, log2a, algorithm, problem, f):
    """Search for a lower-bound witness against an algorithm"""
    if (theorem is None) == (family is None):
        raise click.BadParameter("give exactly one of --theorem or --family", param_hint="--theorem")
    family = family or THEOREM_FAMILIES[theorem]
    try:
        if family == "guessing":
            if bits is None:
                raise click.BadParameter("the guessing verifier needs --bits", param_hint="--bits")
            pair = CoveringGuessPair(n) if algorithm == "covering" else GuessZerosPair()
            witness = verify_guessing_lower_bound(pair, n, bits, Fraction(log2a))
        else:
            budget = bits if bits is not None else default_prefix_budget(n)
            pair = DoublingGuessPair(budget) if algorithm == "doubling" else GreedyPrefixPair(problem)
            witness = verify_prefix_lower_bound(pair, problem, n, Fraction(f), budget)
    except AdviceBenchError as e:
        fail(str(e))
    debug_log(ctx, "cli_command", operation="verify-lb", family=family, n=n, verdict=witness.verdict)
    echo_json({"algorithm": pair.name, **witness.to_dict(), "meets_guarantee": witness.meets(witness.guaranteed)})


@cli.command()
@click.option("--c", "c", required=True, help="Star adversary parameter (2c - 1 must be a positive integer)")
@click.option("--samples", type=int, default=0, show_default=True, help="Also estimate by Monte-Carlo")
@click.option("--seed", type=int, default=1, show_default=True)
def expectations(c, samples, seed):
    """Exact expected profits of the star adversary"""
    try:
        exact = star_expectations(Fraction(c))
        data = {"exact": exact.to_dict()}
        if samples > 0:
            sample = sample_star_means(Fraction(c), samples, seed)
            data["sampled"] = sample.to_dict()
            data["within_3_stderr"] = sample.within(exact)
    except AdviceBenchError as e:
        fail(str(e), 2)
    echo_json(data)


@cli.command("family")
@click.pass_context
@click.option("--n", "n", type=int, required=True)
@click.option("--c", "c", required=True)
@click.option("--direction", required=True, type=click.Choice(["min", "max"]))
@click.option("--members", is_flag=True, help="Print the members too")
def family_cmd(ctx, n, c, direction, members):
    """Build (or load) a covering family and report its size"""
    try:
        fam = FamilyCache(ctx.obj['CONFIG']["cache_dir"]).get_or_build(n, Fraction(c), direction)
    except AdviceBenchError as e:
        fail(str(e))
    data = {
        "n": n,
        "c": str(fam.c),
        "direction": direction,
        "size": len(fam),
        "index_width": fam.index_width,
        "b_bound": b_bound(n, fam.c),
        "verified": fam.verify(),
    }
    if members:
        data["members"] = list(fam.members)
    echo_json(data)


# -------------------------
# Add config as subcommand
# -------------------------
cli.add_command(config)
