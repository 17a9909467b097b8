#!/usr/bin/env python3

import logging
import sys
from functools import wraps
from pathlib import Path
from typing import Optional

import click
from pydantic import ValidationError

from .bench.datasets import Dataset, load_dataset
from .bench.harness import (
    ALGORITHMS,
    DEFAULT_ALPHAS,
    DEFAULT_ETAS,
    ExperimentConfig,
    format_report,
    run_once,
    run_sweep,
)
from .config.settings import Settings, get_settings, set_settings
from .core.instance import INSTANCE_FORMATS, perturb, save_ground_truth, save_instance
from .core.parallel import spawn_seeds
from .errors import ActiveCCError, CapacityError
from .exact.solver import exact_opt
from .exact.vc import vc_shattering_check
from .metrics.structure import bad_triangle_stats

EXIT_PARAMETER = 2
EXIT_CAPACITY = 3
EXIT_IO = 4

logger = logging.getLogger(__name__)


def _configure_logging(verbose: bool) -> None:
    settings = get_settings()
    level = logging.DEBUG if verbose else getattr(logging, settings.log_level.upper(), logging.INFO)
    handlers = [logging.StreamHandler(sys.stderr)]
    if settings.log_file:
        handlers.append(logging.FileHandler(settings.log_file))
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=handlers,
        force=True,
    )


def _floats(text: Optional[str], default):
    if text is None:
        return list(default)
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {text!r}")


def handle_errors(fn):
    """Map library errors to exit codes: 2 parameter, 3 capacity, 4 I/O."""

    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except CapacityError as e:
            click.echo(f"❌ Capacity error: {e}", err=True)
            sys.exit(EXIT_CAPACITY)
        except (ActiveCCError, ValidationError, ValueError) as e:
            click.echo(f"❌ Parameter error: {e}", err=True)
            sys.exit(EXIT_PARAMETER)
        except OSError as e:
            click.echo(f"❌ I/O error: {e}", err=True)
            sys.exit(EXIT_IO)

    return wrapper


def seed_option(fn):
    return click.option("--seed", type=int, default=None, help="Master seed (default from settings)")(fn)


def dataset_options(fn):
    fn = click.option(
        "--truth", type=click.Path(exists=True, dir_okay=False, path_type=Path), default=None,
        help="Ground-truth file (default: <dataset>.truth next to a dataset file)",
    )(fn)
    fn = click.option(
        "--format", "fmt", type=click.Choice(INSTANCE_FORMATS), default="edges",
        help="Instance file format when --dataset is a path",
    )(fn)
    return click.option(
        "--dataset", default="skew", show_default=True,
        help="Generator spec (skew, sqrt, cliques:..., lb-cliques:n,d, planted:n,eps) or file",
    )(fn)


@click.group()
@click.version_option(version="1.0.0", prog_name="activecc")
@click.option("--verbose", "-v", is_flag=True, help="Enable verbose logging")
@click.option(
    "--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
    help="JSON settings file (overrides environment and .env)",
)
@click.pass_context
def cli(ctx, verbose, config_path):
    """activecc - active correlation clustering under a query budget"""
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    if config_path:
        try:
            set_settings(Settings.from_file(config_path))
        except ValueError as e:
            raise click.BadParameter(str(e), param_hint="--config")
    _configure_logging(verbose)
    logger.debug(f"Settings: {get_settings().to_dict()}")


@cli.command()
@dataset_options
@seed_option
@click.option("--eta", type=float, default=0.0, help="Perturbation strength applied after generation")
@click.option("--out", type=click.Path(path_type=Path), required=True, help="Instance file to write")
@handle_errors
def gen(dataset, fmt, truth, seed, eta, out):
    """Generate a dataset and write it with its ground truth"""
    seed = get_settings().default_seed if seed is None else seed
    dataset_seed, perturb_seed = spawn_seeds(seed, 2)
    data = load_dataset(dataset, dataset_seed, fmt, truth)
    instance = perturb(data.instance, eta, perturb_seed) if eta else data.instance
    save_instance(instance, out, fmt)
    click.echo(f"✅ Wrote {out} (n={instance.n}, |E|={instance.num_edges})")
    if data.ground_truth is not None:
        truth_path = out.with_suffix(out.suffix + ".truth")
        save_ground_truth(data.ground_truth, truth_path)
        click.echo(f"✅ Wrote {truth_path} ({data.ground_truth.num_clusters} clusters)")


@cli.command()
@dataset_options
@seed_option
@click.option("--algo", type=click.Choice(ALGORITHMS), default="acc", show_default=True)
@click.option("--alpha", type=float, default=1.0, show_default=True, help="Query rate f(x)=x^alpha")
@click.option("--eta", type=float, default=0.0, help="Perturbation strength")
@click.option("--budget", type=int, default=None, help="Hard cap on oracle queries")
@click.option("--runs", "acr_k", type=int, default=None, help="ACR repetitions K")
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Write the report here")
@handle_errors
def run(dataset, fmt, truth, seed, algo, alpha, eta, budget, acr_k, out):
    """Run one algorithm once and print a key=value report"""
    seed = get_settings().default_seed if seed is None else seed
    dataset_seed, perturb_seed, run_seed = spawn_seeds(seed, 3)
    data = load_dataset(dataset, dataset_seed, fmt, truth)
    if eta:
        data = Dataset(data.name, perturb(data.instance, eta, perturb_seed), data.ground_truth)
    report = run_once(data, algo, alpha, run_seed, budget=budget, acr_k=acr_k)
    report.update(seed=seed, eta=eta)
    text = format_report(report)
    if out is not None:
        out.write_text(text, encoding="utf-8")
        click.echo(f"✅ Report written to {out}")
    else:
        click.echo(text, nl=False)


@cli.command()
@dataset_options
@seed_option
@click.option("--algo", type=click.Choice(ALGORITHMS), default="acc", show_default=True)
@click.option("--alpha", default=None, help="Comma-separated alpha grid (default 0,0.05,...,1)")
@click.option("--eta", default=None, help="Comma-separated eta grid (default 0,0.1,0.5,1)")
@click.option("--reps", type=int, default=None, help="Repetitions per grid point")
@click.option("--runs", "acr_k", type=int, default=None, help="ACR repetitions K")
@click.option("--workers", type=int, default=None, help="Worker processes for repetitions")
@click.option("--out", type=click.Path(path_type=Path), default=None, help="CSV file to write")
@handle_errors
def sweep(dataset, fmt, truth, seed, algo, alpha, eta, reps, acr_k, workers, out):
    """Sweep (eta, alpha) and write the tradeoff CSV"""
    settings = get_settings()
    out = out or settings.output_path / "tradeoff.csv"
    config = ExperimentConfig(
        dataset=dataset,
        etas=_floats(eta, DEFAULT_ETAS),
        alphas=_floats(alpha, DEFAULT_ALPHAS),
        repetitions=reps if reps is not None else settings.repetitions,
        seed=settings.default_seed if seed is None else seed,
        algorithm=algo,
        output=str(out),
        format=fmt,
        truth=str(truth) if truth else None,
        acr_runs=acr_k,
        max_workers=workers if workers is not None else settings.max_workers,
    )
    records = run_sweep(config, settings)
    click.echo(f"✅ {len(records)} records written to {out}")


@cli.command()
@dataset_options
@seed_option
@click.option("--eta", type=float, default=0.0, help="Perturbation strength")
@handle_errors
def opt(dataset, fmt, truth, seed, eta):
    """Exact OPT and the bad-triangle lower bound"""
    seed = get_settings().default_seed if seed is None else seed
    dataset_seed, perturb_seed = spawn_seeds(seed, 2)
    data = load_dataset(dataset, dataset_seed, fmt, truth)
    instance = perturb(data.instance, eta, perturb_seed) if eta else data.instance
    value, clustering = exact_opt(instance)
    triangles = bad_triangle_stats(instance)
    click.echo(f"n={instance.n}")
    click.echo(f"opt={value}")
    click.echo(f"clusters={clustering.num_clusters}")
    click.echo(f"bad_triangles={triangles.total}")
    click.echo(f"triangle_packing={triangles.packing_size}")


@cli.command("vc-check")
@click.argument("n", type=int)
@handle_errors
def vc_check(n):
    """VC dimension of the partition class on n nodes"""
    click.echo(f"n={n}")
    click.echo(f"vc_dimension={vc_shattering_check(n)}")


if __name__ == "__main__":
    cli()
