"""
Hitchin Harmonic - command line entry point.
"""

import json
import sys
import functools
from pathlib import Path

import click

from hitchin_harmonic import __version__
from hitchin_harmonic.shared.config import RunConfig
from hitchin_harmonic.shared.errors import ConfigError, HitchinError
from hitchin_harmonic.shared.export import to_jsonable
from hitchin_harmonic.shared.logging_utils import setup_logging
from hitchin_harmonic.pipeline import run_curve, run_embed, run_geometry, run_harmonic, run_stability


def run_options(func):
    """Options shared by every subcommand."""
    options = [
        click.option('--config', 'config_path', type=click.Path(exists=True, dir_okay=False),
                     help='JSON configuration document'),
        click.option('--seed', type=int, help='Master seed'),
        click.option('--out', 'output_dir', type=click.Path(file_okay=False), help='Output directory'),
        click.option('--d', type=int, help='Target dimension d'),
        click.option('--radius', type=float, help='Stability scale r'),
        click.option('--delta', type=float, help='Mesh spacing Δ'),
        click.option('--window', type=float, help='Curve window T'),
        click.option('--progress/--no-progress', 'show_progress', default=None, help='Show progress bars'),
        click.option('--log-level', default='INFO', show_default=True,
                     type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False)),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def build_config(config_path, log_level, **overrides) -> RunConfig:
    setup_logging(log_level)
    try:
        base = RunConfig.from_json(Path(config_path)) if config_path else RunConfig()
        return base.with_overrides(**overrides)
    except ConfigError as e:
        raise click.UsageError(f"invalid configuration at '{e.field_path or '<root>'}': {e}")


def runner(func):
    """Build the config, run, and map numerical failures to exit status 1 with error.json."""
    @run_options
    @functools.wraps(func)
    def wrapper(config_path, log_level, **kwargs):
        overrides = {k: kwargs.pop(k) for k in list(kwargs)
                     if k in ('seed', 'output_dir', 'd', 'radius', 'delta', 'window', 'show_progress')}
        config = build_config(config_path, log_level, **overrides)
        try:
            func(config, **kwargs)
        except ConfigError as e:
            raise click.UsageError(f"invalid configuration at '{e.field_path or '<root>'}': {e}")
        except HitchinError as e:
            config.output_dir.mkdir(parents=True, exist_ok=True)
            path = config.output_dir / "error.json"
            with open(path, 'w') as f:
                json.dump(to_jsonable(e.payload()), f, indent=2, sort_keys=True)
            click.echo(f"❌ {type(e).__name__}: {e} (details in {path})", err=True)
            sys.exit(1)
    return wrapper


@click.group()
@click.version_option(version=__version__)
def cli():
    """Hitchin Harmonic - harmonic maps from ℍ² to SL(d,ℝ)/SO(d) with stability certificates."""
    pass


# -- geometry -------------------------------------------------------------

@cli.group()
def geometry():
    """Symmetric-space self-tests."""


@geometry.command()
@runner
def selftest(config):
    """Curvature calibration, inequality suites, separation table."""
    summary = run_geometry.run_selftest(config)
    click.echo(f"📊 {summary['passed_tests']}/{summary['total_tests']} checks passed; "
               f"separation ε(Y_{config.d}) = {summary['separation']}")
    if summary['failed_tests']:
        sys.exit(1)


# -- curve ----------------------------------------------------------------

@cli.group()
def curve():
    """Positive curves from monotone data."""


@curve.command()
@click.option('--samples', default=200, show_default=True, help='Sampled triples for the positivity sweep')
@runner
def build(config, samples):
    """Write the curve file and check sampled triples for positivity."""
    report = run_curve.build(config, samples)
    click.echo(f"✅ Curve d={report['d']}: positivity {report['status']}, min margin "
               f"{report['positivity']['min_margin']}")


@curve.command('check-qs')
@click.option('--samples', default=200, show_default=True, help='Sampled symmetric quadruples')
@runner
def check_qs(config, samples):
    """Quasisymmetry constants of the maps and of the curve."""
    report = run_curve.check_qs(config, samples)
    click.echo(f"📊 max map K = {report['max_map_K']:.4f}, curve K = {report['curve']['K']:.4f}")


@curve.command('count-nontransverse')
@click.option('--subspaces', default=100, show_default=True, help='Random subspaces per dimension k')
@click.option('--grid', default=2000, show_default=True, help='Window grid points')
@runner
def count_nontransverse(config, subspaces, grid):
    """Count parameters where φ(t) fails to be transverse to random subspaces."""
    report = run_curve.count_nontransverse_sweep(config, subspaces, grid)
    click.echo(f"📊 max counts {report['max_total']}; {report['flagged']} above k(d−k)")


# -- embed ----------------------------------------------------------------

@cli.group()
def embed():
    """The embedding f = p_d ∘ φ³ ∘ s."""


@embed.command('run')
@runner
def embed_run(config):
    """Evaluate f on the mesh vertices."""
    report = run_embed.run(config)
    click.echo(f"✅ Evaluated f on {report['vertices']} vertices")


@embed.command()
@runner
def constants(config):
    """Sampled quasi-isometry constants L̂ and M̂."""
    report = run_embed.constants(config)
    click.echo(f"📊 L̂ = {report['L']:.4f}, M̂ = {report['M']:.4f}")


@embed.command()
@runner
def morse(config):
    """Weyl-cone Morse defects along sample geodesics."""
    report = run_embed.morse(config)
    click.echo(f"📊 max Morse defect {report['max_defect']:.3e}")


# -- harmonic -------------------------------------------------------------

@cli.group()
def harmonic():
    """Discrete harmonic maps."""


@harmonic.command()
@click.option('--uniqueness/--no-uniqueness', default=True, show_default=True,
              help='Re-solve from a constant start and report the gap')
@runner
def solve(config, uniqueness):
    """Dirichlet problem on the largest configured radius."""
    report = run_harmonic.solve(config, uniqueness)
    click.echo(f"✅ Solved in {report['solve']['iterations']} iterations; "
               f"sup d(h, f) = {report['sup_distance_to_f']:.4f}")


@harmonic.command('exhaust')
@runner
def harmonic_exhaust(config):
    """Solve over the configured radii and track the solutions."""
    report = run_harmonic.exhaust(config)
    click.echo(f"📊 interior growth {report['interior_growth']}")


@harmonic.command('diagnostics')
@click.option('--pairs', default=200, show_default=True, help='Sampled (x, z) pairs for the quadrilateral check')
@runner
def harmonic_diagnostics(config, pairs):
    """Discrete Bochner, subharmonicity, Harnack and quadrilateral diagnostics."""
    report = run_harmonic.diagnostics(config, pairs)
    click.echo(f"📊 Δd ≥ {report['subharmonic_min']:.2e}, max-principle gap {report['maximum_principle_gap']:.2e}")


# -- stability ------------------------------------------------------------

@cli.group()
def stability():
    """Stability certificates."""


@stability.command('certify')
@click.option('--constants/--no-constants', 'with_constants', default=True, show_default=True,
              help='Estimate M̂ for the ε/M̂ ratio threshold')
@runner
def stability_certify(config, with_constants):
    """inf S(f, x, r, η) over sampled centres and ideal points."""
    report = run_stability.certify(config, with_constants)
    click.echo(f"{'✅' if report['status'] == 'PASS' else '❌'} {report['status']}: "
               f"inf S = {report['inf_S']:.4f} at r = {report['r']:g}")


@stability.command('drift')
@click.option('--constants/--no-constants', 'with_constants', default=True, show_default=True,
              help='Estimate M̂ for the reference slope')
@runner
def stability_drift(config, with_constants):
    """inf S/r as r grows over the configured radii."""
    report = run_stability.drift(config, with_constants)
    click.echo(f"📊 inf S/r over radii: {[round(v, 4) for v in report['inf_S_over_r']]}")


if __name__ == '__main__':
    cli()
