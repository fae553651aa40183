import click
import logging
import sys
import os

# Adjust path to import from src
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from src.config_loader import get_config, load_config
from src.errors import ConfigError, JetMismatchError, NonConvergenceError, ShutterError
from src.experiments import (cmd_compare_interiors, cmd_edge_compare, cmd_fringe, cmd_propagate,
                             cmd_window, load_experiment, read_experiment_config, build_config)
from src.utils import setup_logging

# Initialize logging -- BEFORE anything else tries to log
if get_config() is None:
    load_config()
setup_logging()

log = logging.getLogger(__name__)

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_JET_MISMATCH = 4


def exit_code_for(error: ShutterError) -> int:
    """0 success, 2 config/domain, 3 non-convergence, 4 jet mismatch."""
    if isinstance(error, JetMismatchError):
        return EXIT_JET_MISMATCH
    if isinstance(error, NonConvergenceError):
        return EXIT_NUMERICAL
    # Everything else is a problem with the input.
    return EXIT_CONFIG


def run_command(func, *args, **kwargs) -> None:
    """Runs a command body, echoes its summary, maps failures to exit codes."""
    try:
        summary = func(*args, **kwargs)
    except ShutterError as e:
        code = exit_code_for(e)
        log.error(f"{type(e).__name__}: {e}")
        click.echo(f"error: {e}", err=True)
        sys.exit(code)
    click.echo(" ".join(f"{key}={value}" for key, value in summary.items()))


def _experiment(config_path: str, output: str):
    try:
        cfg = load_experiment(config_path)
    except ConfigError as e:
        log.error(f"ConfigError: {e}")
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_CONFIG)
    if output:
        cfg.output = output
    return cfg


config_option = click.option('--config', 'config_path', required=True,
                             type=click.Path(dir_okay=False), help="Experiment config file.")
output_option = click.option('--output', default=None, help="Override the config's output path.")


@click.group()
@click.option('--self-check', is_flag=True, default=False,
              help="Recompute propagate results by an independent exact method.")
@click.pass_context
def shutterprop(ctx, self_check):
    """Free-particle shutter propagation: oracles, boundary series and experiment runs."""
    ctx.ensure_object(dict)
    ctx.obj['self_check'] = self_check
    log.debug("CLI started.")


@shutterprop.command()
@config_option
@output_option
@click.pass_context
def propagate(ctx, config_path, output):
    """Propagate a packet and write psi(x, t) to CSV."""
    cfg = _experiment(config_path, output)
    run_command(cmd_propagate, cfg, run_self_check=ctx.obj['self_check'])


@shutterprop.command(name='compare-interiors')
@config_option
@output_option
def compare_interiors(config_path, output):
    """Two packets with matching edge jets, compared against each other."""
    run_command(cmd_compare_interiors, _experiment(config_path, output))


@shutterprop.command(name='edge-compare')
@config_option
@output_option
def edge_compare(config_path, output):
    """tanh edge vs. sharp step vs. boundary series."""
    run_command(cmd_edge_compare, _experiment(config_path, output))


@shutterprop.command()
@config_option
@output_option
def fringe(config_path, output):
    """Multi-edge interference density and its fringe periods."""
    run_command(cmd_fringe, _experiment(config_path, output))


@shutterprop.command()
@click.option('--config', 'config_path', default=None, type=click.Path(dir_okay=False),
              help="Optional config with mass_kg, distance_m, edge_width_m.")
@click.option('--mass-kg', type=float, default=None)
@click.option('--distance-m', type=float, default=None)
@click.option('--edge-width-m', type=float, default=None)
def window(config_path, mass_kg, distance_m, edge_width_m):
    """Physical-time validity window for a smooth edge."""
    values = {'mass_kg': mass_kg, 'distance_m': distance_m, 'edge_width_m': edge_width_m}
    if config_path:
        try:
            cfg = build_config(read_experiment_config(config_path))
        except ConfigError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_CONFIG)
        for key in values:
            if values[key] is None:
                values[key] = getattr(cfg, key)
    for key, value in values.items():
        if value is None:
            click.echo(f"error: config key '{key}': is required for this command", err=True)
            sys.exit(EXIT_CONFIG)
    run_command(cmd_window, **values)


if __name__ == '__main__':
    shutterprop()
