"""Command line front end for posopt."""

import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

import click

from . import __version__
from .commands import CommandSpec, dispatch, run_batch
from .config.settings import get_config, load_config_file, with_overrides
from .errors import InputError, PosoptError, exit_code_for
from .relax.problem import PREORDER, QUADRATIC_MODULE
from .sdp import Tolerances
from .sos import QUILLEN, REZNICK
from .utils.serialization import write_json

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'
NC_MODES = click.Choice(['symmetric', 'free_star'])


@dataclass
class CliState:
    """Settings shared by every subcommand of one invocation."""

    tol: Tolerances
    output_format: str = 'json'
    output: Optional[str] = None
    seed: Optional[int] = None


def _parse_json_text(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        # not JSON: a file path, read by the command
        return text


def _json_value(ctx, param, value):
    """Click callback: inline JSON is decoded, anything else is kept as a path."""
    if value is None:
        return None
    if isinstance(value, tuple):
        return [_parse_json_text(v) for v in value] or None
    return _parse_json_text(value)


def render_text(envelope: Dict[str, Any]) -> str:
    """Human readable summary of a result envelope."""
    lines = [
        f"command:  {envelope['command']}",
        f"verdict:  {envelope['verdict']}",
        f"digest:   {envelope['inputs_digest']}",
    ]
    for key, value in envelope.get('diagnostics', {}).items():
        if isinstance(value, (str, int, float, bool)) or value is None:
            lines.append(f'  {key}: {value}')
    certificate = envelope.get('certificate')
    if certificate:
        lines.append(f"certificate: {', '.join(sorted(certificate))}")
    return '\n'.join(lines)


def _emit(state: CliState, payload: Any, text: str) -> None:
    if state.output:
        write_json(payload, state.output)
        logger.info(f'Wrote {state.output}')
    if state.output_format == 'text':
        click.echo(text)
    else:
        click.echo(write_json(payload, None))


def _run(ctx: click.Context, command: str, **options) -> None:
    """Dispatch one subcommand and print its envelope; errors map to exit codes."""
    state: CliState = ctx.obj
    options = {k: v for k, v in options.items() if v is not None}
    if state.seed is not None:
        options.setdefault('seed', state.seed)
    try:
        envelope = dispatch(CommandSpec(command, options, state.output_format), state.tol)
    except PosoptError as e:
        logger.debug('Command failed', exc_info=True)
        click.echo(f'Error: {e}', err=True)
        ctx.exit(exit_code_for(e))
    _emit(state, envelope, render_text(envelope))


def _run_batch(state: CliState, path: str, workers: int) -> None:
    specs: List[CommandSpec] = []
    for number, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            specs.append(CommandSpec.from_record(json.loads(line)))
        except json.JSONDecodeError as e:
            raise InputError(f'{path}:{number}: {e}')
    logger.info(f'Running {len(specs)} batch records on {workers} workers')
    results = run_batch(specs, state.tol, workers)
    if state.output:
        write_json(results, state.output)
    for result in results:
        if state.output_format == 'text' and 'verdict' in result:
            click.echo(render_text(result))
        else:
            click.echo(json.dumps(result, sort_keys=True))


@click.group(invoke_without_command=True)
@click.option('--config', 'config_path', type=click.Path(exists=True, dir_okay=False),
              help='key=value file with default tolerances.')
@click.option('--env', default=None, help='Configuration profile, e.g. development or testing.')
@click.option('--format', 'output_format', type=click.Choice(['json', 'text']), default='json',
              help='Result format on stdout.')
@click.option('--output', type=click.Path(dir_okay=False), help='Also write the JSON result here.')
@click.option('--batch', type=click.Path(exists=True, dir_okay=False),
              help='JSON-lines file of {command, options} records.')
@click.option('--seed', type=int, help='Seed for randomized searches (default POSOPT_SEED).')
@click.option('--log-level', type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                                               case_sensitive=False))
@click.version_option(__version__, prog_name='posopt')
@click.pass_context
def cli(ctx, config_path, env, output_format, output, batch, seed, log_level):
    """Positivity certificates and polynomial optimization."""
    try:
        cfg = get_config(env)
        if config_path:
            cfg = load_config_file(config_path, cfg)
    except (FileNotFoundError, ValueError) as e:
        raise click.BadParameter(str(e), param_hint='--config')
    cfg = with_overrides(cfg, {'POSOPT_SEED': seed,
                               'POSOPT_LOG_LEVEL': log_level.upper() if log_level else None})

    logging.basicConfig(level=getattr(logging, cfg.POSOPT_LOG_LEVEL.upper(), logging.WARNING),
                        format=LOG_FORMAT, stream=sys.stderr)

    state = CliState(Tolerances.from_config(cfg), output_format, output, seed)
    ctx.obj = state

    if batch:
        try:
            _run_batch(state, batch, cfg.POSOPT_WORKERS)
        except PosoptError as e:
            click.echo(f'Error: {e}', err=True)
            ctx.exit(exit_code_for(e))
        ctx.exit(0)
    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


num_vars_option = click.option('-g', '--num-vars', type=int, help='Number of variables.')


# sos

@cli.group()
def sos():
    """Sums of squares."""


@sos.command('check')
@click.option('-f', 'f', required=True, help='Polynomial, e.g. "x1^4 + 1".')
@num_vars_option
@click.option('--prune/--no-prune', default=True, help='Newton polytope pruning.')
@click.pass_context
def sos_check(ctx, f, num_vars, prune):
    """Gram SDP: SOS certificate or a separating functional."""
    _run(ctx, 'sos check', f=f, num_vars=num_vars, prune=prune)


@sos.command('extract')
@click.option('-f', 'f', required=True)
@num_vars_option
@click.pass_context
def sos_extract(ctx, f, num_vars):
    """Explicit squares q_j with f = Σ q_j²."""
    _run(ctx, 'sos extract', f=f, num_vars=num_vars)


@sos.command('hsos')
@click.option('-p', 'p', required=True, help='Hermitian polynomial in z1, zb1, ...')
@click.option('--real', is_flag=True, help='Also check the real rewrite.')
@click.pass_context
def sos_hsos(ctx, p, real):
    """Sum of hermitian squares."""
    _run(ctx, 'sos hsos', p=p, real=real)


@sos.command('multiplier')
@click.option('-f', 'f', required=True)
@click.option('--mode', type=click.Choice([REZNICK, QUILLEN]), default=REZNICK)
@click.option('--m-max', type=int, default=3)
@num_vars_option
@click.pass_context
def sos_multiplier(ctx, f, mode, m_max, num_vars):
    """Smallest multiplier power that makes f SOS."""
    _run(ctx, 'sos multiplier', f=f, mode=mode, m_max=m_max, num_vars=num_vars)


@sos.command('perturb')
@click.option('-f', 'f', required=True)
@click.option('-r', 'r', type=int, required=True)
@num_vars_option
@click.pass_context
def sos_perturb(ctx, f, r, num_vars):
    """Smallest ε with f + εΘ_r SOS."""
    _run(ctx, 'sos perturb', f=f, r=r, num_vars=num_vars)


# minimize

@cli.group(invoke_without_command=True)
@click.option('-f', 'f', help='Objective; without a subcommand runs "minimize global".')
@click.option('--order', type=int)
@num_vars_option
@click.pass_context
def minimize(ctx, f, order, num_vars):
    """Moment / SOS relaxations."""
    if ctx.invoked_subcommand is None:
        if not f:
            click.echo(ctx.get_help())
            return
        _run(ctx, 'minimize global', f=f, order=order, num_vars=num_vars)


@minimize.command('global')
@click.option('-f', 'f', required=True)
@click.option('--order', type=int)
@num_vars_option
@click.pass_context
def minimize_global(ctx, f, order, num_vars):
    """Unconstrained lower bound."""
    _run(ctx, 'minimize global', f=f, order=order, num_vars=num_vars)


@minimize.command('constrained')
@click.option('--problem', callback=_json_value, help='Problem JSON (inline or file).')
@click.option('-f', 'f')
@click.option('-c', '--constraint', 'constraints', multiple=True, help='p_i ≥ 0; repeatable.')
@click.option('--order', type=int)
@click.option('--mode', type=click.Choice([QUADRATIC_MODULE, PREORDER]))
@click.option('--ball', type=float, help='Add R² − |x|² ≥ 0.')
@num_vars_option
@click.pass_context
def minimize_constrained(ctx, problem, f, constraints, order, mode, ball, num_vars):
    """Lower bound over a semialgebraic set."""
    _run(ctx, 'minimize constrained', problem=problem, f=f,
         constraints=list(constraints) or None, order=order, mode=mode, ball=ball,
         num_vars=num_vars)


@minimize.command('lyapunov')
@click.option('--field', multiple=True, required=True, help='Component a_i(x); repeatable.')
@click.option('--degree', type=int, default=2)
@click.option('--eps', type=float, default=1e-3)
@num_vars_option
@click.pass_context
def minimize_lyapunov(ctx, field, degree, eps, num_vars):
    """SOS Lyapunov function for dx/dt = a(x)."""
    _run(ctx, 'minimize lyapunov', field=list(field), degree=degree, eps=eps,
         num_vars=num_vars)


# moments

@cli.group()
def moments():
    """Truncated moment problems."""


def _moment_command(name: str, help_text: str):
    @moments.command(name, help=help_text)
    @click.option('--moments', 'values', required=True, callback=_json_value,
                  help='JSON list, or a .json/.csv file.')
    @click.option('--order', type=int)
    @click.option('--criterion', type=click.Choice(['norm', 'scaled']), default='norm',
                  help='PSD test on the raw or the diagonally scaled matrix.')
    @click.pass_context
    def command(ctx, values, order, criterion):
        _run(ctx, f'moments {name}', moments=values, order=order, criterion=criterion)

    return command


_moment_command('hamburger', 'Hankel test on the real line.')
_moment_command('stieltjes', 'Hankel and shifted Hankel tests on [0, ∞).')
_moment_command('trig', 'Toeplitz test on the circle.')


@moments.command('jacobi')
@click.option('--moments', 'values', required=True, callback=_json_value)
@click.option('--max-k', type=int)
@click.pass_context
def moments_jacobi(ctx, values, max_k):
    """Jacobi parameters and Gauss quadrature."""
    _run(ctx, 'moments jacobi', moments=values, max_k=max_k)


# one-variable tools

@cli.group()
def one():
    """One-variable positivity."""


@one.command('fejer')
@click.option('--coeffs', callback=_json_value, help='c_{-d}..c_d as JSON.')
@click.option('-q', 'q', callback=_json_value, help='Analytic q; factors |q|².')
@click.pass_context
def one_fejer(ctx, coeffs, q):
    """Riesz-Fejér factorization."""
    _run(ctx, 'one fejer', coeffs=coeffs, q=q)


@one.command('schur')
@click.option('--taylor', required=True, callback=_json_value)
@click.pass_context
def one_schur(ctx, taylor):
    """Schur parameters of a Taylor prefix."""
    _run(ctx, 'one schur', taylor=taylor)


@one.command('sturm')
@click.option('-f', 'f', required=True)
@click.option('--lo', type=float)
@click.option('--hi', type=float)
@click.pass_context
def one_sturm(ctx, f, lo, hi):
    """Distinct real roots in (lo, hi]."""
    _run(ctx, 'one sturm', f=f, lo=lo, hi=hi)


@one.command('disk')
@click.option('--coeffs', required=True, callback=_json_value, help='Ascending coefficients.')
@click.pass_context
def one_disk(ctx, coeffs):
    """Roots inside, on and outside the unit disk."""
    _run(ctx, 'one disk', coeffs=coeffs)


@one.command('pick')
@click.option('--nodes', required=True, callback=_json_value)
@click.option('--values', required=True, callback=_json_value)
@click.option('--variant', type=click.Choice(['disk', 'caratheodory']), default='disk')
@click.pass_context
def one_pick(ctx, nodes, values, variant):
    """Pick interpolation."""
    _run(ctx, 'one pick', nodes=nodes, values=values, variant=variant)


# free algebra

@cli.group()
def nc():
    """Noncommutative polynomials."""


nc_mode_option = click.option('--mode', type=NC_MODES)


@nc.command('eval')
@click.option('-p', 'p', required=True)
@click.option('--matrices', required=True, callback=_json_value)
@nc_mode_option
@num_vars_option
@click.pass_context
def nc_eval_command(ctx, p, matrices, mode, num_vars):
    """Evaluate p on a matrix tuple."""
    _run(ctx, 'nc eval', p=p, matrices=matrices, mode=mode, num_vars=num_vars)


@nc.command('derive')
@click.option('-p', 'p', required=True)
@click.option('-k', 'k', type=int, default=1)
@nc_mode_option
@click.pass_context
def nc_derive(ctx, p, k, mode):
    """k-th directional derivative."""
    _run(ctx, 'nc derive', p=p, k=k, mode=mode)


@nc.command('sos')
@click.option('-p', 'p', required=True)
@nc_mode_option
@num_vars_option
@click.pass_context
def nc_sos(ctx, p, mode, num_vars):
    """Sum of hermitian squares or a negative tuple."""
    _run(ctx, 'nc sos', p=p, mode=mode, num_vars=num_vars)


@nc.command('convex')
@click.option('-p', 'p', required=True)
@click.option('--size', 'sizes', type=int, multiple=True, help='Witness search sizes.')
@nc_mode_option
@click.pass_context
def nc_convex(ctx, p, sizes, mode):
    """Matrix convexity with a midpoint witness."""
    _run(ctx, 'nc convex', p=p, sizes=list(sizes) or None, mode=mode)


@nc.command('lmi')
@click.option('-p', 'p', required=True, help='P(a, x) with known letters a1, a2, ...')
@click.option('--a', 'a', callback=_json_value, help='Known matrices a1, a2, ...')
@click.option('--check', help='Polynomial the LMI must reproduce.')
@click.option('--size', type=int, default=1)
@click.option('--solve', is_flag=True, help='Solve the LMI for feasibility.')
@nc_mode_option
@click.pass_context
def nc_lmi(ctx, p, a, check, size, solve, mode):
    """Schur-complement LMI for P ⪯ 0."""
    _run(ctx, 'nc lmi', p=p, a=a, check=check, size=size, solve=solve, mode=mode)


@nc.command('ideal')
@click.option('--generator', 'generators', multiple=True, required=True)
@click.option('--degree', type=int, required=True)
@click.option('-q', 'q', help='Membership candidate.')
@nc_mode_option
@num_vars_option
@click.pass_context
def nc_ideal(ctx, generators, degree, q, mode, num_vars):
    """Left ideal membership and quotient basis."""
    _run(ctx, 'nc ideal', generators=list(generators), degree=degree, q=q, mode=mode,
         num_vars=num_vars)


@nc.command('cyclic')
@click.option('-p', 'p', required=True)
@click.option('-q', 'q')
@nc_mode_option
@num_vars_option
@click.pass_context
def nc_cyclic(ctx, p, q, mode, num_vars):
    """Cyclic reduction and equivalence."""
    _run(ctx, 'nc cyclic', p=p, q=q, mode=mode, num_vars=num_vars)


# linear systems

@cli.group('sys')
def sys_group():
    """Linear systems."""


@sys_group.command('schur')
@click.option('--matrix', required=True, callback=_json_value)
@click.option('--split', type=int, required=True, help='Size of the leading block.')
@click.option('--allow-pinv', is_flag=True)
@click.pass_context
def sys_schur(ctx, matrix, split, allow_pinv):
    """Schur complement and PSD equivalence."""
    _run(ctx, 'sys schur', matrix=matrix, split=split, allow_pinv=allow_pinv)


@sys_group.command('loop')
@click.option('--plant', required=True, callback=_json_value)
@click.option('--controller', required=True, callback=_json_value)
@click.option('--hinf', is_flag=True, help='Plant is an H∞ plant {A, B1, B2, C1, C2}.')
@click.option('--storage', 'E', callback=_json_value, help='Storage matrix E.')
@click.option('--gamma', type=float)
@click.pass_context
def sys_loop(ctx, plant, controller, hinf, E, gamma):
    """Close a feedback loop."""
    _run(ctx, 'sys loop', plant=plant, controller=controller, hinf=hinf, E=E, gamma=gamma)


@sys_group.command('dissip')
@click.option('--system', 'system', required=True, callback=_json_value)
@click.option('--simulate', type=int, default=0, help='Random trajectories to check.')
@click.option('--horizon', 'T', type=float, default=5.0)
@click.option('--dt', type=float, default=1e-3)
@click.pass_context
def sys_dissip(ctx, system, simulate, T, dt):
    """Quadratic storage function."""
    _run(ctx, 'sys dissip', system=system, simulate=simulate, T=T, dt=dt)


@sys_group.command('dgkf')
@click.option('--plant', required=True, callback=_json_value)
@click.option('--gamma', type=float)
@click.option('--literal', is_flag=True, help='Drop the constant terms.')
@click.option('--printed-b2', is_flag=True, help='Use B2⁻¹B2ᵀ in the X inequality.')
@click.option('--sweep', 'gammas', callback=_json_value, help='JSON list of γ values.')
@click.pass_context
def sys_dgkf(ctx, plant, gamma, literal, printed_b2, gammas):
    """DGKF feasibility at level γ."""
    _run(ctx, 'sys dgkf', plant=plant, gamma=gamma, literal=literal, printed_b2=printed_b2,
         gammas=gammas)


# SDP

@cli.group()
def sdp():
    """Semidefinite programs."""


@sdp.command('solve')
@click.argument('problem', callback=_json_value)
@click.option('--format', 'input_format', type=click.Choice(['json', 'sdpa']), default='json')
@click.pass_context
def sdp_solve(ctx, problem, input_format):
    """Solve a JSON or SDPA problem."""
    _run(ctx, 'sdp solve', problem=problem, format=input_format)


@sdp.command('entropy')
@click.option('-f', 'f', help='Polynomial whose Gram set is used.')
@click.option('--a', 'a', callback=_json_value)
@click.option('--b', 'b', callback=_json_value)
@click.pass_context
def sdp_entropy(ctx, f, a, b):
    """Max-entropy point of an affine PSD slice."""
    _run(ctx, 'sdp entropy', f=f, a=a, b=b)


@sdp.command('export')
@click.option('--problem', callback=_json_value)
@click.option('-f', 'f')
@click.option('--format', 'input_format', type=click.Choice(['json', 'sdpa']), default='json')
@click.option('--sdpa-out', type=click.Path(dir_okay=False))
@click.pass_context
def sdp_export(ctx, problem, f, input_format, sdpa_out):
    """Write SDPA sparse format."""
    _run(ctx, 'sdp export', problem=problem, f=f, format=input_format, sdpa_out=sdpa_out)


@cli.command('verify')
@click.argument('certificate', type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def verify(ctx, certificate):
    """Recompute the residuals of a stored result."""
    _run(ctx, 'verify', certificate=certificate)


@cli.command('serve')
@click.option('--host', default='127.0.0.1')
@click.option('--port', type=int, default=5002)
@click.option('--debug', is_flag=True)
@click.pass_context
def serve(ctx, host, port, debug):
    """Run the JSON service."""
    from .app import create_app

    app = create_app(get_config('development' if debug else None))
    click.echo(f'posopt service on http://{host}:{port}', err=True)
    app.run(debug=debug, host=host, port=port, use_reloader=debug)


def main():
    """Console entry point."""
    cli(prog_name='posopt')


if __name__ == '__main__':
    main()
