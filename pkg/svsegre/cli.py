import logging
from typing import Any, Dict, Optional, Tuple

import click

from svsegre.chern import (
    CohomClass,
    ci_product_check,
    gysin_from_sv,
    gysin_map,
    segre_degrees,
    segre_from_sv,
    segre_regular_embedding,
    sv_from_segre,
)
from svsegre.config import Settings, load_settings
from svsegre.groebner import Ideal
from svsegre.loader import field_name, parse_input
from svsegre.models import CheckFailedError, JobSpec, SvsegreError, SVResult, ValidationError
from svsegre.mult import EMBEDDED_CAVEAT, affine_chart, as_affine, mult_at_origin, segre_numbers
from svsegre.renderer import ReportRenderer
from svsegre.rng import RandomSource
from svsegre.scheme import scheme_of
from svsegre.sv import sv_mass_check, sv_of_ideal
from svsegre.utils import parse_int_list, write_report

logger = logging.getLogger(__name__)

Report = Tuple[int, Dict[str, Any], str]


def _status(ok: bool) -> int:
    return 0 if ok else CheckFailedError.exit_code


def _load(job: JobSpec, settings: Settings) -> Tuple[Ideal, Dict[str, Any]]:
    _, ideal, metadata = parse_input(job.input_path, job.field, settings.budget, settings.prime)
    return ideal, metadata


def _rng(job: JobSpec, settings: Settings) -> RandomSource:
    return RandomSource(job.seed, settings.rational_bound)


def _sv(job: JobSpec, settings: Settings, J: Ideal) -> SVResult:
    mu = None
    mu_path = job.options.get('mu_path')
    if mu_path:
        _, cycle, _ = parse_input(mu_path, field_name(J.ring.domain), settings.budget,
                                  settings.prime)
        mu = scheme_of(J.like(cycle.generators))
        if mu.is_empty:
            raise ValidationError(f"The cycle in {mu_path} is empty")
    return sv_of_ideal(
        J, seed=job.seed, mu=mu, twist=job.twist, trials=job.trials,
        retries=settings.retries, slack=settings.family_slack,
        rational_bound=settings.rational_bound,
    )


def _codimension(J: Ideal) -> Optional[int]:
    """Codimension of the scheme of J in P^n; None when it is empty."""
    Z = scheme_of(J)
    return None if Z.is_empty else Z.n - Z.dim


def _sv_payload(r: SVResult) -> Dict[str, Any]:
    payload = r.to_dict()
    payload['mass_check'] = sv_mass_check(r).to_dict()
    return payload


def run_sv(job: JobSpec, settings: Settings) -> Report:
    J, _ = _load(job, settings)
    r = _sv(job, settings, J)
    payload = _sv_payload(r)
    return _status(payload['mass_check']['ok']), payload, 'sv'


def run_mass_check(job: JobSpec, settings: Settings) -> Report:
    J, _ = _load(job, settings)
    r = _sv(job, settings, J)
    report = sv_mass_check(r)
    payload = {
        'lhs': report.lhs,
        'rhs': report.rhs,
        'ok': report.ok,
        'residual_forced_zero': report.residual_forced_zero,
        'v_degrees': list(r.v_degrees),
        'residual_degree': r.residual_degree,
        'twist': r.d,
        'seed': r.seed,
    }
    return _status(report.ok), payload, 'mass_check'


def run_segre(job: JobSpec, settings: Settings) -> Report:
    J, _ = _load(job, settings)
    r = _sv(job, settings, J)
    S = segre_from_sv(r)
    kappa = _codimension(J)
    payload = {
        'n': r.n,
        'twist': r.d,
        'kappa': kappa,
        'segre_degrees': segre_degrees(S, kappa) if kappa is not None else [],
        'sv_degrees': list(r.v_degrees),
        'seed': r.seed,
    }
    return 0, payload, 'segre'


def run_check_gata1(job: JobSpec, settings: Settings) -> Report:
    J, _ = _load(job, settings)
    r = _sv(job, settings, J)
    S = segre_from_sv(r)
    expected = segre_regular_embedding(job.twists, r.n)
    kappa = len(job.twists)
    equal = S == expected
    payload = {
        'n': r.n,
        'twists': list(job.twists),
        'segre_degrees': segre_degrees(S, kappa),
        'expected': segre_degrees(expected, kappa),
        'sv_degrees': list(r.v_degrees),
        'result': 'equal' if equal else 'unequal',
        'seed': r.seed,
    }
    payload['whitney'] = all(
        ci_product_check(job.twists[:i], job.twists[i], r.n) for i in range(1, kappa)
    )
    return _status(equal), payload, 'check'


def run_check_roundtrip(job: JobSpec, settings: Settings) -> Report:
    J, _ = _load(job, settings)
    r = _sv(job, settings, J)
    S = segre_from_sv(r)
    back = sv_from_segre(S, r.d, r.mu_dim)
    ok = list(back) == list(r.v_degrees)
    payload = {
        'n': r.n,
        'sv_degrees': list(r.v_degrees),
        'segre': S.to_list(),
        'roundtrip': list(back),
        'result': 'equal' if ok else 'unequal',
        'seed': r.seed,
    }
    return _status(ok), payload, 'check'


def run_gysin(job: JobSpec, settings: Settings) -> Report:
    J = None
    n = job.ambient
    if job.input_path is not None:
        J, _ = _load(job, settings)
        n = J.ring.ngens - 1
    gamma = CohomClass.of(n, job.gamma)
    G = gysin_map(gamma, job.twists, n)
    payload = {
        'n': n,
        'twists': list(job.twists),
        'gamma': gamma.to_list(),
        'gysin': G.to_list(),
    }
    code = 0
    same_twist = len(set(job.twists)) == 1
    if J is not None and same_twist and job.gamma == (1,):
        r = _sv(job, settings, J)
        if r.d == job.twists[0]:
            through_sv = gysin_from_sv(r, len(job.twists))
            payload['gysin_sv'] = through_sv.to_list()
            payload['agree'] = through_sv == G
            code = _status(payload['agree'])
    return code, payload, 'gysin'


def _affine(job: JobSpec, J: Ideal) -> Ideal:
    if job.chart is not None:
        return affine_chart(J, job.chart)
    return as_affine(J)


def run_mult(job: JobSpec, settings: Settings) -> Report:
    J, _ = _load(job, settings)
    I = _affine(job, J)
    value = mult_at_origin(I, job.dim, _rng(job, settings), settings.retries,
                           settings.stabilization_cap)
    payload = {
        'variables': [str(s) for s in I.ring.symbols],
        'dim': job.dim,
        'multiplicity': value,
        'seed': job.seed,
    }
    return 0, payload, 'mult'


def run_segre_numbers(job: JobSpec, settings: Settings) -> Report:
    J, _ = _load(job, settings)
    I = _affine(job, J)
    numbers = segre_numbers(I, _rng(job, settings), settings.retries,
                            settings.stabilization_cap)
    payload = numbers.to_dict()
    payload['caveat'] = EMBEDDED_CAVEAT
    return _status(numbers.zeros_below_kappa_ok), payload, 'segre_numbers'


RUNNERS = {
    'sv': run_sv,
    'segre': run_segre,
    'mass-check': run_mass_check,
    'gysin': run_gysin,
    'mult': run_mult,
    'segre-numbers': run_segre_numbers,
    'check-gata1': run_check_gata1,
    'check-roundtrip': run_check_roundtrip,
}


def run(job: JobSpec, settings: Optional[Settings] = None) -> Report:
    """Dispatch a job.

    Returns:
        Tuple of (exit status, payload, table template name).
    """
    settings = settings or Settings()
    job.validate()
    if job.budget is not None:
        settings = Settings(**{**settings.to_dict(), 'max_pairs': job.budget})
    logger.info("running %s on %s (seed %d)", job.command, job.input_path, job.seed)
    return RUNNERS[job.command](job, settings)


def _configure_logging(verbose: int):
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, format='%(asctime)s %(name)s %(levelname)s %(message)s',
                        force=True)


@click.group()
@click.option('--config', 'config_path', type=click.Path(exists=True, dir_okay=False),
              help='YAML settings file')
@click.option('--verbose', '-v', count=True, help='-v for progress, -vv for debug output')
@click.pass_context
def main(ctx, config_path, verbose):
    """svsegre - Stückrad-Vogel cycles, Segre classes and Segre numbers."""
    _configure_logging(verbose)
    try:
        ctx.obj = load_settings(config_path)
    except SvsegreError as e:
        click.echo(f"Error: {e}", err=True)
        ctx.exit(e.exit_code)


def common_options(func):
    options = [
        click.option('--field', help='Coefficient field: q, fp or fp:<prime>'),
        click.option('--seed', type=int, help='Random seed (default 1)'),
        click.option('--trials', type=int, default=1, show_default=True,
                     help='Independent trials that must agree'),
        click.option('--twist', type=int, help='Twist degree d of L = O(d)'),
        click.option('--json', 'as_json', is_flag=True, help='Emit JSON instead of a table'),
        click.option('--budget', type=int, help='Maximum number of Buchberger pairs'),
        click.option('--output', '-o', type=click.Path(dir_okay=False),
                     help='Write the report to a file'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _job(ctx, command: str, input_path, field, seed, trials, twist, as_json, budget,
         **extra) -> JobSpec:
    settings: Settings = ctx.obj
    return JobSpec(
        command=command,
        input_path=input_path,
        field=field,
        seed=settings.seed if seed is None else seed,
        trials=trials,
        twist=twist,
        output_format='json' if as_json else 'table',
        budget=budget,
        **extra,
    )


def _execute(ctx, job_args: Dict[str, Any], output: Optional[str], **extra):
    try:
        job = _job(ctx, **job_args, **extra)
        code, payload, template = run(job, ctx.obj)
        renderer = ReportRenderer()
        if job.output_format == 'json':
            text = renderer.render_json(payload)
        else:
            text = renderer.render(template, payload)
        if output:
            path = write_report(text, output)
            click.echo(f"✓ Report written: {path}")
        else:
            click.echo(text.rstrip('\n'))
    except SvsegreError as e:
        click.echo(f"Error: {e}", err=True)
        ctx.exit(e.exit_code)
    ctx.exit(code)


def _int_list(option: str):
    def callback(ctx, param, value):
        try:
            return parse_int_list(value, option)
        except ValidationError as e:
            raise click.BadParameter(str(e))
    return callback


@main.command()
@click.argument('input_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--mu', 'mu_path', type=click.Path(exists=True, dir_okay=False),
              help='Ideal file of the cycle to run on (default: all of P^n)')
@common_options
@click.pass_context
def sv(ctx, input_path, mu_path, field, seed, trials, twist, as_json, budget, output):
    """Run the SV algorithm and audit the mass formula.

    INPUT_PATH: Ideal file of J.
    """
    _execute(ctx, dict(command='sv', input_path=input_path, field=field, seed=seed,
                       trials=trials, twist=twist, as_json=as_json, budget=budget),
             output, options={'mu_path': mu_path})


@main.command()
@click.argument('input_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--mu', 'mu_path', type=click.Path(exists=True, dir_okay=False),
              help='Ideal file of the cycle to run on (default: all of P^n)')
@common_options
@click.pass_context
def segre(ctx, input_path, mu_path, field, seed, trials, twist, as_json, budget, output):
    """Segre class degrees of J through the SV degrees.

    INPUT_PATH: Ideal file of J.
    """
    _execute(ctx, dict(command='segre', input_path=input_path, field=field, seed=seed,
                       trials=trials, twist=twist, as_json=as_json, budget=budget),
             output, options={'mu_path': mu_path})


@main.command('mass-check')
@click.argument('input_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--mu', 'mu_path', type=click.Path(exists=True, dir_okay=False),
              help='Ideal file of the cycle to run on (default: all of P^n)')
@common_options
@click.pass_context
def mass_check(ctx, input_path, mu_path, field, seed, trials, twist, as_json, budget, output):
    """Check deg_L(mu) against the SV degrees and the residual.

    INPUT_PATH: Ideal file of J.
    """
    _execute(ctx, dict(command='mass-check', input_path=input_path, field=field, seed=seed,
                       trials=trials, twist=twist, as_json=as_json, budget=budget),
             output, options={'mu_path': mu_path})


@main.command()
@click.argument('input_path', required=False, type=click.Path(exists=True, dir_okay=False))
@click.option('--twists', callback=_int_list('--twists'), help='Degrees d_1,...,d_k of the forms')
@click.option('--gamma', callback=_int_list('--gamma'), default='1', show_default=True,
              help='Class c_0,c_1,... to push and pull')
@click.option('--n', 'ambient', type=int, help='Ambient dimension when no file is given')
@common_options
@click.pass_context
def gysin(ctx, input_path, twists, gamma, ambient, field, seed, trials, twist, as_json,
          budget, output):
    """Gysin image c(N) S(J, gamma) of a complete intersection.

    INPUT_PATH: Optional ideal file; with equal twists it adds the SV route.
    """
    _execute(ctx, dict(command='gysin', input_path=input_path, field=field, seed=seed,
                       trials=trials, twist=twist, as_json=as_json, budget=budget),
             output, twists=twists, gamma=gamma, ambient=ambient)


@main.command()
@click.argument('input_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--dim', 'dim', type=int, help='Expected dimension k of V(I) at the point')
@click.option('--chart', callback=_int_list('--chart'), default=None,
              help='Projective point p0,...,pn to dehomogenize at')
@common_options
@click.pass_context
def mult(ctx, input_path, dim, chart, field, seed, trials, twist, as_json, budget, output):
    """Multiplicity at the origin of a k-dimensional zero set.

    INPUT_PATH: Ideal file, read in affine coordinates.
    """
    _execute(ctx, dict(command='mult', input_path=input_path, field=field, seed=seed,
                       trials=trials, twist=twist, as_json=as_json, budget=budget),
             output, dim=dim, chart=chart or None)


@main.command('segre-numbers')
@click.argument('input_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--chart', callback=_int_list('--chart'), default=None,
              help='Projective point p0,...,pn to dehomogenize at')
@common_options
@click.pass_context
def segre_numbers_command(ctx, input_path, chart, field, seed, trials, twist, as_json,
                          budget, output):
    """Segre numbers e_k(J, 0) at the origin.

    INPUT_PATH: Ideal file, read in affine coordinates.
    """
    _execute(ctx, dict(command='segre-numbers', input_path=input_path, field=field,
                       seed=seed, trials=trials, twist=twist, as_json=as_json,
                       budget=budget),
             output, chart=chart or None)


@main.command('check-gata1')
@click.argument('input_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--twists', callback=_int_list('--twists'), help='Degrees d_1,...,d_k of the forms')
@common_options
@click.pass_context
def check_gata1(ctx, input_path, twists, field, seed, trials, twist, as_json, budget, output):
    """Compare the SV Segre class with the complete-intersection formula.

    INPUT_PATH: Ideal file of a complete intersection.
    """
    _execute(ctx, dict(command='check-gata1', input_path=input_path, field=field, seed=seed,
                       trials=trials, twist=twist, as_json=as_json, budget=budget),
             output, twists=twists)


@main.command('check-roundtrip')
@click.argument('input_path', type=click.Path(exists=True, dir_okay=False))
@common_options
@click.pass_context
def check_roundtrip(ctx, input_path, field, seed, trials, twist, as_json, budget, output):
    """Transform SV degrees to Segre degrees and back.

    INPUT_PATH: Ideal file of J.
    """
    _execute(ctx, dict(command='check-roundtrip', input_path=input_path, field=field,
                       seed=seed, trials=trials, twist=twist, as_json=as_json,
                       budget=budget),
             output)


if __name__ == '__main__':
    main()
