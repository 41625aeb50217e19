"""
command line front end

    vermakit pattern --n 4 --p 2 --weight "3 2 1 0"
    vermakit singular --n 4 --p 2 --k 2 --w -1
    vermakit cover --n 4 --p 2 --w 0 det_squared.txt
    vermakit selftest --json

exit codes: 0 success, 2 bad input, 3 violated precondition, 1 anything else
"""

import json
import logging
import re
import sys
from fractions import Fraction

import click
from cloudpathlib import AnyPath

from vermakit.config import degree_cap, get_config
from vermakit.errors import ContractError, InputError
from vermakit.liealg import ParabolicData
from vermakit.selftest import run_selftest
from vermakit.singular import (
    cover_check,
    find_singular_vectors,
    scan_critical_weights,
    trivial_target,
)
from vermakit.translate import filtration_levels, screen_translation, weight_support
from vermakit.verma import (
    ModuleRealization,
    Variant,
    block_standard,
    density,
    format_element,
    parse_element,
)
from vermakit.weights import (
    Weight,
    dynkin_to_tuple,
    e_action,
    inf_char_key,
    is_g_dominant,
    is_p_dominant,
    parse_weight,
    singularity_level,
    tuple_to_dynkin,
)
from vermakit.weyl_patterns import (
    affine_orbit_p_dominant,
    build_pattern,
    build_singular_pattern,
    distinct_pairs,
    pair_order,
    pattern_to_dict,
    render_dot,
    render_text,
    rho_template,
)

MODULES = ('density', 'V1', 'V1*', 'V2', 'V2*')
LOG_FORMAT = '%(asctime)s %(levelname)s %(module)s:%(lineno)d - %(message)s'


class VermakitGroup(click.Group):
    """maps library exceptions onto the documented exit codes"""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except (click.exceptions.Exit, click.ClickException, click.Abort):
            raise
        except InputError as err:
            logging.error(f'Rejected input: {err}')
            _fail(ctx, f'input error: {err}', 2)
        except ContractError as err:
            logging.error(f'Precondition violated: {err}')
            _fail(ctx, f'contract violation: {err}', 3)
        except Exception as err:  # noqa: BLE001
            logging.exception('Unexpected failure')
            _fail(ctx, f'internal error: {err!r}', 1)


def _fail(ctx: click.Context, message: str, code: int):
    click.echo(message, err=True)
    ctx.exit(code)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as err:
        raise InputError(f'{text!r} is not a rational number') from err


def _integers(text: str) -> tuple[int, ...]:
    parts = [part for part in re.split(r'[\s,]+', text.strip()) if part]
    try:
        return tuple(int(part) for part in parts)
    except ValueError as err:
        raise InputError(f'{text!r} is not a list of integers') from err


def _weight(text: str, n: int, p: int) -> Weight:
    return parse_weight(text, p=p, n=n)


def _format(choice: str | None) -> str:
    return choice or get_config()['output']['format']


def _realization(pd: ParabolicData, module: str, w: Fraction) -> ModuleRealization:
    if module == 'density':
        return density(pd, w)
    return block_standard(pd, block=int(module[1]), dual=module.endswith('*'), w=w)


def _check_degree(k: int, cap: int | None):
    limit = degree_cap(cap)
    if k > limit:
        raise InputError(
            f'degree {k} exceeds the degree cap {limit}, raise it with --degree-cap'
        )


def _emit_json(payload: dict):
    click.echo(json.dumps(payload, indent=2))


n_option = click.option('--n', 'n', type=int, required=True, help='size of sl(n)')
p_option = click.option('--p', 'p', type=int, required=True, help='first block size')
format_option = click.option(
    '--format', 'output_format', type=click.Choice(['text', 'json']), default=None
)
variant_option = click.option(
    '--variant',
    type=click.Choice([variant.value for variant in Variant]),
    default=Variant.HOLONOMIC.value,
    show_default=True,
)
module_option = click.option(
    '--module',
    type=click.Choice(MODULES),
    default='density',
    show_default=True,
    help='inducing representation, twisted by the density weight',
)
cap_option = click.option('--degree-cap', 'cap', type=int, default=None)


@click.group(cls=VermakitGroup)
def cli():
    """exact computations for |1|-graded parabolics of sl(n)"""


@cli.command()
@n_option
@p_option
@click.option('--weight', 'weight_text', required=True, help='rho-shifted tuple, e.g. "3 2 1 0"')
@click.option(
    '--format', 'output_format', type=click.Choice(['text', 'json', 'dot']), default=None
)
@click.option('--order', type=click.Choice(['length', 'e-action']), default='length')
@click.option('--pair', 'pairs', type=(str, str), multiple=True, help='report the order of a pair')
def pattern(
    n: int,
    p: int,
    weight_text: str,
    output_format: str | None,
    order: str,
    pairs: tuple[tuple[str, str], ...],
):
    """operator pattern of the orbit through a dominant weight"""
    given = _weight(weight_text, n, p)
    wdom = Weight(tuple(sorted(given.entries, reverse=True)), p)
    if singularity_level(wdom):
        graph = build_singular_pattern(wdom, rho_template(n, p))
        annotated = distinct_pairs(graph)
    else:
        graph = build_pattern(wdom)
        annotated = []
    for first, second in pairs:
        u, v = _weight(first, n, p), _weight(second, n, p)
        annotated.append((u, v, pair_order(u, v)))

    output_format = _format(output_format)
    if output_format == 'json':
        _emit_json(pattern_to_dict(graph, annotated))
    elif output_format == 'dot':
        click.echo(render_dot(graph), nl=False)
    else:
        click.echo(render_text(graph, display=order, pairs=annotated), nl=False)


@cli.command()
@n_option
@p_option
@click.option('--weight', 'weight_text', required=True)
@format_option
def orbit(n: int, p: int, weight_text: str, output_format: str | None):
    """p-dominant elements of the orbit, by length"""
    wdom = _weight(weight_text, n, p)
    elements = affine_orbit_p_dominant(wdom)
    if _format(output_format) == 'json':
        _emit_json(
            {
                'n': n,
                'p': p,
                'weight': list(wdom.entries),
                'elements': [
                    {
                        'tuple': list(element.weight.entries),
                        'perm': list(element.perm),
                        'length': element.length,
                        'e_action': str(e_action(element.weight)),
                    }
                    for element in elements
                ],
            }
        )
        return
    for element in elements:
        perm = ' '.join(str(index) for index in element.perm)
        click.echo(
            f'{element.length} {element.weight.label} [{perm}] e={e_action(element.weight)}'
        )


@cli.command()
@n_option
@p_option
@click.option('--tuple', 'tuple_text', default=None, help='rho-shifted tuple')
@click.option('--dynkin', 'dynkin_text', default=None, help='Dynkin labels of lambda')
@format_option
def weight(
    n: int, p: int, tuple_text: str | None, dynkin_text: str | None, output_format: str | None
):
    """facts about a single weight"""
    if (tuple_text is None) == (dynkin_text is None):
        raise InputError('give exactly one of --tuple and --dynkin')
    if tuple_text is not None:
        w = _weight(tuple_text, n, p)
    else:
        labels = _integers(dynkin_text)
        if len(labels) != n - 1:
            raise InputError(f'sl({n}) needs {n - 1} Dynkin labels, got {len(labels)}')
        w = dynkin_to_tuple(labels, p)
    facts = {
        'tuple': list(w.entries),
        'p': w.p,
        'label': w.label,
        'dynkin': list(tuple_to_dynkin(w)),
        'p_dominant': is_p_dominant(w),
        'g_dominant': is_g_dominant(w),
        'e_action': str(e_action(w)),
        'inf_char_key': list(inf_char_key(w).entries),
        'singularity': singularity_level(w),
    }
    if _format(output_format) == 'json':
        _emit_json(facts)
        return
    for key, value in facts.items():
        click.echo(f'{key}: {value}')


@cli.command()
@n_option
@p_option
@click.option('--k', 'k', type=int, required=True, help='layer degree')
@click.option('--w', 'w_text', required=True, help='density weight, e.g. -1 or 3/2')
@variant_option
@module_option
@click.option('--any-target', is_flag=True, help='search every weight, not just the trivial one')
@cap_option
@format_option
def singular(
    n: int,
    p: int,
    k: int,
    w_text: str,
    variant: str,
    module: str,
    any_target: bool,
    cap: int | None,
    output_format: str | None,
):
    """singular vectors of degree k"""
    _check_degree(k, cap)
    pd = ParabolicData(n, p)
    r = _realization(pd, module, _rational(w_text))
    target = None if any_target else trivial_target(pd)
    report = find_singular_vectors(k, r, Variant(variant), target)
    if _format(output_format) == 'json':
        _emit_json(report.to_dict())
        return
    click.echo(
        f'k={k} {variant} over {r.name}: g_1 kernel {report.kernel_dimension}'
        f'{"" if target is None else " in the target weight"}, '
        f'highest weight {report.highest_weight_dimension}'
    )
    if not report.vectors:
        click.echo('no singular vectors')
    for vector in report.vectors:
        click.echo(format_element(vector))


@cli.command()
@n_option
@p_option
@click.option('--k', 'k', type=int, required=True)
@click.option('--w-min', 'w_min', type=int, default=None)
@click.option('--w-max', 'w_max', type=int, default=None)
@click.option('--weights', 'weights_text', default=None, help='explicit list, e.g. "-1,0,1/2"')
@variant_option
@module_option
@click.option('--any-target', is_flag=True)
@cap_option
@format_option
def scan(
    n: int,
    p: int,
    k: int,
    w_min: int | None,
    w_max: int | None,
    weights_text: str | None,
    variant: str,
    module: str,
    any_target: bool,
    cap: int | None,
    output_format: str | None,
):
    """highest weight kernel dimension over a set of density weights"""
    _check_degree(k, cap)
    if weights_text is not None:
        wset = [_rational(part) for part in re.split(r'[\s,]+', weights_text.strip()) if part]
    else:
        defaults = get_config()['scan']
        low = int(defaults['w_min']) if w_min is None else w_min
        high = int(defaults['w_max']) if w_max is None else w_max
        if low > high:
            raise InputError(f'empty weight range {low}..{high}')
        wset = [Fraction(w) for w in range(low, high + 1)]
    pd = ParabolicData(n, p)
    results = scan_critical_weights(
        k,
        lambda w: _realization(pd, module, w),
        Variant(variant),
        wset,
        restrict_trivial=not any_target,
    )
    if _format(output_format) == 'json':
        _emit_json(
            {
                'n': n,
                'p': p,
                'k': k,
                'variant': variant,
                'restricted': not any_target,
                'results': [{'w': str(w), 'dimension': d} for w, d in results],
            }
        )
        return
    for w, dimension in results:
        marker = ' *' if dimension else ''
        click.echo(f'w={w}: {dimension}{marker}')


@cli.command()
@n_option
@p_option
@click.option('--w', 'w_text', required=True)
@module_option
@cap_option
@format_option
@click.argument('vector_file')
def cover(
    n: int,
    p: int,
    w_text: str,
    module: str,
    cap: int | None,
    output_format: str | None,
    vector_file: str,
):
    """lifting test for a holonomic singular vector read from VECTOR_FILE"""
    with AnyPath(vector_file).open() as handle:
        text = handle.read()
    pd = ParabolicData(n, p)
    r = _realization(pd, module, _rational(w_text))
    s = parse_element(text, r, Variant.HOLONOMIC)
    if not s.is_zero:
        _check_degree(s.degree, cap)
    report = cover_check(s)
    if _format(output_format) == 'json':
        _emit_json(report.to_dict())
        return
    click.echo(f'preimage dimension {report.preimages.dimension}')
    if report.exists:
        click.echo(f'LIFT; witness {format_element(report.witness)}')
        return
    chosen = report.obstruction
    click.echo(
        f'NO LIFT; obstructing generator {chosen.generator.basis_name}; '
        f'residual {format_element(chosen.residual)}'
    )
    for item in report.obstructions:
        kind = 'constant' if item.constant else 'varying'
        click.echo(f'  {item.generator.basis_name}: {kind}')


@cli.command()
@n_option
@p_option
@click.option('--source-f', 'f_text', required=True, help='source weight F')
@click.option('--source-e', 'e_text', required=True, help='source weight E')
@click.option('--labels', 'labels_text', required=True, help='Dynkin labels of W, e.g. "1,0,0"')
@format_option
def translate(
    n: int, p: int, f_text: str, e_text: str, labels_text: str, output_format: str | None
):
    """screens translation of a pair of weights by a finite dimensional module"""
    f_source, e_source = _weight(f_text, n, p), _weight(e_text, n, p)
    module = weight_support(_integers(labels_text), n)
    screen = screen_translation(f_source, e_source, module)
    levels = filtration_levels(module, ParabolicData(n, p))
    if _format(output_format) == 'json':
        payload = screen.to_dict()
        payload['levels'] = [{'level': str(level), 'multiplicity': m} for level, m in levels]
        _emit_json(payload)
        return
    click.echo(f'W of dimension {module.dimension}, {len(levels)} filtration levels')
    for level, m in levels:
        click.echo(f'  level {level}: {m}')
    for pair in screen.pairs:
        click.echo(
            f'{pair.f_target.weight.label} / {pair.e_target.weight.label}: {pair.verdict}'
        )
    if not screen.pairs:
        click.echo('no target pairs share a character')


@cli.command()
@click.option('--json', 'as_json', is_flag=True, help='machine readable summary')
@click.option('--goldens', default=None, help='directory with golden files')
@click.pass_context
def selftest(ctx: click.Context, as_json: bool, goldens: str | None):
    """runs the acceptance checks; nonzero exit on any failure"""
    results = run_selftest(goldens)
    passed = all(result.passed for result in results)
    if as_json:
        _emit_json({'passed': passed, 'checks': [result.to_dict() for result in results]})
    else:
        for result in results:
            status = 'PASS' if result.passed else 'FAIL'
            click.echo(f'{status} {result.name}: {result.detail}')
        click.echo('PASS' if passed else 'FAIL')
    if not passed:
        ctx.exit(1)


def main():
    logging.basicConfig(
        level=str(get_config()['logging']['level']).upper(),
        format=LOG_FORMAT,
        datefmt='%Y-%m-%d %H:%M:%S',
        stream=sys.stderr,
    )
    cli()


if __name__ == '__main__':
    main()
