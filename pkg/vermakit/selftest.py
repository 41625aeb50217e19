"""
acceptance checks run by `vermakit selftest`

each check compares fresh computations against the goldens shipped in
vermakit/goldens (or a directory given on the command line)
"""

import json
import logging
import os
import random
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from cloudpathlib import AnyPath

from vermakit.config import get_config
from vermakit.errors import CheckFailed
from vermakit.liealg import BasisElement, ParabolicData, bracket
from vermakit.singular import (
    cover_check,
    is_singular,
    scan_critical_weights,
)
from vermakit.translate import filtration_levels, weight_support, weyl_dimension
from vermakit.verma import (
    AlgebraElement,
    ModuleRealization,
    Variant,
    act,
    act_lie,
    density,
    density_family,
    layer_basis,
    normal_form,
    parse_element,
    split2,
    symmetrize_projection,
)
from vermakit.weights import Weight, e_action, e_action_of, parse_weight
from vermakit.weyl_patterns import (
    build_pattern,
    build_singular_pattern,
    distinct_pairs,
    pair_order,
    pattern_to_dict,
    rho_template,
)

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), 'goldens')


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str

    def to_dict(self) -> dict:
        return {'name': self.name, 'passed': self.passed, 'detail': self.detail}


def load_golden(directory: str, name: str) -> dict:
    with (AnyPath(directory) / name).open() as handle:
        return json.load(handle)


def _signature(payload: dict) -> tuple[list, list, list]:
    by_id = {node['id']: node for node in payload['nodes']}
    nodes = sorted(
        (tuple(node['tuple']), node['length'], node['e_action'], node['dominant'])
        for node in payload['nodes']
    )
    edges = sorted(
        (
            tuple(by_id[edge['from']]['tuple']),
            by_id[edge['from']]['length'],
            tuple(by_id[edge['to']]['tuple']),
            by_id[edge['to']]['length'],
            edge['order'],
            edge['standard'],
        )
        for edge in payload.get('edges', [])
    )
    pairs = sorted(
        (tuple(pair['from']), tuple(pair['to']), pair['order']) for pair in payload.get('pairs', [])
    )
    return nodes, edges, pairs


def matches_golden(computed: dict, golden: dict) -> bool:
    """node multiset always; edges and pairs when the golden records them"""
    if any(computed[key] != golden[key] for key in ('n', 'p', 'singularity')):
        return False
    nodes, edges, pairs = _signature(computed)
    golden_nodes, golden_edges, golden_pairs = _signature(golden)
    if nodes != golden_nodes:
        return False
    if 'edges' in golden and edges != golden_edges:
        return False
    return 'pairs' not in golden or pairs == golden_pairs


def _require(condition: bool, message: str):
    if not condition:
        raise CheckFailed(message)


def check_patterns(goldens: str, rng: random.Random) -> str:
    for name, p in (
        ('pattern_1_2.json', 1),
        ('pattern_2_2.json', 2),
        ('pattern_2_3.json', 2),
        ('pattern_3_3.json', 3),
    ):
        golden = load_golden(goldens, name)
        computed = pattern_to_dict(build_pattern(Weight(tuple(golden['weight']), p)))
        _require(matches_golden(computed, golden), f'{golden["name"]} differs from its golden')
    return 'diagrams (1|2), (2|2), (2|3), (3|3) reproduced'


def check_singular_pattern(goldens: str, rng: random.Random) -> str:
    golden = load_golden(goldens, 'pattern_2_2_singular.json')
    wsing = Weight(tuple(golden['weight']), golden['p'])
    pattern = build_singular_pattern(wsing, rho_template(golden['n'], golden['p']))
    computed = pattern_to_dict(pattern, distinct_pairs(pattern))
    _require(matches_golden(computed, golden), '(2|2-singular) differs from its golden')
    return '(2|2-singular) reproduced, Yamabe pair order 2'


def check_long_orders(goldens: str, rng: random.Random) -> str:
    expected = load_golden(goldens, 'singular.json')['long_orders']
    found = {
        '(2|2)': pair_order(parse_weight('3 2 | 1 0'), parse_weight('1 0 | 3 2')),
        '(3|3)': pair_order(parse_weight('5 4 3 | 2 1 0'), parse_weight('2 1 0 | 5 4 3')),
        '(3|3)-neighbors': pair_order(parse_weight('5 4 2 | 3 1 0'), parse_weight('3 1 0 | 5 4 2')),
    }
    for name, value in found.items():
        _require(str(value) == expected[name], f'{name}: order {value}, golden {expected[name]}')
    return 'orders 4, 9, 7'


def check_e_action(goldens: str, rng: random.Random) -> str:
    displayed: list[tuple[int, int, Callable[[tuple[int, ...]], Fraction]]] = [
        (4, 2, lambda a: Fraction(1, 2) * (a[0] + a[1] - a[2] - a[3])),
        (5, 2, lambda a: Fraction(3, 5) * (a[0] + a[1]) - Fraction(2, 5) * (a[2] + a[3] + a[4])),
        (6, 3, lambda a: Fraction(1, 2) * (a[0] + a[1] + a[2] - a[3] - a[4] - a[5])),
    ]
    for n, p, formula in displayed:
        for _ in range(100):
            entries = tuple(rng.randint(-20, 20) for _ in range(n))
            _require(e_action_of(entries, p) == formula(entries), f'formula mismatch on {entries}')
    # orbits of the trivial weight
    for n, p in ((3, 1), (4, 2), (5, 2), (6, 3)):
        pattern = build_pattern(Weight(tuple(range(n - 1, -1, -1)), p))
        for edge in pattern.edges:
            source, target = pattern.nodes[edge.source], pattern.nodes[edge.target]
            _require(
                edge.order == 1,
                f'{source.weight.label} -> {target.weight.label} has order {edge.order}',
            )
    return 'grading formulas agree on 300 random tuples, trivial-orbit edges have order 1'


def _critical(scan: list[tuple[Fraction, int]]) -> list[tuple[Fraction, int]]:
    return [(w, d) for w, d in scan if d]


def check_yamabe(goldens: str, rng: random.Random) -> str:
    golden = load_golden(goldens, 'singular.json')
    pd = ParabolicData(golden['n'], golden['p'])
    critical = _critical(
        scan_critical_weights(2, density_family(pd), Variant.HOLONOMIC, range(-3, 4))
    )
    _require(critical == [(Fraction(golden['yamabe_weight']), 1)], f'critical weights {critical}')
    return f'k=2 critical weight {golden["yamabe_weight"]}, dimension 1'


def check_paneitz(goldens: str, rng: random.Random) -> str:
    golden = load_golden(goldens, 'singular.json')
    pd = ParabolicData(golden['n'], golden['p'])
    critical = _critical(
        scan_critical_weights(4, density_family(pd), Variant.HOLONOMIC, range(-5, 6))
    )
    _require(critical == [(Fraction(golden['paneitz_weight']), 1)], f'critical weights {critical}')
    return f'k=4 critical weight {golden["paneitz_weight"]}, dimension 1'


def check_lifting(goldens: str, rng: random.Random) -> str:
    golden = load_golden(goldens, 'singular.json')
    pd = ParabolicData(golden['n'], golden['p'])
    yamabe = density(pd, Fraction(golden['yamabe_weight']))
    det = parse_element(golden['yamabe_vector'], yamabe, Variant.HOLONOMIC)
    report = cover_check(det)
    _require(report.exists and report.witness is not None, 'determinant did not lift')
    _require(symmetrize_projection(report.witness) == det, 'witness does not symmetrize to det')
    _require(is_singular(report.witness), 'witness is not singular')
    expected = parse_element(golden['lifted_determinant'], yamabe, Variant.SEMIHOLONOMIC)
    _require(report.witness == expected, f'witness {report.witness}')

    paneitz = density(pd, Fraction(golden['paneitz_weight']))
    square = parse_element(golden['paneitz_vector'], paneitz, Variant.HOLONOMIC)
    report = cover_check(square)
    _require(not report.exists, 'squared determinant unexpectedly lifted')
    _require(
        report.preimages.dimension == golden['paneitz_preimage_dimension'],
        f'preimage dimension {report.preimages.dimension}',
    )
    _require(
        report.obstruction is not None and report.obstruction.constant,
        'no constant obstruction',
    )
    name = report.obstruction.generator.basis_name
    _require(name == golden['obstructing_generator'], f'obstructing generator {name}')
    return f'det lifts, det^2 blocked by {golden["obstructing_generator"]}'


def _low_degree_words(pd: ParabolicData) -> list[tuple]:
    letters = sorted(pd.g_minus, key=lambda letter: letter.sort_key)
    return [word for k in range(3) for word in combinations_with_replacement(letters, k)]


def check_split2(goldens: str, rng: random.Random) -> str:
    pd = ParabolicData(4, 2)
    count = 0
    for w in (-2, -1, 0, 1):
        r = density(pd, w)
        for word in _low_degree_words(pd):
            e = AlgebraElement({(word, 0): Fraction(1)}, r, Variant.HOLONOMIC)
            _require(symmetrize_projection(split2(e)) == e, f'split2 is not a section on {e}')
            for h in pd.parabolic:
                _require(split2(act(h, e)) == act(h, split2(e)), f'{h} on {e}')
                count += 1
    return f'{count} equivariance cases'


def random_word(pd: ParabolicData, rng: random.Random, longest: int = 4) -> tuple:
    return tuple(rng.choice(pd.basis) for _ in range(rng.randint(0, longest)))


def random_normal_word(pd: ParabolicData, rng: random.Random, longest: int = 3) -> tuple:
    return tuple(rng.choice(pd.g_minus) for _ in range(rng.randint(0, longest)))


def relation_pairs(pd: ParabolicData, variant: Variant) -> list[tuple[BasisElement, BasisElement]]:
    """
    unordered pairs of distinct basis letters on which the module relation must hold;
    two letters of g_-1 do not commute in the semiholonomic module
    """
    return [
        (x, y)
        for x, y in combinations(pd.basis, 2)
        if variant == Variant.HOLONOMIC or x.degree != -1 or y.degree != -1
    ]


def module_relation_failures(r: ModuleRealization, longest: int = 3) -> tuple[int, list[str]]:
    """
    checks x(y e) - y(x e) = [x, y] e for all admissible pairs and every basis term
    e of the layers up to the given degree, in both variants; returns the case count
    and failures
    """
    pd = r.pd
    count, failures = 0, []
    for variant in Variant:
        terms = [key for k in range(longest + 1) for key in layer_basis(k, r, variant)]
        for x, y in relation_pairs(pd, variant):
            commutator = bracket(x, y, pd)
            for key in terms:
                e = AlgebraElement({key: Fraction(1)}, r, variant)
                if act(x, act(y, e)) - act(y, act(x, e)) != act_lie(commutator, e):
                    failures.append(f'{variant.value} [{x}, {y}] on {key[0]}')
                count += 1
    return count, failures


def check_engine(goldens: str, rng: random.Random) -> str:
    settings = get_config()['selftest']
    confluence = int(settings['confluence_samples'])
    intertwining = int(settings['intertwining_samples'])
    pd = ParabolicData(4, 2)
    densities = {w: density(pd, w) for w in range(-2, 3)}
    for _ in range(confluence):
        r = densities[rng.randint(-2, 2)]
        variant = rng.choice(list(Variant))
        e = AlgebraElement({(random_word(pd, rng), 0): Fraction(1)}, r, variant)
        _require(normal_form(e) == normal_form(e, rng=rng), f'rewriting of {e.terms} is not confluent')
    count, failures = module_relation_failures(densities[-1])
    _require(not failures, f'module relation fails: {", ".join(failures[:3])}')
    for _ in range(intertwining):
        r = densities[rng.randint(-2, 2)]
        x = rng.choice(pd.basis)
        e = AlgebraElement({(random_normal_word(pd, rng), 0): Fraction(1)}, r, Variant.SEMIHOLONOMIC)
        _require(
            symmetrize_projection(act(x, e)) == act(x, symmetrize_projection(e)),
            f'symmetrization does not intertwine {x} on {e}',
        )
    return (
        f'{confluence} confluence words, {count} module relation cases, '
        f'{intertwining} intertwining cases'
    )


def check_translation(goldens: str, rng: random.Random) -> str:
    pd = ParabolicData(4, 2)
    standard = len(filtration_levels(weight_support((1, 0, 0), 4), pd))
    adjoint = len(filtration_levels(weight_support((1, 0, 1), 4), pd))
    _require((standard, adjoint) == (2, 3), f'filtration lengths {standard} and {adjoint}')
    checked = 0
    for n in range(2, 6):
        for labels in _bounded_labels(n - 1, 3):
            _require(
                weight_support(labels, n).dimension == weyl_dimension(labels),
                f'dimension of {labels} for sl({n})',
            )
            checked += 1
    return f'filtration lengths 2 and 3, {checked} dimension checks'


def _bounded_labels(size: int, bound: int) -> list[tuple[int, ...]]:
    if size == 0:
        return [()]
    return [
        (first,) + rest
        for first in range(bound + 1)
        for rest in _bounded_labels(size - 1, bound - first)
    ]


CHECKS: list[tuple[str, Callable[[str, random.Random], str]]] = [
    ('pattern reproduction', check_patterns),
    ('singular pattern', check_singular_pattern),
    ('long-operator orders', check_long_orders),
    ('grading element action', check_e_action),
    ('Yamabe singular vector', check_yamabe),
    ('Paneitz singular vector', check_paneitz),
    ('lifting dichotomy', check_lifting),
    ('splitting equivariance', check_split2),
    ('engine soundness', check_engine),
    ('translation screening', check_translation),
]


def run_selftest(goldens: str | None = None) -> list[CheckResult]:
    """runs every check, a failing check never stops the others"""
    directory = goldens or GOLDEN_DIR
    seed = int(get_config()['selftest']['seed'])
    results = []
    for name, check in CHECKS:
        try:
            detail = check(directory, random.Random(seed))
            results.append(CheckResult(name, True, detail))
        except Exception as err:  # noqa: BLE001
            logging.error(f'Check {name} failed: {err!r}')
            results.append(CheckResult(name, False, str(err) or type(err).__name__))
    return results
