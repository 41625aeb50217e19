from fractions import Fraction

import pytest

from vermakit.errors import InputError
from vermakit.translate import (
    candidate_factors,
    curvability_filter,
    dominant_multiplicities,
    factor_list,
    filtration_levels,
    is_isolated,
    screen_one_way,
    screen_translation,
    splitting_depths,
    weight_support,
    weyl_dimension,
)
from vermakit.weights import parse_weight


@pytest.mark.parametrize(
    'labels,dimension',
    [((1, 0, 0), 4), ((0, 1, 0), 6), ((2, 0, 0), 10), ((1, 0, 1), 15), ((1, 1), 8), ((2, 1, 0), 45), ((3, 0, 0), 20)],
)
def test_weyl_dimension(labels, dimension):
    assert weyl_dimension(labels) == dimension
    assert weight_support(labels, len(labels) + 1).dimension == dimension


def test_dominant_multiplicities():
    assert dominant_multiplicities((1, 0, 1)) == {(2, 1, 1, 0): 1, (1, 1, 1, 1): 3}
    assert dominant_multiplicities((1, 1)) == {(2, 1, 0): 1, (1, 1, 1): 2}
    assert dominant_multiplicities((0, 2, 0)) == {(2, 2, 0, 0): 1, (2, 1, 1, 0): 1, (1, 1, 1, 1): 2}


def test_weight_support_of_standard_module():
    standard = weight_support((1, 0, 0), 4)
    assert standard.support == (
        ((1, 0, 0, 0), 1),
        ((0, 1, 0, 0), 1),
        ((0, 0, 1, 0), 1),
        ((0, 0, 0, 1), 1),
    )
    assert standard.dynkin_support()[0] == ((1, 0, 0), 1)
    dual = standard.dual()
    assert dual.labels == (0, 0, 1)
    assert dual.support[0] == ((1, 1, 1, 0), 1)
    assert dual.dimension == 4


def test_weight_support_input_checks():
    with pytest.raises(InputError):
        weight_support((1, 0), 4)
    with pytest.raises(InputError):
        weight_support((1, -1, 0), 4)


def test_filtration_levels(pd42):
    assert filtration_levels(weight_support((1, 0, 0), 4), pd42) == [
        (Fraction(1, 2), 2),
        (Fraction(-1, 2), 2),
    ]
    assert filtration_levels(weight_support((1, 0, 1), 4), pd42) == [(1, 4), (0, 7), (-1, 4)]
    with pytest.raises(InputError):
        filtration_levels(weight_support((1, 0), 3), pd42)


def test_candidate_factors():
    f = parse_weight('2 1 | 1 0')
    found = candidate_factors(f, weight_support((1, 0, 0), 4))
    assert [c.weight.label for c in found] == ['(31|10)', '(22|10)', '(21|20)', '(10|00)']
    assert [c.p_dominant for c in found] == [True, False, True, False]
    assert [c.level for c in found] == [Fraction(1, 2), Fraction(1, 2), Fraction(-1, 2), Fraction(-1, 2)]
    factors = factor_list(f, weight_support((1, 0, 0), 4))
    assert is_isolated(parse_weight('3 1 | 1 0'), factors)
    adjoint = factor_list(f, weight_support((1, 0, 1), 4))
    assert not is_isolated(f, adjoint)


def test_translation_screen_with_standard_module():
    f, e = parse_weight('2 1 | 1 0'), parse_weight('1 0 | 2 1')
    screen = screen_translation(f, e, weight_support((1, 0, 0), 4))
    found = {(pair.f_target.weight.label, pair.e_target.weight.label): pair for pair in screen.pairs}
    assert set(found) == {('(31|10)', '(10|31)'), ('(21|20)', '(20|21)')}
    assert found[('(31|10)', '(10|31)')].verdict == 'isolated'
    assert screen.isolated_pairs()
    payload = screen.to_dict()
    assert payload['labels'] == [1, 0, 0]
    assert {pair['verdict'] for pair in payload['pairs']} == {'isolated'}


def test_translation_screen_with_adjoint_is_blocked():
    f, e = parse_weight('2 1 | 1 0'), parse_weight('1 0 | 2 1')
    screen = screen_translation(f, e, weight_support((1, 0, 1), 4))
    to_itself = [pair for pair in screen.pairs if pair.f_target.weight == f]
    assert to_itself
    assert all(pair.verdict == 'blocked' for pair in to_itself)
    assert not to_itself[0].f_isolated


def test_translation_needs_common_character():
    with pytest.raises(InputError):
        screen_translation(
            parse_weight('3 2 | 1 0'), parse_weight('2 1 | 1 0'), weight_support((1, 0, 0), 4)
        )


def _normalized(weight: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a - min(weight) for a in weight)


@pytest.mark.parametrize('labels', [(1, 0, 0), (0, 1, 0), (1, 0, 1), (2, 1, 0), (1, 1)])
def test_dual_negates_the_support(labels):
    w = weight_support(labels, len(labels) + 1)
    dual = w.dual()
    assert dual.labels == tuple(reversed(labels))
    assert dual.dimension == w.dimension
    negated = {_normalized(tuple(-a for a in weight)): m for weight, m in w.support}
    assert {_normalized(weight): m for weight, m in dual.support} == negated
    reversed_module = weight_support(tuple(reversed(labels)), len(labels) + 1)
    assert {_normalized(weight): m for weight, m in reversed_module.support} == negated


@pytest.mark.parametrize('labels', [(1, 0, 0), (0, 0, 1), (1, 0, 1)])
def test_screen_is_symmetric_in_the_sources(labels):
    f, e = parse_weight('2 1 | 1 0'), parse_weight('1 0 | 2 1')
    w = weight_support(labels, 4)
    forward = screen_translation(f, e, w)
    backward = screen_translation(e, f, w)
    assert {
        (pair.f_target.weight, pair.e_target.weight): (pair.verdict, pair.f_isolated, pair.e_isolated)
        for pair in forward.pairs
    } == {
        (pair.e_target.weight, pair.f_target.weight): (pair.verdict, pair.e_isolated, pair.f_isolated)
        for pair in backward.pairs
    }


def test_one_way_screen():
    standard = weight_support((1, 0, 0), 4)
    e1, e2 = parse_weight('2 1 | 3 0'), parse_weight('3 1 | 2 0')
    f1, f2 = parse_weight('3 0 | 2 1'), parse_weight('2 0 | 3 1')
    verdict = screen_one_way(e1, e2, f1, f2, standard)
    assert verdict.shared_character
    assert verdict.grading_order
    assert verdict.e_actions == (0, 1, 0, -1)
    assert verdict.occurs is None
    assert verdict.approximate
    assert verdict.to_dict()['e_actions'] == ['0', '1', '0', '-1']
    reversed_order = screen_one_way(e2, e1, f1, f2, standard)
    assert not reversed_order.grading_order
    with pytest.raises(InputError):
        screen_one_way(parse_weight('1 2 | 3 0'), e2, f1, f2, standard)


def test_one_way_screen_with_sources():
    standard = weight_support((1, 0, 0), 4)
    e1, e2 = parse_weight('2 1 | 3 0'), parse_weight('3 1 | 2 0')
    f1, f2 = parse_weight('3 0 | 2 1'), parse_weight('2 0 | 3 1')
    verdict = screen_one_way(
        e1, e2, f1, f2, standard, e_source=parse_weight('3 2 | 1 0'), f_source=parse_weight('3 2 | 1 0')
    )
    assert verdict.occurs is False


def test_splitting_depths_and_curvability(pd42):
    levels = filtration_levels(weight_support((1, 0, 1), 4), pd42)
    assert splitting_depths(levels, Fraction(0), Fraction(0)) == (1, 1)
    assert splitting_depths(levels, Fraction(1), Fraction(-1)) == (0, 0)
    with pytest.raises(InputError):
        splitting_depths(levels, Fraction(2), Fraction(0))
    assert curvability_filter(1)
    assert curvability_filter(2)
    assert not curvability_filter(4)
    assert curvability_filter(4, (1, 2))
    assert not curvability_filter(4, (3, 0))
