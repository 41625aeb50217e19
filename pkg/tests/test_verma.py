from fractions import Fraction

import pytest

from vermakit.errors import ContractError, InputError
from vermakit.liealg import bracket
from vermakit.selftest import (
    module_relation_failures,
    random_normal_word,
    random_word,
)
from vermakit.verma import (
    AlgebraElement,
    ModuleRealization,
    Variant,
    act,
    act_lie,
    block_standard,
    density,
    element,
    exterior_square,
    format_element,
    generator,
    layer_basis,
    normal_form,
    parse_element,
    representation_defect,
    split2,
    symmetric_square,
    symmetrize_projection,
    tensor,
    term_weight,
    validated,
)

from .conftest import DETERMINANT, DETERMINANT_SQUARED

LIFTED = (
    '1/2 * y[3,1] y[4,2] - 1/2 * y[3,2] y[4,1] - 1/2 * y[4,1] y[3,2] + 1/2 * y[4,2] y[3,1]'
)


def test_density_realization(pd42):
    r = density(pd42, -1)
    assert r.name == 'R[-1]'
    assert r.dimension == 1
    assert r.action[pd42.h(2)] == ((Fraction(-1),),)
    assert r.action[pd42.h(1)] == ((Fraction(0),),)
    assert r.basis_weight(0) == (0, 0)
    assert representation_defect(r) == []


def test_other_realizations(pd42):
    v1 = block_standard(pd42, 1)
    v2_dual = block_standard(pd42, 2, dual=True, w=Fraction(1, 2))
    assert v1.basis_weight(0) == (1, 0)
    assert v2_dual.basis_weight(0) == (0, -1)
    for r in (
        v1,
        v2_dual,
        block_standard(pd42, 1, dual=True),
        tensor(v1, v2_dual),
        symmetric_square(v1),
        exterior_square(block_standard(pd42, 2)),
    ):
        assert representation_defect(r) == [], r.name
    assert tensor(v1, v2_dual).dimension == 4
    assert symmetric_square(v1).dimension == 3
    assert exterior_square(v1).dimension == 1
    with pytest.raises(InputError):
        block_standard(pd42, 3)


def test_broken_realization_is_rejected(pd42):
    r = density(pd42, 0)
    action = dict(r.action)
    action[pd42.h(1)] = ((Fraction(1),),)
    broken = ModuleRealization('broken', pd42, 1, Fraction(0), action)
    assert representation_defect(broken) != []
    with pytest.raises(ContractError, match='does not respect the bracket'):
        validated(broken)
    assert validated(r) is r


def test_parse_and_format(yamabe):
    det = parse_element(DETERMINANT, yamabe, Variant.HOLONOMIC)
    assert format_element(det) == DETERMINANT
    assert str(det) == DETERMINANT
    assert parse_element('y[4,2] y[3,1] - y[4,1] y[3,2]', yamabe, Variant.HOLONOMIC) == det
    lifted = parse_element(LIFTED, yamabe, Variant.SEMIHOLONOMIC)
    assert format_element(lifted) == LIFTED
    assert format_element(parse_element('-2 * y[3,2] + 3/4', yamabe, Variant.HOLONOMIC)) == (
        '3/4 - 2 * y[3,2]'
    )
    assert format_element(parse_element('y[3,1] - y[3,1]', yamabe, Variant.HOLONOMIC)) == '0'


def test_parse_with_module_index(pd42):
    r = block_standard(pd42, 1)
    e = parse_element('y[3,1] | e1 - 2 * y[4,2] | e0', r, Variant.HOLONOMIC)
    assert e.coefficient((pd42.e(3, 1),), 1) == 1
    assert format_element(e) == 'y[3,1] | e1 - 2 * y[4,2] | e0'


@pytest.mark.parametrize(
    'text',
    ['y[1,3]', 'y[3,1] +', 'foo', 'y[3,1] | e1', '2 * ', 'y[3,1] y[4,2] y[5,1]', ''],
)
def test_parse_errors(text, yamabe):
    with pytest.raises(InputError):
        parse_element(text, yamabe, Variant.HOLONOMIC)


def test_parse_rewrites_to_normal_form(pd42):
    r = density(pd42, 2)
    assert format_element(parse_element('E[1,3] y[3,1]', r, Variant.HOLONOMIC)) == '2'
    assert parse_element('E[3,4] y[4,1]', r, Variant.HOLONOMIC) == parse_element(
        'y[3,1]', r, Variant.HOLONOMIC
    )
    assert parse_element('H[2]', r, Variant.SEMIHOLONOMIC) == 2 * generator(r, Variant.SEMIHOLONOMIC)


def test_semiholonomic_keeps_order(yamabe):
    e = parse_element('y[4,2] y[3,1]', yamabe, Variant.SEMIHOLONOMIC)
    assert format_element(e) == 'y[4,2] y[3,1]'
    assert e != parse_element('y[3,1] y[4,2]', yamabe, Variant.SEMIHOLONOMIC)


def test_element_arithmetic(pd42, yamabe):
    y31, y42 = pd42.e(3, 1), pd42.e(4, 2)
    a = element([((y31,), 0, 1), ((y42,), 0, Fraction(1, 2))], yamabe, Variant.HOLONOMIC)
    b = element({((y31,), 0): 1}, yamabe, Variant.HOLONOMIC)
    assert (a - b).terms == {((y42,), 0): Fraction(1, 2)}
    assert (a + (-a)).is_zero
    assert hash(2 * b) == hash(b + b)
    assert a.degree == 1
    with pytest.raises(ContractError):
        a + element({((y31,), 0): 1}, yamabe, Variant.SEMIHOLONOMIC)
    with pytest.raises(ContractError):
        a + element({((y31,), 0): 1}, density(pd42, 0), Variant.HOLONOMIC)
    with pytest.raises(ContractError):
        (a + generator(yamabe, Variant.HOLONOMIC)).degree


def test_determinant_is_singular_only_at_its_weight(pd42, det):
    for z in pd42.g_plus + pd42.raising_operators():
        assert act(z, det).is_zero
    other = parse_element(DETERMINANT, density(pd42, 0), Variant.HOLONOMIC)
    assert act(pd42.e(1, 3), other) == parse_element('y[4,2]', density(pd42, 0), Variant.HOLONOMIC)


def test_squared_determinant_is_singular(pd42, det_squared):
    for z in pd42.g_plus + pd42.raising_operators():
        assert act(z, det_squared).is_zero


def test_act_needs_normal_form(pd42, yamabe):
    raw = AlgebraElement({((pd42.e(1, 3), pd42.e(3, 1)), 0): Fraction(1)}, yamabe, Variant.HOLONOMIC)
    with pytest.raises(ContractError):
        act(pd42.e(1, 2), raw)
    assert normal_form(raw) == -1 * generator(yamabe, Variant.HOLONOMIC)


def test_random_rewriting_agrees(pd42, rng):
    densities = {w: density(pd42, w) for w in range(-2, 3)}
    for _ in range(500):
        r = densities[rng.randint(-2, 2)]
        variant = rng.choice(list(Variant))
        raw = AlgebraElement({(random_word(pd42, rng), 0): Fraction(1)}, r, variant)
        assert normal_form(raw) == normal_form(raw, rng=rng)


def test_module_relation(pd42, rng):
    densities = {w: density(pd42, w) for w in range(-2, 3)}
    for _ in range(200):
        r = densities[rng.randint(-2, 2)]
        x, y = rng.choice(pd42.basis), rng.choice(pd42.basis)
        e = normal_form(
            AlgebraElement({(random_normal_word(pd42, rng), 0): Fraction(1)}, r, Variant.HOLONOMIC)
        )
        assert act(x, act(y, e)) - act(y, act(x, e)) == act_lie(bracket(x, y, pd42), e)


def test_module_relation_exhaustive(pd42, yamabe):
    count, failures = module_relation_failures(yamabe)
    assert failures == []
    holonomic = 105 * 35
    semiholonomic = (105 - 6) * 85
    assert count == holonomic + semiholonomic


def test_symmetrization_intertwines(pd42, rng):
    densities = {w: density(pd42, w) for w in range(-2, 3)}
    for _ in range(200):
        r = densities[rng.randint(-2, 2)]
        x = rng.choice(pd42.basis)
        e = AlgebraElement(
            {(random_normal_word(pd42, rng), 0): Fraction(1)}, r, Variant.SEMIHOLONOMIC
        )
        assert symmetrize_projection(act(x, e)) == act(x, symmetrize_projection(e))


def test_semiholonomic_module_relation_on_parabolic(pd42, rng):
    for _ in range(40):
        r = density(pd42, rng.randint(-2, 2))
        x, y = rng.choice(pd42.parabolic), rng.choice(pd42.basis)
        e = AlgebraElement(
            {(random_normal_word(pd42, rng), 0): Fraction(1)}, r, Variant.SEMIHOLONOMIC
        )
        assert act(x, act(y, e)) - act(y, act(x, e)) == act_lie(bracket(x, y, pd42), e)


def test_semiholonomic_relation_fails_on_g_minus(pd42, yamabe):
    e = generator(yamabe, Variant.SEMIHOLONOMIC)
    x, y = pd42.e(3, 1), pd42.e(4, 2)
    assert not (act(x, act(y, e)) - act(y, act(x, e))).is_zero
    assert bracket(x, y, pd42) == {}


def test_symmetrize_projection(pd42, yamabe, det):
    lifted = parse_element(LIFTED, yamabe, Variant.SEMIHOLONOMIC)
    assert symmetrize_projection(lifted) == det
    for x in pd42.basis:
        assert symmetrize_projection(act(x, lifted)) == act(x, det)
    with pytest.raises(ContractError):
        symmetrize_projection(det)


def test_split2(pd42, yamabe, det):
    lifted = split2(det)
    assert lifted == parse_element(LIFTED, yamabe, Variant.SEMIHOLONOMIC)
    assert symmetrize_projection(lifted) == det
    for h in pd42.parabolic:
        assert split2(act(h, det)) == act(h, lifted)
    square = parse_element('y[3,1] y[3,1]', yamabe, Variant.HOLONOMIC)
    assert format_element(split2(square)) == 'y[3,1] y[3,1]'
    with pytest.raises(ContractError):
        split2(lifted)
    with pytest.raises(ContractError):
        split2(parse_element('y[3,1] y[3,1] y[4,2]', yamabe, Variant.HOLONOMIC))


def test_layer_basis(yamabe):
    assert len(layer_basis(0, yamabe, Variant.HOLONOMIC)) == 1
    assert len(layer_basis(2, yamabe, Variant.HOLONOMIC)) == 10
    assert len(layer_basis(2, yamabe, Variant.SEMIHOLONOMIC)) == 16
    assert len(layer_basis(4, yamabe, Variant.HOLONOMIC)) == 35
    with pytest.raises(InputError):
        layer_basis(-1, yamabe, Variant.HOLONOMIC)


def test_term_weight(pd42, yamabe):
    y31, y42 = pd42.e(3, 1), pd42.e(4, 2)
    assert term_weight((y31,), 0, yamabe) == (-1, 1)
    assert term_weight((y31, y42), 0, yamabe) == (0, 0)
    assert term_weight((), 0, block_standard(pd42, 1)) == (1, 0)


def test_squared_determinant_text(det_squared):
    assert format_element(det_squared) == DETERMINANT_SQUARED
