import json
import shutil

import jsonschema
import pytest
from click.testing import CliRunner

from vermakit import cli as cli_module
from vermakit.cli import cli
from vermakit.selftest import GOLDEN_DIR

from .conftest import DETERMINANT, DETERMINANT_SQUARED


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def _json(result, schema: dict) -> dict:
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    jsonschema.validate(payload, schema)
    return payload


def test_pattern_text(runner):
    result = runner.invoke(cli, ['pattern', '--n', '4', '--p', '2', '--weight', '3 2 1 0'])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == 'pattern n=4 p=2 singularity=0: 6 nodes, 6 edges'
    assert [line.split(':')[0] for line in lines[1:6]] == ['0', '1', '2', '3', '4']
    again = runner.invoke(cli, ['pattern', '--n', '4', '--p', '2', '--weight', '3 2 1 0'])
    assert again.output == result.output


def test_pattern_chain(runner):
    result = runner.invoke(cli, ['pattern', '--n', '3', '--p', '1', '--weight', '2 1 0'])
    assert result.exit_code == 0
    assert '3 nodes, 2 edges' in result.output


def test_pattern_of_non_trivial_weight(runner, load_schema):
    args = ['pattern', '--n', '4', '--p', '2', '--weight', '4 2 1 0']
    text = runner.invoke(cli, args)
    assert text.exit_code == 0, text.output
    assert '(21|40) -> (41|20) [2]' in text.output
    payload = _json(runner.invoke(cli, args + ['--format', 'json']), load_schema('pattern'))
    assert [edge['order'] for edge in payload['edges']] == ['1', '2', '1', '1', '2', '1']


def test_pattern_json(runner, load_schema):
    result = runner.invoke(
        cli, ['pattern', '--n', '5', '--p', '2', '--weight', '4 3 2 1 0', '--format', 'json']
    )
    payload = _json(result, load_schema('pattern'))
    assert len(payload['nodes']) == 10
    assert len(payload['edges']) == 12


def test_pattern_singular(runner, load_schema):
    args = ['pattern', '--n', '4', '--p', '2', '--weight', '2 1 1 0']
    text = runner.invoke(cli, args)
    assert text.exit_code == 0
    assert text.output.count('×') == 2
    assert '(21|10) .. (10|21) [2]' in text.output
    payload = _json(runner.invoke(cli, args + ['--format', 'json']), load_schema('pattern'))
    assert payload['singularity'] == 1
    assert [node['dominant'] for node in payload['nodes']].count(False) == 2
    assert payload['pairs'] == [{'from': [2, 1, 1, 0], 'to': [1, 0, 2, 1], 'order': '2'}]


def test_pattern_sorts_input_and_annotates_pairs(runner):
    result = runner.invoke(
        cli,
        [
            'pattern', '--n', '4', '--p', '2', '--weight', '0 1 2 3',
            '--pair', '3 2 | 1 0', '1 0 | 3 2',
        ],
    )
    assert result.exit_code == 0
    assert '(32|10) .. (10|32) [4]' in result.output


def test_pattern_dot(runner):
    result = runner.invoke(
        cli, ['pattern', '--n', '4', '--p', '2', '--weight', '3 2 1 0', '--format', 'dot']
    )
    assert result.exit_code == 0
    assert result.output.startswith('digraph pattern {')
    assert result.output.count('rank=same') == 5


@pytest.mark.parametrize(
    'args',
    [
        ['pattern', '--n', '4', '--p', '2', '--weight', '3 2 x 0'],
        ['pattern', '--n', '4', '--p', '2', '--weight', '3 2 1'],
        ['pattern', '--n', '4', '--p', '5', '--weight', '3 2 1 0'],
        ['pattern', '--n', '4', '--p', '2'],
        ['weight', '--n', '4', '--p', '2'],
        [
            'translate', '--n', '4', '--p', '2',
            '--source-f', '3 2 1 0', '--source-e', '2 1 1 0', '--labels', '1,0,0',
        ],
    ],
)
def test_input_errors_exit_2(runner, args):
    assert runner.invoke(cli, args).exit_code == 2


def test_orbit(runner, load_schema):
    args = ['orbit', '--n', '4', '--p', '2', '--weight', '3 2 1 0']
    text = runner.invoke(cli, args)
    assert text.exit_code == 0
    assert text.output.splitlines()[1] == '1 (31|20) [0 2 1 3] e=1'
    payload = _json(runner.invoke(cli, args + ['--format', 'json']), load_schema('orbit'))
    assert [element['length'] for element in payload['elements']] == [0, 1, 2, 2, 3, 4]


def test_weight(runner, load_schema):
    payload = _json(
        runner.invoke(cli, ['weight', '--n', '4', '--p', '2', '--dynkin', '0,0,0', '--format', 'json']),
        load_schema('weight'),
    )
    assert payload['tuple'] == [3, 2, 1, 0]
    assert payload['e_action'] == '2'
    assert payload['g_dominant'] is True
    text = runner.invoke(cli, ['weight', '--n', '4', '--p', '2', '--tuple', '2 1 1 0'])
    assert 'singularity: 1' in text.output


def test_singular_determinant(runner, load_schema):
    args = ['singular', '--n', '4', '--p', '2', '--k', '2', '--w=-1', '--variant', 'holonomic']
    text = runner.invoke(cli, args)
    assert text.exit_code == 0
    assert DETERMINANT in text.output.splitlines()
    payload = _json(runner.invoke(cli, args + ['--format', 'json']), load_schema('singular'))
    assert payload['vectors'] == [DETERMINANT]


def test_singular_squared_determinant(runner):
    result = runner.invoke(cli, ['singular', '--n', '4', '--p', '2', '--k', '4', '--w', '0'])
    assert result.exit_code == 0
    assert DETERMINANT_SQUARED in result.output.splitlines()


def test_singular_empty_report(runner):
    result = runner.invoke(cli, ['singular', '--n', '4', '--p', '2', '--k', '2', '--w', '0'])
    assert result.exit_code == 0
    assert 'no singular vectors' in result.output


def test_singular_degree_cap(runner, monkeypatch):
    args = ['singular', '--n', '4', '--p', '2', '--k', '5', '--w', '0']
    assert runner.invoke(cli, args).exit_code == 2
    monkeypatch.setenv('VERMAKIT_DEGREE_CAP', '1')
    assert runner.invoke(cli, ['singular', '--n', '4', '--p', '2', '--k', '2', '--w', '0']).exit_code == 2
    assert runner.invoke(cli, args[:6] + ['2', '--w', '0', '--degree-cap', '2']).exit_code == 0


def test_scan(runner, load_schema):
    payload = _json(
        runner.invoke(
            cli,
            ['scan', '--n', '4', '--p', '2', '--k', '2', '--weights=-1,0,1/2', '--format', 'json'],
        ),
        load_schema('scan'),
    )
    assert payload['restricted'] is True
    assert payload['results'] == [
        {'w': '-1', 'dimension': 1},
        {'w': '0', 'dimension': 0},
        {'w': '1/2', 'dimension': 0},
    ]
    text = runner.invoke(cli, ['scan', '--n', '4', '--p', '2', '--k', '2', '--w-min=-2', '--w-max', '0'])
    assert text.output.splitlines() == ['w=-2: 0', 'w=-1: 1 *', 'w=0: 0']


def test_cover_lift(runner, tmp_path):
    vector = tmp_path / 'det.txt'
    vector.write_text(DETERMINANT + '\n')
    result = runner.invoke(cli, ['cover', '--n', '4', '--p', '2', '--w=-1', str(vector)])
    assert result.exit_code == 0
    assert 'LIFT; witness 1/2 * y[3,1] y[4,2]' in result.output


def test_cover_no_lift(runner, tmp_path, load_schema):
    vector = tmp_path / 'det_squared.txt'
    vector.write_text(DETERMINANT_SQUARED)
    args = ['cover', '--n', '4', '--p', '2', '--w', '0', str(vector)]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0
    assert 'NO LIFT; obstructing generator E[1,3]; residual ' in result.output
    assert 'preimage dimension 3' in result.output
    payload = _json(runner.invoke(cli, args + ['--format', 'json']), load_schema('cover'))
    assert payload['exists'] is False
    assert payload['obstruction']['generator'] == 'E[1,3]'


def test_cover_rejects_non_singular_input(runner, tmp_path):
    vector = tmp_path / 'det.txt'
    vector.write_text(DETERMINANT)
    result = runner.invoke(cli, ['cover', '--n', '4', '--p', '2', '--w', '0', str(vector)])
    assert result.exit_code == 3


def test_translate(runner, load_schema):
    args = [
        'translate', '--n', '4', '--p', '2',
        '--source-f', '2 1 | 1 0', '--source-e', '1 0 | 2 1', '--labels', '1,0,0',
    ]
    text = runner.invoke(cli, args)
    assert text.exit_code == 0
    assert '(31|10) / (10|31): isolated' in text.output
    assert '2 filtration levels' in text.output
    payload = _json(runner.invoke(cli, args + ['--format', 'json']), load_schema('translate'))
    assert payload['levels'] == [
        {'level': '1/2', 'multiplicity': 2},
        {'level': '-1/2', 'multiplicity': 2},
    ]


def test_selftest_passes(runner, load_schema):
    payload = _json(runner.invoke(cli, ['selftest', '--json']), load_schema('selftest'))
    assert payload['passed'] is True
    assert len(payload['checks']) == 10


def test_selftest_detects_corrupted_golden(runner, tmp_path):
    goldens = tmp_path / 'goldens'
    shutil.copytree(GOLDEN_DIR, goldens)
    golden = json.loads((goldens / 'pattern_2_2.json').read_text())
    golden['nodes'][0]['length'] = 7
    (goldens / 'pattern_2_2.json').write_text(json.dumps(golden))
    result = runner.invoke(cli, ['selftest', '--goldens', str(goldens)])
    assert result.exit_code == 1
    assert 'FAIL pattern reproduction' in result.output
    assert result.output.splitlines()[-1] == 'FAIL'


def test_internal_errors_exit_1(runner, monkeypatch):
    def broken(goldens=None):
        raise KeyError('missing')

    monkeypatch.setattr(cli_module, 'run_selftest', broken)
    assert runner.invoke(cli, ['selftest']).exit_code == 1
