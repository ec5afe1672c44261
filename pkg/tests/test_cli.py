import json
import math

import pytest

from terminal_core import GaugeTerminal


@pytest.fixture
def terminal(tmp_path):
    return GaugeTerminal(cwd=str(tmp_path), environ={})


def report_of(execution):
    return json.loads(execution.output)['report']


def test_geom_two_squares(terminal):
    result = terminal.execute(['geom', '--figure', 'two-unit-squares.json'])
    assert result.code == 0
    report = report_of(result)
    assert report['perimeter'] == '6/1'
    assert report['volume'] == '2/1'
    assert report['cubes'] == 2


def test_geom_inline_figure_with_eps(terminal):
    figure = json.dumps({'dim': 2, 'cubes': [{'level': 0, 'index': [0, 0]}]})
    result = terminal.execute(['geom', '-f', figure, '--eps', '1/6'])
    assert result.code == 0
    report = report_of(result)
    assert report['regularity_squared'] == '1/32'
    assert report['eps_regular'] is True


def test_geom_relative_perimeter(terminal):
    result = terminal.execute(['geom', '--figure', 'lower-left-quarter.json', '--relative-to', 'unit-square.json'])
    relative = report_of(result)['relative']
    assert relative['P(E, A)'] == '1/1'
    assert relative['P(E, cl A)'] == '2/1'


def test_constants_in_the_plane(terminal):
    result = terminal.execute(['constants', '--n', '2'])
    assert result.code == 0
    assert report_of(result)['rho'] == pytest.approx(0.0221, abs=1e-4)


def test_csv_output(terminal):
    result = terminal.execute(['geom', '--figure', 'unit-square.json', '--format', 'csv'])
    assert result.code == 0
    header, row = result.output.strip().splitlines()
    assert header.split(',') == ['dim', 'volume', 'perimeter', 'regularity', 'diameter']
    assert row.startswith('2,1/1,4/1,')


def test_output_file(terminal, tmp_path):
    result = terminal.execute(['--output', 'out.json', 'constants'])
    assert result.code == 0
    assert result.output == ''
    written = json.loads((tmp_path / 'out.json').read_text(encoding='utf-8'))
    assert written['command'] == 'constants'
    assert any('out.json' in line for line in result.messages)


def test_gauss_green_quadratic(terminal):
    result = terminal.execute(['gauss-green', '--field', 'quadratic', '--figure', 'unit-square.json'])
    assert result.code == 0
    report = report_of(result)
    assert report['exact_match'] is True
    assert report['abs_error'] <= 1e-8


def test_hk_integrate(terminal):
    result = terminal.execute(['hk', 'integrate', '--interval', '0,1'])
    assert result.code == 0
    assert abs(report_of(result)['value'] - math.sin(1.0)) <= 1e-6


def test_refuted_claim_exits_two(terminal):
    result = terminal.execute(['verify', '--claim', 'double-lebesgue.json', '--trials', '4', '--count', '3',
                               '--depth', '2'])
    assert result.code == 2
    assert report_of(result)['verdict'] == 'refuted'


def test_consistent_claim_exits_zero(terminal):
    result = terminal.execute(['verify', '--claim', 'linear-flux.json', '--trials', '2', '--count', '4'])
    assert result.code == 0
    assert report_of(result)['verdict'] == 'consistent-at-depth'


def test_mc_claim_with_points(terminal):
    result = terminal.execute(['verify', '--claim', 'mc-oscillatory.json', '--points', '0', '0.5'])
    assert result.code == 0
    assert [row['point'] for row in report_of(result)['rows']] == [0.0, 0.5]


def test_charge_check_segment_is_falsified(terminal):
    result = terminal.execute(['charge-check', '--charge', 'segment.json', '--trials', '4'])
    assert result.code == 2
    assert report_of(result)['falsifier']['status'] == 'falsified'


def test_charge_check_density_passes(terminal):
    result = terminal.execute(['charge-check', '--charge', 'sin-density.json', '--trials', '8'])
    assert result.code == 0
    assert report_of(result)['falsifier']['status'] == 'passed-sampled'


def test_unknown_command_exits_three(terminal):
    result = terminal.execute(['frobnicate'])
    assert result.code == 3
    assert result.output == ''
    assert any('command not found' in line for line in result.messages)


def test_missing_file_exits_three(terminal):
    result = terminal.execute(['geom', '--figure', 'no-such-figure.json'])
    assert result.code == 3


def test_bad_format_exits_three(terminal):
    assert terminal.execute(['constants', '--format', 'xml']).code == 3


def test_budget_exits_four(terminal, tmp_path):
    (tmp_path / 'tight.json').write_text(json.dumps({'refinement_budget': 1000}), encoding='utf-8')
    result = terminal.execute(['--config', 'tight.json', 'geom', '--approximate', '0,0', '1', '12'])
    assert result.code == 4


def test_seed_from_environment(tmp_path):
    result = GaugeTerminal(cwd=str(tmp_path), environ={'GAUGEKIT_SEED': '5'}).execute(['constants'])
    assert json.loads(result.output)['settings']['seed'] == 5


def test_seed_flag_overrides_config(terminal):
    result = terminal.execute(['constants', '--seed', '11', '--config', 'quick.json'])
    settings = json.loads(result.output)['settings']
    assert settings['seed'] == 11
    assert settings['seminorm_depth'] == 2


def test_same_seed_same_bytes(tmp_path):
    argv = ['--seed', '3', 'verify', '--claim', 'lebesgue.json', '--trials', '2', '--count', '2', '--depth', '1']
    first = GaugeTerminal(cwd=str(tmp_path), environ={}).execute(argv)
    second = GaugeTerminal(cwd=str(tmp_path), environ={}).execute(argv)
    assert first.code == 0
    assert first.output == second.output


def test_help(terminal):
    result = terminal.execute([])
    assert result.code == 0
    assert 'geom' in report_of(result)['commands']
    assert terminal.execute(['help', 'verify']).code == 0
    assert terminal.execute(['help', 'nothing']).code == 3


def test_partition_reflect_reports_piece_status(terminal):
    box = json.dumps({'bounds': [[2, 3]]})
    result = terminal.execute(['partition', 'reflect', '--box', box, '--x', '0', '--r', '2'])
    assert result.code == 0
    pieces = report_of(result)['pieces']
    assert [p['sign'] for p in pieces] == [1, -1]
    for piece in pieces:
        assert piece['certified'] and piece['on_bound']
        assert piece['isoperimetric'] == 'passed-sampled'
