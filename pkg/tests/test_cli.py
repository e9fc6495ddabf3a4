import numpy as np
import pytest
from basicsr.utils import get_root_logger
from basicsr.utils.registry import Registry
from os import path as osp

from tsbvp.run import COMMANDS, main
from tsbvp.utils import COMMAND_REGISTRY
from tsbvp.utils.options import ConfigError, load_config, parse_config

DATA = osp.join(osp.dirname(osp.abspath(__file__)), 'data')


def data(name):
    return osp.join(DATA, name)


def read_csv(path):
    with open(path) as f:
        lines = f.read().splitlines()
    header = lines[0].split(',')
    rows = [line.split(',') for line in lines[1:]]
    return header, rows


def write_cfg(tmp_path, text, name='run.cfg'):
    cfg_path = tmp_path / name
    cfg_path.write_text(text)
    return str(cfg_path)


def test_solve_discrete(tmp_path):
    out, report = str(tmp_path / 'u.csv'), str(tmp_path / 'report.txt')
    assert main(['solve', '-c', data('discrete.cfg'), '-o', out, '-r', report]) == 0
    header, rows = read_csv(out)
    assert header == ['t', 'u', 'u_delta', 'residual_interior']
    assert [float(r[0]) for r in rows] == [0.0, 1.0, 2.0]
    np.testing.assert_allclose([float(r[1]) for r in rows], [1.0, 3.0, 4.0], rtol=0, atol=1e-12)
    with open(report) as f:
        text = f.read()
    assert 'converged: true' in text
    assert 'iterations: 1' in text
    assert 'extended_points: 2\n' in text
    assert 'residual_boundary_flux_T: ' in text


def test_solve_closed_form(tmp_path):
    out = str(tmp_path / 'u.csv')
    assert main(['solve', '-c', data('closed_form.cfg'), '-o', out]) == 0
    _, rows = read_csv(out)
    t = np.array([float(r[0]) for r in rows])
    u = np.array([float(r[1]) for r in rows])
    assert len(t) == 1001
    assert np.max(np.abs(u - (0.5 + t - t**2 / 2))) <= 2e-3


def test_solve_output_is_deterministic(tmp_path):
    first, second = str(tmp_path / 'a.csv'), str(tmp_path / 'b.csv')
    code = main(['solve', '-c', data('mixed.cfg'), '-o', first])
    assert main(['solve', '-c', data('mixed.cfg'), '-o', second]) == code
    with open(first, 'rb') as f1, open(second, 'rb') as f2:
        assert f1.read() == f2.read()


def test_solve_writes_csv_to_stdout(capsys):
    assert main(['solve', '-c', data('discrete.cfg')]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == 't,u,u_delta,residual_interior'
    assert len(out.splitlines()) == 4


def test_solve_diverging(tmp_path):
    report = str(tmp_path / 'report.txt')
    assert main(['solve', '-c', data('diverging.cfg'), '-o', str(tmp_path / 'u.csv'), '-r', report]) == 1
    with open(report) as f:
        text = f.read()
    assert 'converged: false' in text
    assert 'non-finite' in text


def test_bad_eta_is_a_config_error(tmp_path):
    assert main(['solve', '-c', data('bad_eta.cfg'), '-o', str(tmp_path / 'u.csv')]) == 2
    assert not osp.exists(tmp_path / 'u.csv')
    with pytest.raises(ConfigError, match='0 < eta < T'):
        load_config(data('bad_eta.cfg'))


def test_missing_config_file(tmp_path):
    assert main(['solve', '-c', str(tmp_path / 'missing.cfg')]) == 2


def test_expression_syntax_error_position():
    with pytest.raises(ConfigError) as excinfo:
        parse_config('[problem]\np = 2\nT = 1\neta = 0.5\nf = u^\n')
    assert excinfo.value.line == 5
    assert excinfo.value.key == 'f'
    assert 'offset' in str(excinfo.value)


def test_unknown_key_reports_line(tmp_path):
    cfg = write_cfg(tmp_path, '[problem]\np = 2\nq = 3\nT = 1\neta = 0.5\nf = 1\n')
    assert main(['solve', '-c', cfg]) == 2
    with pytest.raises(ConfigError, match='line 3: q:'):
        load_config(cfg)


def test_yaml_config_equals_text_config():
    assert load_config(data('closed_form.yml')) == load_config(data('closed_form.cfg'))


def test_check_passes(tmp_path):
    out, report = str(tmp_path / 'check.csv'), str(tmp_path / 'report.txt')
    assert main(['check', '-c', data('closed_form.cfg'), '-o', out, '-r', report, '--strict']) == 0
    with open(report) as f:
        lines = f.read().splitlines()
    assert lines[-1] == 'PASS PASS'
    header, rows = read_csv(out)
    assert header == ['condition', 'level', 'lhs', 'rhs', 'passed']
    assert [r[0] for r in rows] == ['i', 'ii']
    assert [r[-1] for r in rows] == ['1', '1']


def test_failing_check_with_strict(tmp_path):
    cfg = write_cfg(tmp_path, '[problem]\np = 2\nT = 1\neta = 0.5\nf = 1\n[check]\na = 1\nb = 0.5\nsamples = 101\n')
    out = str(tmp_path / 'check.csv')
    assert main(['check', '-c', cfg, '-o', out]) == 0
    assert main(['check', '-c', cfg, '-o', out, '--strict']) == 3


def test_check_needs_levels(tmp_path):
    cfg = write_cfg(tmp_path, '[problem]\np = 2\nT = 1\neta = 0.5\nf = 1\n')
    assert main(['check', '-c', cfg]) == 2
    assert main(['scan-multiplicity', '-c', cfg]) == 2


def test_print_config_round_trip(tmp_path):
    first, second = str(tmp_path / 'first.cfg'), str(tmp_path / 'second.cfg')
    assert main(['print-config', '-c', data('mixed.cfg'), '-o', first]) == 0
    assert main(['print-config', '-c', first, '-o', second]) == 0
    with open(first, 'rb') as f1, open(second, 'rb') as f2:
        assert f1.read() == f2.read()
    assert load_config(first) == load_config(data('mixed.cfg'))


def test_residual_of_exact_profile(tmp_path):
    cfg = write_cfg(
        tmp_path, '[problem]\np = 2\nT = 1\neta = 0.5\nf = 1\n[timescale]\nresolution = 0.01\n'
        '[solver]\ninit = 0.5 + t - t*t/2\n')
    out = str(tmp_path / 'residual.csv')
    assert main(['residual', '-c', cfg, '-o', out]) == 0
    _, rows = read_csv(out)
    assert len(rows) == 101
    assert max(abs(float(r[3])) for r in rows) <= 1e-8


def test_scan_infinite(tmp_path):
    out, report = str(tmp_path / 'pairs.csv'), str(tmp_path / 'report.txt')
    assert main(['scan-infinite', '-c', data('infinite.cfg'), '-o', out, '-r', report, '--strict']) == 0
    header, rows = read_csv(out)
    assert header[:3] == ['k', 'a_k', 'b_k']
    assert [r[0] for r in rows] == [str(k) for k in range(1, 9)]
    with open(report) as f:
        text = f.read()
    assert 'longest_run_start: 1' in text
    assert 'longest_run_length: 4' in text


def test_sample_timescale(tmp_path):
    out = str(tmp_path / 'grid.csv')
    assert main(['sample-timescale', '-c', data('mixed.cfg'), '-o', out]) == 0
    header, rows = read_csv(out)
    assert header == ['t', 'right_dense', 'left_dense', 'sigma', 'rho']
    assert [float(r[0]) for r in rows] == [0.0, 0.125, 0.25, 0.375, 0.5, 0.75, 1.0]
    assert [r[1] for r in rows] == ['1', '1', '1', '1', '0', '0', '0']
    assert [r[2] for r in rows] == ['0', '1', '1', '1', '1', '0', '0']
    assert [float(r[3]) for r in rows][4:] == [0.75, 1.0, 1.0]
    assert [float(r[4]) for r in rows][4:] == [0.5, 0.5, 0.75]


def test_scan_multiplicity_finds_two_solutions(tmp_path):
    report = str(tmp_path / 'report.txt')
    assert main(['scan-multiplicity', '-c', data('multiplicity.cfg'), '-o', str(tmp_path / 'm.csv'), '-r',
                 report]) == 0
    with open(report) as f:
        text = f.read()
    assert 'PASS PASS PASS' in text
    assert 'solutions: 2' in text


@pytest.mark.parametrize('name', [
    'solve_closed_form.yml', 'solve_mixed_timescale.yml', 'scan_multiplicity.yml', 'scan_infinite.yml',
    'solve_integer.cfg'
])
def test_shipped_options_are_valid(name):
    options = osp.join(osp.dirname(DATA), osp.pardir, 'options')
    cfg = load_config(osp.join(options, name))
    assert cfg.problem.p > 1


def test_command_names_map_to_registered_functions():
    assert isinstance(COMMAND_REGISTRY, Registry)
    assert sorted(COMMANDS.values()) == sorted(COMMAND_REGISTRY.keys())
    assert COMMAND_REGISTRY.get(COMMANDS['scan-infinite']).__name__ == 'scan_infinite_command'


def test_log_file_is_written_and_released_per_run(tmp_path):
    logger = get_root_logger()
    handlers = list(logger.handlers)
    for name in ('first.log', 'second.log'):
        log = str(tmp_path / name)
        assert main(['solve', '-c', data('discrete.cfg'), '-o', str(tmp_path / 'u.csv'), '--log', log]) == 0
        assert logger.handlers == handlers
        with open(log) as f:
            text = f.read()
        assert 'Problem: p=2' in text and 'T=2.0, eta=1.0' in text
        assert 'converged after 1 iterations' in text
