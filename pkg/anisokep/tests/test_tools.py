import json
import os

from anisokep.testing import *
from anisokep.morse import (MorseApproximation, PotentialClassification,
                            AlphaBarResult, IN)
from anisokep.tools import (cmd_validate, cmd_bolza, cmd_portrait,
                            cmd_connect, cmd_classify, cmd_alpha_bar,
                            float_list, EXIT_OK, EXIT_FAILURE,
                            EXIT_CONFIG, EXIT_INFEASIBLE)
from anisokep.core import NoConvergenceError
from anisokep.__main__ import main as dispatch


def read_json(path):
    with open(str(path)) as f:
        return json.load(f)


def test_float_list():
    assert float_list('0.4,0.2, 0.1') == [0.4, 0.2, 0.1]
    with pytest.raises(Exception):
        float_list('0.4,x')


def test_validate_passes(tmpdir, capsys):
    code = cmd_validate.main(['--potential', 'devaney', '--out', str(tmpdir)])
    assert code == EXIT_OK
    assert 'devaney: PASS' in capsys.readouterr()[0]
    assert read_json(tmpdir.join('validate.json'))['verdict'] == 'PASS'
    assert read_json(tmpdir.join('config.json'))['potential'] == 'devaney'


def test_validate_fails(tmpdir, capsys):
    code = cmd_validate.main(['--potential', 'isotropic', '--out',
                              str(tmpdir)])
    assert code == EXIT_FAILURE
    assert 'isotropic: FAIL' in capsys.readouterr()[0]


def test_validate_barrier(tmpdir):
    code = cmd_validate.main(['--potential', 'barrier50', '--barrier', '10',
                              '--out', str(tmpdir)])
    assert code == EXIT_OK
    assert 'barrier' in read_json(tmpdir.join('validate.json'))


def test_configuration_errors(tmpdir):
    out = str(tmpdir)
    assert cmd_validate.main(['--potential', 'missing.json',
                              '--out', out]) == EXIT_CONFIG
    assert cmd_validate.main(['--out', out]) == EXIT_CONFIG
    assert cmd_validate.main(['--config', str(tmpdir.join('none.json')),
                              '--potential', 'devaney']) == EXIT_CONFIG
    assert cmd_validate.main(['--potential', 'no_such_potential',
                              '--out', out]) == EXIT_CONFIG


def test_bad_flag_value():
    with pytest.raises(SystemExit):
        cmd_bolza.main(['--potential', 'isotropic', '--x1=0.1,x'])


def test_config_file_precedence(tmpdir):
    settings = tmpdir.join('settings.json')
    settings.write(json.dumps({'potential': 'isotropic',
                               'sample_count': 500}))
    out = tmpdir.join('out')
    code = cmd_validate.main(['--config', str(settings), '--potential',
                              'devaney', '--out', str(out)])
    assert code == EXIT_OK
    echoed = read_json(out.join('config.json'))
    assert echoed['potential'] == 'devaney'
    assert echoed['sample_count'] == 500
    assert read_json(out.join('validate.json'))['sample_count'] == 500


def test_bolza_infeasible(tmpdir):
    code = cmd_bolza.main(['--potential', 'isotropic', '--x1=0.1,0',
                           '--x2=1,0', '--eps', '0.5', '--out', str(tmpdir)])
    assert code == EXIT_INFEASIBLE
    assert not os.path.exists(str(tmpdir.join('path.csv')))


def test_bolza_writes_solution(tmpdir, capsys):
    code = cmd_bolza.main(['--potential', 'isotropic', '--x1=1,0',
                           '--x2=-1,0', '--eps', '1', '--grid-size', '120',
                           '--restarts', '1', '--out', str(tmpdir)])
    assert code == EXIT_OK
    assert 'PositionJumping' in capsys.readouterr()[0]
    data = read_json(tmpdir.join('solution.json'))
    assert_allclose(data['action'], numpy.sqrt(2.0) * numpy.pi, rtol=1e-2)
    assert os.path.exists(str(tmpdir.join('path.csv')))


def test_bolza_no_convergence(tmpdir, monkeypatch, capsys):
    def fail(problem, **options):
        raise NoConvergenceError("no restart reached residual 1e-06")
    monkeypatch.setattr(cmd_bolza, 'minimize_bolza', fail)
    code = cmd_bolza.main(['--potential', 'isotropic', '--out', str(tmpdir)])
    assert code == EXIT_FAILURE
    assert 'NoConvergenceError' in capsys.readouterr()[1]
    assert not os.path.exists(str(tmpdir.join('solution.json')))


def test_portrait(tmpdir):
    code = cmd_portrait.main(['--potential', 'devaney', '--horizon', '1',
                              '--step', '0.01', '--grid', '2', '2',
                              '--out', str(tmpdir)])
    assert code == EXIT_OK
    assert os.path.exists(str(tmpdir.join('portrait.svg')))
    assert len(tmpdir.listdir(lambda p: p.basename.startswith('orbit_'))) \
        == 4


def test_connect_needs_bracket(tmpdir):
    assert cmd_connect.main(['--potential', 'devaney',
                             '--out', str(tmpdir)]) == EXIT_CONFIG


def test_connect_bad_bracket(tmpdir):
    code = cmd_connect.main(['--potential', 'devaney', '--bracket', '0.1,0.2',
                             '--step', '0.01', '--width', '0.05',
                             '--out', str(tmpdir)])
    assert code == EXIT_FAILURE


def test_dispatch(tmpdir, capsys):
    assert dispatch([]) == 0
    assert 'commands:' in capsys.readouterr()[0]
    assert dispatch(['nope']) == EXIT_CONFIG
    assert dispatch(['validate', '--potential', 'devaney',
                     '--out', str(tmpdir)]) == EXIT_OK


class StubSolution(object):
    delta_pos = 1.5
    delta_vel = 0.0
    action = 10.0
    kind = 'PositionJumping'
    jump_tol = 0.01


def stub_classification(inconsistent):
    approx = MorseApproximation(0.2, [5.0, 10.0, 20.0], [StubSolution()] * 3)
    return PotentialClassification(1.5, 0.0, [(0.4, 0.3), (0.2, 0.25)], 0.25,
                                   0.05, IN, inconsistent, 5.0, 5.6, 2, 0.2,
                                   0.01, 1e-3, approx)


def test_classify_files(tmpdir, monkeypatch):
    calls = []

    def fake(p, **options):
        calls.append(options)
        return stub_classification(False)
    monkeypatch.setattr(cmd_classify, 'classify', fake)
    code = cmd_classify.main(['--potential', 'barrier50', '--eps-grid',
                              '0.4,0.2', '--radii', '5,10,20',
                              '--out', str(tmpdir)])
    assert code == EXIT_OK
    assert calls[0]['eps_schedule'] == [0.4, 0.2]
    assert calls[0]['radii'] == [5.0, 10.0, 20.0]
    assert read_json(tmpdir.join('classification.json'))['verdict'] == IN
    with open(str(tmpdir.join('gamma_curve.csv'))) as f:
        assert f.read() == 'eps,gamma\n0.4,0.3\n0.2,0.25\n'
    with open(str(tmpdir.join('jumps.csv'))) as f:
        assert len(f.readlines()) == 4


def test_classify_inconsistent(tmpdir, monkeypatch, caplog):
    monkeypatch.setattr(cmd_classify, 'classify',
                        lambda p, **options: stub_classification(True))
    code = cmd_classify.main(['--potential', 'barrier50',
                              '--out', str(tmpdir)])
    assert code == EXIT_OK
    assert read_json(tmpdir.join('classification.json'))['inconsistent']
    assert 'disagree' in caplog.text


@pytest.mark.slow
def test_classify_is_reproducible(tmpdir):
    settings = tmpdir.join('settings.json')
    settings.write(json.dumps({'potential': 'isotropic', 'alpha': 1.0,
                               'eps_grid': [0.4, 0.2, 0.1],
                               'radii': [5.0, 10.0, 20.0], 'jump_eps': 0.2,
                               'grid_size': 60, 'restarts': 1, 'seed': 7}))
    runs = [tmpdir.join('first'), tmpdir.join('second')]
    for out in runs:
        code = cmd_classify.main(['--config', str(settings),
                                  '--out', str(out)])
        assert code == EXIT_OK
    for name in 'classification.json', 'gamma_curve.csv', 'jumps.csv':
        first, second = [out.join(name).read_binary() for out in runs]
        assert first == second
    assert read_json(runs[0].join('classification.json'))['verdict'] == 'Out'


def test_alpha_bar_files(tmpdir, monkeypatch):
    def fake(U, bracket, **options):
        assert U.name == 'devaney'
        return AlphaBarResult(0.75, (0.7, 0.8), [], None)
    monkeypatch.setattr(cmd_alpha_bar, 'find_alpha_bar', fake)
    assert cmd_alpha_bar.main(['--potential', 'devaney',
                               '--out', str(tmpdir)]) == EXIT_CONFIG
    code = cmd_alpha_bar.main(['--potential', 'devaney', '--bracket',
                               '0.5,1.2', '--out', str(tmpdir)])
    assert code == EXIT_OK
    data = read_json(tmpdir.join('alpha_bar.json'))
    assert data['bracket'] == [0.7, 0.8]
    assert_allclose(data['width'], 0.1)
