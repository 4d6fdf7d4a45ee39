import io
import json

import numpy as np
import pytest

import funklab as fl
from funklab.cli import run


def _run(*argv):
    out = io.StringIO()
    code = run(list(argv), stream=out)
    return code, out.getvalue()


def _json(*argv):
    code, text = _run(*argv)
    return code, json.loads(text)


def test_analyze_inverse_pair():
    code, doc = _json('analyze', '--a', '0.5,0,0', '--b', '2,0,0')
    assert code == 0
    assert doc['schema'] == fl.SCHEMA
    assert doc['command'] == 'analyze'
    assert doc['result']['verdict'] == 'non-injective'
    assert doc['result']['period'] == 2
    assert doc['result']['rotation'] == [1, 2]


def test_analyze_with_directions():
    code, doc = _json('analyze', '--d1', '1,0', '--d2', '0.5,sqrt(3)/2')
    assert code == 0 and doc['result']['period'] == 3
    code, doc = _json('analyze', '--a', '0.5,0', '--dir', '1,1')
    assert doc['result']['verdict'] == 'injective'
    code, doc = _json('analyze', '--center', '0.3,0,0', '--center', '2,0,0', '--center', 'inf:0,0,1')
    assert code == 0 and len(doc['result']['pairs']) == 3


def test_classify_irrational_pair():
    code, doc = _json('classify', '--a', '2,0,0', '--b', '0,2,0')
    assert code == 0
    result = doc['result']
    assert result['class'] == 'elliptic'
    assert result['kappa'] == pytest.approx(0.60817, abs=1e-5)
    assert result['rational'] is None
    assert result['discriminant'] == pytest.approx(-8.0)
    assert len(result['fixed_points']['z']['center']) == 3


def test_kernel_exact_pair_is_annihilated():
    code, doc = _json('kernel', '--a', '2,0', '--b', '0,sqrt(7/3)')
    assert code == 0
    result = doc['result']
    assert result['q'] == 3 and result['rotation'] == [2, 3]
    assert result['value_at_basepoint'] == pytest.approx(1.0)
    assert result['max_abs']['a'] <= 1e-6
    assert result['max_abs']['b'] <= 1e-6


def test_kernel_rounded_input_is_injective():
    code, doc = _json('kernel', '--a', '2,0', '--b', '0,1.5275')
    assert code == 0
    assert doc['result']['witness'] is None
    assert doc['result']['verdict']['verdict'] == 'injective'


def test_invalid_input_exit_codes():
    code, doc = _json('analyze', '--a', '1,0', '--b', '2,0')
    assert code == 2
    assert doc['error'] == 'on_sphere'
    code, doc = _json('analyze', '--a', '0.5,0')
    assert code == 2 and doc['error'] == 'usage_error'
    code, doc = _json('bogus')
    assert code == 2 and doc['error'] == 'usage_error'
    code, doc = _json('analyze', '--a', '0.5,0', '--b', 'sqrt(')
    assert code == 2 and doc['error'] == 'parse_error'


def test_orbit_csv():
    code, text = _run('orbit', '--a', '2,0', '--b', '0,sqrt(7/3)', '--x0', '0.6,0.8', '--format', 'csv')
    assert code == 0
    lines = text.strip().split('\n')
    assert lines[0] == 'iteration,x1,x2,distance_to_start'
    assert len(lines) == 4


def test_orbit_json_reports_return():
    code, doc = _json('orbit', '--a', '1.5,0,0', '--b', '3,0,0', '--x0', '0,1,0', '--max-iter', '20')
    assert code == 0
    assert doc['result']['returned'] is False
    assert len(doc['tables']['orbit']['rows']) == 21


def test_transform_of_constant_on_great_circle():
    code, doc = _json('transform', '--center', '0,0,0', '--function', 'const 1',
                      '--plane-basis', '1,0,0;0,1,0', '--plane-offset', '0,0,0')
    assert code == 0
    assert doc['result']['value'] == pytest.approx(2.0 * np.pi)
    code, doc = _json('transform', '--center', '0,0,0', '--function', 'const 1')
    assert code == 2


def test_coxeter_dihedral():
    code, doc = _json('coxeter', '--normal', '1,0', '--normal', 'cos(pi/4),sin(pi/4)')
    assert code == 0
    result = doc['result']
    assert result['verdict'] == 'non-injective'
    assert result['group']['mirror_count'] == 4
    assert result['orders'] == [{'pair': [0, 1], 'order': 4}]


def test_repeat_runs_are_byte_identical():
    argv = ('kernel', '--a', '0.5,0,0', '--b', '2,0,0', '--verify-planes', '5', '--seed', '99')
    assert _run(*argv) == _run(*argv)
    _, doc = _json(*argv)
    assert doc['settings']['seed'] == 99
    assert doc['result']['recipe']['seed'] == 99


def test_output_file(tmp_path):
    target = tmp_path / 'verdict.json'
    code, text = _run('analyze', '--a', '0.5,0,0', '--b', '2,0,0', '--output', str(target))
    assert code == 0 and text == ''
    assert json.loads(target.read_text())['result']['period'] == 2


def test_run_restores_the_global_config():
    before = fl.get_config()
    _run('analyze', '--a', '0.5,0,0', '--b', '2,0,0', '--qmax', '12')
    assert fl.get_config() is before


def test_kernel_on_planes_uses_the_kernel_order():
    code, doc = _json('kernel', '--a', '0.5,0,0', '--b', '2,0,0')
    assert code == 0
    result = doc['result']
    assert result['k'] == 2 and result['q'] == 2
    assert result['annihilation']['a']['order'] == doc['settings']['kernel_order']
    assert result['annihilation']['a']['planes'] == 200
    assert result['max_abs']['a'] <= 1e-6
    assert result['max_abs']['b'] <= 1e-6
