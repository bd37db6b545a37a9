import json

from anisokep.testing import *
from anisokep.util import (RandomState, format_floats, write_json, write_csv)


def test_random_state():
    assert_array_equal(RandomState(None).rand(3), RandomState(0).rand(3))
    assert RandomState(1).rand() != RandomState(2).rand()


def test_format_floats():
    data = {'a': numpy.float64(1.0 / 3.0), 'b': [numpy.int64(2), numpy.inf],
            'c': numpy.array([0.1, 0.2]), 'd': numpy.bool_(True), 'e': 'x'}
    out = format_floats(data)
    assert out['a'] == 0.333333333
    assert out['b'] == [2, None]
    assert type(out['b'][0]) is int
    assert out['c'] == [0.1, 0.2]
    assert out['d'] is True
    assert out['e'] == 'x'


def test_write_json(tmpdir):
    filename = str(tmpdir.join('sub', 'data.json'))
    write_json(filename, {'value': numpy.pi})
    with open(filename) as f:
        assert json.load(f) == {'value': 3.14159265}
    assert tmpdir.join('sub').listdir() == [tmpdir.join('sub', 'data.json')]


def test_write_csv(tmpdir):
    filename = str(tmpdir.join('rows.csv'))
    write_csv(filename, ['t', 'x'], [(0.0, 1.0 / 3.0), (1.0, 2.0)])
    with open(filename) as f:
        assert f.read() == 't,x\n0,0.333333333\n1,2\n'
