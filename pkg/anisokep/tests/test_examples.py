import os
import importlib

from anisokep.testing import *
from anisokep.potential import (AngularPotential, load_potential,
                                validate_class_S)


def example_names():
    """Names of the built-in potentials in anisokep.examples"""
    example_dir = os.path.join(os.path.dirname(__file__), '..', 'examples')
    for filename in sorted(os.listdir(example_dir)):
        if filename.endswith('.py') and not filename.startswith('run_') \
               and not filename.startswith('__'):
            yield filename[:-3]


@pytest.mark.parametrize('name', list(example_names()))
def test_example_module(name):
    module = importlib.import_module('anisokep.examples.' + name)
    assert isinstance(module.angular, AngularPotential)
    assert 0 < module.alpha < 2
    assert module.angular.name == name


@pytest.mark.parametrize('name', list(example_names()))
def test_load_example(name):
    p = load_potential(name)
    assert p.alpha == importlib.import_module(
        'anisokep.examples.' + name).alpha
    assert load_potential(name, 0.5).alpha == 0.5


@pytest.mark.parametrize('name', list(example_names()))
def test_example_class_S(name):
    """Every built-in potential except the isotropic one is in class S"""
    report = validate_class_S(load_potential(name), sample_count=500)
    if name == 'isotropic':
        assert not report.passed
    else:
        assert report.passed, report.failures


def test_panel_uses_examples():
    from anisokep.examples import isotropic as iso, devaney as dev, \
        barrier50 as bar, axial3d as ax
    assert isotropic(0.5).angular is iso.angular
    assert devaney(1.0).angular is dev.angular
    assert barrier50(0.2).angular is bar.angular
    assert axial(0.7).angular is ax.angular
    assert devaney(1.0).alpha == 1.0
    scaled = isotropic(1.0, level=4.0)
    assert scaled.angular is not iso.angular
    assert_allclose(scaled.v_min, 4.0)
