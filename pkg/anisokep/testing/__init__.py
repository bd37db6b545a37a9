"""Potentials and solver settings shared by the test modules.

Test modules do ``from anisokep.testing import *`` to get the panel
constructors, the fast solver settings, pytest and the numpy.testing
assertions. The panel potentials are the built-in ones from
``anisokep.examples`` at a chosen exponent.
"""

import numpy
import pytest
from numpy.testing import (assert_allclose, assert_array_equal,
                           assert_array_less)

from anisokep.potential import (FourierPotential, ZonalPotential,
                                HomogeneousPotential)
from anisokep.planar import planar_potential
from anisokep.bolza import BolzaProblem, minimize_bolza
from anisokep.examples import (isotropic as isotropic_example,
                               devaney as devaney_example,
                               barrier50 as barrier50_example,
                               axial3d as axial3d_example)

__all__ = ['numpy', 'pytest', 'assert_allclose', 'assert_array_equal',
           'assert_array_less', 'isotropic', 'devaney', 'barrier50', 'axial',
           'planar', 'panel', 'fast_solver', 'solve']

# coarse but converging settings for the Bolza solver in tests
fast_solver = {'grid_size': 120, 'restarts': 1}


def isotropic(alpha=1.0, level=1.0):
    """V = level / |x|**alpha in the plane."""
    angular = isotropic_example.angular
    if level != 1.0:
        angular = FourierPotential([level], mu=angular.mu,
                                   delta=angular.delta, name=angular.name)
    return HomogeneousPotential(angular, alpha)


def devaney(alpha=0.75):
    """U(theta) = 2 - cos(2 theta)."""
    return HomogeneousPotential(devaney_example.angular, alpha)


def barrier50(alpha=0.2):
    """U(theta) = 1 + 50 sin(theta)**2."""
    return HomogeneousPotential(barrier50_example.angular, alpha)


def axial(alpha=1.0, strength=2.0):
    angular = axial3d_example.angular
    if strength != angular.strength:
        angular = ZonalPotential(3, strength=strength, level=angular.level,
                                 name=angular.name)
    return HomogeneousPotential(angular, alpha)


def planar(p):
    """PlanarPotential of a d = 2 potential."""
    return planar_potential(p)


def panel():
    """(label, potential) pairs covering the shapes used across the tests."""
    return [('isotropic-1', isotropic(1.0)),
            ('devaney-0.5', devaney(0.5)),
            ('devaney-1', devaney(1.0)),
            ('barrier50-0.2', barrier50(0.2)),
            ('barrier50-1', barrier50(1.0))]


def solve(p, x1, x2, eps, **options):
    """minimize_bolza with the fast settings unless overridden."""
    settings = dict(fast_solver)
    settings.update(options)
    problem = BolzaProblem(p, x1, x2, eps,
                           grid_size=settings.pop('grid_size'),
                           restarts=settings.pop('restarts'))
    return minimize_bolza(problem, **settings)
