"""Zero-energy parabolic trajectories of anisotropic homogeneous potentials.

The package minimizes obstacle-constrained action functionals, classifies
potentials by the sign of their renormalized Morse levels, searches for the
critical exponent and analyses the reduced planar system.
"""

from anisokep.core import *
from anisokep.potential import (HomogeneousPotential, FourierPotential,
                                ZonalPotential, SphericalPotential,
                                load_potential, validate_class_S,
                                sigma_criterion, BarrierRegion)
from anisokep.bolza import BolzaProblem, minimize_bolza
from anisokep.morse import classify, find_alpha_bar, IN, OUT, PI_CANDIDATE
from anisokep.planar import (planar_potential, equilibria,
                             saddle_connection_bisect, phase_portrait)

__all__ = ['HomogeneousPotential', 'FourierPotential', 'ZonalPotential',
           'SphericalPotential', 'load_potential', 'validate_class_S',
           'sigma_criterion', 'BarrierRegion', 'BolzaProblem',
           'minimize_bolza', 'classify', 'find_alpha_bar', 'IN', 'OUT',
           'PI_CANDIDATE', 'planar_potential', 'equilibria',
           'saddle_connection_bisect', 'phase_portrait']
