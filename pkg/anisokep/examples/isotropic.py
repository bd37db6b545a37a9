"""The Kepler potential 1/|x|**alpha in the plane.

Every direction is a central configuration, so the marked minima are a
convention and the quadratic-growth condition fails for any mu > 0. Zero
energy orbits at alpha = 1 are parabolas.
"""

from anisokep.potential import FourierPotential

alpha = 1.0

angular = FourierPotential([1.0], xi_minus=(1.0, 0.0), xi_plus=(-1.0, 0.0),
                           mu=0.1, delta=0.5, name='isotropic')
