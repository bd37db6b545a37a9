"""U(theta) = 2 - cos(2 theta): minima at 0 and pi, maxima at +-pi/2.

The phase portrait of the reduced planar system changes between alpha = 0.5
and alpha = 1, where the unstable manifold of the saddle (0, pi) passes from
one side of the saddle (pi, pi) to the other.
"""

from anisokep.potential import FourierPotential

alpha = 0.75

angular = FourierPotential([2.0, 0.0, 0.0, -1.0, 0.0],
                           xi_minus=(1.0, 0.0), xi_plus=(-1.0, 0.0),
                           mu=1.0, delta=0.5, name='devaney')
