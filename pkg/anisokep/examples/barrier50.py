"""U(theta) = 1 + 50 sin(theta)**2, a tall barrier between the minima.

1 + 50 sin**2 = 26 - 25 cos(2 theta). The barrier {|sin theta| > 1/2} makes
the potential pass the sufficient criterion for a critical exponent.
"""

from anisokep.potential import FourierPotential

alpha = 0.2

# 1 - cos(2t) >= |s - xi|**2 near the minima, so mu = 25 is safe
angular = FourierPotential([26.0, 0.0, 0.0, -25.0, 0.0],
                           xi_minus=(1.0, 0.0), xi_plus=(-1.0, 0.0),
                           mu=25.0, delta=0.5, name='barrier50')
