#!/usr/bin/env python
"""Locates the critical exponent of devaney.py twice: from the saddle
connection of the reduced planar system and from the velocity jump of the
Morse minimizers."""

import numpy

from anisokep.planar import planar_potential, saddle_connection_bisect
from anisokep.morse import find_alpha_bar

from anisokep.examples.devaney import angular

U = planar_potential(angular)
connection = saddle_connection_bisect(U, (0.5, 1.0), (0.0, numpy.pi),
                                      (numpy.pi, numpy.pi), width=1e-4)
print("saddle connection: alpha = %.4f, bracket (%.6f, %.6f)"
      % ((connection.alpha_bar,) + connection.bracket))

print("Bisecting on the velocity jump...")
result = find_alpha_bar(angular, (0.5, 1.0), width=2e-2, grid_size=200,
                        restarts=2)
print("velocity jump: alpha in (%.4f, %.4f)" % result.bracket)
if result.gamma_check is not None:
    print("gamma at the bracket ends: %(gamma_lo).4g, %(gamma_hi).4g"
          % result.gamma_check)
