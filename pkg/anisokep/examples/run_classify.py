#!/usr/bin/env python
"""Classifies barrier50.py at its default exponent and prints the renormalized
level curve and the jumps of the potential."""

from anisokep.potential import HomogeneousPotential
from anisokep.morse import classify

from anisokep.examples.barrier50 import angular, alpha

p = HomogeneousPotential(angular, alpha)
print("Classifying (this solves a dozen Bolza problems)...")
result = classify(p, grid_size=200, restarts=2)
for eps, g in result.gamma_curve:
    print("gamma(%.4f) = %+.6f" % (eps, g))
print("delta_pos = %.4f  delta_vel = %.4f" % (result.delta_pos_V,
                                              result.delta_vel_V))
print("verdict: %s" % result.verdict)
