"""Spatial potential 1 + 2 (1 - z**2) with minima at the poles."""

from anisokep.potential import ZonalPotential

alpha = 1.0

angular = ZonalPotential(3, strength=2.0, level=1.0, name='axial3d')
