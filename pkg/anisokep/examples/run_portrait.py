#!/usr/bin/env python
"""Draws the reduced planar phase portrait of devaney.py on both sides of
the saddle connection and saves them as SVG."""

from anisokep.planar import (planar_potential, equilibria, phase_portrait,
                             render_portrait_svg)

from anisokep.examples.devaney import angular

U = planar_potential(angular)
for alpha in 0.5, 1.0:
    orbits = phase_portrait(U, alpha)
    points = equilibria(U, alpha)
    filename = 'devaney_%.2f.svg' % alpha
    render_portrait_svg(orbits, points, filename,
                        title='devaney, alpha = %g' % alpha)
    print("%s: %d orbits, %d equilibria" % (filename, len(orbits),
                                            len(points)))
