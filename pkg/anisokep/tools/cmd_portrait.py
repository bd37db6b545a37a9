"""Draw the phase portrait of the reduced planar system.

Usage: python -m anisokep portrait --potential devaney --alpha 0.5

Writes portrait.svg and one orbit_XX.csv (tau, theta, phi, v) per orbit.
"""

import os
import sys

from anisokep.planar import (planar_potential, equilibria, phase_portrait,
                             render_portrait_svg)
from anisokep.core import DegenerateCriticalError
from anisokep.tools import (base_parser, load_potential_config, execute,
                            prepare_output, EXIT_OK)

defaults = {'horizon': 6.0, 'grid': [12, 8], 'step': 5e-3}


def run(config):
    p = load_potential_config(config)
    U = planar_potential(p)
    out = prepare_output(config)
    orbits = phase_portrait(U, p.alpha, horizon=config['horizon'],
                            step=config['step'], grid=tuple(config['grid']))
    try:
        points = equilibria(U, p.alpha)
    except DegenerateCriticalError:
        points = []
    title = '%s, alpha = %.4g' % (U.name, p.alpha)
    render_portrait_svg(orbits, points, os.path.join(out, 'portrait.svg'),
                        title=title)
    for i, orbit in enumerate(orbits):
        orbit.to_csv(os.path.join(out, 'orbit_%02d.csv' % i))
    print('%d orbits, %d equilibria' % (len(orbits), len(points)))
    return EXIT_OK


def parser():
    parser = base_parser('portrait', __doc__.splitlines()[0])
    parser.add_argument('--horizon', type=float)
    parser.add_argument('--step', type=float)
    parser.add_argument('--grid', type=int, nargs=2)
    return parser


def main(argv=None):
    return execute(run, parser(), defaults, argv)


if __name__ == '__main__':
    sys.exit(main())
