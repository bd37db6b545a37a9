"""Solve one obstacle-constrained Bolza problem.

Usage: python -m anisokep bolza --potential isotropic --x1=-1,0 --x2=1,0

Endpoints default to the marked minima of the potential. Writes path.csv and
solution.json and prints the action, the jumps and the contact kind.
"""

import sys

from anisokep.bolza import BolzaProblem, minimize_bolza
from anisokep.tools import (base_parser, load_potential_config,
                            solver_arguments, execute, prepare_output,
                            solver_options, float_list, EXIT_OK)

defaults = {'eps': 0.2, 'x1': None, 'x2': None, 'grid_size': 400,
            'restarts': 6}


def run(config):
    p = load_potential_config(config)
    x1 = config['x1'] if config.get('x1') is not None else p.xi_minus
    x2 = config['x2'] if config.get('x2') is not None else p.xi_plus
    problem = BolzaProblem(p, x1, x2, config['eps'],
                           grid_size=config['grid_size'],
                           restarts=config['restarts'])
    out = prepare_output(config)
    sol = minimize_bolza(problem, **solver_options(config))
    sol.to_files(out)
    print('action     %.9g' % sol.action)
    print('delta_pos  %.9g' % sol.delta_pos)
    print('delta_vel  %.9g' % sol.delta_vel)
    print('kind       %s%s' % (sol.kind, '' if sol.constraint_active
                                else ' (pinned)'))
    return EXIT_OK


def parser():
    parser = base_parser('bolza', __doc__.splitlines()[0])
    solver_arguments(parser)
    parser.add_argument('--eps', type=float)
    parser.add_argument('--x1', type=float_list)
    parser.add_argument('--x2', type=float_list)
    return parser


def main(argv=None):
    return execute(run, parser(), defaults, argv)


if __name__ == '__main__':
    sys.exit(main())
