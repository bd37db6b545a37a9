"""Bisect on the homogeneity exponent for the In/Out boundary.

Usage: python -m anisokep alpha_bar --potential barrier50 --bracket 0.2,1.9

Writes alpha_bar.json with the midpoint, the final bracket, every bisection
step and the gamma values at the bracket ends for --cross-check-eps (null in
a config file skips them).
"""

import os
import sys

from anisokep.morse import find_alpha_bar, default_classify_options
from anisokep.tools import (base_parser, load_potential_config,
                            solver_arguments, execute, prepare_output,
                            solver_options, float_list, ConfigError, EXIT_OK)
from anisokep.util import write_json

defaults = {'bracket': None, 'width': 1e-2,
            'radii': list(default_classify_options['radii']),
            'jump_eps': default_classify_options['jump_eps'],
            'cross_check_eps': 0.2, 'grid_size': 400, 'restarts': 6}


def run(config):
    if not config.get('bracket') or len(config['bracket']) != 2:
        raise ConfigError("--bracket needs two exponents lo,hi")
    p = load_potential_config(config, exponent_free=True)
    out = prepare_output(config)
    result = find_alpha_bar(p.angular, config['bracket'],
                            width=config['width'],
                            cross_check_eps=config['cross_check_eps'],
                            radii=config['radii'], jump_eps=config['jump_eps'],
                            grid_size=config['grid_size'],
                            restarts=config['restarts'],
                            **solver_options(config))
    write_json(os.path.join(out, 'alpha_bar.json'), result.as_dict())
    print('alpha_bar  %.6g  bracket (%.6g, %.6g)' % (
        (result.alpha_bar,) + result.bracket))
    return EXIT_OK


def parser():
    parser = base_parser('alpha_bar', __doc__.splitlines()[0])
    solver_arguments(parser)
    parser.add_argument('--bracket', type=float_list)
    parser.add_argument('--width', type=float)
    parser.add_argument('--radii', type=float_list)
    parser.add_argument('--jump-eps', type=float, dest='jump_eps')
    parser.add_argument('--cross-check-eps', type=float,
                        dest='cross_check_eps')
    return parser


def main(argv=None):
    return execute(run, parser(), defaults, argv)


if __name__ == '__main__':
    sys.exit(main())
