"""Locate the exponent of a saddle connection of the reduced planar system.

Usage: python -m anisokep connect --potential devaney --bracket 0.5,1.0

Connects the saddle of the first marked minimum to the saddle of the second
(or --revolutions more turns). Writes connection.json, unstable.csv and
stable.csv.
"""

import os
import sys

import numpy

from anisokep.planar import planar_potential, saddle_connection_bisect
from anisokep.tools import (base_parser, load_potential_config, execute,
                            prepare_output, float_list, ConfigError,
                            EXIT_OK)
from anisokep.util import write_json

defaults = {'bracket': None, 'width': 1e-4, 'revolutions': 0, 'step': 1e-3}


def saddles(p):
    """Source and target saddles of the marked minima."""
    source = numpy.arctan2(p.xi_minus[1], p.xi_minus[0])
    target = numpy.arctan2(p.xi_plus[1], p.xi_plus[0])
    if target <= source:
        target += 2.0 * numpy.pi
    return (source, source + numpy.pi), (target, target)


def run(config):
    if not config.get('bracket') or len(config['bracket']) != 2:
        raise ConfigError("--bracket needs two exponents lo,hi")
    p = load_potential_config(config, exponent_free=True)
    U = planar_potential(p)
    source, target = saddles(p)
    out = prepare_output(config)
    result = saddle_connection_bisect(U, config['bracket'], source, target,
                                      width=config['width'],
                                      revolutions=config['revolutions'],
                                      step=config['step'])
    data = result.as_dict()
    data['source'] = list(source)
    data['target'] = list(target)
    write_json(os.path.join(out, 'connection.json'), data)
    result.unstable.to_csv(os.path.join(out, 'unstable.csv'))
    result.stable.to_csv(os.path.join(out, 'stable.csv'))
    print('alpha_bar  %.8g  bracket (%.8g, %.8g)' % (
        (result.alpha_bar,) + result.bracket))
    return EXIT_OK


def parser():
    parser = base_parser('connect', __doc__.splitlines()[0])
    parser.add_argument('--bracket', type=float_list)
    parser.add_argument('--width', type=float)
    parser.add_argument('--revolutions', type=int)
    parser.add_argument('--step', type=float)
    return parser


def main(argv=None):
    return execute(run, parser(), defaults, argv)


if __name__ == '__main__':
    sys.exit(main())
