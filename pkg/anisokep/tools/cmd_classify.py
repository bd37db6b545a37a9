"""Classify a potential as In, Out or Pi_candidate.

Usage: python -m anisokep classify --potential barrier50 --alpha 0.2

Writes classification.json, gamma_curve.csv (eps, gamma) and jumps.csv
(R, delta_pos, delta_vel, action). An inconsistent verdict is flagged in
classification.json and logged as a warning; the exit code stays 0.
"""

import os
import sys
import logging

from anisokep.morse import classify, default_classify_options
from anisokep.tools import (base_parser, load_potential_config,
                            solver_arguments, execute, prepare_output,
                            solver_options, float_list, EXIT_OK)
from anisokep.util import write_json, write_csv

logger = logging.getLogger(__name__)

defaults = {'eps_grid': list(default_classify_options['eps_schedule']),
            'radii': list(default_classify_options['radii']),
            'jump_eps': default_classify_options['jump_eps'],
            'grid_size': 400, 'restarts': 6}


def run(config):
    p = load_potential_config(config)
    out = prepare_output(config)
    result = classify(p, eps_schedule=config['eps_grid'],
                      radii=config['radii'], jump_eps=config['jump_eps'],
                      grid_size=config['grid_size'],
                      restarts=config['restarts'], **solver_options(config))
    write_json(os.path.join(out, 'classification.json'), result.as_dict())
    write_csv(os.path.join(out, 'gamma_curve.csv'), ['eps', 'gamma'],
              result.gamma_curve)
    write_csv(os.path.join(out, 'jumps.csv'),
              ['R', 'delta_pos', 'delta_vel', 'action'],
              result.approximation.rows())
    print('verdict          %s%s' % (result.verdict, ' (inconsistent)'
                                     if result.inconsistent else ''))
    print('gamma(0+)        %.6g +/- %.2g' % (result.gamma_zero_plus,
                                              result.gamma_uncertainty))
    print('delta_pos(V)     %.6g' % result.delta_pos_V)
    print('delta_vel(V)     %.6g' % result.delta_vel_V)
    print('c(V)             %.9g (case %d)' % (result.c_V,
                                              result.dichotomy_case))
    if result.inconsistent:
        logger.warning("gamma(0+) and delta_vel disagree; verdict %s taken "
                       "from delta_vel", result.verdict)
    return EXIT_OK


def parser():
    parser = base_parser('classify', __doc__.splitlines()[0])
    solver_arguments(parser)
    parser.add_argument('--eps-grid', type=float_list, dest='eps_grid')
    parser.add_argument('--radii', type=float_list)
    parser.add_argument('--jump-eps', type=float, dest='jump_eps')
    return parser


def main(argv=None):
    return execute(run, parser(), defaults, argv)


if __name__ == '__main__':
    sys.exit(main())
