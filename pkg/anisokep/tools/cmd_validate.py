"""Check that a potential belongs to class S and evaluate the barrier
criterion.

Usage: python -m anisokep validate --potential devaney [--barrier 10]

Writes validate.json; exits with 1 when any check fails.
"""

import os
import sys

from anisokep.potential import (validate_class_S,
                                sigma_criterion, BarrierRegion)
from anisokep.tools import (base_parser, load_potential_config, execute,
                            prepare_output, EXIT_OK, EXIT_FAILURE)
from anisokep.util import write_json

defaults = {'sample_count': 2000, 'barrier': None, 'alpha': None}


def run(config):
    p = load_potential_config(config, exponent_free=True)
    out = prepare_output(config)
    report = validate_class_S(p, sample_count=config['sample_count'])
    data = report.as_dict()
    if config.get('barrier') is not None:
        criterion = sigma_criterion(p, BarrierRegion(config['barrier']))
        data['barrier'] = criterion.as_dict()
    write_json(os.path.join(out, 'validate.json'), data)
    print('%s: %s' % (p.angular.name, report.verdict))
    for check, message in report.failures:
        print('  %s: %s' % (check, message))
    return EXIT_OK if report.passed else EXIT_FAILURE


def parser():
    parser = base_parser('validate', __doc__.splitlines()[0])
    parser.add_argument('--sample-count', type=int, dest='sample_count')
    parser.add_argument('--barrier', type=float,
                        help="threshold of the barrier region {V > t}")
    return parser


def main(argv=None):
    return execute(run, parser(), defaults, argv)


if __name__ == '__main__':
    sys.exit(main())
