"""Command-line tools.

Each module exposes ``run(config)`` returning an exit code and ``main(argv)``
parsing flags; ``python -m anisokep <command>`` dispatches to them.
Configuration is resolved as module defaults, then a JSON file given with
``--config``, then explicit flags, and echoed to ``<out>/config.json``.
"""

import os
import sys
import json
import argparse
import logging

from anisokep.core import (InfeasibleEndpointsError, NoConvergenceError,
                           NotStabilizedError, BadBracketError)
from anisokep.util import write_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3

commands = ['validate', 'bolza', 'classify', 'alpha_bar', 'portrait',
            'connect']


class ConfigError(ValueError):
    pass


def float_list(text):
    """Parse '0.4,0.2,0.1' into a list of floats."""
    try:
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated numbers, "
                                         "got %r" % text)


def base_parser(name, description):
    parser = argparse.ArgumentParser(prog='anisokep %s' % name,
                                     description=description)
    parser.add_argument('--config', help="JSON file with default settings")
    parser.add_argument('--potential', help="built-in name, JSON file or "
                        "inline JSON")
    parser.add_argument('--alpha', type=float, help="homogeneity exponent")
    parser.add_argument('--out', help="output directory")
    parser.add_argument('--seed', type=int)
    parser.add_argument('--verbose', action='store_true', default=None)
    parser.add_argument('--quiet', action='store_true', default=None)
    return parser


def solver_arguments(parser):
    parser.add_argument('--grid-size', type=int, dest='grid_size')
    parser.add_argument('--restarts', type=int)
    parser.add_argument('--workers', type=int)


def resolve_config(args, defaults):
    """defaults < config file < explicit flags."""
    config = dict(defaults)
    flags = vars(args)
    filename = flags.pop('config', None)
    if filename:
        if not os.path.exists(filename):
            raise ConfigError("config file '%s' doesn't exist" % filename)
        with open(filename) as f:
            try:
                config.update(json.load(f))
            except ValueError as e:
                raise ConfigError("config file '%s' is not valid JSON: %s"
                                  % (filename, e))
    for key, value in flags.items():
        if value is not None:
            config[key] = value
    if not config.get('potential'):
        raise ConfigError("no potential given (use --potential)")
    return config


def setup_logging(config):
    level = logging.INFO
    if config.get('verbose'):
        level = logging.DEBUG
    elif config.get('quiet'):
        level = logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')


def prepare_output(config):
    out = config.get('out') or '.'
    if not os.path.isdir(out):
        os.makedirs(out)
    write_json(os.path.join(out, 'config.json'), config)
    return out


def solver_options(config):
    options = {'seed': config.get('seed', 0)}
    if config.get('workers'):
        options['workers'] = config['workers']
    return options


def execute(run, parser, defaults, argv=None):
    """Parse flags, run a command and map failures to exit codes."""
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args, defaults)
        setup_logging(config)
        return run(config)
    except InfeasibleEndpointsError as e:
        sys.stderr.write("infeasible problem: %s\n" % e)
        return EXIT_INFEASIBLE
    except (NoConvergenceError, NotStabilizedError, BadBracketError) as e:
        sys.stderr.write("%s: %s\n" % (e.__class__.__name__, e))
        return EXIT_FAILURE
    except (ConfigError, IOError, OSError, ValueError, KeyError) as e:
        sys.stderr.write("configuration error: %s\n" % e)
        return EXIT_CONFIG


def load_potential_config(config, exponent_free=False):
    """Potential named in the config; commands that do not depend on the
    exponent accept potentials given without one."""
    from anisokep.potential import load_potential
    alpha = config.get('alpha')
    if alpha is None and exponent_free:
        try:
            return load_potential(config['potential'])
        except ValueError:
            return load_potential(config['potential'], 1.0)
    return load_potential(config['potential'], alpha)
