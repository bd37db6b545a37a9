"""Dispatch ``python -m anisokep <command> [flags]`` to anisokep.tools."""

import sys
import importlib

from anisokep.tools import commands, EXIT_CONFIG


def usage():
    return ("usage: anisokep <command> [flags]\n\ncommands: %s\n"
            "run 'anisokep <command> --help' for the flags of a command\n"
            % ', '.join(commands))


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    if not argv or argv[0] in ('-h', '--help'):
        sys.stdout.write(usage())
        return 0
    name = argv[0].replace('-', '_')
    if name not in commands:
        sys.stderr.write("unknown command %r\n\n%s" % (argv[0], usage()))
        return EXIT_CONFIG
    module = importlib.import_module('anisokep.tools.cmd_' + name)
    return module.main(argv[1:])


if __name__ == '__main__':
    sys.exit(main())
