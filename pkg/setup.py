#!/usr/bin/env python

import os
import re
import subprocess
import sys

from setuptools import setup, Command

RV_FILENAME = 'RELEASE-VERSION'


def main():
    version = read_version()
    setup(name='anisokep',
          version=version,
          description='Collision-avoiding minimizers and critical exponents '
              'of anisotropic homogeneous potentials',
          long_description='anisokep computes obstacle-constrained '
              'minimizers of the Maupertuis functional for singular '
              'potentials V = U(x/|x|)/|x|**alpha, classifies potentials by '
              'the behaviour of their zero-energy minimizers near the '
              'singularity, locates the critical exponent separating the '
              'classes and draws the phase portrait of the reduced planar '
              'system. It is built on NumPy, SciPy and matplotlib.',
          author='anisokep developers',
          packages=['anisokep', 'anisokep.tools', 'anisokep.examples',
                    'anisokep.testing', 'anisokep.tests'],
          install_requires=['numpy', 'scipy>=1.7', 'matplotlib'],
          tests_require=['pytest'],
          entry_points={'console_scripts':
                        ['anisokep = anisokep.__main__:main']},
          cmdclass={'test': PyTest},
          keywords=['celestial mechanics', 'n-body', 'variational methods',
                    'singular potentials', 'collisions'],
          classifiers=[
            'Development Status :: 4 - Beta',
            'Environment :: Console',
            'Intended Audience :: Science/Research',
            'License :: OSI Approved :: BSD License',
            'Operating System :: OS Independent',
            'Programming Language :: Python :: 3',
            'Topic :: Scientific/Engineering :: Astronomy',
            'Topic :: Scientific/Engineering :: Mathematics',
            'Topic :: Scientific/Engineering :: Physics',
            ],
          )


def read_version():
    """Version from git when building from a checkout, else from
    RELEASE-VERSION (which a checkout build refreshes for sdists)."""
    try:
        version = get_version()
    except GitError as e:
        if not os.path.exists(RV_FILENAME):
            sys.stderr.write("%s\nNo git checkout and no %s file; build from "
                             "a source distribution or a git clone.\n"
                             % (e, RV_FILENAME))
            sys.exit(1)
        with open(RV_FILENAME) as f:
            return f.read().strip()
    with open(RV_FILENAME, 'w') as f:
        f.write(version + '\n')
    return version


class PyTest(Command):
    description = "run the test suite with pytest"
    user_options = []

    def initialize_options(self):
        pass

    def finalize_options(self):
        pass

    def run(self):
        import pytest
        sys.exit(pytest.main(['--doctest-modules',
                              '--ignore=anisokep/examples', 'anisokep']))


class GitError(Exception):
    pass


def get_version():
    """Version string from ``git describe``, without a leading 'v'."""
    root = os.path.abspath(os.path.dirname(__file__))
    if not os.path.exists(os.path.join(root, '.git')):
        raise GitError("%s is not the root of a git checkout" % root)
    cmd = ['git', 'describe', '--always', '--abbrev=4']
    try:
        out = subprocess.check_output(cmd, cwd=root, stderr=subprocess.PIPE,
                                      universal_newlines=True)
    except (OSError, subprocess.CalledProcessError) as e:
        raise GitError("'%s' failed: %s" % (' '.join(cmd), e))
    return re.sub(r'^v', '', out.strip())


if __name__ == '__main__':
    main()
