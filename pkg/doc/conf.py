# Sphinx configuration for the anisokep documentation.

import os
import re
import sys

# the package and setup.py live one level up
sys.path.insert(0, os.path.abspath('..'))

import setup as anisokep_setup

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.doctest', 'sphinx.ext.mathjax',
              'sphinx.ext.viewcode', 'numpydoc']

master_doc = 'index'
project = u'anisokep'
copyright = u'anisokep developers'

try:
    release = anisokep_setup.get_version()
except anisokep_setup.GitError:
    with open(os.path.join('..', anisokep_setup.RV_FILENAME)) as f:
        release = f.read().strip()
version = re.sub(r'-.*', '', release)

exclude_patterns = ['_build']
html_theme = 'default'
htmlhelp_basename = 'anisokepdoc'
latex_documents = [('index', 'anisokep.tex', u'anisokep Documentation',
                    u'anisokep developers', 'manual')]
man_pages = [('index', 'anisokep', u'anisokep Documentation',
              [u'anisokep developers'], 1)]

numpydoc_show_class_members = False

# matplotlib is only needed to draw portraits
autodoc_mock_imports = ['matplotlib']
