"""Built-in named potentials.

Each module defines ``angular`` (an AngularPotential) and a default exponent
``alpha``; ``run_*.py`` scripts drive the library on them.
"""
