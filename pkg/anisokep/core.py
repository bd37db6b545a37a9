"""Shared exceptions, warnings and small vector helpers.

Every numerical module in the package raises the error classes defined here,
so callers can catch them without importing the module that failed.
"""

import warnings
import numpy

__all__ = ['norm', 'unit', 'check_unit', 'slerp', 'angle_between',
           'alpha_star', 'check_alpha',
           'ZeroRadiusError', 'NotUnitError', 'BadExponentError',
           'BadTopologyError', 'CollisionNodeError', 'BadDomainError',
           'DegeneratePathError', 'StalledSegmentError', 'BadWindowError',
           'NotMonotoneError', 'NoConvergenceError', 'InfeasibleEndpointsError',
           'NoContactError', 'NotStabilizedError', 'BadBracketError',
           'DegenerateCriticalError', 'NonPositiveRZError', 'EnergyDriftError',
           'NoSaddleError', 'MonotonicityViolationWarning',
           'JumpDichotomyWarning', 'InconsistentClassificationWarning']

ZERO_RADIUS_TOL = 1e-14
UNIT_TOL = 1e-10


def norm(x):
    """Euclidean norm along the last axis."""
    return numpy.sqrt(numpy.sum(numpy.square(x), axis=-1))


def unit(x):
    """Return x/|x|, raising ZeroRadiusError for (near) zero vectors."""
    x = numpy.asarray(x, dtype=float)
    r = norm(x)
    if numpy.any(r < ZERO_RADIUS_TOL):
        raise ZeroRadiusError("cannot normalize a vector of length %g"
                              % numpy.min(r))
    return x / numpy.expand_dims(r, -1)


def check_unit(s, tol=UNIT_TOL):
    s = numpy.asarray(s, dtype=float)
    deviation = numpy.max(numpy.abs(norm(s) - 1.0))
    if deviation > tol:
        raise NotUnitError("expected unit vector(s); |s| deviates from 1 by %g"
                           % deviation)
    return s


def angle_between(a, b):
    """Angle in [0, pi] between two nonzero vectors."""
    a = unit(a)
    b = unit(b)
    c = numpy.clip(numpy.dot(a, b), -1.0, 1.0)
    # atan2 form keeps accuracy near 0 and pi
    return numpy.arctan2(norm(b - c * a), c)


def slerp(s1, s2, fractions):
    """Points along the shortest great circle from s1 to s2.

    For antipodal endpoints the circle is not unique; the one through the
    first coordinate direction orthogonal to s1 is used (for the plane that
    is the counterclockwise half turn).
    """
    s1 = unit(s1)
    s2 = unit(s2)
    fractions = numpy.asarray(fractions, dtype=float)
    theta = angle_between(s1, s2)
    if theta < 1e-15:
        return numpy.tile(s1, (len(fractions), 1))
    w = s2 - numpy.dot(s1, s2) * s1
    if norm(w) < 1e-12:
        if len(s1) == 2:
            w = numpy.array([-s1[1], s1[0]])
        else:
            axis = numpy.eye(len(s1))[numpy.argmin(numpy.abs(s1))]
            w = axis - numpy.dot(axis, s1) * s1
    w = unit(w)
    phases = theta * fractions
    return (numpy.outer(numpy.cos(phases), s1) +
            numpy.outer(numpy.sin(phases), w))


def alpha_star(alpha):
    return (2.0 - alpha) / 2.0


def check_alpha(alpha):
    if not 0.0 < alpha < 2.0:
        raise BadExponentError("homogeneity exponent must lie in (0, 2), "
                               "got %r" % (alpha,))
    return float(alpha)


class ZeroRadiusError(ValueError):
    pass

class NotUnitError(ValueError):
    pass

class BadExponentError(ValueError):
    pass

class BadTopologyError(ValueError):
    """The complement of a barrier set does not split into exactly two
    components separating the marked minima."""
    pass

class CollisionNodeError(ValueError):
    pass

class BadDomainError(ValueError):
    pass

class DegeneratePathError(ValueError):
    pass

class StalledSegmentError(ValueError):
    pass

class BadWindowError(ValueError):
    pass

class NotMonotoneError(ValueError):
    pass

class NoConvergenceError(RuntimeError):
    pass

class InfeasibleEndpointsError(ValueError):
    pass

class NoContactError(ValueError):
    pass

class NotStabilizedError(RuntimeError):
    """Jump sequences over the radii schedule did not settle.

    The full sequences are attached as ``approximation``.
    """
    def __init__(self, message, approximation=None):
        RuntimeError.__init__(self, message)
        self.approximation = approximation

class BadBracketError(ValueError):
    pass

class DegenerateCriticalError(ValueError):
    pass

class NonPositiveRZError(ValueError):
    pass

class EnergyDriftError(RuntimeError):
    pass

class NoSaddleError(ValueError):
    pass


class MonotonicityViolationWarning(UserWarning):
    """Radius of a constrained minimizer is not monotone outside contact."""
    pass

class JumpDichotomyWarning(UserWarning):
    """Both jumps exceed the jump tolerance on the same solution."""
    pass

class InconsistentClassificationWarning(UserWarning):
    """The level-based and the jump-based In/Out verdicts disagree."""
    pass


warnings.simplefilter('always', MonotonicityViolationWarning)
warnings.simplefilter('always', JumpDichotomyWarning)
warnings.simplefilter('always', InconsistentClassificationWarning)
