"""Anisotropic homogeneous potentials.

A potential is described in two layers. An :py:class:`AngularPotential` is the
restriction of V to the unit sphere S^{d-1}, together with the two marked
global minima xi_minus, xi_plus and the constants of the quadratic-growth
condition. A :py:class:`HomogeneousPotential` pairs it with the homogeneity
exponent alpha and evaluates the full-space extension

    V(x) = V(x/|x|) / |x|**alpha

and its gradient. All evaluations are vectorized over leading axes, so a whole
path of nodes (shape ``(N+1, d)``) is evaluated in one call.

Examples
--------
>>> from anisokep.potential import FourierPotential, HomogeneousPotential
>>> U = FourierPotential([2.0, 0.0, 0.0, -1.0, 0.0])
>>> p = HomogeneousPotential(U, 0.5)
>>> print('%.6f' % p.value([0.0, 4.0]))
1.500000

"""

import json
import logging
import os
import importlib

import numpy
import scipy.linalg
import scipy.spatial
import scipy.special
import scipy.sparse
import scipy.sparse.csgraph
from scipy.stats import qmc

from anisokep.core import (norm, unit, check_unit, check_alpha, alpha_star,
                           ZeroRadiusError, BadTopologyError)

__all__ = ['AngularPotential', 'FourierPotential', 'ZonalPotential',
           'SphericalPotential', 'HomogeneousPotential', 'BarrierRegion',
           'ValidationReport', 'CriterionReport', 'eval_V', 'grad_V',
           'tangential_grad', 'validate_class_S', 'sigma_criterion',
           'sample_sphere', 'load_potential', 'named_potential',
           'potential_from_dict']

logger = logging.getLogger(__name__)

FD_STEP = 1e-6


class AngularPotential(object):
    """Restriction of a potential to the unit sphere.

    Subclasses implement ``value`` and, optionally, ``gradient``. When no
    analytic gradient is available the great-circle finite-difference
    gradient is used instead.

    Parameters
    ----------
    dim : int
        Ambient dimension d >= 2.
    xi_minus, xi_plus : array-like
        Marked global minima on the sphere.
    mu, delta : float
        Quadratic-growth constants: V(s) - V_min >= mu |s - xi|**2 whenever
        |s - xi| < delta.
    v_min : float, optional
        Minimum value. Defaults to the value at xi_minus.
    name : string, optional

    """

    def __init__(self, dim, xi_minus, xi_plus, mu=1.0, delta=0.5,
                 v_min=None, name=None):
        if dim < 2:
            raise ValueError("dimension must be at least 2, got %r" % (dim,))
        self.dim = int(dim)
        self.xi_minus = numpy.asarray(xi_minus, dtype=float)
        self.xi_plus = numpy.asarray(xi_plus, dtype=float)
        for xi in (self.xi_minus, self.xi_plus):
            if xi.shape != (self.dim,):
                raise ValueError("marked minimum %r is not a %d-vector"
                                 % (list(xi), self.dim))
        self.mu = float(mu)
        self.delta = float(delta)
        self.name = name
        if v_min is None:
            v_min = float(self.value(unit(self.xi_minus)))
        self.v_min = float(v_min)

    def value(self, s):
        raise NotImplementedError

    def gradient(self, s):
        """Gradient of the degree-0 extension at unit vector(s) s.

        Tangent to the sphere by construction.
        """
        return self.fd_gradient(s)

    def fd_gradient(self, s, step=FD_STEP):
        """Central differences along great circles through s."""
        s = numpy.asarray(s, dtype=float)
        if s.ndim > 1:
            flat = s.reshape(-1, self.dim)
            out = numpy.array([self.fd_gradient(si, step) for si in flat])
            return out.reshape(s.shape)
        frame = tangent_frame(s)
        c, sn = numpy.cos(step), numpy.sin(step)
        plus = self.value(c * s + sn * frame)
        minus = self.value(c * s - sn * frame)
        return numpy.dot((plus - minus) / (2.0 * step), frame)

    def check_gradient(self, samples):
        """Largest deviation between analytic and finite-difference gradients,
        relative to the largest gradient magnitude seen (or 1)."""
        samples = numpy.atleast_2d(samples)
        analytic = self.gradient(samples)
        numeric = numpy.array([AngularPotential.fd_gradient(self, s)
                               for s in samples])
        scale = max(1.0, numpy.max(norm(analytic)))
        return float(numpy.max(norm(analytic - numeric)) / scale)

    def max_value(self, count=10000):
        """Sampled maximum over quasi-uniform sphere points, with resolution."""
        points = sample_sphere(self.dim, count)
        return float(numpy.max(self.value(points))), sampling_resolution(points)

    def as_dict(self):
        raise NotImplementedError

    def __repr__(self):
        return '%s(name=%r, dim=%d)' % (self.__class__.__name__, self.name,
                                        self.dim)


class FourierPotential(AngularPotential):
    """Planar potential given by a trigonometric polynomial

        U(theta) = a0 + sum_k a_k cos(k theta) + b_k sin(k theta)

    with ``coeffs = [a0, a1, b1, a2, b2, ...]``. Minima default to the
    directions (1, 0) and (-1, 0).
    """

    def __init__(self, coeffs, xi_minus=(1.0, 0.0), xi_plus=(-1.0, 0.0),
                 mu=1.0, delta=0.5, v_min=None, name=None):
        coeffs = [float(c) for c in coeffs]
        if len(coeffs) % 2 == 0:
            coeffs.append(0.0)
        self.coeffs = coeffs
        self.a0 = coeffs[0]
        self.a = numpy.array(coeffs[1::2])
        self.b = numpy.array(coeffs[2::2])
        self.k = numpy.arange(1, len(self.a) + 1, dtype=float)
        AngularPotential.__init__(self, 2, xi_minus, xi_plus, mu, delta,
                                  v_min, name)

    def U(self, theta):
        kt = numpy.multiply.outer(theta, self.k)
        return self.a0 + numpy.dot(numpy.cos(kt), self.a) + \
            numpy.dot(numpy.sin(kt), self.b)

    def dU(self, theta):
        kt = numpy.multiply.outer(theta, self.k)
        return numpy.dot(numpy.cos(kt), self.k * self.b) - \
            numpy.dot(numpy.sin(kt), self.k * self.a)

    def d2U(self, theta):
        kt = numpy.multiply.outer(theta, self.k)
        k2 = self.k ** 2
        return -numpy.dot(numpy.cos(kt), k2 * self.a) - \
            numpy.dot(numpy.sin(kt), k2 * self.b)

    def value(self, s):
        s = numpy.asarray(s, dtype=float)
        return self.U(numpy.arctan2(s[..., 1], s[..., 0]))

    def gradient(self, s):
        s = numpy.asarray(s, dtype=float)
        theta = numpy.arctan2(s[..., 1], s[..., 0])
        e_theta = numpy.stack([-s[..., 1], s[..., 0]], axis=-1)
        return numpy.expand_dims(self.dU(theta), -1) * e_theta

    def as_dict(self):
        return {'kind': 'fourier', 'dim': 2, 'coeffs': list(self.coeffs),
                'xi_minus': list(self.xi_minus), 'xi_plus': list(self.xi_plus),
                'mu': self.mu, 'delta': self.delta}


class ZonalPotential(AngularPotential):
    """Potential depending only on z = s.axis, V(s) = a0 + c (1 - z**2).

    With c > 0 the minima sit at the poles -axis, +axis; c = 0 is the
    isotropic potential in any dimension.
    """

    def __init__(self, dim, strength=0.0, level=1.0, axis=None,
                 mu=None, delta=0.5, name=None):
        if axis is None:
            axis = numpy.eye(dim)[dim - 1]
        self.axis = unit(axis)
        self.strength = float(strength)
        self.level = float(level)
        if mu is None:
            # 1 - z**2 >= |s - xi|**2 / 2 near the poles
            mu = self.strength / 2.0 if self.strength > 0 else 0.1
        AngularPotential.__init__(self, dim, -self.axis, self.axis, mu, delta,
                                  self.level, name)

    def value(self, s):
        z = numpy.dot(numpy.asarray(s, dtype=float), self.axis)
        return self.level + self.strength * (1.0 - z ** 2)

    def gradient(self, s):
        s = numpy.asarray(s, dtype=float)
        z = numpy.dot(s, self.axis)
        dz = numpy.expand_dims(-2.0 * self.strength * z, -1)
        return dz * (self.axis - numpy.expand_dims(z, -1) * s)

    def as_dict(self):
        return {'kind': 'axial', 'dim': self.dim, 'strength': self.strength,
                'level': self.level, 'mu': self.mu, 'delta': self.delta}


class SphericalPotential(AngularPotential):
    """Potential from user callables acting on arrays of unit vectors.

    ``func`` maps an array of shape (..., d) to shape (...). ``grad`` is
    optional and must return the tangential gradient.
    """

    def __init__(self, dim, func, xi_minus, xi_plus, grad=None, mu=1.0,
                 delta=0.5, v_min=None, name=None):
        self.func = func
        self.grad = grad
        AngularPotential.__init__(self, dim, xi_minus, xi_plus, mu, delta,
                                  v_min, name)

    def value(self, s):
        return self.func(numpy.asarray(s, dtype=float))

    def gradient(self, s):
        if self.grad is None:
            return self.fd_gradient(s)
        return self.grad(numpy.asarray(s, dtype=float))


class HomogeneousPotential(object):
    """An angular potential extended to R^d minus the origin with degree
    -alpha.

    Parameters
    ----------
    angular : AngularPotential
    alpha : float
        Homogeneity exponent in (0, 2).

    Attributes
    ----------
    alpha_star : float
        (2 - alpha)/2, the exponent of every radial scaling law.

    """

    def __init__(self, angular, alpha):
        self.angular = angular
        self.alpha = check_alpha(alpha)
        self.alpha_star = alpha_star(self.alpha)

    @property
    def dim(self):
        return self.angular.dim

    @property
    def v_min(self):
        return self.angular.v_min

    @property
    def xi_minus(self):
        return self.angular.xi_minus

    @property
    def xi_plus(self):
        return self.angular.xi_plus

    def with_alpha(self, alpha):
        return HomogeneousPotential(self.angular, alpha)

    def _polar(self, x):
        x = numpy.asarray(x, dtype=float)
        r = norm(x)
        if numpy.any(r < 1e-14):
            raise ZeroRadiusError("potential evaluated at |x| = %g"
                                  % numpy.min(r))
        return x / numpy.expand_dims(r, -1), r

    def value(self, x):
        s, r = self._polar(x)
        return self.angular.value(s) / r ** self.alpha

    def gradient(self, x):
        s, r = self._polar(x)
        u = numpy.expand_dims(self.angular.value(s), -1)
        scale = numpy.expand_dims(r ** (self.alpha + 1.0), -1)
        return (self.angular.gradient(s) - self.alpha * u * s) / scale

    def tangential_gradient(self, s):
        s = check_unit(s)
        u = numpy.expand_dims(self.angular.value(s), -1)
        return self.gradient(s) + self.alpha * u * s

    def __repr__(self):
        return 'HomogeneousPotential(%r, alpha=%r)' % (self.angular,
                                                       self.alpha)


def eval_V(p, x):
    """V(x) = V(x/|x|)/|x|**alpha."""
    return p.value(x)


def grad_V(p, x):
    """Gradient of the -alpha-homogeneous extension at x."""
    return p.gradient(x)


def tangential_grad(p, s):
    """grad V(s) + alpha V(s) s at a unit vector s."""
    return p.tangential_gradient(s)


def tangent_frame(s):
    """Orthonormal basis of the tangent space of the sphere at s, as rows."""
    return scipy.linalg.null_space(numpy.atleast_2d(s)).T


def sample_sphere(dim, count):
    """Deterministic quasi-uniform points on S^{dim-1}.

    Equispaced angles on the circle; for dim >= 3 unscrambled Sobol points
    are pushed through the inverse normal CDF and normalized.
    """
    if dim == 2:
        theta = 2.0 * numpy.pi * numpy.arange(count) / count
        return numpy.column_stack([numpy.cos(theta), numpy.sin(theta)])
    # the first two points (0 and the centre) map to the origin
    m = int(numpy.ceil(numpy.log2(count + 2)))
    sobol = qmc.Sobol(d=dim, scramble=False)
    u = sobol.random_base2(m)[2:count + 2]
    g = scipy.special.ndtri(numpy.clip(u, 1e-12, 1.0 - 1e-12))
    return unit(g)


def fibonacci_sphere(spacing):
    """Near-uniform net on S^2 with geodesic spacing about ``spacing``."""
    count = int(numpy.ceil(4.0 * numpy.pi / spacing ** 2))
    i = numpy.arange(count) + 0.5
    z = 1.0 - 2.0 * i / count
    phi = numpy.pi * (3.0 - numpy.sqrt(5.0)) * i
    rho = numpy.sqrt(1.0 - z ** 2)
    return numpy.column_stack([rho * numpy.cos(phi), rho * numpy.sin(phi), z])


def sampling_resolution(points):
    """Largest nearest-neighbour chord distance among sample points."""
    if points.shape[1] == 2:
        return 2.0 * numpy.sin(numpy.pi / len(points))
    tree = scipy.spatial.cKDTree(points)
    dist, _ = tree.query(points, k=2)
    return float(numpy.max(dist[:, 1]))


def _local_samples(xi, radius, count):
    """Points on the sphere within chord distance ``radius`` of xi."""
    angle = 2.0 * numpy.arcsin(min(radius, 2.0) / 2.0) * (1.0 - 1e-9)
    if len(xi) == 2:
        theta0 = numpy.arctan2(xi[1], xi[0])
        theta = theta0 + numpy.linspace(-angle, angle, count)
        return numpy.column_stack([numpy.cos(theta), numpy.sin(theta)])
    frame = tangent_frame(xi)
    directions = numpy.dot(sample_sphere(len(xi) - 1, max(count // 16, 8)),
                           frame)
    rho = numpy.linspace(0.0, angle, 16)
    pts = (numpy.multiply.outer(numpy.cos(rho), xi)[:, None, :] +
           numpy.multiply.outer(numpy.sin(rho), directions))
    return pts.reshape(-1, len(xi))


class ValidationReport(object):
    """Outcome of :py:func:`validate_class_S`.

    Attributes
    ----------
    passed : bool
    failures : list of (check, message)
    min_margin : float
        min over samples of V(s) - V_min.
    growth_margin : float
        min over samples near the minima of V(s) - V_min - mu |s - xi|**2.
    gradient_deviation : float
    resolution : float
        Chord spacing of the sample set.

    """

    def __init__(self, name, sample_count):
        self.name = name
        self.sample_count = sample_count
        self.failures = []
        self.min_margin = None
        self.growth_margin = None
        self.gradient_deviation = None
        self.resolution = None

    @property
    def passed(self):
        return not self.failures

    @property
    def verdict(self):
        return 'PASS' if self.passed else 'FAIL'

    def fail(self, check, message):
        logger.info("class-S check %s failed: %s", check, message)
        self.failures.append((check, message))

    def as_dict(self):
        return {'potential': self.name, 'verdict': self.verdict,
                'sample_count': self.sample_count,
                'failures': [{'check': c, 'message': m}
                             for c, m in self.failures],
                'min_margin': self.min_margin,
                'growth_margin': self.growth_margin,
                'gradient_deviation': self.gradient_deviation,
                'resolution': self.resolution}


def validate_class_S(p, sample_count=2000, tol=1e-10):
    """Sampling-based check that an angular potential belongs to class S.

    Checks that the marked minima are distinct unit vectors attaining V_min,
    that V >= V_min on a quasi-uniform sample, that the quadratic growth
    condition holds on samples within delta of each minimum, and that the
    analytic gradient agrees with great-circle finite differences.

    Parameters
    ----------
    p : AngularPotential or HomogeneousPotential
    sample_count : int
        Number of sphere samples, at least 100.

    Returns
    -------
    ValidationReport

    """
    angular = getattr(p, 'angular', p)
    if sample_count < 100:
        raise ValueError("sample_count must be at least 100, got %d"
                         % sample_count)
    report = ValidationReport(angular.name, sample_count)
    xis = (('xi_minus', angular.xi_minus), ('xi_plus', angular.xi_plus))
    for label, xi in xis:
        if abs(norm(xi) - 1.0) > 1e-12:
            report.fail('unit', '%s has norm %.12g' % (label, norm(xi)))
    if norm(angular.xi_minus - angular.xi_plus) < 1e-12:
        report.fail('distinct', 'xi_minus and xi_plus coincide')
    if not report.passed:
        return report

    for label, xi in xis:
        v = float(angular.value(xi))
        if abs(v - angular.v_min) > tol:
            report.fail('global minimum', 'V(%s) = %.9g differs from '
                        'V_min = %.9g' % (label, v, angular.v_min))

    points = sample_sphere(angular.dim, sample_count)
    values = angular.value(points)
    worst = int(numpy.argmin(values))
    report.min_margin = float(values[worst] - angular.v_min)
    report.resolution = sampling_resolution(points)
    if report.min_margin < -tol:
        report.fail('global minimum', 'V = %.9g < V_min = %.9g at s = %s'
                    % (values[worst], angular.v_min, list(points[worst])))

    margins = []
    for label, xi in xis:
        local = _local_samples(xi, angular.delta, 401)
        dist2 = numpy.sum((local - xi) ** 2, axis=-1)
        growth = angular.value(local) - angular.v_min - angular.mu * dist2
        margins.append(numpy.min(growth))
        if numpy.min(growth) < -tol:
            at = local[int(numpy.argmin(growth))]
            report.fail('quadratic growth', 'mu-growth violated near %s '
                        'by %.3g at s = %s' % (label, -numpy.min(growth),
                                                list(at)))
    report.growth_margin = float(min(margins))

    stride = max(1, sample_count // 50)
    report.gradient_deviation = angular.check_gradient(points[::stride])
    if report.gradient_deviation > 1e-6:
        report.fail('gradient', 'analytic gradient deviates from finite '
                    'differences by %.3g' % report.gradient_deviation)
    return report


class BarrierRegion(object):
    """Open region O of the sphere used by :py:func:`sigma_criterion`.

    Either ``threshold`` (O = {s : V(s) > threshold}) or a vectorized
    ``predicate(potential, s) -> bool array`` must be given.
    """

    def __init__(self, threshold=None, predicate=None, description=None):
        if (threshold is None) == (predicate is None):
            raise ValueError("give exactly one of threshold and predicate")
        self.threshold = threshold
        self.predicate = predicate
        if description is None:
            description = ('{V > %g}' % threshold if threshold is not None
                           else 'custom predicate')
        self.description = description

    def contains(self, angular, s):
        if self.threshold is not None:
            return angular.value(s) > self.threshold
        return numpy.asarray(self.predicate(angular, s), dtype=bool)


class CriterionReport(object):
    """Both sides of the barrier inequality
    sqrt(2 min_O (V - V_min)) dist(F-, F+) > 2 sqrt(2 V_min)."""

    def __init__(self, min_gap, distance, v_min, resolution, components):
        self.min_gap = float(min_gap)
        self.distance = float(distance)
        self.lhs = float(numpy.sqrt(2.0 * max(self.min_gap, 0.0)) *
                         self.distance)
        self.rhs = float(2.0 * numpy.sqrt(2.0 * v_min))
        self.resolution = resolution
        self.components = components

    @property
    def in_sigma(self):
        return self.lhs > self.rhs

    def as_dict(self):
        return {'lhs': self.lhs, 'rhs': self.rhs, 'in_sigma': self.in_sigma,
                'min_gap': self.min_gap, 'distance': self.distance,
                'resolution': self.resolution, 'components': self.components}


def _refine_boundary(inside, lo, hi, iterations=60):
    """Bisect the angle at which membership changes between lo and hi."""
    inside_lo = inside(lo)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if inside(mid) == inside_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _sigma_circle(angular, barrier, count):
    def inside_at(theta):
        s = numpy.array([numpy.cos(theta), numpy.sin(theta)])
        return bool(barrier.contains(angular, s[None, :])[0])

    theta = 2.0 * numpy.pi * numpy.arange(count) / count
    pts = numpy.column_stack([numpy.cos(theta), numpy.sin(theta)])
    inside = barrier.contains(angular, pts)
    if inside.all() or not inside.any():
        raise BadTopologyError("barrier %s leaves %s of the circle"
                               % (barrier.description,
                                  'nothing' if inside.all() else 'all'))
    h = theta[1]
    # unroll starting from a point of O so complement arcs never wrap
    shift = int(numpy.argmax(inside))
    unrolled = theta[shift] + h * numpy.arange(count)
    outside = ~numpy.roll(inside, -shift)
    arcs = []
    i = 0
    while i < count:
        if not outside[i]:
            i += 1
            continue
        j = i
        while j + 1 < count and outside[j + 1]:
            j += 1
        start = _refine_boundary(inside_at, unrolled[i] - h, unrolled[i])
        end = _refine_boundary(inside_at, unrolled[j], unrolled[j] + h)
        arcs.append((start, end))
        i = j + 1

    def arc_of(xi):
        t = numpy.arctan2(xi[1], xi[0])
        for k, (a, b) in enumerate(arcs):
            if (t - a) % (2 * numpy.pi) <= (b - a) + 1e-12:
                return k
        return None

    k_minus, k_plus = arc_of(angular.xi_minus), arc_of(angular.xi_plus)
    if len(arcs) != 2 or k_minus is None or k_plus is None or \
            k_minus == k_plus:
        raise BadTopologyError("complement of %s has %d arc(s) and does not "
                               "separate the marked minima"
                               % (barrier.description, len(arcs)))
    (a0, a1), (b0, b1) = arcs
    gap = min((b0 - a1) % (2 * numpy.pi), (a0 - b1) % (2 * numpy.pi))
    distance = 2.0 * numpy.sin(min(gap, numpy.pi) / 2.0)

    ends = numpy.array([[numpy.cos(t), numpy.sin(t)]
                        for arc in arcs for t in arc])
    closure = numpy.vstack([pts[inside], ends])
    if barrier.threshold is not None:
        min_gap = barrier.threshold - angular.v_min
    else:
        min_gap = numpy.min(angular.value(closure)) - angular.v_min
    return CriterionReport(min_gap, distance, angular.v_min,
                           2 * numpy.sin(h / 2), 2)


def _sigma_net(angular, barrier, spacing):
    if angular.dim == 3:
        net = fibonacci_sphere(spacing)
    else:
        net = sample_sphere(angular.dim, 2 ** 14)
    net = numpy.vstack([net, angular.xi_minus, angular.xi_plus])
    inside = barrier.contains(angular, net)
    resolution = sampling_resolution(net)
    free = numpy.flatnonzero(~inside)
    if inside[-1] or inside[-2]:
        raise BadTopologyError("a marked minimum lies inside %s"
                               % barrier.description)
    tree = scipy.spatial.cKDTree(net[free])
    pairs = tree.query_pairs(1.5 * resolution, output_type='ndarray')
    graph = scipy.sparse.coo_matrix(
        (numpy.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])),
        shape=(len(free), len(free)))
    n_comp, labels = scipy.sparse.csgraph.connected_components(
        graph, directed=False)
    lab_minus, lab_plus = labels[-2], labels[-1]
    if n_comp != 2 or lab_minus == lab_plus:
        raise BadTopologyError("complement of %s has %d sampled component(s) "
                               "(net resolution %.3g)"
                               % (barrier.description, n_comp, resolution))
    f_minus = net[free][labels == lab_minus]
    f_plus = net[free][labels == lab_plus]
    dist, _ = scipy.spatial.cKDTree(f_plus).query(f_minus)
    if barrier.threshold is not None:
        min_gap = barrier.threshold - angular.v_min
    else:
        min_gap = numpy.min(angular.value(net[inside])) - angular.v_min
    return CriterionReport(min_gap, numpy.min(dist), angular.v_min,
                           resolution, n_comp)


def sigma_criterion(p, barrier_set, count=4096, spacing=0.05):
    """Evaluate the sufficient barrier criterion for a potential to lie in
    the class where a critical exponent exists.

    Parameters
    ----------
    p : AngularPotential or HomogeneousPotential
    barrier_set : BarrierRegion
        The open region O; its complement must split into two components
        F-, F+ containing xi_minus and xi_plus.
    count : int
        Circle samples (d = 2); arc endpoints are refined by bisection.
    spacing : float
        Geodesic spacing of the net used for d >= 3.

    Returns
    -------
    CriterionReport

    """
    angular = getattr(p, 'angular', p)
    if angular.dim == 2:
        report = _sigma_circle(angular, barrier_set, count)
    else:
        report = _sigma_net(angular, barrier_set, spacing)
    logger.info("barrier criterion for %s: lhs %.6g, rhs %.6g",
                angular.name, report.lhs, report.rhs)
    return report


def potential_from_dict(definition, alpha=None):
    """Build a HomogeneousPotential from a JSON-style dictionary."""
    get = definition.get
    kind = get('kind', 'fourier')
    name = get('name', kind)
    if kind == 'isotropic' and get('dim', 2) == 2:
        angular = FourierPotential([get('level', 1.0)],
                                   get('xi_minus', (1.0, 0.0)),
                                   get('xi_plus', (-1.0, 0.0)),
                                   get('mu', 0.1), get('delta', 0.5),
                                   name=name)
    elif kind == 'fourier':
        if get('dim', 2) != 2:
            raise ValueError("fourier potentials are planar (dim 2)")
        angular = FourierPotential(definition['coeffs'],
                                   get('xi_minus', (1.0, 0.0)),
                                   get('xi_plus', (-1.0, 0.0)),
                                   get('mu', 1.0), get('delta', 0.5),
                                   get('v_min'), name)
    elif kind in ('axial', 'isotropic'):
        angular = ZonalPotential(get('dim', 3), get('strength', 0.0),
                                 get('level', 1.0), get('axis'), get('mu'),
                                 get('delta', 0.5), name)
    else:
        raise ValueError("unknown potential kind %r" % (kind,))
    if alpha is None:
        alpha = get('alpha')
    if alpha is None:
        raise ValueError("potential %r has no homogeneity exponent" % name)
    return HomogeneousPotential(angular, alpha)


def named_potential(name, alpha=None):
    """Load a built-in potential from :py:mod:`anisokep.examples`."""
    # run_* modules are scripts
    if name.startswith(('run_', '_')):
        raise ValueError("no built-in potential named %r" % (name,))
    try:
        module = importlib.import_module('anisokep.examples.' + name)
    except ImportError:
        raise ValueError("no built-in potential named %r" % (name,))
    if alpha is None:
        alpha = module.alpha
    return HomogeneousPotential(module.angular, alpha)


def load_potential(definition, alpha=None):
    """Resolve a potential from a built-in name, a JSON file, a JSON string
    or a dictionary."""
    if isinstance(definition, HomogeneousPotential):
        return definition if alpha is None else definition.with_alpha(alpha)
    if isinstance(definition, dict):
        return potential_from_dict(definition, alpha)
    definition = str(definition)
    if definition.lstrip().startswith('{'):
        return potential_from_dict(json.loads(definition), alpha)
    if os.path.exists(definition):
        with open(definition) as f:
            return potential_from_dict(json.load(f), alpha)
    if definition.endswith('.json'):
        raise IOError("potential file '%s' doesn't exist" % definition)
    return named_potential(definition, alpha)
