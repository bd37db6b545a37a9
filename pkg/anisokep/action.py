"""Discrete paths and the action functionals evaluated on them.

A path is a time grid plus node positions. Velocities are constant on each
segment; the kinetic term is integrated with the midpoint rule on segments and
the potential term with the trapezoid rule at nodes. The same rules are used
for the Lagrangian action, the Maupertuis functional and the re-timing maps,
so the identities between them hold exactly at the discrete level.
"""

import json
import logging

import numpy

from anisokep.core import (norm, unit, check_alpha, alpha_star,
                           CollisionNodeError, BadDomainError,
                           DegeneratePathError, StalledSegmentError,
                           BadWindowError, NotMonotoneError)

__all__ = ['DiscretePath', 'ActionBreakdown', 'lagrangian_action',
           'maupertuis_J', 'time_scale', 'recover_time', 'zero_energy_reparam',
           'energy_residual', 'homothetic_action', 'homothetic_time',
           'homothetic_radius', 'homothetic_profile', 'bound_above',
           'bound_below', 'virial_level', 'virial_bounds',
           'level_bounds_position_jumping', 'level_bounds_velocity_jumping',
           'one_sided_derivative']

logger = logging.getLogger(__name__)

COLLISION_TOL = 1e-12


class DiscretePath(object):
    """A piecewise-linear path t_0 < ... < t_N, x_0, ..., x_N in R^d.

    Parameters
    ----------
    times : array-like, shape (N+1,)
    nodes : array-like, shape (N+1, d)

    """

    def __init__(self, times, nodes):
        times = numpy.array(times, dtype=float)
        nodes = numpy.array(nodes, dtype=float)
        if nodes.ndim != 2 or len(nodes) != len(times):
            raise ValueError("nodes must have shape (%d, d), got %s"
                             % (len(times), nodes.shape))
        if len(times) < 3:
            raise ValueError("a path needs at least 2 segments")
        if not numpy.all(numpy.isfinite(times)) or \
                not numpy.all(numpy.isfinite(nodes)):
            raise ValueError("path contains non-finite values")
        if numpy.any(numpy.diff(times) <= 0):
            raise ValueError("times must be strictly increasing")
        self.times = times
        self.nodes = nodes
        self.times.flags.writeable = False
        self.nodes.flags.writeable = False

    @property
    def N(self):
        return len(self.times) - 1

    @property
    def d(self):
        return self.nodes.shape[1]

    @property
    def dt(self):
        return numpy.diff(self.times)

    @property
    def radii(self):
        return norm(self.nodes)

    @property
    def directions(self):
        return unit(self.nodes)

    @property
    def velocities(self):
        """Segment velocities, shape (N, d)."""
        return numpy.diff(self.nodes, axis=0) / self.dt[:, None]

    @property
    def span(self):
        return self.times[0], self.times[-1]

    def retimed(self, times):
        return DiscretePath(times, self.nodes)

    def scaled(self, space, time):
        return DiscretePath(self.times * time, self.nodes * space)

    def index_of(self, t):
        """Index of the node closest to time t."""
        return int(numpy.argmin(numpy.abs(self.times - t)))

    def to_csv(self, filename=None):
        """Write (or return) CSV text with header ``t,x1,...,xd``."""
        header = ','.join(['t'] + ['x%d' % (i + 1) for i in range(self.d)])
        rows = numpy.column_stack([self.times, self.nodes])
        lines = [header] + [','.join('%.9g' % v for v in row) for row in rows]
        text = '\n'.join(lines) + '\n'
        if filename is None:
            return text
        from anisokep.util import write_atomic
        write_atomic(filename, text)

    @classmethod
    def from_csv(cls, filename):
        data = numpy.loadtxt(filename, delimiter=',', skiprows=1, ndmin=2)
        return cls(data[:, 0], data[:, 1:])

    def __repr__(self):
        return 'DiscretePath(N=%d, d=%d, t=[%g, %g])' % (
            self.N, self.d, self.times[0], self.times[-1])


class ActionBreakdown(object):
    """Kinetic and potential parts of a discrete action."""

    def __init__(self, kinetic, potential, per_segment):
        self.kinetic = float(kinetic)
        self.potential = float(potential)
        self.per_segment = numpy.asarray(per_segment)

    @property
    def total(self):
        return self.kinetic + self.potential

    def as_dict(self):
        return {'kinetic': self.kinetic, 'potential': self.potential,
                'total': self.total,
                'per_segment': [float(v) for v in self.per_segment]}

    def to_json(self):
        from anisokep.util import format_floats
        return json.dumps(format_floats(self.as_dict()), indent=2,
                          sort_keys=True)

    def __repr__(self):
        return 'ActionBreakdown(kinetic=%.9g, potential=%.9g, total=%.9g)' % (
            self.kinetic, self.potential, self.total)


def _segment_terms(p, path):
    r = path.radii
    if numpy.min(r) < COLLISION_TOL:
        raise CollisionNodeError("node %d lies at |x| = %g"
                                 % (int(numpy.argmin(r)), numpy.min(r)))
    dt = path.dt
    dx2 = numpy.sum(numpy.diff(path.nodes, axis=0) ** 2, axis=1)
    v = p.value(path.nodes)
    kinetic = 0.5 * dx2 / dt
    potential = 0.5 * (v[:-1] + v[1:]) * dt
    return kinetic, potential


def lagrangian_action(p, path):
    """Discrete Lagrangian action of a path.

    Parameters
    ----------
    p : HomogeneousPotential
    path : DiscretePath

    Returns
    -------
    ActionBreakdown

    """
    kinetic, potential = _segment_terms(p, path)
    return ActionBreakdown(numpy.sum(kinetic), numpy.sum(potential),
                           kinetic + potential)


def _check_unit_interval(path):
    t0, t1 = path.span
    if abs(t0 + 1.0) > 1e-12 or abs(t1 - 1.0) > 1e-12:
        raise BadDomainError("Maupertuis functional needs times on [-1, 1], "
                             "got [%.15g, %.15g]" % (t0, t1))


def maupertuis_J(p, path):
    """(int 1/2 |y'|**2) * (int V(y)) for a path on [-1, 1]."""
    _check_unit_interval(path)
    kinetic, potential = _segment_terms(p, path)
    return float(numpy.sum(kinetic) * numpy.sum(potential))


def time_scale(kinetic_integral, potential_integral):
    """Half-length (int |y'|**2 / (2 int V))**0.5 of the zero-energy time
    interval; ``kinetic_integral`` is int |y'|**2."""
    if kinetic_integral < 1e-14:
        raise DegeneratePathError("kinetic integral %g vanishes"
                                  % kinetic_integral)
    return float(numpy.sqrt(kinetic_integral / (2.0 * potential_integral)))


def recover_time(p, path):
    """Rescale a path on [-1, 1] to the zero-energy interval.

    Returns
    -------
    T : float
        Half-length of the new interval.
    path : DiscretePath
        x(tau) = y(tau/T) on [-T, T].

    """
    _check_unit_interval(path)
    kinetic, potential = _segment_terms(p, path)
    T = time_scale(2.0 * numpy.sum(kinetic), numpy.sum(potential))
    return T, path.retimed(path.times * T)


def zero_energy_reparam(p, path, min_density=1e-12):
    """Re-time a path so that 1/2 |x'|**2 = V(x) on every segment.

    Each segment gets duration |dx| / sqrt(2 Vbar) with Vbar the mean of V at
    its ends; the new time variable starts at the old initial time. The map
    is idempotent.
    """
    kinetic, _ = _segment_terms(p, path)
    density = kinetic / path.dt
    if numpy.min(density) < min_density:
        k = int(numpy.argmin(density))
        raise StalledSegmentError("segment %d has kinetic density %g"
                                  % (k, density[k]))
    v = p.value(path.nodes)
    vbar = 0.5 * (v[:-1] + v[1:])
    length = norm(numpy.diff(path.nodes, axis=0))
    dtau = length / numpy.sqrt(2.0 * vbar)
    times = path.times[0] + numpy.concatenate([[0.0], numpy.cumsum(dtau)])
    return path.retimed(times)


def energy_residual(p, path):
    """Segmentwise |1/2 |x'|**2 - Vbar| / Vbar."""
    v = p.value(path.nodes)
    vbar = 0.5 * (v[:-1] + v[1:])
    kinetic = 0.5 * numpy.sum(path.velocities ** 2, axis=1)
    return numpy.abs(kinetic - vbar) / vbar


def homothetic_action(r_minus, r_plus, gamma, alpha):
    """Minimal action of a radial zero-energy motion from r_minus to r_plus
    along a direction where the angular potential equals gamma:

        sqrt(2 gamma)/alpha_star * (r_plus**alpha_star - r_minus**alpha_star)

    """
    alpha = check_alpha(alpha)
    if r_minus < 0 or r_plus < r_minus:
        raise ValueError("need 0 <= r_minus <= r_plus, got %r, %r"
                         % (r_minus, r_plus))
    a = alpha_star(alpha)
    return float(numpy.sqrt(2.0 * gamma) / a * (r_plus ** a - r_minus ** a))


def homothetic_time(r_minus, r_plus, gamma, alpha):
    """Half-length T of the time interval of the homothetic motion."""
    alpha = check_alpha(alpha)
    q = (2.0 + alpha) / 2.0
    return float((r_plus ** q - r_minus ** q) /
                 ((alpha + 2.0) * numpy.sqrt(2.0 * gamma)))


def homothetic_radius(t, r_minus, r_plus, gamma, alpha):
    """r(t) = [(alpha+2)/2 sqrt(2 gamma) t + (r_+**q + r_-**q)/2]**(1/q),
    q = (2+alpha)/2, for t in [-T, T]."""
    q = (2.0 + alpha) / 2.0
    k = (alpha + 2.0) / 2.0 * numpy.sqrt(2.0 * gamma)
    m = 0.5 * (r_plus ** q + r_minus ** q)
    return numpy.maximum(k * numpy.asarray(t) + m, 0.0) ** (1.0 / q)


def homothetic_profile(r_minus, r_plus, gamma, alpha, direction=(1.0, 0.0),
                       N=400, spacing='uniform'):
    """Sample the homothetic zero-energy motion from r_minus to r_plus.

    Parameters
    ----------
    direction : array-like
        Direction of motion; normalized.
    N : int
        Number of segments.
    spacing : 'uniform' or 'action'
        Uniform in time, or uniform in r**alpha_star (equal action per
        segment, which concentrates nodes near a small r_minus).

    """
    alpha = check_alpha(alpha)
    if r_minus < 0 or r_plus <= r_minus:
        raise DegeneratePathError("homothetic profile needs r_minus < r_plus")
    T = homothetic_time(r_minus, r_plus, gamma, alpha)
    q = (2.0 + alpha) / 2.0
    k = (alpha + 2.0) / 2.0 * numpy.sqrt(2.0 * gamma)
    m = 0.5 * (r_plus ** q + r_minus ** q)
    if spacing == 'uniform':
        times = numpy.linspace(-T, T, N + 1)
        radii = homothetic_radius(times, r_minus, r_plus, gamma, alpha)
    elif spacing == 'action':
        a = alpha_star(alpha)
        u = numpy.linspace(r_minus ** a, r_plus ** a, N + 1)
        radii = u ** (1.0 / a)
        times = (radii ** q - m) / k
        times[0], times[-1] = -T, T
    else:
        raise ValueError("unknown spacing %r" % (spacing,))
    s = unit(direction)
    return DiscretePath(times, numpy.outer(radii, s))


def bound_above(p, x1, x2, eps, v_max=None):
    """Upper estimate of the constrained level m(x1, x2, eps):
    two homothetic legs down to the obstacle plus the geodesic arc on it."""
    x1 = numpy.asarray(x1, dtype=float)
    x2 = numpy.asarray(x2, dtype=float)
    s1, s2 = unit(x1), unit(x2)
    if v_max is None:
        v_max, _ = p.angular.max_value(10000)
    a = p.alpha_star
    legs = homothetic_action(eps, norm(x1), p.angular.value(s1), p.alpha) + \
        homothetic_action(eps, norm(x2), p.angular.value(s2), p.alpha)
    arc = numpy.pi / 2.0 * eps ** a * norm(s2 - s1) * numpy.sqrt(2.0 * v_max)
    return float(legs + arc)


def bound_below(p, path, contact, window, eps=None):
    """Lower estimate for the action of a constrained path.

    Parameters
    ----------
    path : DiscretePath
        Path whose radius equals eps on the contact interval.
    contact : (a, b)
        Contact interval in the path's time variable (a = b allowed).
    window : (t1, t2)
        Time window disjoint from the open contact interval; the excess
        gamma = min (V(s) - V_min) and the minimum radius are taken on it.

    """
    a, b = contact
    t1, t2 = window
    if t2 < t1 or max(t1, a) < min(t2, b):
        raise BadWindowError("window [%g, %g] overlaps the contact interval "
                             "(%g, %g)" % (t1, t2, a, b))
    if eps is None:
        eps = float(numpy.min(path.radii))
    v_min = p.v_min
    al = p.alpha
    r = path.radii
    s = path.directions
    ia, ib = path.index_of(a), path.index_of(b)
    total = homothetic_action(eps, max(r[0], eps), v_min, al) + \
        homothetic_action(eps, max(r[-1], eps), v_min, al) + \
        numpy.sqrt(2.0 * v_min) * eps ** p.alpha_star * norm(s[ib] - s[ia])
    inside = (path.times >= t1) & (path.times <= t2)
    if numpy.any(inside):
        excess = max(float(numpy.min(p.angular.value(s[inside]))) - v_min, 0.0)
        r_min = float(numpy.min(r[inside]))
        i1, i2 = path.index_of(t1), path.index_of(t2)
        total += numpy.sqrt(2.0 * excess) * r_min ** p.alpha_star * \
            norm(s[i2] - s[i1])
    return float(total)


def one_sided_derivative(times, values, index, side):
    """Three-point one-sided derivative of ``values`` at node ``index``.

    ``side`` is +1 (use nodes index, index+1, index+2) or -1 (use index,
    index-1, index-2). Falls back to two points when only one neighbour
    exists on that side.
    """
    values = numpy.asarray(values, dtype=float)
    n = len(times)
    j1, j2 = index + side, index + 2 * side
    if not 0 <= j1 < n:
        raise IndexError("no node on side %+d of %d" % (side, index))
    h1 = abs(times[j1] - times[index])
    if not 0 <= j2 < n:
        return side * (values[j1] - values[index]) / h1
    h2 = abs(times[j2] - times[j1])
    d = (-(2 * h1 + h2) / (h1 * (h1 + h2)) * values[index] +
         (h1 + h2) / (h1 * h2) * values[j1] -
         h1 / (h2 * (h1 + h2)) * values[j2])
    return side * d


def _monotone_segment(path, subinterval):
    a, b = subinterval
    ia, ib = path.index_of(a), path.index_of(b)
    if ib - ia < 2:
        raise NotMonotoneError("interval [%g, %g] spans fewer than 2 segments"
                               % (a, b))
    dr = numpy.diff(path.radii[ia:ib + 1])
    if not (numpy.all(dr > 0) or numpy.all(dr < 0)):
        raise NotMonotoneError("radius is not strictly monotone on [%g, %g]"
                               % (a, b))
    return ia, ib


def virial_level(p, path, subinterval):
    """Action of a zero-energy solution on a monotone-radius interval,
    (1/alpha_star) [r r']_a^b, from one-sided derivatives at both ends."""
    ia, ib = _monotone_segment(path, subinterval)
    r = path.radii
    rdot_a = one_sided_derivative(path.times, r, ia, +1)
    rdot_b = one_sided_derivative(path.times, r, ib, -1)
    return float((r[ib] * rdot_b - r[ia] * rdot_a) / p.alpha_star)


def virial_bounds(p, path, subinterval):
    """Two-sided diagnostic bracket for the action on a monotone interval.

    (sqrt(2 V_min) r(b)**a* - r(a) r'(a+)) / a*  <=  action
        <=  (sqrt(2 V(s(b))) r(b)**a* - r(a) r'(a+)) / a*
    """
    ia, ib = _monotone_segment(path, subinterval)
    r = path.radii
    a = p.alpha_star
    rdot_a = one_sided_derivative(path.times, r, ia, +1)
    start = r[ia] * rdot_a / a
    v_b = float(p.angular.value(path.directions[ib]))
    lower = numpy.sqrt(2.0 * p.v_min) / a * r[ib] ** a - start
    upper = numpy.sqrt(2.0 * v_b) / a * r[ib] ** a - start
    return float(lower), float(upper)


def _radial_terms(p, R, s1, s2, eps):
    a = p.alpha_star
    lower = 2.0 * numpy.sqrt(2.0 * p.v_min) / a * (R ** a -
                                                eps ** (2 * a) / R ** a)
    upper = (numpy.sqrt(2.0 * p.angular.value(unit(s1))) +
             numpy.sqrt(2.0 * p.angular.value(unit(s2)))) / a * R ** a
    return lower, upper


def level_bounds_position_jumping(p, R, s1, s2, eps, delta_pos, v_max=None):
    """Bracket for m(R s1, R s2, eps) when the minimizer has no velocity
    jump, in terms of its position jump."""
    if v_max is None:
        v_max, _ = p.angular.max_value(10000)
    lower, upper = _radial_terms(p, R, s1, s2, eps)
    e = eps ** p.alpha_star
    lower += numpy.sqrt(2.0 * p.v_min) * delta_pos * e
    upper += numpy.pi / 2.0 * numpy.sqrt(2.0 * v_max) * delta_pos * e
    return float(lower), float(upper)


def level_bounds_velocity_jumping(p, R, s1, s2, eps, delta_vel):
    """Bracket for m(R s1, R s2, eps) when the minimizer has no position
    jump, in terms of its velocity jump."""
    lower, upper = _radial_terms(p, R, s1, s2, eps)
    shift = delta_vel * eps ** p.alpha_star / p.alpha_star
    return float(lower - shift), float(upper - shift)
