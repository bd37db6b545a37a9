"""The reduced planar system of a homogeneous potential in the plane.

For d = 2 write x = r(cos theta, sin theta) and let phi be the direction of
the velocity. On zero-energy motions, after a change of time,

    theta' = 2 U(theta) sin(phi - theta)
    phi'   = U'(theta) cos(phi - theta) + alpha U(theta) sin(phi - theta)

and v = sqrt(U(theta)) cos(phi - theta) is nondecreasing along every orbit.
Minima of U give saddles, maxima give sinks and sources; a parabolic motion
from one minimum to the next is a saddle connection, which is located here by
shooting along the unstable manifold of the source saddle and bisecting on
alpha.
"""

import logging
from collections import namedtuple

import numpy
from scipy.optimize import brentq

from anisokep.core import (norm, check_alpha, alpha_star,
                           DegenerateCriticalError, NonPositiveRZError,
                           BadBracketError, NoSaddleError)
from anisokep.integrate import (RK4Solver, Event, integrate_batch,
                                default_integrator_options)
from anisokep.util import write_csv, format_floats

__all__ = ['PlanarPotential', 'PhasePoint', 'PlanarOrbit', 'Equilibrium',
           'ConnectionResult', 'planar_potential', 'devaney_field',
           'extended_field', 'integrate', 'equilibria', 'shoot_unstable',
           'stable_orbit', 'separation', 'saddle_connection_bisect',
           'apsidal_bounds', 'dv_dtheta_sweep', 'physical_trajectory',
           'fit_conic', 'conic_eccentricity', 'lrl_eccentricity',
           'phase_portrait', 'render_portrait_svg',
           'SADDLE', 'SINK', 'SOURCE']

logger = logging.getLogger(__name__)

SADDLE = 'saddle'
SINK = 'sink'
SOURCE = 'source'

EVENT_MARGIN = 1e-6
JACOBIAN_STEP = 1e-6

PhasePoint = namedtuple('PhasePoint', ['theta', 'phi'])


class PlanarPotential(object):
    """A 2pi-periodic angular potential U(theta) with its derivatives.

    Parameters
    ----------
    U, dU : callable
        U(theta) and U'(theta), vectorized.
    d2U : callable, optional
        U''(theta); central differences of dU when omitted.
    samples : int, optional
        Sampling density used to locate extrema.

    Attributes
    ----------
    u_min, u_max : float
    minima, maxima : list of float
        Nondegenerate critical points in [0, 2pi).

    """

    def __init__(self, U, dU, d2U=None, samples=4096, name=None):
        self.U = U
        self.dU = dU
        if d2U is None:
            def d2U(theta, h=1e-5):
                return (dU(theta + h) - dU(theta - h)) / (2.0 * h)
        self.d2U = d2U
        self.name = name
        grid = numpy.linspace(0.0, 2.0 * numpy.pi, samples, endpoint=False)
        values = U(grid)
        self.flat = bool(numpy.ptp(values) < 1e-12)
        self.minima, self.maxima = [], []
        for theta in ([] if self.flat else self.critical_points()):
            curvature = float(self.d2U(theta))
            if curvature > 0:
                self.minima.append(theta)
            elif curvature < 0:
                self.maxima.append(theta)
        candidates = list(values) + [float(U(t)) for t in self.minima + self.maxima]
        self.u_min = float(min(candidates))
        self.u_max = float(max(candidates))

    def critical_points(self, window=(0.0, 2.0 * numpy.pi), samples=4096):
        """Zeros of U' in [lo, hi), located by sign changes and brentq."""
        lo, hi = window
        grid = numpy.linspace(lo, hi, samples + 1)
        d = self.dU(grid)
        roots = []
        for i in range(samples):
            a, b = grid[i], grid[i + 1]
            if d[i] == 0.0:
                roots.append(float(a))
            elif d[i] * d[i + 1] < 0:
                roots.append(float(brentq(self.dU, a, b, xtol=1e-14)))
        return roots

    def __repr__(self):
        return 'PlanarPotential(name=%r, u_min=%g, u_max=%g)' % (
            self.name, self.u_min, self.u_max)


def planar_potential(angular):
    """PlanarPotential from a d = 2 angular (or homogeneous) potential."""
    angular = getattr(angular, 'angular', angular)
    if angular.dim != 2:
        raise ValueError("planar reduction needs d = 2, got %d" % angular.dim)
    if hasattr(angular, 'U'):
        return PlanarPotential(angular.U, angular.dU, angular.d2U,
                               name=angular.name)

    def U(theta):
        theta = numpy.asarray(theta, dtype=float)
        return angular.value(numpy.stack([numpy.cos(theta),
                                          numpy.sin(theta)], axis=-1))

    def dU(theta):
        theta = numpy.asarray(theta, dtype=float)
        s = numpy.stack([numpy.cos(theta), numpy.sin(theta)], axis=-1)
        t = numpy.stack([-numpy.sin(theta), numpy.cos(theta)], axis=-1)
        return numpy.sum(angular.gradient(s) * t, axis=-1)

    return PlanarPotential(U, dU, name=angular.name)


def _field(U, alpha):
    def rhs(tau, y):
        theta, phi = y[..., 0], y[..., 1]
        delta = phi - theta
        u = U.U(theta)
        s, c = numpy.sin(delta), numpy.cos(delta)
        return numpy.stack([2.0 * u * s, U.dU(theta) * c + alpha * u * s],
                           axis=-1)
    return rhs


def devaney_field(U, alpha, p):
    """(theta', phi') of the reduced system at the phase point p."""
    check_alpha(alpha)
    theta, phi = p
    u = float(U.U(theta))
    delta = phi - theta
    return (2.0 * u * numpy.sin(delta),
            float(U.dU(theta)) * numpy.cos(delta) + alpha * u * numpy.sin(delta))


def extended_field(U, alpha, state):
    """Derivatives of (r, z, theta, phi, t) for the rescaled planar system.

    r' = 2 r U cos(phi - theta), z' = z U' sin(phi - theta), theta' and phi'
    as in the reduced system, and t' = z r**(1 + alpha/2). The physical
    velocity is r**(-alpha/2) z (cos phi, sin phi).
    """
    r, z, theta, phi = state[:4]
    if r <= 0 or z <= 0:
        raise NonPositiveRZError("r = %g, z = %g must be positive" % (r, z))
    u = float(U.U(theta))
    du = float(U.dU(theta))
    delta = phi - theta
    s, c = numpy.sin(delta), numpy.cos(delta)
    return numpy.array([2.0 * r * u * c, z * du * s, 2.0 * u * s,
                        du * c + alpha * u * s,
                        z * r ** (1.0 + alpha / 2.0)])


def _v(U, theta, phi):
    return numpy.sqrt(U.U(theta)) * numpy.cos(phi - theta)


class PlanarOrbit(object):
    """Samples of an orbit of the reduced system.

    Attributes
    ----------
    taus : numpy.ndarray
    states : numpy.ndarray, shape (n, 2)
        (theta, phi) samples.
    v_samples : numpy.ndarray
    termination : string
        ReachedSink, ReachedSource, ReachedTarget, LeftWindow, Section or
        MaxTime.

    """

    def __init__(self, taus, states, v_samples, termination):
        self.taus = numpy.asarray(taus)
        self.states = numpy.asarray(states)
        self.v_samples = numpy.asarray(v_samples)
        self.termination = termination

    @property
    def theta(self):
        return self.states[:, 0]

    @property
    def phi(self):
        return self.states[:, 1]

    @property
    def final(self):
        return PhasePoint(*self.states[-1])

    def v_monotonicity_defect(self):
        """Largest decrease of v between consecutive samples (0 if none)."""
        dv = numpy.diff(self.v_samples)
        if self.taus[-1] < self.taus[0]:
            dv = -dv
        return float(max(0.0, -numpy.min(dv, initial=0.0)))

    def to_csv(self, filename):
        rows = numpy.column_stack([self.taus, self.states, self.v_samples])
        write_csv(filename, ['tau', 'theta', 'phi', 'v'], rows)

    def __repr__(self):
        return 'PlanarOrbit(n=%d, final=(%.6g, %.6g), termination=%s)' % (
            (len(self.taus),) + tuple(self.states[-1]) + (self.termination,))


class Equilibrium(object):
    """Critical point of the reduced system with its linearization."""

    def __init__(self, point, kind, eigenvalues, eigenvectors):
        self.point = PhasePoint(*point)
        self.kind = kind
        self.eigenvalues = eigenvalues
        self.eigenvectors = eigenvectors

    def vector(self, sign):
        """Eigenvector of the positive (sign > 0) or negative eigenvalue."""
        if self.kind != SADDLE:
            raise NoSaddleError("%s at %s has no %s direction"
                                % (self.kind, tuple(self.point),
                                   'unstable' if sign > 0 else 'stable'))
        i = int(numpy.argmax(self.eigenvalues) if sign > 0
                else numpy.argmin(self.eigenvalues))
        return self.eigenvectors[:, i]

    def as_dict(self):
        return format_floats({'theta': self.point.theta, 'phi': self.point.phi,
                              'kind': self.kind,
                              'eigenvalues': list(self.eigenvalues)})

    def __repr__(self):
        return 'Equilibrium((%.6g, %.6g), %s)' % (self.point + (self.kind,))


def _jacobian(U, alpha, point, step=JACOBIAN_STEP):
    rhs = _field(U, alpha)
    y = numpy.asarray(point, dtype=float)
    J = numpy.zeros((2, 2))
    for j in range(2):
        e = numpy.zeros(2)
        e[j] = step
        J[:, j] = (rhs(0.0, y + e) - rhs(0.0, y - e)) / (2.0 * step)
    return J


def _classify(J):
    det = numpy.linalg.det(J)
    trace = numpy.trace(J)
    if det < 0:
        return SADDLE
    return SINK if trace < 0 else SOURCE


def equilibria(U, alpha, window=(0.0, 2.0 * numpy.pi)):
    """All equilibria (theta*, phi*) with theta* in the window.

    phi* = theta* and theta* + pi, reduced modulo 2pi. Each is classified as
    saddle, sink or source from the eigenvalues of the numeric Jacobian.
    """
    check_alpha(alpha)
    if U.flat:
        raise DegenerateCriticalError("U is constant; every direction is "
                                      "critical")
    found = []
    for theta in U.critical_points(window):
        if abs(U.d2U(theta)) < 1e-8:
            raise DegenerateCriticalError("U''(%g) = %g" % (theta, U.d2U(theta)))
        for shift in (0.0, numpy.pi):
            phi = numpy.mod(theta + shift, 2.0 * numpy.pi)
            J = _jacobian(U, alpha, (theta, phi))
            w, vecs = numpy.linalg.eig(J)
            found.append(Equilibrium((theta, phi), _classify(J),
                                     numpy.real(w), numpy.real(vecs)))
    logger.debug("equilibria: %s", found)
    return found


def _find(U, alpha, theta, phi, kind=SADDLE):
    for e in equilibria(U, alpha, (theta - 0.5, theta + 0.5)):
        if abs(numpy.mod(e.point.phi - phi + numpy.pi, 2 * numpy.pi) - numpy.pi) < 1e-6:
            if e.kind == kind:
                return e
    raise NoSaddleError("no %s near (%g, %g)" % (kind, theta, phi))


def _as_equilibrium(U, alpha, point):
    if isinstance(point, Equilibrium):
        return point
    theta, phi = point
    return _find(U, alpha, theta, phi)


def integrate(U, alpha, p0, horizon, events=None, step=None, window=None,
              equilibria_list=(), margin=EVENT_MARGIN, record_every=1):
    """Integrate the reduced system from p0 over pseudo-time ``horizon``
    (negative for backward integration).

    Terminations: v within ``margin`` of sqrt(U(theta)) forward or of
    -sqrt(U(theta)) backward (ReachedTarget near a minimum of U, ReachedSink
    or ReachedSource near a maximum), theta leaving ``window`` (LeftWindow),
    distance below ``margin`` from a registered sink or saddle, any extra
    ``events``, or MaxTime.
    """
    check_alpha(alpha)
    if horizon == 0:
        raise ValueError("horizon must be nonzero")
    if step is None:
        step = default_integrator_options['step']
    rhs = _field(U, alpha)
    forward = horizon > 0
    all_events = list(events or [])
    # v is nondecreasing forward, so each direction saturates on one side
    sign = 1.0 if forward else -1.0
    all_events.append(Event('Saturated', lambda t, y: sign * _v(U, y[0], y[1])
                            - (numpy.sqrt(U.U(y[0])) - margin), direction=1))
    if window is not None:
        lo, hi = window
        all_events.append(Event('LeftWindow', lambda t, y: y[0] - hi, 1))
        all_events.append(Event('LeftWindow', lambda t, y: lo - y[0], 1))
    for e in equilibria_list:
        name = 'ReachedSink' if e.kind == SINK else 'ReachedTarget'
        if e.kind == SOURCE:
            continue
        point = numpy.array(e.point)
        all_events.append(Event(name, lambda t, y, point=point:
                                norm(y - point) - margin, direction=-1))
    solver = RK4Solver(rhs, events=all_events, step=step,
                       record_every=record_every)
    result = solver.run(numpy.asarray(p0, dtype=float), 0.0, horizon)
    status = result.status
    if status == 'Saturated':
        theta = result.y[-1, 0]
        critical = U.minima + U.maxima
        if critical:
            dist = [abs(numpy.mod(theta - c + numpy.pi, 2 * numpy.pi) - numpy.pi)
                    for c in critical]
            nearest = critical[int(numpy.argmin(dist))]
            if nearest in U.minima:
                status = 'ReachedTarget'
            else:
                status = 'ReachedSink' if forward else 'ReachedSource'
        else:
            status = 'ReachedTarget'
    v = _v(U, result.y[:, 0], result.y[:, 1])
    return PlanarOrbit(result.t, result.y, v, status)


def _offset_point(saddle, sign, offset):
    """Saddle plus offset times the (un)stable eigenvector, oriented so that
    sin(phi - theta) becomes positive."""
    vec = saddle.vector(sign)
    theta, phi = saddle.point
    ddelta = vec[1] - vec[0]
    if numpy.cos(phi - theta) * ddelta < 0:
        vec = -vec
    return numpy.array(saddle.point) + offset * vec


def shoot_unstable(U, alpha, saddle, offset=1e-8, direction=None,
                   horizon=200.0, step=None, window=None, events=None):
    """Follow the unstable manifold of a saddle until an event fires.

    ``direction`` (+1 or -1) picks the branch explicitly; by default the
    branch entering sin(phi - theta) > 0 is used.
    """
    saddle = _as_equilibrium(U, alpha, saddle)
    if direction is None:
        start = _offset_point(saddle, +1, offset)
    else:
        start = numpy.array(saddle.point) + direction * offset * saddle.vector(+1)
    orbit = integrate(U, alpha, start, horizon, events=events, step=step,
                      window=window)
    logger.debug("unstable orbit from %s: %s", tuple(saddle.point), orbit)
    return orbit


def stable_orbit(U, alpha, saddle, offset=1e-8, horizon=200.0, step=None,
                 window=None, events=None):
    """Backward integration along the stable branch of a saddle that
    approaches it with sin(phi - theta) > 0."""
    saddle = _as_equilibrium(U, alpha, saddle)
    start = _offset_point(saddle, -1, offset)
    return integrate(U, alpha, start, -abs(horizon), events=events, step=step,
                     window=window)


def separation(U, alpha, source, target, revolutions=0, offset=1e-8,
               step=None, horizon=200.0):
    """Signed separation theta_u - theta_s on the section v = 0.

    theta_u is where the unstable orbit of ``source`` crosses v = 0 and
    theta_s where the stable orbit of ``target`` (shifted by 2 pi
    ``revolutions``) does. Returns the separation and both orbits.
    """
    forward = Event('Section', lambda t, y: _v(U, y[0], y[1]), direction=1)
    backward = Event('Section', lambda t, y: _v(U, y[0], y[1]), direction=-1)
    source = _as_equilibrium(U, alpha, source)
    target = _as_equilibrium(U, alpha, target)
    unstable = shoot_unstable(U, alpha, source, offset=offset, step=step,
                              horizon=horizon, events=[forward])
    stable = stable_orbit(U, alpha, target, offset=offset, step=step,
                          horizon=horizon, events=[backward])
    for name, orbit in ('unstable', unstable), ('stable', stable):
        if orbit.termination != 'Section':
            raise BadBracketError("%s orbit at alpha=%g ended with %s before "
                                  "reaching v = 0" % (name, alpha,
                                                      orbit.termination))
    theta_u = unstable.theta[-1]
    theta_s = stable.theta[-1] + 2.0 * numpy.pi * revolutions
    return float(theta_u - theta_s), unstable, stable


class ConnectionResult(object):
    """Bisection result for a saddle connection."""

    def __init__(self, alpha_bar, bracket, separations, unstable, stable,
                 revolutions):
        self.alpha_bar = alpha_bar
        self.bracket = tuple(bracket)
        self.separations = separations
        self.unstable = unstable
        self.stable = stable
        self.revolutions = revolutions

    def as_dict(self):
        return format_floats({'alpha_bar': self.alpha_bar,
                              'bracket': list(self.bracket),
                              'separations': [list(s) for s in self.separations],
                              'revolutions': self.revolutions})

    def __repr__(self):
        return 'ConnectionResult(alpha_bar=%.6g, bracket=(%.6g, %.6g))' % (
            (self.alpha_bar,) + self.bracket)


def saddle_connection_bisect(U, alpha_bracket, source_saddle, target_saddle,
                             width=1e-4, revolutions=0, **options):
    """Bisect on alpha for a connection from source to target saddle.

    The separation functional must change sign over the bracket; each step
    keeps the half where it does. Returns a ConnectionResult with the
    witness orbits at the bracket midpoint.
    """
    lo, hi = [check_alpha(a) for a in alpha_bracket]
    if not lo < hi:
        raise ValueError("alpha bracket must be increasing")
    history = []

    def measure(alpha):
        value = separation(U, alpha, source_saddle, target_saddle,
                           revolutions=revolutions, **options)[0]
        history.append((alpha, value))
        logger.info("alpha=%.8g: separation %.6g", alpha, value)
        return value

    s_lo, s_hi = measure(lo), measure(hi)
    if numpy.sign(s_lo) == numpy.sign(s_hi):
        raise BadBracketError("separation has the same sign at alpha=%g (%.3g)"
                              " and alpha=%g (%.3g)" % (lo, s_lo, hi, s_hi))
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        s_mid = measure(mid)
        if numpy.sign(s_mid) == numpy.sign(s_lo):
            lo, s_lo = mid, s_mid
        else:
            hi, s_hi = mid, s_mid
    mid = 0.5 * (lo + hi)
    _, unstable, stable = separation(U, mid, source_saddle, target_saddle,
                                     revolutions=revolutions, **options)
    return ConnectionResult(mid, (lo, hi), history, unstable, stable,
                            revolutions)


def apsidal_bounds(U, alpha):
    """(4/(2-alpha)) arcsin sqrt(U_min/U_max) and 2pi/(2-alpha)."""
    check_alpha(alpha)
    lower = 4.0 / (2.0 - alpha) * numpy.arcsin(numpy.sqrt(U.u_min / U.u_max))
    return float(lower), float(2.0 * numpy.pi / (2.0 - alpha))


def dv_dtheta_sweep(U, alpha, theta_start=None, delta0=0.0, step=1e-3):
    """Angle swept while v runs from -sqrt(U_min) + delta0 to
    sqrt(U_min) - delta0 under dv/dtheta = alpha_star sqrt(U - v**2).

    Integrated in w with v = sqrt(U_min) sin w, where

        dtheta/dw = sqrt(U_min) cos w / (alpha_star sqrt(U - U_min + U_min cos(w)**2))

    is regular at both ends.
    """
    check_alpha(alpha)
    a = alpha_star(alpha)
    u_min = U.u_min
    root = numpy.sqrt(u_min)
    if theta_start is None:
        theta_start = min(U.minima, key=U.U) if U.minima else 0.0
    if not 0.0 <= delta0 < root:
        raise ValueError("delta0 must lie in [0, sqrt(U_min))")
    w_end = numpy.arcsin(1.0 - delta0 / root)

    def rhs(w, y):
        c = numpy.cos(w)
        excess = max(float(U.U(y[0])) - u_min, 0.0)
        denom = a * numpy.sqrt(excess + u_min * c * c)
        if denom == 0.0:
            return numpy.array([1.0 / a])
        return numpy.array([root * c / denom])

    result = RK4Solver(rhs, step=step).run([theta_start], -w_end, w_end)
    return float(result.final[0] - theta_start)


def physical_trajectory(U, alpha, r0, theta0, phi0, tau_span, step=None):
    """Integrate the extended system through (r0, theta0, phi0) on the zero
    energy level and return physical data.

    Returns
    -------
    t : numpy.ndarray
    positions, velocities : numpy.ndarray, shape (n, 2)

    """
    if step is None:
        step = default_integrator_options['step']
    z0 = numpy.sqrt(2.0 * float(U.U(theta0)))
    y0 = numpy.array([r0, z0, theta0, phi0, 0.0])

    def rhs(tau, y):
        return extended_field(U, alpha, y)

    tau_a, tau_b = tau_span
    if not tau_a <= 0.0 <= tau_b or tau_a == tau_b:
        raise ValueError("tau_span must bracket 0, got %r" % (tau_span,))
    states = y0[None, :]
    if tau_a < 0:
        states = RK4Solver(rhs, step=step).run(y0, 0.0, tau_a).y[::-1]
    if tau_b > 0:
        ahead = RK4Solver(rhs, step=step).run(y0, 0.0, tau_b).y
        states = numpy.concatenate([states, ahead[1:]])
    r, z, theta, phi, t = states.T
    positions = r[:, None] * numpy.column_stack([numpy.cos(theta),
                                                 numpy.sin(theta)])
    speed = r ** (-alpha / 2.0) * z
    velocities = speed[:, None] * numpy.column_stack([numpy.cos(phi),
                                                      numpy.sin(phi)])
    return t, positions, velocities


def fit_conic(points):
    """Least-squares conic A x**2 + B xy + C y**2 + D x + E y + F = 0 through
    planar points, as the smallest right singular vector of the design
    matrix."""
    points = numpy.asarray(points, dtype=float)
    x, y = points[:, 0], points[:, 1]
    design = numpy.column_stack([x * x, x * y, y * y, x, y, numpy.ones_like(x)])
    _, _, vt = numpy.linalg.svd(design)
    coeffs = vt[-1]
    return coeffs / numpy.max(numpy.abs(coeffs))


def conic_eccentricity(coeffs):
    A, B, C, D, E, F = coeffs
    M = numpy.array([[A, B / 2.0, D / 2.0],
                     [B / 2.0, C, E / 2.0],
                     [D / 2.0, E / 2.0, F]])
    eta = 1.0 if numpy.linalg.det(M) < 0 else -1.0
    root = numpy.sqrt((A - C) ** 2 + B ** 2)
    return float(numpy.sqrt(2.0 * root / (eta * (A + C) + root)))


def lrl_eccentricity(positions, velocities, mu=1.0):
    """Magnitude of the Laplace-Runge-Lenz vector of planar Kepler samples,
    ((|v|**2 - mu/r) x - (x.v) v)/mu."""
    x = numpy.asarray(positions, dtype=float)
    v = numpy.asarray(velocities, dtype=float)
    r = norm(x)
    v2 = numpy.sum(v * v, axis=-1)
    xv = numpy.sum(x * v, axis=-1)
    e = ((v2 - mu / r)[:, None] * x - xv[:, None] * v) / mu
    return norm(e)


def phase_portrait(U, alpha, initial_points=None, horizon=6.0, step=None,
                   grid=(12, 8)):
    """Orbits of the reduced system from a grid (or given points), integrated
    forward and backward as one batch."""
    check_alpha(alpha)
    if step is None:
        step = 5.0 * default_integrator_options['step']
    if initial_points is None:
        thetas = numpy.linspace(0.0, 2.0 * numpy.pi, grid[0], endpoint=False)
        phis = numpy.linspace(0.0, 2.0 * numpy.pi, grid[1], endpoint=False)
        thetas = thetas + 0.5 * thetas[1]
        phis = phis + 0.5 * phis[1]
        initial_points = numpy.array([(t, p) for t in thetas for p in phis])
    initial_points = numpy.atleast_2d(initial_points)
    rhs = _field(U, alpha)
    orbits = []
    t_f, y_f = integrate_batch(rhs, initial_points, 0.0, horizon, step)
    t_b, y_b = integrate_batch(rhs, initial_points, 0.0, -horizon, step)
    taus = numpy.concatenate([t_b[::-1], t_f[1:]])
    for i in range(len(initial_points)):
        states = numpy.concatenate([y_b[::-1, i], y_f[1:, i]])
        v = _v(U, states[:, 0], states[:, 1])
        orbits.append(PlanarOrbit(taus, states, v, 'MaxTime'))
    return orbits


def render_portrait_svg(orbits, equilibria_list, filename, title=None,
                        window=(0.0, 2.0 * numpy.pi)):
    """Draw orbits in the (theta, phi) plane with equilibria glyphs and save
    a deterministic SVG."""
    import matplotlib
    matplotlib.use('Agg')
    import matplotlib.pyplot as plt
    matplotlib.rcParams['svg.hashsalt'] = 'anisokep'
    fig, ax = plt.subplots(figsize=(6, 6))
    for orbit in orbits:
        ax.plot(orbit.theta, orbit.phi, color='0.3', linewidth=0.6)
    markers = {SADDLE: ('x', 'tab:red'), SINK: ('o', 'tab:blue'),
               SOURCE: ('s', 'tab:green')}
    for e in equilibria_list:
        marker, color = markers[e.kind]
        ax.plot([e.point.theta], [e.point.phi], marker=marker, color=color,
                linestyle='none', markersize=7)
    ax.set_xlim(*window)
    ax.set_ylim(*window)
    ax.set_xlabel('theta')
    ax.set_ylabel('phi')
    if title:
        ax.set_title(title)
    fig.savefig(filename, format='svg', metadata={'Date': None})
    plt.close(fig)
