"""Obstacle-constrained Bolza problems.

The fixed-endpoint problem min A(x) over paths with min |x| = eps is solved
by minimizing the Maupertuis functional J = (int 1/2 |y'|**2)(int V(y)) over
the interior nodes of a path on [-1, 1], with nodes kept outside the ball of
radius eps. The minimizer is re-timed to zero energy, and the contact interval
with the sphere and the two jump invariants are read off the re-timed path.

When the inequality-constrained minimizer does not reach the sphere, one node
is pinned to it and the pinned problem is solved over a pattern search of pin
positions; the best pinned path realizes min |x| = eps exactly.
"""

import os
import json
import logging
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy
from scipy.linalg import solve_banded

from anisokep.core import (norm, unit, slerp, angle_between, check_alpha,
                           InfeasibleEndpointsError, NoConvergenceError,
                           NoContactError, ZeroRadiusError,
                           MonotonicityViolationWarning, JumpDichotomyWarning)
from anisokep.action import (DiscretePath, lagrangian_action, recover_time,
                             zero_energy_reparam, homothetic_time,
                             one_sided_derivative, energy_residual)
from anisokep.util import RandomState, write_json, format_floats

__all__ = ['BolzaProblem', 'BolzaSolution', 'RegularityReport',
           'default_solver_options', 'maupertuis_grid', 'initial_paths',
           'MaupertuisSolver', 'minimize_bolza', 'detect_contact',
           'compute_jumps', 'jump_tolerance', 'contact_tolerance',
           'kelvin_transform', 'kelvin_jacobian', 'kelvin_regularity_check',
           'rescale_solution', 'solver_diagnostics',
           'POSITION_JUMPING', 'PARABOLIC', 'VELOCITY_JUMPING']

logger = logging.getLogger(__name__)

POSITION_JUMPING = 'PositionJumping'
PARABOLIC = 'Parabolic'
VELOCITY_JUMPING = 'VelocityJumping'

default_solver_options = {
    'gtol': 1e-8,
    'max_iter': 20000,
    'restarts': None,
    'seed': 0,
    'workers': 1,
    'stall_iterations': 50,
    'accept_stalled': False,
    'stall_residual': 1e-3,
    'armijo': 1e-4,
    'max_backtracks': 40,
    'perturbation': 0.2,
    'pin': True,
    'pin_width': 0.1,
    'pin_search_gtol': 1e-6,
    'pin_search_iter': 2000,
    'alternative_tol': 1e-4,
    }

CONVERGED = 'converged'
STALLED = 'stalled'
LINE_SEARCH_FAILED = 'line_search_failed'
MAX_ITER = 'max_iter'

ACTIVE_TOL = 1e-10


class BolzaProblem(object):
    """Fixed endpoints x1, x2 outside the ball of radius eps.

    Parameters
    ----------
    potential : HomogeneousPotential
    x1, x2 : array-like
        Endpoints with |x1|, |x2| >= eps.
    eps : float
        Obstacle radius.
    grid_size : int, optional
        Number of path segments N.
    restarts : int, optional
        Number of initial paths tried.

    """

    def __init__(self, potential, x1, x2, eps, grid_size=400, restarts=6):
        self.potential = potential
        self.x1 = numpy.array(x1, dtype=float)
        self.x2 = numpy.array(x2, dtype=float)
        self.eps = float(eps)
        self.grid_size = int(grid_size)
        self.restarts = int(restarts)
        if self.eps <= 0:
            raise ValueError("obstacle radius must be positive, got %r" % eps)
        if self.grid_size < 8:
            raise ValueError("grid_size must be at least 8, got %d"
                             % self.grid_size)
        for name, x in ('x1', self.x1), ('x2', self.x2):
            if x.shape != (potential.dim,):
                raise ValueError("%s must have dimension %d" % (name, potential.dim))
            if norm(x) < self.eps * (1.0 - 1e-12):
                raise InfeasibleEndpointsError(
                    "|%s| = %.9g lies inside the obstacle of radius %.9g"
                    % (name, norm(x), self.eps))
        if numpy.allclose(self.x1, self.x2, rtol=0, atol=1e-12 * self.eps):
            raise InfeasibleEndpointsError("endpoints coincide")

    @property
    def N(self):
        return self.grid_size

    @property
    def h(self):
        return 2.0 / self.grid_size

    def as_dict(self):
        return {'x1': list(self.x1), 'x2': list(self.x2), 'eps': self.eps,
                'grid_size': self.grid_size, 'restarts': self.restarts,
                'alpha': self.potential.alpha}

    def __repr__(self):
        return 'BolzaProblem(x1=%s, x2=%s, eps=%g, N=%d)' % (
            list(self.x1), list(self.x2), self.eps, self.grid_size)


def jump_tolerance(N):
    return max(1e-3, 5.0 * 2.0 / N)


def contact_tolerance(N):
    """Relative contact tolerance: contact when radius <= eps*(1 + tol)."""
    return 1e-6 + (2.0 / N) ** 2


class BolzaSolution(object):
    """Re-timed minimizer of a Bolza problem with its contact data.

    Attributes
    ----------
    path : DiscretePath
        Zero-energy path on [-T, T].
    action : float
        Lagrangian action of ``path``.
    t_star, t_star2 : float
        First and last contact time.
    delta_pos, delta_vel : float
        Normalized position and velocity jumps.
    kind : string
        PositionJumping, Parabolic or VelocityJumping.
    constraint_active : bool
        False when the inequality-constrained minimizer stayed off the
        sphere and a pinned node was needed.
    status : string
        How the descent ended: converged, stalled, line_search_failed or
        max_iter. Only ``converged`` meets the gtol N residual criterion.
    restart_actions, alternatives : list of float
        Actions of the candidate minimizers and those within
        ``alternative_tol`` of the best. Both are empty for a pinned
        solution, whose free candidates are kept in
        ``free_restart_actions``.

    """

    def __init__(self, problem, path, action, t_star, t_star2, contact_indices,
                 delta_pos, delta_vel, raw_delta_vel, jump_uncertainty, kind,
                 constraint_active=True, endpoint_contact=False, T=None,
                 iterations=0, residual=0.0, converged=True,
                 status=CONVERGED):
        self.problem = problem
        self.path = path
        self.action = float(action)
        self.t_star = float(t_star)
        self.t_star2 = float(t_star2)
        self.contact_indices = tuple(contact_indices)
        self.delta_pos = float(delta_pos)
        self.delta_vel = float(delta_vel)
        self.raw_delta_vel = float(raw_delta_vel)
        self.jump_uncertainty = float(jump_uncertainty)
        self.kind = kind
        self.constraint_active = bool(constraint_active)
        self.endpoint_contact = bool(endpoint_contact)
        self.T = T
        self.iterations = iterations
        self.residual = residual
        self.converged = converged
        self.status = status
        self.restart_actions = []
        self.alternatives = []
        self.free_restart_actions = []
        self.free_action = None
        self.free_min_radius = None

    @property
    def eps(self):
        return self.problem.eps

    @property
    def jump_tol(self):
        return jump_tolerance(self.problem.grid_size)

    @property
    def min_radius(self):
        return float(numpy.min(self.path.radii))

    def as_dict(self):
        data = {
            'action': self.action,
            't_star': self.t_star,
            't_star2': self.t_star2,
            'delta_pos': self.delta_pos,
            'delta_vel': self.delta_vel,
            'raw_delta_vel': self.raw_delta_vel,
            'jump_uncertainty': self.jump_uncertainty,
            'jump_tol': self.jump_tol,
            'kind': self.kind,
            'constraint_active': self.constraint_active,
            'endpoint_contact': self.endpoint_contact,
            'min_radius': self.min_radius,
            'iterations': self.iterations,
            'converged': self.converged,
            'status': self.status,
            'residual': self.residual,
            'restart_actions': list(self.restart_actions),
            'alternatives': list(self.alternatives),
            'free_restart_actions': list(self.free_restart_actions),
            'free_action': self.free_action,
            'free_min_radius': self.free_min_radius,
            'problem': self.problem.as_dict(),
            'residuals': solver_diagnostics(self),
            }
        return format_floats(data)

    def to_files(self, directory, basename='path', sidecar='solution.json'):
        """Write the path as CSV and the scalar data as a JSON sidecar."""
        self.path.to_csv(os.path.join(directory, basename + '.csv'))
        write_json(os.path.join(directory, sidecar), self.as_dict())

    def __repr__(self):
        return ('BolzaSolution(action=%.9g, kind=%s, delta_pos=%.3g, '
                'delta_vel=%.3g, constraint_active=%s)' % (
                    self.action, self.kind, self.delta_pos, self.delta_vel,
                    self.constraint_active))


def _split_budget(N, weights):
    """Distribute N segments over pieces proportionally to weights, at least
    2 segments for every nonzero piece."""
    weights = numpy.asarray(weights, dtype=float)
    active = weights > 1e-12
    counts = numpy.zeros(len(weights), dtype=int)
    counts[active] = 2
    spare = N - counts.sum()
    if spare < 0:
        raise ValueError("grid too small for %d pieces" % active.sum())
    share = weights / weights.sum() * spare
    counts += numpy.floor(share).astype(int)
    remainder = N - counts.sum()
    order = numpy.argsort(-(share - numpy.floor(share)))
    for i in order[:remainder]:
        counts[i] += 1
    return counts


def maupertuis_grid(problem, N=None):
    """Parameter grid on [-1, 1] and the double-homothetic reference path.

    The reference path runs radially from x1 down to the sphere, along the
    shortest great circle on the sphere, and radially out to x2. Radial legs
    are log-spaced in radius, the arc is uniform in angle, and parameter
    times follow the zero-energy timing of that path.

    Returns
    -------
    times : numpy.ndarray, shape (N+1,)
    nodes : numpy.ndarray, shape (N+1, d)

    """
    p = problem.potential
    N = problem.grid_size if N is None else N
    eps = problem.eps
    r1, r2 = norm(problem.x1), norm(problem.x2)
    s1, s2 = unit(problem.x1), unit(problem.x2)
    theta = angle_between(s1, s2)
    n1, na, n2 = _split_budget(N, [numpy.log(r1 / eps), theta,
                                   numpy.log(r2 / eps)])
    alpha = p.alpha
    q = (2.0 + alpha) / 2.0

    def leg_time(radii, s):
        gamma = float(p.angular.value(s))
        return (radii ** q - eps ** q) / (q * numpy.sqrt(2.0 * gamma))

    pieces, clocks = [], []
    if n1:
        radii = r1 * (eps / r1) ** (numpy.arange(n1 + 1) / float(n1))
        pieces.append(numpy.outer(radii, s1))
        tau = leg_time(radii, s1)
        clocks.append(tau[0] - tau)
    else:
        pieces.append(eps * s1[None, :])
        clocks.append(numpy.zeros(1))
    if na:
        arc = slerp(s1, s2, numpy.linspace(0.0, 1.0, na + 1))
        u = p.angular.value(arc)
        dtheta = theta / na
        dt = eps ** q * dtheta / numpy.sqrt(2.0 * 0.5 * (u[:-1] + u[1:]))
        pieces.append(eps * arc[1:])
        clocks.append(clocks[-1][-1] + numpy.cumsum(dt))
    if n2:
        radii = eps * (r2 / eps) ** (numpy.arange(1, n2 + 1) / float(n2))
        pieces.append(numpy.outer(radii, s2))
        clocks.append(clocks[-1][-1] + leg_time(radii, s2))
    nodes = numpy.concatenate(pieces)
    clock = numpy.concatenate(clocks)
    times = -1.0 + 2.0 * (clock - clock[0]) / (clock[-1] - clock[0])
    times[0], times[-1] = -1.0, 1.0
    nodes[0], nodes[-1] = problem.x1, problem.x2
    return times, nodes


def _great_circle_path(problem, times):
    f = 0.5 * (times + 1.0)
    r1, r2 = norm(problem.x1), norm(problem.x2)
    radii = numpy.maximum(problem.eps, (1.0 - f) * r1 + f * r2)
    nodes = radii[:, None] * slerp(problem.x1, problem.x2, f)
    nodes[0], nodes[-1] = problem.x1, problem.x2
    return nodes


def _project(nodes, eps, pin=None):
    r = norm(nodes[1:-1])
    low = r < eps
    if numpy.any(low):
        nodes[1:-1][low] *= (eps / r[low])[:, None]
    if pin is not None:
        nodes[pin] *= eps / norm(nodes[pin])
    return nodes


def initial_paths(problem, times, reference, count, seed=0, perturbation=0.2):
    """Initial node arrays for ``count`` restarts.

    Restart 0 is the double-homothetic reference, restart 1 the great-circle
    path; later restarts perturb those two alternately with smooth random
    sine bumps of relative size ``perturbation``.
    """
    great = _great_circle_path(problem, times)
    bases = [reference, great]
    f = 0.5 * (times + 1.0)
    scale = 0.5 * (norm(problem.x1) + norm(problem.x2))
    paths = []
    for k in range(count):
        base = bases[k % 2].copy()
        if k >= 2:
            random = RandomState(seed + k)
            modes = numpy.sin(numpy.pi * numpy.outer(f, numpy.arange(1, 4)))
            coeffs = random.randn(3, problem.potential.dim)
            base += perturbation * scale * modes.dot(coeffs)
            base[0], base[-1] = problem.x1, problem.x2
        paths.append(_project(base, problem.eps))
    return paths


class _RunResult(object):

    def __init__(self, nodes, value, residual, iterations, status, converged,
                 history, pin):
        self.nodes = nodes
        self.value = value
        self.residual = residual
        self.iterations = iterations
        self.status = status
        self.converged = converged
        self.history = history
        self.pin = pin


class MaupertuisSolver(object):
    """Projected, preconditioned descent on the discrete Maupertuis functional.

    Parameters
    ----------
    problem : BolzaProblem
    options
        Overrides for ``default_solver_options``.

    Attributes
    ----------
    times : numpy.ndarray
        Fixed parameter grid on [-1, 1].
    reference : numpy.ndarray
        Double-homothetic reference nodes on that grid.
    weights : numpy.ndarray
        Trapezoid weights of the grid.

    Notes
    -----
    The grid, the quadrature weights and the banded path Laplacian used as
    preconditioner are built once in the constructor. Call ``run`` with
    different initial paths (and optionally a pinned node index) as needed.

    Each iteration moves the interior nodes along D = (P L)^-1 G, where G is
    the gradient of J, P the potential integral and L the weighted path
    Laplacian, after removing radial components that would push active nodes
    into the obstacle. Step lengths come from the Barzilai-Borwein formula in
    the L metric and are safeguarded by monotone Armijo backtracking.

    """

    def __init__(self, problem, **options):
        self.problem = problem
        self.options = dict(default_solver_options)
        self.options.update(options)
        self.p = problem.potential
        self.eps = problem.eps
        self.times, self.reference = maupertuis_grid(problem)
        self.N = len(self.times) - 1
        self.dt = numpy.diff(self.times)
        w = numpy.zeros(self.N + 1)
        w[:-1] += 0.5 * self.dt
        w[1:] += 0.5 * self.dt
        self.weights = w
        n = self.N - 1
        ab = numpy.zeros((3, n))
        inv = 1.0 / self.dt
        ab[1] = inv[:-1] + inv[1:]
        ab[0, 1:] = -inv[1:-1]
        ab[2, :-1] = -inv[1:-1]
        self._laplacian = ab

    def _evaluate(self, nodes):
        dx = numpy.diff(nodes, axis=0)
        velocity = dx / self.dt[:, None]
        K = 0.5 * numpy.sum(dx * velocity)
        V = self.p.value(nodes)
        P = float(numpy.dot(self.weights, V))
        gV = self.p.gradient(nodes)
        gK = numpy.zeros_like(nodes)
        gK[1:-1] = velocity[:-1] - velocity[1:]
        G = P * gK + K * self.weights[:, None] * gV
        G[0] = G[-1] = 0.0
        scale = P * norm(gK) + K * self.weights * norm(gV)
        return K * P, K, P, G, scale

    def _laplacian_apply(self, S):
        inner = S[1:-1]
        ab = self._laplacian
        out = ab[1][:, None] * inner
        out[:-1] += ab[0, 1:][:, None] * inner[1:]
        out[1:] += ab[2, :-1][:, None] * inner[:-1]
        return out

    def _active(self, nodes, pin):
        active = numpy.zeros(len(nodes), dtype=bool)
        active[1:-1] = norm(nodes[1:-1]) <= self.eps * (1.0 + ACTIVE_TOL)
        if pin is not None:
            active[pin] = True
        return active

    def _restrict(self, vectors, nodes, active, pin, outward_only=True):
        """Remove radial components that point into the obstacle under a
        descent step -vectors."""
        out = vectors.copy()
        if not numpy.any(active):
            return out
        s = unit(nodes[active])
        radial = numpy.sum(out[active] * s, axis=1)
        drop = radial > 0 if outward_only else numpy.ones(len(radial), bool)
        if pin is not None:
            drop[numpy.flatnonzero(active).tolist().index(pin)] = True
        out[active] -= (numpy.where(drop, radial, 0.0))[:, None] * s
        return out

    def _direction(self, G, P, nodes, active, pin):
        Gf = self._restrict(G, nodes, active, pin)
        D = numpy.zeros_like(G)
        D[1:-1] = solve_banded((1, 1), self._laplacian, Gf[1:-1]) / P
        D = self._restrict(D, nodes, active, pin)
        if numpy.sum(Gf * D) <= 0:
            D = Gf
        return Gf, D

    def run(self, initial, pin=None, gtol=None, max_iter=None):
        """Minimize J from ``initial`` nodes; ``pin`` fixes that interior node
        to the sphere.

        The run is converged only when the relative projected residual falls
        below gtol N. Line-search failures and round-off stalls end the run
        with that status instead; with ``accept_stalled`` a stall whose
        residual is below ``stall_residual`` is accepted as well.
        """
        opts = self.options
        gtol = opts['gtol'] if gtol is None else gtol
        max_iter = opts['max_iter'] if max_iter is None else max_iter
        nodes = _project(numpy.array(initial, dtype=float), self.eps, pin)
        J, K, P, G, scale = self._evaluate(nodes)
        active = self._active(nodes, pin)
        Gf, D = self._direction(G, P, nodes, active, pin)
        step = 1.0
        history = [J]
        stall = 0
        status = MAX_ITER
        residual = numpy.inf
        target = gtol * self.N
        iteration = 0
        for iteration in range(1, max_iter + 1):
            residual = float(numpy.max(norm(Gf[1:-1]) /
                                       numpy.maximum(scale[1:-1], 1e-300)))
            if residual < target:
                status = CONVERGED
                break
            lam = step
            for _ in range(opts['max_backtracks']):
                trial = nodes.copy()
                trial[1:-1] -= lam * D[1:-1]
                _project(trial, self.eps, pin)
                J_new, K_new, P_new, G_new, scale_new = self._evaluate(trial)
                if J_new <= J - opts['armijo'] * numpy.sum(G * (nodes - trial)):
                    break
                lam *= 0.5
            else:
                logger.debug("line search failed at iteration %d, residual %g",
                             iteration, residual)
                status = LINE_SEARCH_FAILED
                break
            active_new = self._active(trial, pin)
            Gf_new, D_new = self._direction(G_new, P_new, trial, active_new, pin)
            S = trial - nodes
            sy = numpy.sum(S * (Gf_new - Gf))
            sms = P_new * numpy.sum(S[1:-1] * self._laplacian_apply(S))
            step = sms / sy if sy > 0 else 1.0
            step = min(max(step, 1e-6), 1e3)
            if abs(J - J_new) <= 1e-15 * abs(J):
                stall += 1
            else:
                stall = 0
            nodes, J, G, Gf, D, scale = trial, J_new, G_new, Gf_new, D_new, scale_new
            history.append(J)
            if stall >= opts['stall_iterations']:
                logger.debug("objective stalled at iteration %d, residual %g",
                             iteration, residual)
                status = STALLED
                break
        converged = status == CONVERGED or (
            status == STALLED and opts['accept_stalled'] and
            residual < opts['stall_residual'])
        logger.debug("run finished: J=%.12g residual=%.3g iterations=%d "
                     "status=%s pin=%s", J, residual, iteration, status, pin)
        return _RunResult(nodes, J, residual, iteration, status, converged,
                          history, pin)

    def finish(self, result, constraint_active=True):
        """Turn a run result into a re-timed BolzaSolution."""
        path = DiscretePath(self.times, result.nodes)
        T, path = recover_time(self.p, path)
        path = zero_energy_reparam(self.p, path)
        action = lagrangian_action(self.p, path).total
        i1, i2 = _contact_indices(path, self.eps, self.N)
        if i1 is None:
            t1 = t2 = numpy.nan
            dpos = dvel = raw = unc = 0.0
            endpoint = False
            kind = PARABOLIC
        else:
            t1, t2 = path.times[i1], path.times[i2]
            _check_monotone(path, i1, i2, self.eps, self.N)
            dpos, dvel, raw, unc, endpoint = _jumps(self.p, path, self.eps,
                                                    i1, i2)
            kind = _kind(dpos, dvel, jump_tolerance(self.N))
        sol = BolzaSolution(self.problem, path, action, t1, t2, (i1, i2),
                            dpos, dvel, raw, unc, kind,
                            constraint_active=constraint_active,
                            endpoint_contact=endpoint, T=T,
                            iterations=result.iterations,
                            residual=result.residual,
                            converged=result.converged,
                            status=result.status)
        return sol


def _contact_indices(path, eps, N):
    r = path.radii
    contact = numpy.flatnonzero(r <= eps * (1.0 + contact_tolerance(N)))
    if len(contact) == 0:
        return None, None
    return int(contact[0]), int(contact[-1])


def _check_monotone(path, i1, i2, eps, N):
    r = path.radii
    before = numpy.diff(r[:i1 + 1])
    after = numpy.diff(r[i2:])
    defect = max(numpy.max(before, initial=0.0), numpy.max(-after, initial=0.0))
    if defect > eps * contact_tolerance(N):
        warnings.warn("radius not monotone outside contact; worst defect %.3g"
                      % defect, MonotonicityViolationWarning)
    return defect


def _jumps(p, path, eps, i1, i2):
    r = path.radii
    s = path.directions
    t = path.times
    last = len(t) - 1
    dpos = float(norm(s[i2] - s[i1]))
    endpoint = i1 == 0 or i2 == last
    rdot_in = (r[i1] - r[i1 - 1]) / (t[i1] - t[i1 - 1]) if i1 > 0 else 0.0
    rdot_out = (r[i2 + 1] - r[i2]) / (t[i2 + 1] - t[i2]) if i2 < last else 0.0
    scale = eps ** (p.alpha / 2.0)
    raw = scale * (rdot_out - rdot_in)
    if raw < 0:
        logger.debug("negative raw velocity jump %.3g clamped to 0", raw)
    # grid-induced uncertainty: local step times the largest acceleration
    # away from the contact boundary
    v = path.velocities
    mid = 0.5 * (t[2:] - t[:-2])
    acc = norm((v[1:] - v[:-1]) / mid[:, None])
    keep = numpy.ones(len(acc), dtype=bool)
    for i in (i1, i2):
        if 1 <= i <= last - 1:
            keep[i - 1] = False
    acc_max = float(numpy.max(acc[keep], initial=0.0))
    h_local = max(t[min(i1 + 1, last)] - t[max(i1 - 1, 0)],
                  t[min(i2 + 1, last)] - t[max(i2 - 1, 0)]) / 2.0
    uncertainty = h_local * acc_max * scale
    return dpos, max(raw, 0.0), raw, uncertainty, endpoint


def _kind(dpos, dvel, tol):
    if dpos >= tol and dvel >= tol:
        warnings.warn("both jumps exceed %.3g (delta_pos=%.3g, delta_vel=%.3g)"
                      % (tol, dpos, dvel), JumpDichotomyWarning)
    if dpos >= tol:
        return POSITION_JUMPING
    if dvel >= tol:
        return VELOCITY_JUMPING
    return PARABOLIC


def detect_contact(path, eps, N=None):
    """First and last times at which the path lies on the sphere of radius eps.

    Raises NoContactError when no node is within the contact tolerance, and
    warns with MonotonicityViolationWarning when the radius is not monotone
    outside the contact interval.
    """
    N = path.N if N is None else N
    i1, i2 = _contact_indices(path, eps, N)
    if i1 is None:
        raise NoContactError("minimum radius %.9g exceeds eps %.9g"
                             % (numpy.min(path.radii), eps))
    _check_monotone(path, i1, i2, eps, N)
    return float(path.times[i1]), float(path.times[i2])


def compute_jumps(p, path, eps, contact):
    """Normalized jumps at a contact interval (t_star, t_star2).

    Returns
    -------
    delta_pos : float
        |s(t_star2) - s(t_star)|.
    delta_vel : float
        eps**(alpha/2) (r'(t_star2+) - r'(t_star-)), clamped at 0.
    uncertainty : float
        Grid step times the largest acceleration, in velocity-jump units.

    """
    i1, i2 = path.index_of(contact[0]), path.index_of(contact[1])
    dpos, dvel, raw, uncertainty, _ = _jumps(p, path, eps, i1, i2)
    return dpos, dvel, uncertainty


def _select(solutions):
    """Best solution by action, ties broken by smaller delta_vel then
    delta_pos."""
    best = min(s.action for s in solutions)
    tied = [s for s in solutions if s.action - best < 1e-9 * max(1.0, abs(best))]
    return min(tied, key=lambda s: (s.delta_vel, s.delta_pos))


def _warm_start(nodes, times, pin, eps, width):
    r = norm(nodes)
    s = unit(nodes)
    factor = 1.0 - numpy.exp(-((times - times[pin]) / width) ** 2)
    radii = eps + (r - eps) * factor
    out = radii[:, None] * s
    out[0], out[-1] = nodes[0], nodes[-1]
    return out


def _pinned_search(solver, free_nodes, opts):
    """Pattern search over pin indices around the closest approach of the
    free minimizer.

    Candidate pins are compared after a capped run at ``pin_search_gtol``;
    the best one is then solved again from its nodes at the full tolerance.
    """
    N = solver.N
    cache = {}

    def solve(k):
        if k not in cache:
            start = _warm_start(free_nodes, solver.times, k, solver.eps,
                                opts['pin_width'])
            result = solver.run(start, pin=k,
                                gtol=max(opts['gtol'], opts['pin_search_gtol']),
                                max_iter=min(opts['max_iter'],
                                             opts['pin_search_iter']))
            cache[k] = result
            logger.debug("pin %d: J=%.12g converged=%s", k, result.value,
                         result.converged)
        return cache[k].value

    k = int(numpy.argmin(norm(free_nodes[1:-1]))) + 1
    step = max(1, N // 16)
    value = solve(k)
    while step >= 1:
        moved = False
        for candidate in (k - step, k + step):
            if 1 <= candidate <= N - 1 and solve(candidate) < value:
                k, value = candidate, cache[candidate].value
                moved = True
                break
        if not moved:
            step //= 2
    logger.info("pinned search: best pin %d of %d after %d solves", k, N,
                len(cache))
    return solver.run(cache[k].nodes, pin=k), cache


def minimize_bolza(problem, **options):
    """Solve the obstacle-constrained Bolza problem.

    Parameters
    ----------
    problem : BolzaProblem
    options
        Overrides for ``default_solver_options``.

    Returns
    -------
    BolzaSolution
        Best solution over restarts, with ``restart_actions`` and the
        ``alternatives`` (actions within ``alternative_tol`` of the best).
        When the free minimizer misses the sphere the pinned solution is
        returned; its free candidates go to ``free_restart_actions``.

    Raises NoConvergenceError when no restart, or the final pinned solve,
    meets the gtol N residual criterion.
    """
    opts = dict(default_solver_options)
    opts.update(options)
    check_alpha(problem.potential.alpha)
    restarts = problem.restarts if opts['restarts'] is None else opts['restarts']
    solver = MaupertuisSolver(problem, **opts)
    starts = initial_paths(problem, solver.times, solver.reference,
                           max(1, restarts), seed=opts['seed'],
                           perturbation=opts['perturbation'])
    if opts['workers'] > 1:
        with ThreadPoolExecutor(max_workers=opts['workers']) as pool:
            results = list(pool.map(solver.run, starts))
    else:
        results = [solver.run(start) for start in starts]
    finished = [r for r in results if r.converged]
    logger.info("restart objectives: %s",
                ', '.join('%.9g%s' % (r.value, '' if r.converged else '*')
                          for r in results))
    if not finished:
        raise NoConvergenceError(
            "no restart reached residual %.3g; %s"
            % (opts['gtol'] * solver.N,
               ', '.join('%s at %.3g' % (r.status, r.residual)
                         for r in results)))
    solutions = [solver.finish(r) for r in finished]
    best = _select(solutions)
    if numpy.isnan(best.t_star) and opts['pin']:
        free_action, free_radius = best.action, best.min_radius
        free_nodes = finished[solutions.index(best)].nodes
        logger.info("free minimizer stays off the sphere (min radius %.6g > "
                    "eps %.6g); pinning", free_radius, problem.eps)
        result, cache = _pinned_search(solver, free_nodes, opts)
        if not result.converged:
            raise NoConvergenceError("pinned solve did not converge (%s); "
                                     "residual %.3g" % (result.status,
                                                        result.residual))
        best = solver.finish(result, constraint_active=False)
        best.free_action = free_action
        best.free_min_radius = free_radius
        # free candidates miss the sphere and are not minimizers here
        best.free_restart_actions = [s.action for s in solutions]
    else:
        best.restart_actions = [s.action for s in solutions]
        best.alternatives = [a for a in sorted(best.restart_actions)
                             if 0 < a - best.action <= opts['alternative_tol']]
    logger.info("m = %.9g (%s, delta_pos=%.4g, delta_vel=%.4g)", best.action,
                best.kind, best.delta_pos, best.delta_vel)
    return best


def kelvin_transform(x):
    """Inversion x / |x|**2 in the unit sphere."""
    x = numpy.asarray(x, dtype=float)
    r2 = numpy.sum(x * x, axis=-1)
    if numpy.any(r2 < 1e-28):
        raise ZeroRadiusError("Kelvin transform undefined at the origin")
    return x / numpy.expand_dims(r2, -1)


def kelvin_jacobian(x):
    """Derivative of the Kelvin transform, (I - 2 x x^T/|x|**2)/|x|**2."""
    x = numpy.asarray(x, dtype=float)
    r2 = float(numpy.dot(x, x))
    if r2 < 1e-28:
        raise ZeroRadiusError("Kelvin transform undefined at the origin")
    return (numpy.eye(len(x)) - 2.0 * numpy.outer(x, x) / r2) / r2


def rescale_solution(sol, R):
    """Space-time rescaling z(t) = R x(R**(-(2+alpha)/2) t).

    The result solves the problem with endpoints R x1, R x2 and obstacle
    R eps; the action scales by R**alpha_star and the jumps are unchanged.
    """
    if R <= 0:
        raise ValueError("scale factor must be positive, got %r" % R)
    p = sol.problem.potential
    tscale = R ** ((2.0 + p.alpha) / 2.0)
    problem = BolzaProblem.__new__(BolzaProblem)
    problem.__dict__.update(sol.problem.__dict__)
    problem.x1 = sol.problem.x1 * R
    problem.x2 = sol.problem.x2 * R
    problem.eps = sol.problem.eps * R
    new = BolzaSolution(problem, sol.path.scaled(R, tscale),
                        sol.action * R ** p.alpha_star,
                        sol.t_star * tscale, sol.t_star2 * tscale,
                        sol.contact_indices, sol.delta_pos, sol.delta_vel,
                        sol.raw_delta_vel, sol.jump_uncertainty, sol.kind,
                        constraint_active=sol.constraint_active,
                        endpoint_contact=sol.endpoint_contact,
                        T=None if sol.T is None else sol.T * tscale,
                        iterations=sol.iterations, residual=sol.residual,
                        converged=sol.converged, status=sol.status)
    factor = R ** p.alpha_star
    new.restart_actions = [a * factor for a in sol.restart_actions]
    new.alternatives = [a * factor for a in sol.alternatives]
    new.free_restart_actions = [a * factor for a in sol.free_restart_actions]
    if sol.free_action is not None:
        new.free_action = sol.free_action * factor
        new.free_min_radius = sol.free_min_radius * R
    return new


class RegularityReport(object):
    """Contact regularity of a solution seen through the Kelvin fold.

    ``folded_defect`` is the relative velocity jump of the folded path at
    t_star. ``tangential_defect`` and ``radial_defect`` compare the one-sided
    velocities at a single contact time; ``tangency_defects`` are the relative
    radial velocities at the ends of a contact arc.
    """

    def __init__(self, kind, folded_defect, tangential_defect, radial_defect,
                 tangency_defects, tol):
        self.kind = kind
        self.folded_defect = folded_defect
        self.tangential_defect = tangential_defect
        self.radial_defect = radial_defect
        self.tangency_defects = tangency_defects
        self.tol = tol

    @property
    def consistent(self):
        def small(v):
            return v is None or v < self.tol
        if self.kind == VELOCITY_JUMPING:
            return small(self.tangential_defect) and small(self.radial_defect)
        if self.kind == POSITION_JUMPING:
            return all(small(v) for v in self.tangency_defects)
        return small(self.folded_defect)

    def as_dict(self):
        return format_floats({
            'kind': self.kind, 'folded_defect': self.folded_defect,
            'tangential_defect': self.tangential_defect,
            'radial_defect': self.radial_defect,
            'tangency_defects': list(self.tangency_defects),
            'consistent': self.consistent})

    def __repr__(self):
        return 'RegularityReport(kind=%s, folded=%s, consistent=%s)' % (
            self.kind, self.folded_defect, self.consistent)


def _side_velocity(times, nodes, index, side):
    last = len(times) - 1
    if not 0 <= index + side <= last:
        return None
    return numpy.array([one_sided_derivative(times, nodes[:, j], index, side)
                        for j in range(nodes.shape[1])])


def kelvin_regularity_check(sol, tol=1e-2):
    """Fold the solution with the Kelvin transform at the first contact and
    check C1 continuity of the folded path and the case-specific regularity
    at the contact."""
    if numpy.isnan(sol.t_star):
        raise NoContactError("solution has no contact interval")
    unitsol = rescale_solution(sol, 1.0 / sol.eps)
    path = unitsol.path
    t, x = path.times, path.nodes
    i1, i2 = unitsol.contact_indices
    folded = x.copy()
    folded[i1:] = kelvin_transform(x[i1:])
    v_in = _side_velocity(t, folded, i1, -1)
    v_out = _side_velocity(t, folded, i1, +1)
    folded_defect = None
    if v_in is not None and v_out is not None:
        folded_defect = float(norm(v_out - v_in) / norm(v_in))
    tangential = radial = None
    a = _side_velocity(t, x, i1, -1)
    b = _side_velocity(t, x, i2, +1)
    if a is not None and b is not None:
        speed = norm(a)
        s1, s2 = x[i1], x[i2]
        ra, rb = numpy.dot(a, s1), numpy.dot(b, s2)
        if i1 == i2:
            tangential = float(norm((a - ra * s1) - (b - rb * s1)) / speed)
        radial = float(abs(ra + rb) / speed)
    tangency = []
    for v, s in (a, x[i1]), (b, x[i2]):
        if v is not None:
            tangency.append(float(abs(numpy.dot(v, s)) / norm(v)))
    return RegularityReport(sol.kind, folded_defect, tangential, radial,
                            tangency, tol)


def _free_nodes(sol):
    """Mask over interior nodes 1..N-1 whose Euler-Lagrange equation is the
    free one: off the contact interval and not next to it."""
    idx = numpy.arange(1, len(sol.path.times) - 1)
    i1, i2 = sol.contact_indices
    if i1 is None:
        return numpy.ones(len(idx), dtype=bool)
    return (idx < i1 - 1) | (idx > i2 + 1)


def solver_diagnostics(sol):
    """Residuals of the re-timed minimizer.

    Returns a dict with the maximal nodal energy residual, the Lagrange-Jacobi
    residual d2(r**2)/dt2 vs 2(2-alpha)V and the Euler-Lagrange residual,
    both over the free nodes only (``free_nodes`` of them; contact nodes and
    their neighbours are left out), the constrained Euler-Lagrange residual
    on the contact arc and the minimum radius.
    """
    p = sol.problem.potential
    path = sol.path
    t, x = path.times, path.nodes
    v = path.velocities
    mid = 0.5 * (t[2:] - t[:-2])
    acc = (v[1:] - v[:-1]) / mid[:, None]
    inner = x[1:-1]
    V = p.value(inner)
    gV = p.gradient(inner)
    node_speed2 = numpy.sum((0.5 * (v[1:] + v[:-1])) ** 2, axis=1)
    energy = numpy.abs(0.5 * node_speed2 - V) / V
    r2 = numpy.sum(x * x, axis=1)
    h0, h1 = t[1:-1] - t[:-2], t[2:] - t[1:-1]
    d2 = 2.0 * ((r2[2:] - r2[1:-1]) / h1 - (r2[1:-1] - r2[:-2]) / h0) / (h0 + h1)
    lj = numpy.abs(d2 - 2.0 * (2.0 - p.alpha) * V) / (2.0 * (2.0 - p.alpha) * V)
    el = norm(acc - gV) / norm(gV)
    off = _free_nodes(sol)
    idx = numpy.arange(1, len(t) - 1)
    i1, i2 = sol.contact_indices
    on = numpy.zeros(len(idx), dtype=bool)
    if i1 is not None:
        on = (idx > i1) & (idx < i2)
    result = {
        'energy': float(numpy.max(energy)),
        'segment_energy': float(numpy.max(energy_residual(p, path))),
        'lagrange_jacobi': float(numpy.max(lj[off], initial=0.0)),
        'lagrange_jacobi_median': float(numpy.median(lj[off])) if numpy.any(off) else 0.0,
        'euler_lagrange': float(numpy.max(el[off], initial=0.0)),
        'free_nodes': int(numpy.count_nonzero(off)),
        'min_radius': float(numpy.min(path.radii)),
        }
    constrained = 0.0
    if numpy.any(on):
        xs = inner[on]
        s = unit(xs)
        g = gV[on]
        tangential = g - numpy.sum(g * s, axis=1)[:, None] * s
        speed2 = node_speed2[on]
        eps = sol.eps
        rhs = tangential - (speed2 / eps ** 2)[:, None] * xs
        constrained = float(numpy.max(norm(acc[on] - rhs) / norm(rhs)))
    result['constrained_euler_lagrange'] = constrained
    return result
