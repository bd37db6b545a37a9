"""Morse minimizers, potential-level jumps and the In/Out classification.

Constrained Morse minimizers are approximated by Bolza solutions whose
endpoints R xi-, R xi+ recede to infinity along the marked minima. Their
jumps do not depend on R or eps in the limit and define the jumps of the
potential. The renormalized level gamma(V, eps) = (m(V, eps) - m(V, 0)) /
eps**alpha_star is nondecreasing in eps; the sign of its limit at 0 and the
velocity jump give two independent In/Out verdicts.
"""

import logging
import warnings

import numpy

from anisokep.core import (norm, unit, check_alpha, NotStabilizedError,
                           BadBracketError, EnergyDriftError,
                           InconsistentClassificationWarning)
from anisokep.potential import HomogeneousPotential
from anisokep.action import homothetic_action
from anisokep.bolza import BolzaProblem, minimize_bolza, jump_tolerance
from anisokep.integrate import RK4Solver, Event
from anisokep.util import format_floats

__all__ = ['default_classify_options', 'MorseApproximation',
           'PotentialClassification', 'AlphaBarResult', 'TailTrajectory',
           'DiagnosticsReport', 'solve_level', 'm_of_eps', 'm_zero', 'gamma',
           'gamma_curve', 'gamma_zero_plus', 'jumps_of_potential', 'classify',
           'find_alpha_bar', 'integrate_tail', 'radial_launch',
           'asymptotic_diagnostics', 'alpha_slope_audit', 'jump_stability',
           'IN', 'OUT', 'PI_CANDIDATE']

logger = logging.getLogger(__name__)

IN = 'In'
OUT = 'Out'
PI_CANDIDATE = 'Pi_candidate'

default_classify_options = {
    'eps_schedule': [0.4 * 2.0 ** -k for k in range(5)],
    'jump_eps': 0.2,
    'radii': (5.0, 10.0, 20.0, 40.0),
    'solver_tol': 1e-3,
    'grid_size': 400,
    'restarts': 6,
    }


def _split(options):
    """Separate classification settings from Bolza solver overrides."""
    opts = dict(default_classify_options)
    solver = {}
    for key, value in options.items():
        if key in opts:
            opts[key] = value
        else:
            solver[key] = value
    return opts, solver


def solve_level(p, eps, grid_size=400, restarts=6, **solver_options):
    """Bolza solution between the unit vectors xi- and xi+ with obstacle eps."""
    if not 0.0 < eps <= 1.0:
        raise ValueError("eps must lie in (0, 1], got %r" % (eps,))
    problem = BolzaProblem(p, p.xi_minus, p.xi_plus, eps, grid_size=grid_size,
                           restarts=restarts)
    return minimize_bolza(problem, **solver_options)


def m_of_eps(p, eps, **options):
    """Constrained level m(V, eps) between the marked minima."""
    sol = solve_level(p, eps, **options)
    logger.info("m(V, %.4g) = %.9g", eps, sol.action)
    return sol.action


def m_zero(p):
    """Level of the double-homothetic collision path, (2/alpha_star)
    sqrt(2 V_min)."""
    return 2.0 * homothetic_action(0.0, 1.0, p.v_min, p.alpha)


def gamma(p, eps, **options):
    """Renormalized excess level (m(V, eps) - m(V, 0)) / eps**alpha_star."""
    return (m_of_eps(p, eps, **options) - m_zero(p)) / eps ** p.alpha_star


def gamma_curve(p, eps_schedule, **options):
    """gamma along a schedule; returns a list of (eps, gamma, solution)."""
    m0 = m_zero(p)
    curve = []
    for eps in eps_schedule:
        sol = solve_level(p, eps, **options)
        g = (sol.action - m0) / eps ** p.alpha_star
        logger.info("gamma(V, %.4g) = %.6g", eps, g)
        curve.append((float(eps), float(g), sol))
    return curve


def _check_schedule(eps_schedule):
    eps_schedule = [float(e) for e in eps_schedule]
    if len(eps_schedule) < 3:
        raise ValueError("eps_schedule needs at least 3 values, got %d"
                         % len(eps_schedule))
    if numpy.any(numpy.diff(eps_schedule) >= 0):
        raise ValueError("eps_schedule must be strictly decreasing")
    return eps_schedule


def gamma_zero_plus(p, eps_schedule=None, **options):
    """Upper estimate of gamma(V, 0+) and its one-sided uncertainty.

    Since gamma is nondecreasing in eps, the value at the smallest eps
    bounds the limit from above; the uncertainty is the drop from the
    previous schedule entry.
    """
    if eps_schedule is None:
        eps_schedule = default_classify_options['eps_schedule']
    eps_schedule = _check_schedule(eps_schedule)
    curve = gamma_curve(p, eps_schedule, **options)
    value = curve[-1][1]
    uncertainty = abs(curve[-2][1] - value)
    return value, uncertainty


class MorseApproximation(object):
    """Bolza solutions with receding endpoints R xi-, R xi+ at fixed eps.

    Attributes
    ----------
    radii : list of float
    solutions : list of BolzaSolution
    delta_pos_seq, delta_vel_seq : numpy.ndarray
    converged : bool
        Both jump sequences moved less than jump_tol between the last two
        radii.
    stabilization : (float, float)
        Last changes of the position and velocity jump sequences.

    """

    def __init__(self, eps, radii, solutions):
        self.eps = float(eps)
        self.radii = [float(R) for R in radii]
        self.solutions = list(solutions)
        self.delta_pos_seq = numpy.array([s.delta_pos for s in solutions])
        self.delta_vel_seq = numpy.array([s.delta_vel for s in solutions])
        self.jump_tol = max(s.jump_tol for s in solutions)
        self.stabilization = (
            float(abs(self.delta_pos_seq[-1] - self.delta_pos_seq[-2])),
            float(abs(self.delta_vel_seq[-1] - self.delta_vel_seq[-2])))
        self.converged = max(self.stabilization) < self.jump_tol

    @property
    def delta_pos(self):
        return float(self.delta_pos_seq[-1])

    @property
    def delta_vel(self):
        return float(self.delta_vel_seq[-1])

    def rows(self):
        """(R, delta_pos, delta_vel, action) per radius."""
        return [(R, s.delta_pos, s.delta_vel, s.action)
                for R, s in zip(self.radii, self.solutions)]

    def as_dict(self):
        return format_floats({
            'eps': self.eps, 'radii': self.radii,
            'delta_pos_seq': self.delta_pos_seq,
            'delta_vel_seq': self.delta_vel_seq,
            'kinds': [s.kind for s in self.solutions],
            'jump_tol': self.jump_tol, 'converged': self.converged,
            'stabilization': list(self.stabilization)})

    def __repr__(self):
        return 'MorseApproximation(eps=%g, radii=%s, converged=%s)' % (
            self.eps, self.radii, self.converged)


def jumps_of_potential(p, eps=None, radii=None, **options):
    """Jumps of the potential from Bolza solutions with receding endpoints.

    Returns
    -------
    delta_pos_V, delta_vel_V : float
        Jumps at the largest radius.
    approximation : MorseApproximation

    Raises NotStabilizedError when the last two radii disagree by more than
    5 jump_tol.
    """
    opts, solver = _split(options)
    eps = opts['jump_eps'] if eps is None else eps
    radii = opts['radii'] if radii is None else radii
    radii = [float(R) for R in radii]
    if len(radii) < 3 or numpy.any(numpy.diff(radii) <= 0):
        raise ValueError("radii must be increasing with at least 3 values")
    solutions = []
    for R in radii:
        problem = BolzaProblem(p, R * p.xi_minus, R * p.xi_plus, eps,
                               grid_size=opts['grid_size'],
                               restarts=opts['restarts'])
        sol = minimize_bolza(problem, **solver)
        logger.info("R=%g: delta_pos=%.4g delta_vel=%.4g (%s)", R,
                    sol.delta_pos, sol.delta_vel, sol.kind)
        solutions.append(sol)
    approx = MorseApproximation(eps, radii, solutions)
    if max(approx.stabilization) > 5.0 * approx.jump_tol:
        raise NotStabilizedError(
            "jumps moved by %.3g, %.3g between R=%g and R=%g"
            % (approx.stabilization + tuple(radii[-2:])), approx)
    if not approx.converged:
        logger.warning("jump sequences not settled within %.3g: %s",
                       approx.jump_tol, approx.stabilization)
    return approx.delta_pos, approx.delta_vel, approx


class PotentialClassification(object):
    """In/Out/Pi_candidate verdict with the data supporting it."""

    def __init__(self, delta_pos_V, delta_vel_V, gamma_curve, gamma_zero_plus,
                 gamma_uncertainty, verdict, inconsistent, c_V, m_zero,
                 dichotomy_case, min_radius, jump_tol, tol, approximation):
        self.delta_pos_V = delta_pos_V
        self.delta_vel_V = delta_vel_V
        self.gamma_curve = gamma_curve
        self.gamma_zero_plus = gamma_zero_plus
        self.gamma_uncertainty = gamma_uncertainty
        self.verdict = verdict
        self.inconsistent = inconsistent
        self.c_V = c_V
        self.m_zero = m_zero
        self.dichotomy_case = dichotomy_case
        self.min_radius = min_radius
        self.jump_tol = jump_tol
        self.tol = tol
        self.approximation = approximation

    def as_dict(self):
        return format_floats({
            'delta_pos_V': self.delta_pos_V, 'delta_vel_V': self.delta_vel_V,
            'gamma_curve': [list(g) for g in self.gamma_curve],
            'gamma_zero_plus': self.gamma_zero_plus,
            'gamma_uncertainty': self.gamma_uncertainty,
            'verdict': self.verdict, 'inconsistent': self.inconsistent,
            'c_V': self.c_V, 'm_zero': self.m_zero,
            'dichotomy_case': self.dichotomy_case,
            'min_radius': self.min_radius, 'jump_tol': self.jump_tol,
            'tol': self.tol})

    def __repr__(self):
        return ('PotentialClassification(verdict=%s, gamma0+=%.4g, '
                'delta_vel=%.4g, case=%d)' % (self.verdict,
                                              self.gamma_zero_plus,
                                              self.delta_vel_V,
                                              self.dichotomy_case))


def _verdict(value, uncertainty, dpos, dvel, tol, jump_tol):
    if value - uncertainty > tol:
        sign = 1
    elif value < -tol:
        sign = -1
    else:
        sign = 0
    if sign < 0 and dvel > jump_tol:
        return OUT, False
    if sign > 0 and dvel < jump_tol:
        return IN, False
    if sign == 0 and dpos < jump_tol and dvel < jump_tol:
        return PI_CANDIDATE, False
    verdict = OUT if dvel > jump_tol else IN
    warnings.warn("gamma(V, 0+) = %.4g +/- %.2g disagrees with delta_vel = "
                  "%.4g; reporting %s" % (value, uncertainty, dvel, verdict),
                  InconsistentClassificationWarning)
    return verdict, True


def classify(p, **options):
    """Classify a potential as In, Out or Pi_candidate.

    Parameters
    ----------
    p : HomogeneousPotential
    options
        Overrides for ``default_classify_options``; remaining keys go to the
        Bolza solver.

    Returns
    -------
    PotentialClassification

    """
    opts, solver = _split(options)
    schedule = _check_schedule(opts['eps_schedule'])
    level = dict(solver, grid_size=opts['grid_size'],
                 restarts=opts['restarts'])
    curve = gamma_curve(p, schedule, **level)
    value = curve[-1][1]
    uncertainty = abs(curve[-2][1] - value)
    dpos, dvel, approx = jumps_of_potential(p, **options)
    tol = opts['solver_tol']
    verdict, inconsistent = _verdict(value, uncertainty, dpos, dvel, tol,
                                     approx.jump_tol)
    m0 = m_zero(p)
    levels = [(sol.action, sol.min_radius) for _, _, sol in curve]
    levels += [(sol.free_action, sol.free_min_radius) for _, _, sol in curve
               if sol.free_action is not None]
    c_V, radius = min(levels)
    if c_V >= m0:
        c_V, radius = m0, 0.0
    case = 2 if c_V < m0 - tol else 1
    logger.info("verdict %s: gamma(0+) = %.6g +/- %.2g, delta_pos = %.4g, "
                "delta_vel = %.4g, c(V) = %.9g (case %d)", verdict, value,
                uncertainty, dpos, dvel, c_V, case)
    return PotentialClassification(dpos, dvel,
                                   [(e, g) for e, g, _ in curve], value,
                                   uncertainty, verdict, inconsistent, c_V, m0,
                                   case, radius, approx.jump_tol, tol, approx)


class AlphaBarResult(object):
    """Bisection result for the critical exponent."""

    def __init__(self, alpha_bar, bracket, history, gamma_check):
        self.alpha_bar = alpha_bar
        self.bracket = tuple(bracket)
        self.history = history
        self.gamma_check = gamma_check

    @property
    def width(self):
        return self.bracket[1] - self.bracket[0]

    def as_dict(self):
        return format_floats({
            'alpha_bar': self.alpha_bar, 'bracket': list(self.bracket),
            'width': self.width,
            'history': [dict(h) for h in self.history],
            'gamma_check': self.gamma_check})

    def __repr__(self):
        return 'AlphaBarResult(alpha_bar=%.4g, bracket=(%.4g, %.4g))' % (
            (self.alpha_bar,) + self.bracket)


def find_alpha_bar(U, alpha_bracket, width=1e-2, cross_check_eps=0.2,
                   **options):
    """Bisect on alpha for the exponent separating In from Out.

    Each bisection step classifies by the velocity jump of the potential (Out when
    delta_vel > jump_tol). The bracket endpoints must be In and Out
    respectively.

    The gamma values at the final bracket ends are then computed at
    ``cross_check_eps``. The lower end is In, so its gamma must be
    nonnegative, and gamma decreases in alpha; a failure of either check
    gives an InconsistentClassificationWarning and ``consistent`` False in
    ``gamma_check``. Pass None to skip the two extra solves.
    """
    lo, hi = [check_alpha(a) for a in alpha_bracket]
    if not lo < hi:
        raise ValueError("alpha bracket must be increasing, got %r"
                         % (alpha_bracket,))
    history = []

    def verdict_at(alpha):
        p = HomogeneousPotential(U, alpha)
        dpos, dvel, approx = jumps_of_potential(p, **options)
        verdict = OUT if dvel > approx.jump_tol else IN
        history.append({'alpha': alpha, 'delta_pos': dpos,
                        'delta_vel': dvel, 'verdict': verdict})
        logger.info("alpha=%.6g: delta_vel=%.4g -> %s", alpha, dvel, verdict)
        return verdict

    if verdict_at(lo) != IN:
        raise BadBracketError("lower end alpha=%g is not In" % lo)
    if verdict_at(hi) != OUT:
        raise BadBracketError("upper end alpha=%g is not Out" % hi)
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if verdict_at(mid) == OUT:
            hi = mid
        else:
            lo = mid
    gamma_check = None
    if cross_check_eps is not None:
        opts, solver = _split(options)
        level = dict(solver, grid_size=opts['grid_size'],
                     restarts=opts['restarts'])
        g_lo = gamma(HomogeneousPotential(U, lo), cross_check_eps, **level)
        g_hi = gamma(HomogeneousPotential(U, hi), cross_check_eps, **level)
        slack = opts['solver_tol']
        consistent = g_lo > -slack and g_hi < g_lo + slack
        if not consistent:
            warnings.warn("gamma at eps=%g is %.4g at alpha=%g and %.4g at "
                          "alpha=%g" % (cross_check_eps, g_lo, lo, g_hi, hi),
                          InconsistentClassificationWarning)
        gamma_check = {'eps': cross_check_eps, 'gamma_lo': g_lo,
                       'gamma_hi': g_hi, 'consistent': consistent}
    return AlphaBarResult(0.5 * (lo + hi), (lo, hi), history, gamma_check)


class TailTrajectory(object):
    """Samples of a zero-energy trajectory: times t, positions x,
    velocities v."""

    def __init__(self, t, x, v, energy_drift):
        self.t = t
        self.x = x
        self.v = v
        self.energy_drift = energy_drift

    @property
    def r(self):
        return norm(self.x)

    def __repr__(self):
        return 'TailTrajectory(n=%d, t_end=%g, drift=%.2g)' % (
            len(self.t), self.t[-1], self.energy_drift)


def integrate_tail(p, x0, v0, horizon, step=1e-3, drift_tol=1e-6, t0=0.0):
    """Integrate x'' = grad V(x) up to physical time ``horizon``.

    The integration runs in the regularized time ds = dt / r**(1 + alpha/2)
    with fixed-step RK4, carrying the physical time as a state. The energy
    1/2 |v|**2 - V(x) is monitored relative to V.
    """
    x0 = numpy.asarray(x0, dtype=float)
    v0 = numpy.asarray(v0, dtype=float)
    d = len(x0)
    q = 1.0 + p.alpha / 2.0

    def rhs(s, y):
        x, v = y[:d], y[d:2 * d]
        rq = norm(x) ** q
        return numpy.concatenate([rq * v, rq * p.gradient(x), [rq]])

    y0 = numpy.concatenate([x0, v0, [t0]])
    stop = Event('ReachedHorizon', lambda s, y: y[-1] - horizon, direction=1)
    # t grows at least like exp(c s); the s-range only needs to be generous
    s_max = 200.0 * (1.0 + numpy.log1p(horizon))
    result = RK4Solver(rhs, events=[stop], step=step).run(y0, 0.0, s_max)
    y = result.y
    t, x, v = y[:, -1], y[:, :d], y[:, d:2 * d]
    V = p.value(x)
    drift = float(numpy.max(numpy.abs(0.5 * numpy.sum(v * v, axis=1) - V) / V))
    initial = abs(0.5 * numpy.dot(v0, v0) - p.value(x0)) / p.value(x0)
    if drift - initial > drift_tol:
        raise EnergyDriftError("relative energy drift %.3g exceeds %.1g"
                               % (drift, drift_tol))
    return TailTrajectory(t, x, v, drift)


def radial_launch(p, xi, r0, horizon, **options):
    """Zero-energy homothetic motion leaving r0*xi outwards."""
    xi = unit(xi)
    x0 = r0 * xi
    v0 = numpy.sqrt(2.0 * p.value(x0)) * xi
    return integrate_tail(p, x0, v0, horizon, **options)


class DiagnosticsReport(object):
    """Asymptotic checks on the last decade of a tail trajectory."""

    def __init__(self, **fields):
        self.__dict__.update(fields)
        self._fields = sorted(fields)

    def as_dict(self):
        return format_floats(dict((k, getattr(self, k)) for k in self._fields))

    def __repr__(self):
        return 'DiagnosticsReport(%s)' % ', '.join(
            '%s=%r' % (k, getattr(self, k)) for k in self._fields)


def asymptotic_diagnostics(p, tail, xi=None):
    """Compare the growth of a tail with the parabolic asymptotics.

    Reports the fitted exponent of r(t) against 2/(2+alpha), the limit of
    r**(alpha/2) r' against sqrt(2 gamma) with gamma the angular potential at
    the final direction, the decay of r**alpha_star |s - xi| and the ratio
    r**((2+alpha)/2) / t against K = (alpha+2)/2 sqrt(2 gamma), all over the
    last decade of t.
    """
    t, x, v = tail.t, tail.x, tail.v
    r = norm(x)
    s = unit(x)
    alpha = p.alpha
    q = (2.0 + alpha) / 2.0
    window = t >= t[-1] / 10.0
    window &= t > 0
    if numpy.count_nonzero(window) < 3:
        raise ValueError("tail too short for a decade window")
    slope = numpy.polyfit(numpy.log(t[window]), numpy.log(r[window]), 1)[0]
    g = float(p.angular.value(s[-1]))
    K = q * numpy.sqrt(2.0 * g)
    rdot = numpy.sum(v * s, axis=1)
    if xi is None:
        candidates = [p.xi_minus, p.xi_plus]
        xi = min(candidates, key=lambda c: norm(s[-1] - c))
    decay = r ** p.alpha_star * norm(s - xi)
    tw = t[window]
    decay_w = decay[window]
    ratio = r[window] ** q / tw
    return DiagnosticsReport(
        exponent=float(slope), expected_exponent=2.0 / (2.0 + alpha),
        radial_momentum=float(r[-1] ** (alpha / 2.0) * rdot[-1]),
        expected_radial_momentum=float(numpy.sqrt(2.0 * g)),
        K=float(K), K_ratio=float(r[-1] / (K * t[-1]) ** (1.0 / q)),
        decay_start=float(decay_w[0]), decay_end=float(decay_w[-1]),
        decay_decreasing=bool(decay_w[-1] < decay_w[0]),
        growth_ratio=float(ratio[-1]),
        growth_ratio_change=float(abs(ratio[-1] - ratio[0]) / ratio[-1]),
        t_end=float(t[-1]), energy_drift=tail.energy_drift)


def alpha_slope_audit(U, alphas, eps, **options):
    """Check that gamma(V_alpha, eps) decreases in alpha at least at the rate

        gamma(alpha2) - gamma(alpha1) <= -4 sqrt(2 V_min)/(2 - alpha1)**2
                                          (alpha2 - alpha1) + 3 solver_tol

    for consecutive exponents. Returns one dict per pair.
    """
    opts, solver = _split(options)
    level = dict(solver, grid_size=opts['grid_size'], restarts=opts['restarts'])
    alphas = sorted(check_alpha(a) for a in alphas)
    values = [gamma(HomogeneousPotential(U, a), eps, **level) for a in alphas]
    slack = 3.0 * opts['solver_tol']
    report = []
    for (a1, g1), (a2, g2) in zip(zip(alphas, values), zip(alphas[1:], values[1:])):
        bound = -4.0 * numpy.sqrt(2.0 * U.v_min) / (2.0 - a1) ** 2 * (a2 - a1)
        report.append({'alpha1': a1, 'alpha2': a2, 'gamma1': g1,
                       'gamma2': g2, 'difference': g2 - g1, 'bound': bound,
                       'passed': bool(g2 - g1 <= bound + slack)})
    return report


def jump_stability(p, eps_values=(0.1, 0.2), radii=None, **options):
    """Jumps of the potential at several eps and whether they agree within
    5 jump_tol."""
    rows = []
    for eps in eps_values:
        dpos, dvel, approx = jumps_of_potential(p, eps=eps, radii=radii,
                                                **options)
        rows.append((float(eps), dpos, dvel, approx.jump_tol))
    tol = 5.0 * max(r[3] for r in rows)
    dpos = [r[1] for r in rows]
    dvel = [r[2] for r in rows]
    spread = max(max(dpos) - min(dpos), max(dvel) - min(dvel))
    return {'rows': rows, 'spread': spread, 'tolerance': tol,
            'agree': bool(spread <= tol)}
