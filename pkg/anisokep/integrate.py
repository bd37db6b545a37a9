"""Fixed-step Runge-Kutta integration shared by the planar and tail solvers."""

import logging

import numpy

__all__ = ['default_integrator_options', 'Event', 'IntegrationResult',
           'RK4Solver', 'rk4_step', 'integrate_batch', 'richardson_audit']

logger = logging.getLogger(__name__)

default_integrator_options = {
    'step': 1e-3,
    'max_steps': 2000000,
    'record_every': 1,
    }


class Event(object):
    """A terminal event g(t, y) = 0 detected by a sign change over a step.

    Parameters
    ----------
    name : string
        Status reported when the event terminates the integration.
    function : callable
        g(t, y) returning a float.
    direction : int, optional
        +1 fires only on increasing crossings, -1 only on decreasing ones,
        0 on both.

    """

    def __init__(self, name, function, direction=0):
        self.name = name
        self.function = function
        self.direction = direction

    def crossed(self, g0, g1):
        if self.direction >= 0 and g0 < 0 <= g1:
            return True
        if self.direction <= 0 and g0 > 0 >= g1:
            return True
        return False

    def __repr__(self):
        return 'Event(%r, direction=%d)' % (self.name, self.direction)


class IntegrationResult(object):
    """Recorded samples of one integration.

    Attributes
    ----------
    t : numpy.ndarray, shape (n,)
    y : numpy.ndarray, shape (n, dim)
    status : string
        Name of the terminating event, or 'MaxTime'.
    event : Event or None

    """

    def __init__(self, t, y, status, event=None):
        self.t = numpy.asarray(t)
        self.y = numpy.asarray(y)
        self.status = status
        self.event = event

    @property
    def final(self):
        return self.y[-1]

    def __repr__(self):
        return 'IntegrationResult(n=%d, t_end=%g, status=%r)' % (
            len(self.t), self.t[-1], self.status)


def rk4_step(rhs, t, y, h):
    """One classical RK4 step; y may carry leading batch dimensions."""
    k1 = rhs(t, y)
    k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = rhs(t + h, y + h * k3)
    return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


class RK4Solver(object):
    """Fixed-step RK4 integrator with terminal events.

    Parameters
    ----------
    rhs : callable
        f(t, y) returning dy/dt as an array of the same shape as y.
    events : list of Event, optional
    options
        Overrides for ``default_integrator_options``.

    Notes
    -----
    An event crossing is located by linear interpolation of g between the two
    bracketing steps; the state returned at the event is interpolated the
    same way.

    """

    def __init__(self, rhs, events=(), **options):
        self.rhs = rhs
        self.events = list(events)
        self.options = dict(default_integrator_options)
        self.options.update(options)
        self.step = float(self.options['step'])
        if self.step == 0:
            raise ValueError("integration step must be nonzero")

    def run(self, y0, t0, t1):
        """Integrate from t0 towards t1 (which may lie before t0)."""
        h = abs(self.step) * numpy.sign(t1 - t0)
        y = numpy.array(y0, dtype=float)
        t = float(t0)
        record_every = int(self.options['record_every'])
        ts, ys = [t], [y.copy()]
        g_prev = [e.function(t, y) for e in self.events]
        n = 0
        while (t1 - t) * numpy.sign(h) > 1e-15 * max(1.0, abs(t1)):
            if n >= self.options['max_steps']:
                logger.debug("step limit %d reached at t=%g", n, t)
                break
            step = h if abs(t1 - t) > abs(h) else t1 - t
            y_new = rk4_step(self.rhs, t, y, step)
            t_new = t + step
            n += 1
            if not numpy.all(numpy.isfinite(y_new)):
                ts.append(t_new)
                ys.append(y_new)
                return IntegrationResult(ts, ys, 'NonFinite')
            for i, event in enumerate(self.events):
                g_new = event.function(t_new, y_new)
                if event.crossed(g_prev[i], g_new):
                    theta = g_prev[i] / (g_prev[i] - g_new)
                    ts.append(t + theta * step)
                    ys.append(y + theta * (y_new - y))
                    logger.debug("event %s at t=%g", event.name, ts[-1])
                    return IntegrationResult(ts, ys, event.name, event)
                g_prev[i] = g_new
            t, y = t_new, y_new
            if n % record_every == 0:
                ts.append(t)
                ys.append(y.copy())
        if ts[-1] != t:
            ts.append(t)
            ys.append(y.copy())
        return IntegrationResult(ts, ys, 'MaxTime')


def integrate_batch(rhs, y0, t0, t1, step=None, record_every=10):
    """Integrate many initial conditions at once without events.

    Returns times of shape (n,) and states of shape (n, batch, dim).
    """
    if step is None:
        step = default_integrator_options['step']
    y = numpy.array(y0, dtype=float)
    count = int(numpy.ceil(abs(t1 - t0) / step))
    h = (t1 - t0) / count
    ts, ys = [t0], [y.copy()]
    for n in range(1, count + 1):
        y = rk4_step(rhs, t0 + (n - 1) * h, y, h)
        if n % record_every == 0 or n == count:
            ts.append(t0 + n * h)
            ys.append(y.copy())
    return numpy.array(ts), numpy.array(ys)


def richardson_audit(rhs, y0, t0, t1, step):
    """Estimated global error at t1 of RK4 with the given step.

    Integrates with h and h/2; for a fourth-order method the error of the
    finer run is about |y_h - y_{h/2}| / 15.
    """
    coarse = RK4Solver(rhs, step=step).run(y0, t0, t1).final
    fine = RK4Solver(rhs, step=step / 2.0).run(y0, t0, t1).final
    return float(numpy.max(numpy.abs(coarse - fine)) / 15.0)
