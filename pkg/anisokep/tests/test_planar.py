from anisokep.testing import *
from anisokep.core import (DegenerateCriticalError, NonPositiveRZError,
                           BadBracketError, NoSaddleError)
from anisokep.planar import (devaney_field, extended_field, integrate,
                             equilibria, separation, saddle_connection_bisect,
                             apsidal_bounds, dv_dtheta_sweep,
                             physical_trajectory, fit_conic,
                             conic_eccentricity, lrl_eccentricity,
                             phase_portrait, render_portrait_svg,
                             planar_potential, SADDLE, SINK, SOURCE)

PI = numpy.pi


def kind_at(found, theta, phi):
    for e in found:
        dtheta = numpy.mod(e.point.theta - theta + PI, 2 * PI) - PI
        dphi = numpy.mod(e.point.phi - phi + PI, 2 * PI) - PI
        if abs(dtheta) < 1e-6 and abs(dphi) < 1e-6:
            return e
    raise AssertionError("no equilibrium at (%g, %g)" % (theta, phi))


def test_planar_potential_extrema():
    U = planar(devaney())
    assert_allclose(sorted(U.minima), [0.0, PI], atol=1e-9)
    assert_allclose(sorted(U.maxima), [PI / 2, 3 * PI / 2], atol=1e-9)
    assert_allclose([U.u_min, U.u_max], [1.0, 3.0])
    assert planar(isotropic()).flat
    with pytest.raises(ValueError):
        planar_potential(axial())


def test_field_value():
    U = planar(devaney(1.0))
    assert_allclose(devaney_field(U, 1.0, (0.0, PI / 2)), (2.0, 1.0),
                    atol=1e-12)


def test_equilibria_devaney():
    U = planar(devaney())
    found = equilibria(U, 0.75)
    assert len(found) == 8
    for theta in 0.0, PI:
        for phi in theta, theta + PI:
            assert kind_at(found, theta, phi).kind == SADDLE
    for theta in PI / 2, 3 * PI / 2:
        assert kind_at(found, theta, theta).kind == SINK
        assert kind_at(found, theta, theta + PI).kind == SOURCE


def test_equilibria_flat():
    with pytest.raises(DegenerateCriticalError):
        equilibria(planar(isotropic()), 1.0)


def test_sink_has_no_saddle_direction():
    found = equilibria(planar(devaney()), 0.75)
    with pytest.raises(NoSaddleError):
        kind_at(found, PI / 2, PI / 2).vector(+1)


def test_saddle_is_fixed():
    orbit = integrate(planar(devaney()), 0.75, (0.0, 0.0), 10.0)
    assert orbit.termination == 'MaxTime'
    assert_array_equal(orbit.final, (0.0, 0.0))


def test_isotropic_invariant():
    orbit = integrate(planar(isotropic()), 1.0, (0.0, PI + 0.01), 5.0)
    invariant = orbit.phi - orbit.theta / 2.0
    assert_allclose(invariant, invariant[0], atol=1e-9)


def test_v_is_monotone():
    U = planar(devaney())
    for start in (1.0, 2.5), (0.3, 4.0), (2.0, 0.1):
        orbit = integrate(U, 0.75, start, 5.0)
        assert orbit.v_monotonicity_defect() < 1e-8
        backward = integrate(U, 0.75, start, -5.0)
        assert backward.v_monotonicity_defect() < 1e-8


def test_backward_integration_saturates():
    U = planar(devaney())
    # v = 0 at the start; backward in time v decreases towards -sqrt(U)
    orbit = integrate(U, 0.75, (0.3, 0.3 + PI / 2), -200.0, step=1e-2)
    assert orbit.termination in ('ReachedSource', 'ReachedTarget')
    theta = orbit.final.theta
    assert_allclose(orbit.v_samples[-1], -numpy.sqrt(U.U(theta)), atol=1e-5)
    assert orbit.taus[-1] > -200.0


def test_apsidal_bounds():
    lower, upper = apsidal_bounds(planar(devaney()), 0.75)
    assert_allclose(lower, 3.2 * numpy.arcsin(numpy.sqrt(1.0 / 3.0)))
    assert_allclose([lower, upper], [1.9695, 5.0265], atol=1e-4)


@pytest.mark.parametrize('alpha', [0.5, 1.0, 1.5])
def test_isotropic_sweep(alpha):
    swept = dv_dtheta_sweep(planar(isotropic()), alpha)
    assert abs(swept - 2 * PI / (2 - alpha)) < 1e-4


def test_sweep_within_apsidal_bounds():
    U = planar(devaney())
    for alpha in 0.25, 0.75, 1.5:
        lower, upper = apsidal_bounds(U, alpha)
        swept = dv_dtheta_sweep(U, alpha)
        assert lower - 1e-6 <= swept <= upper + 1e-6


def test_sweep_offset():
    U = planar(isotropic())
    assert dv_dtheta_sweep(U, 1.0, delta0=0.1) < dv_dtheta_sweep(U, 1.0)
    with pytest.raises(ValueError):
        dv_dtheta_sweep(U, 1.0, delta0=1.0)


def test_kepler_parabola():
    U = planar(isotropic())
    t, positions, velocities = physical_trajectory(U, 1.0, 1.0, 0.0, PI / 2,
                                                   (-0.5, 0.5))
    assert numpy.all(numpy.diff(t) > 0)
    energy = 0.5 * numpy.sum(velocities ** 2, axis=1) - \
        1.0 / numpy.linalg.norm(positions, axis=1)
    assert numpy.max(numpy.abs(energy)) < 1e-8
    assert_allclose(lrl_eccentricity(positions, velocities), 1.0, atol=1e-6)
    coeffs = fit_conic(positions)
    assert abs(conic_eccentricity(coeffs) - 1.0) < 1e-4


def test_conic_eccentricity_closed_forms():
    assert_allclose(conic_eccentricity([0, 0, 1, -4, 0, 0]), 1.0)
    assert_allclose(conic_eccentricity([1, 0, 1, 0, 0, -1]), 0.0, atol=1e-12)
    assert_allclose(conic_eccentricity([1, 0, 4, 0, 0, -4]),
                    numpy.sqrt(3.0) / 2)


def test_physical_trajectory_span():
    with pytest.raises(ValueError):
        physical_trajectory(planar(isotropic()), 1.0, 1.0, 0.0, PI / 2,
                            (0.1, 0.5))


def test_extended_field_needs_positive_rz():
    U = planar(devaney())
    with pytest.raises(NonPositiveRZError):
        extended_field(U, 1.0, numpy.array([0.0, 1.0, 0.0, 0.0, 0.0]))
    with pytest.raises(NonPositiveRZError):
        extended_field(U, 1.0, numpy.array([1.0, -1.0, 0.0, 0.0, 0.0]))


def test_separation_sign_change():
    U = planar(devaney())
    low, unstable, stable = separation(U, 0.5, (0.0, PI), (PI, PI),
                                       step=1e-2)
    high = separation(U, 1.2, (0.0, PI), (PI, PI), step=1e-2)[0]
    assert low < 0 < high
    assert unstable.termination == 'Section'
    assert stable.termination == 'Section'


def test_saddle_connection_bisect():
    U = planar(devaney())
    result = saddle_connection_bisect(U, (0.5, 1.0), (0.0, PI), (PI, PI),
                                      width=1e-4)
    lo, hi = result.bracket
    assert 0.5 < lo < hi < 1.0
    assert hi - lo <= 1e-4
    assert_allclose(result.alpha_bar, 0.8453, atol=1e-3)
    ends = dict(result.separations)
    assert ends[0.5] < 0 < ends[1.0]
    assert_allclose(result.unstable.theta[-1], PI / 2, atol=0.2)
    assert result.as_dict()['revolutions'] == 0


def test_saddle_connection_bad_bracket():
    with pytest.raises(BadBracketError):
        saddle_connection_bisect(planar(devaney()), (0.1, 0.2), (0.0, PI),
                                 (PI, PI), width=0.05, step=1e-2)


def test_phase_portrait_svg(tmpdir):
    U = planar(devaney())
    orbits = phase_portrait(U, 0.75, horizon=1.0, step=1e-2, grid=(4, 3))
    assert len(orbits) == 12
    assert all(orbit.states.shape[1] == 2 for orbit in orbits)
    found = equilibria(U, 0.75)
    first = str(tmpdir.join('a.svg'))
    second = str(tmpdir.join('b.svg'))
    render_portrait_svg(orbits, found, first, title='devaney')
    render_portrait_svg(orbits, found, second, title='devaney')
    with open(first) as f:
        text = f.read()
    with open(second) as f:
        assert f.read() == text
    assert '<svg' in text
