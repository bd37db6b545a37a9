import json

from anisokep.testing import *
from anisokep.core import (CollisionNodeError, BadDomainError,
                           DegeneratePathError, StalledSegmentError,
                           BadWindowError, NotMonotoneError)
from anisokep.action import (DiscretePath, lagrangian_action, maupertuis_J,
                             time_scale, recover_time, zero_energy_reparam,
                             energy_residual, homothetic_action,
                             homothetic_time, homothetic_profile,
                             bound_above, bound_below, virial_level,
                             virial_bounds, one_sided_derivative,
                             level_bounds_position_jumping,
                             level_bounds_velocity_jumping)

SQRT2 = numpy.sqrt(2.0)


def radial(r0, r1, N, T=1.0, direction=(1.0, 0.0)):
    times = numpy.linspace(0.0, T, N + 1)
    radii = numpy.linspace(r0, r1, N + 1)
    return DiscretePath(times, numpy.outer(radii, direction))


def contact_path(theta, n=50):
    """Radially in from (2, 0) to the unit circle, around it by theta and
    radially out to distance 2; unit time per node."""
    radii_in = numpy.linspace(2.0, 1.0, n + 1)
    angles = numpy.linspace(0.0, theta, n + 1)[1:]
    radii_out = numpy.linspace(1.0, 2.0, n + 1)[1:]
    s_out = numpy.array([numpy.cos(theta), numpy.sin(theta)])
    nodes = numpy.concatenate([
        numpy.outer(radii_in, [1.0, 0.0]),
        numpy.column_stack([numpy.cos(angles), numpy.sin(angles)]),
        numpy.outer(radii_out, s_out)])
    return DiscretePath(numpy.arange(len(nodes), dtype=float), nodes)


def test_path_validation():
    with pytest.raises(ValueError):
        DiscretePath([0.0, 1.0, 1.0], numpy.ones((3, 2)))
    with pytest.raises(ValueError):
        DiscretePath([0.0, 1.0, 2.0], numpy.ones((4, 2)))
    with pytest.raises(ValueError):
        DiscretePath([0.0, 1.0], numpy.ones((2, 2)))
    with pytest.raises(ValueError):
        DiscretePath([0.0, 1.0, 2.0], [[1, 0], [numpy.nan, 0], [1, 1]])


def test_path_is_read_only():
    path = radial(1.0, 2.0, 4)
    with pytest.raises(ValueError):
        path.nodes[1, 0] = 5.0
    assert path.N == 4
    assert path.d == 2
    assert path.index_of(0.49) == 2


def test_path_csv(tmpdir):
    path = contact_path(1.0, n=4)
    filename = str(tmpdir.join('path.csv'))
    path.to_csv(filename)
    with open(filename) as f:
        assert f.readline().strip() == 't,x1,x2'
    loaded = DiscretePath.from_csv(filename)
    assert_allclose(loaded.nodes, path.nodes, rtol=1e-8)
    assert_allclose(loaded.times, path.times)


def test_stationary_action():
    times = numpy.linspace(0.0, 1.0, 11)
    path = DiscretePath(times, numpy.tile([1.0, 0.0], (11, 1)))
    action = lagrangian_action(isotropic(1.0), path)
    assert action.kinetic == 0.0
    assert_allclose(action.potential, 1.0)
    assert_allclose(action.total, 1.0)


def test_straight_segment_action():
    action = lagrangian_action(isotropic(1.0), radial(1.0, 2.0, 1000))
    assert_allclose(action.kinetic, 0.5, rtol=1e-12)
    assert abs(action.potential - numpy.log(2.0)) < 1e-3
    data = json.loads(action.to_json())
    assert_allclose(data['total'], action.total, rtol=1e-8)
    assert len(action.as_dict()['per_segment']) == 1000


def test_action_rejects_collision_node():
    path = DiscretePath([0.0, 1.0, 2.0], [[1.0, 0.0], [0.0, 0.0], [0.0, 1.0]])
    with pytest.raises(CollisionNodeError):
        lagrangian_action(isotropic(), path)


def test_homothetic_action_values():
    assert_allclose(homothetic_action(0.0, 1.0, 1.0, 1.0), 2 * SQRT2)
    assert homothetic_action(0.3, 0.3, 2.0, 0.5) == 0.0
    assert_allclose(2 * homothetic_action(0.0, 1.0, 1.0, 1.0), 4 * SQRT2)
    with pytest.raises(ValueError):
        homothetic_action(1.0, 0.5, 1.0, 1.0)


@pytest.mark.parametrize('alpha', [0.5, 1.0, 1.5])
def test_homothetic_profile_action(alpha):
    path = homothetic_profile(0.01, 1.0, 1.0, alpha, N=400,
                              spacing='action')
    expected = homothetic_action(0.01, 1.0, 1.0, alpha)
    assert_allclose(lagrangian_action(isotropic(alpha), path).total,
                    expected, rtol=5e-3)


def test_homothetic_quadrature_converges():
    p = isotropic(1.0)
    expected = homothetic_action(0.1, 1.0, 1.0, 1.0)
    errors = []
    for N in 100, 200, 400, 800:
        path = homothetic_profile(0.1, 1.0, 1.0, 1.0, N=N)
        errors.append(lagrangian_action(p, path).total - expected)
    assert all(e > 0 for e in errors)
    assert all(b < a for a, b in zip(errors, errors[1:]))
    assert errors[-1] < errors[0] / 4.0


def test_homothetic_profile_endpoints():
    path = homothetic_profile(0.0, 1.0, 1.0, 1.0, N=400)
    T = homothetic_time(0.0, 1.0, 1.0, 1.0)
    assert_allclose(path.times[[0, -1]], [-T, T])
    assert abs(path.radii[-1] - 1.0) < 1e-10
    assert path.radii[0] < 1e-10


def test_homothetic_profile_energy_and_lagrange_jacobi():
    alpha = 1.0
    path = homothetic_profile(0.5, 1.0, 1.0, alpha, N=400)
    p = isotropic(alpha)
    assert numpy.max(energy_residual(p, path)) < 1e-4
    t = path.times
    r2 = path.radii ** 2
    h = t[1] - t[0]
    d2 = (r2[2:] - 2 * r2[1:-1] + r2[:-2]) / h ** 2
    expected = 2 * (2 - alpha) * p.value(path.nodes[1:-1])
    assert_allclose(d2, expected, rtol=1e-4)


def test_homothetic_profile_arguments():
    with pytest.raises(DegeneratePathError):
        homothetic_profile(1.0, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        homothetic_profile(0.1, 1.0, 1.0, 1.0, spacing='log')


def test_maupertuis_J_parabola():
    t = numpy.linspace(-1.0, 1.0, 401)
    nodes = numpy.outer(1.0 + t ** 2, [1.0, 0.0])
    J = maupertuis_J(isotropic(1.0), DiscretePath(t, nodes))
    assert_allclose(J, 2 * numpy.pi / 3, rtol=1e-3)


def test_maupertuis_J_constant_path():
    t = numpy.linspace(-1.0, 1.0, 11)
    path = DiscretePath(t, numpy.tile([0.0, 2.0], (11, 1)))
    assert maupertuis_J(devaney(), path) == 0.0


def test_maupertuis_J_domain():
    with pytest.raises(BadDomainError):
        maupertuis_J(isotropic(), radial(1.0, 2.0, 10))


def test_time_scale():
    assert_allclose(time_scale(8.0, 1.0), 2.0)
    with pytest.raises(DegeneratePathError):
        time_scale(0.0, 1.0)


def test_recover_time_balances_energy():
    t = numpy.linspace(-1.0, 1.0, 201)
    nodes = numpy.column_stack([1.0 + t ** 2, t])
    p = devaney(0.5)
    T, path = recover_time(p, DiscretePath(t, nodes))
    assert T > 0
    assert_allclose(path.times[[0, -1]], [-T, T])
    action = lagrangian_action(p, path)
    assert_allclose(action.kinetic, action.potential, rtol=1e-12)


def test_recover_time_on_homothetic_motion():
    alpha = 1.0
    p = isotropic(alpha)
    profile = homothetic_profile(0.1, 1.0, 1.0, alpha, N=400,
                                 spacing='action')
    T = homothetic_time(0.1, 1.0, 1.0, alpha)
    T_bar, path = recover_time(p, profile.retimed(profile.times / T))
    assert_allclose(T_bar, T, rtol=1e-3)
    assert numpy.max(energy_residual(p, path)) < 1e-3


def test_zero_energy_reparam_radial():
    p = isotropic(1.0)
    path = zero_energy_reparam(p, radial(1.0, 2.0, 400))
    mid = 0.5 * (path.radii[1:] + path.radii[:-1])
    speed = numpy.linalg.norm(path.velocities, axis=1)
    assert_allclose(speed, numpy.sqrt(2.0 / mid), rtol=1e-3)
    duration = 2.0 / 3.0 * (2.0 ** 1.5 - 1.0) / SQRT2
    assert_allclose(path.times[-1] - path.times[0], duration, rtol=1e-4)
    assert numpy.max(energy_residual(p, path)) < 1e-12


def test_zero_energy_reparam_is_idempotent():
    p = devaney(0.75)
    once = zero_energy_reparam(p, contact_path(2.0))
    twice = zero_energy_reparam(p, once)
    assert_allclose(twice.times, once.times, rtol=1e-12)


def test_zero_energy_reparam_stalled():
    nodes = [[1.0, 0.0], [2.0, 0.0], [2.0, 0.0], [3.0, 0.0]]
    path = DiscretePath([0.0, 1.0, 2.0, 3.0], nodes)
    with pytest.raises(StalledSegmentError):
        zero_energy_reparam(isotropic(), path)


def test_bound_above_circle():
    value = bound_above(isotropic(1.0), [-1.0, 0.0], [1.0, 0.0], 1.0)
    assert_allclose(value, numpy.pi * SQRT2, rtol=1e-9)


def test_bound_above_devaney():
    eps = 0.1
    value = bound_above(devaney(1.0), [1.0, 0.0], [-1.0, 0.0], eps)
    legs = 2 * SQRT2 * (1 - numpy.sqrt(eps)) / 0.5
    arc = numpy.pi / 2 * numpy.sqrt(eps) * 2 * numpy.sqrt(6.0)
    assert_allclose(value, legs + arc, rtol=1e-9)


def test_bound_below_terms():
    p = isotropic(1.0)
    theta = 1.2
    path = contact_path(theta)
    a, b = path.times[50], path.times[100]
    lower = bound_below(p, path, (a, b), (path.times[0], a), eps=1.0)
    legs = 2 * homothetic_action(1.0, 2.0, 1.0, 1.0)
    arc = SQRT2 * 2 * numpy.sin(theta / 2)
    assert_allclose(lower, legs + arc, rtol=1e-12)
    single = bound_below(p, path, (a, a), (b, path.times[-1]), eps=1.0)
    assert_allclose(single, legs, rtol=1e-12)


def test_bound_below_window_overlap():
    path = contact_path(1.2)
    a, b = path.times[50], path.times[100]
    with pytest.raises(BadWindowError):
        bound_below(isotropic(), path, (a, b), (a + 1, b + 5))


def test_one_sided_derivative_exact_for_quadratics():
    times = numpy.array([0.0, 0.1, 0.35, 0.5, 0.9])
    values = 3 * times ** 2 - times
    for index, side in (0, 1), (2, 1), (4, -1), (2, -1):
        assert_allclose(one_sided_derivative(times, values, index, side),
                        6 * times[index] - 1, atol=1e-12)
    with pytest.raises(IndexError):
        one_sided_derivative(times, values, 0, -1)


def test_virial_level_homothetic():
    p = isotropic(1.0)
    path = homothetic_profile(0.1, 1.0, 1.0, 1.0, N=400, spacing='action')
    expected = homothetic_action(0.1, 1.0, 1.0, 1.0)
    value = virial_level(p, path, path.span)
    assert_allclose(value, expected, rtol=1e-2)
    reverse = DiscretePath(-path.times[::-1], path.nodes[::-1])
    assert_allclose(virial_level(p, reverse, reverse.span), expected,
                    rtol=1e-2)
    assert_allclose(lagrangian_action(p, path).total, value, rtol=1e-2)


def test_virial_bounds_homothetic():
    p = isotropic(1.0)
    path = homothetic_profile(0.1, 1.0, 1.0, 1.0, N=400, spacing='action')
    lower, upper = virial_bounds(p, path, path.span)
    assert lower <= upper + 1e-12
    expected = homothetic_action(0.1, 1.0, 1.0, 1.0)
    assert_allclose([lower, upper], [expected, expected], rtol=1e-2)


def test_virial_level_needs_monotone_radius():
    path = contact_path(2.0)
    with pytest.raises(NotMonotoneError):
        virial_level(isotropic(), path, (path.times[55], path.times[95]))
    with pytest.raises(NotMonotoneError):
        virial_level(isotropic(), path, path.span)


def test_level_bounds():
    p = isotropic(1.0)
    s1, s2, eps = [1.0, 0.0], [-1.0, 0.0], 0.1
    radial_lower = 4 * SQRT2 * (1 - eps)
    radial_upper = 4 * SQRT2
    lower, upper = level_bounds_position_jumping(p, 1.0, s1, s2, eps, 0.0)
    assert_allclose([lower, upper], [radial_lower, radial_upper])
    lower, upper = level_bounds_position_jumping(p, 1.0, s1, s2, eps, 2.0)
    e = numpy.sqrt(eps)
    assert_allclose(lower, radial_lower + SQRT2 * 2 * e)
    assert_allclose(upper, radial_upper + numpy.pi / 2 * SQRT2 * 2 * e)
    lower, upper = level_bounds_velocity_jumping(p, 1.0, s1, s2, eps, 1.5)
    shift = 1.5 * e / 0.5
    assert_allclose([lower, upper], [radial_lower - shift,
                                     radial_upper - shift])
