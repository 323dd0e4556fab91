import math

import numpy as np
import pytest

from dimcalc.dimension import LTM
from dimcalc.errors import DimensionMismatchError, DomainError, IndeterminateError, SingularityError
from dimcalc.gravsim import (
    ACCELERATION,
    GAMMA_DIM,
    GAMMA_SI,
    MASS,
    BodyState,
    DilationLTM,
    GravSystem,
    Mode,
    Termination,
    Trajectory,
    accel,
    accel_array,
    circular_two_body,
    integrate,
    measure_gamma,
    orbital_period,
    pair_forces,
    residual,
    residual_summary,
    similarity_transform,
    time_reflect,
    total_energy,
    total_momentum,
    transform_report,
)
from dimcalc.quantity import Quantity, UnitFrame, q_convert
from dimcalc.vec3q import Vec3Q, norm

SI = UnitFrame.default(LTM)
L = LTM.dim(L=1)


def positions(*pts):
    return [Vec3Q(p, L, SI) for p in pts]


def test_single_body_has_no_acceleration():
    system = GravSystem.from_numerals([1.0])
    (a,) = accel(system, positions((1.0, 2.0, 3.0)))
    assert a.is_zero and a.dim == ACCELERATION


def test_symmetric_pair_accelerates_oppositely():
    system = GravSystem.from_numerals([3.0, 3.0])
    a1, a2 = accel(system, positions((-1.0, 0.0, 0.0), (1.0, 0.0, 0.0)))
    assert a1.components == tuple(-c for c in a2.components)
    assert a1.components[0] > 0


def test_unit_mass_at_unit_distance():
    system = GravSystem.from_numerals([1.0, 1.0])
    a1, _ = accel(system, positions((0.0, 0.0, 0.0), (1.0, 0.0, 0.0)))
    assert norm(a1).magnitude == 6.67430e-11
    assert norm(a1).dim == ACCELERATION


def test_pair_forces_are_exactly_antisymmetric():
    rng = np.random.default_rng(3)
    system = GravSystem.from_numerals(rng.uniform(1, 10, 4))
    f = pair_forces(system, positions(*rng.normal(size=(4, 3))))
    for i in range(4):
        for j in range(4):
            if i != j:
                assert f[(i, j)].components == tuple(-c for c in f[(j, i)].components)
                assert f[(i, j)].dim == LTM.dim(L=1, T=-2, M=1)


def test_vectorised_kernel_matches_dimensioned_accel():
    rng = np.random.default_rng(7)
    for n in (2, 3, 5, 8):
        m = rng.uniform(1e3, 1e6, n)
        x = rng.normal(size=(n, 3))
        system = GravSystem.from_numerals(m)
        slow = np.array([a.components for a in accel(system, positions(*x))])
        fast = accel_array(GAMMA_SI * m, x)
        np.testing.assert_allclose(fast, slow, rtol=1e-12)


def test_coincident_positions_name_the_pair():
    system = GravSystem.from_numerals([1.0, 1.0, 1.0])
    with pytest.raises(SingularityError, match="bodies 2 and 3"):
        accel(system, positions((0, 0, 0), (1, 1, 1), (1, 1, 1)))


def test_construction_rejects_wrong_dimensions():
    with pytest.raises(DimensionMismatchError):
        GravSystem(SI, (Quantity(1.0, MASS, SI),), Quantity(GAMMA_SI, LTM.dim(L=3, T=-2), SI))
    with pytest.raises(DimensionMismatchError):
        GravSystem(SI, (Quantity(1.0, L, SI),), Quantity(GAMMA_SI, GAMMA_DIM, SI))
    with pytest.raises(DomainError):
        GravSystem.from_numerals([1.0, -1.0])
    with pytest.raises(DomainError):
        GravSystem.from_numerals([1.0], gamma=0.0)
    with pytest.raises(DimensionMismatchError):
        BodyState(Vec3Q((0, 0, 0), LTM.dim(L=1, T=-1), SI), Vec3Q((0, 0, 0), L, SI))
    with pytest.raises(DimensionMismatchError):
        GravSystem.from_numerals([1.0], frame=UnitFrame.default(LTM.__class__(("L", "T"))))


def test_circular_orbit_keeps_its_radius(circular_orbit):
    traj, period = circular_orbit
    sep = np.linalg.norm(traj.positions[:, 1] - traj.positions[:, 0], axis=-1)
    assert np.max(np.abs(sep - 1.0)) < 1e-6
    assert traj.termination is Termination.REACHED_END
    assert math.isclose(orbital_period(traj), period, rel_tol=1e-8)


def test_conservation(circular_orbit):
    traj, _ = circular_orbit
    e = total_energy(traj)
    assert np.max(np.abs(e - e[0])) / abs(e[0]) < 1e-6
    p = total_momentum(traj)
    scale = np.sum(traj.system.mass_array * np.linalg.norm(traj.velocities[0], axis=-1))
    assert np.max(np.linalg.norm(p - p[0], axis=-1)) / scale < 1e-6


def test_head_on_collision_stops_early():
    system = GravSystem.from_numerals([5e10, 5e10])
    init = [BodyState.of((-0.5, 0, 0), (0, 0, 0), SI), BodyState.of((0.5, 0, 0), (0, 0, 0), SI)]
    traj = integrate(system, init, 0.0, 10.0, samples=1001)
    assert traj.termination is Termination.COLLISION_AT_END
    assert traj.times[-1] < 10.0
    back = time_reflect(traj)
    assert back.termination is Termination.COLLISION_AT_START


def test_stationary_single_body():
    system = GravSystem.from_numerals([1.0])
    traj = integrate(system, [BodyState.of((1, 2, 3), (0, 0, 0), SI)], 0.0, 5.0, samples=11)
    assert np.all(traj.positions == traj.positions[0])
    assert residual(traj).magnitude == 0.0
    with pytest.raises(IndeterminateError):
        measure_gamma(traj)


def test_invalid_initial_states():
    system = GravSystem.from_numerals([1.0, 1.0])
    same = [BodyState.of((0, 0, 0), (0, 0, 0), SI)] * 2
    with pytest.raises(SingularityError):
        integrate(system, same, 0.0, 1.0)
    ok = [BodyState.of((0, 0, 0), (0, 0, 0), SI), BodyState.of((1, 0, 0), (0, 0, 0), SI)]
    with pytest.raises(ValueError):
        integrate(system, ok, 1.0, 1.0)
    with pytest.raises(ValueError):
        integrate(system, ok[:1], 0.0, 1.0)


def test_time_bounds_as_quantities():
    system = GravSystem.from_numerals([1.0])
    init = [BodyState.of((0, 0, 0), (1, 0, 0), SI)]
    traj = integrate(system, init, Quantity(0.0, LTM.dim(T=1), SI), Quantity(2.0, LTM.dim(T=1), SI), samples=3)
    assert traj.time(2).magnitude == 2.0 and traj.states(2)[0].position.components == (2.0, 0.0, 0.0)
    with pytest.raises(DimensionMismatchError):
        integrate(system, init, 0.0, Quantity(2.0, L, SI))


def test_trajectory_invariants():
    system = GravSystem.from_numerals([1.0])
    x = np.zeros((2, 1, 3))
    with pytest.raises(ValueError):
        Trajectory(system, [1.0, 0.0], x, x)
    two = GravSystem.from_numerals([1.0, 1.0])
    with pytest.raises(SingularityError):
        Trajectory(two, [0.0], np.zeros((1, 2, 3)), np.zeros((1, 2, 3)))


def test_residual_is_small_and_detects_perturbation(circular_orbit):
    traj, _ = circular_orbit
    base = residual_summary(traj)
    assert base.max_residual.dim == ACCELERATION
    assert base.max_residual.magnitude < 1e-6
    assert base.passes
    rng = np.random.default_rng(0)
    bumped = Trajectory(traj.system, traj.times, traj.positions * (1 + 0.01 * rng.standard_normal(traj.positions.shape)),
                        traj.velocities)
    assert residual(bumped).magnitude > 1e3 * base.max_residual.magnitude
    with pytest.raises(ValueError):
        residual(Trajectory(traj.system, traj.times[:2], traj.positions[:2], traj.velocities[:2]))


def test_position_scheme_agrees_within_its_noise(circular_orbit):
    traj, _ = circular_orbit
    assert residual_summary(traj, scheme="position").relative < 1e-5


def test_measure_gamma(circular_orbit):
    traj, _ = circular_orbit
    fit = measure_gamma(traj)
    assert fit.gamma.dim == GAMMA_DIM
    assert math.isclose(fit.gamma.magnitude, GAMMA_SI, rel_tol=1e-4)
    assert fit.relative_rms < 1e-5


def test_zero_force_point_lies_on_the_line():
    system = GravSystem.from_numerals([1e10, 1e10, 1e10])
    init = [BodyState.of((x, 0, 0), (0, 0, 0), SI) for x in (-1.0, 0.0, 1.0)]
    traj = integrate(system, init, 0.0, 0.5, samples=2001)
    assert traj.termination is Termination.REACHED_END
    fit = measure_gamma(traj)
    centre = fit.r.reshape(-1, 3)[:, 1]
    assert np.max(centre) < 1e-9 * np.max(fit.r)
    assert math.isclose(fit.gamma.magnitude, GAMMA_SI, rel_tol=1e-4)


def test_different_gamma_is_distinguishable():
    fits = []
    for gamma in (GAMMA_SI, 2 * GAMMA_SI):
        system, init, period = circular_two_body(5e10, 5e10, 1.0, gamma=gamma)
        fits.append(measure_gamma(integrate(system, init, 0.0, period, samples=5001)).gamma.magnitude)
    assert math.isclose(fits[1] / fits[0], 2.0, rel_tol=1e-4)


def test_identity_dilation(circular_orbit):
    traj, _ = circular_orbit
    same = similarity_transform(traj, DilationLTM())
    np.testing.assert_array_equal(same.positions, traj.positions)
    np.testing.assert_array_equal(same.times, traj.times)
    assert same.constraint_satisfied


@pytest.mark.parametrize("d", [DilationLTM(4, 8, 1), DilationLTM(2, 1, 8), DilationLTM(2, 2, 2)])
def test_similarity_covariance(circular_orbit, d):
    traj, _ = circular_orbit
    img = similarity_transform(traj, d)
    assert img.constraint_satisfied
    assert img.system.gamma == traj.system.gamma
    expected = residual(traj).magnitude * d.lam / d.tau ** 2
    assert math.isclose(residual(img).magnitude, expected, rel_tol=1e-6)
    assert math.isclose(measure_gamma(img).gamma.magnitude, measure_gamma(traj).gamma.magnitude, rel_tol=1e-9)


def test_violated_constraint_shows_in_residual(circular_orbit):
    traj, _ = circular_orbit
    img = similarity_transform(traj, DilationLTM(1, 1, 2))
    s = residual_summary(img)
    assert not img.constraint_satisfied and not s.passes
    assert math.isclose(s.accel_factor, 2.0, rel_tol=1e-6)
    # the excess residual is |constraint - 1| times the typical acceleration, in numerical-acceleration units
    assert math.isclose(s.max_residual.magnitude, s.max_accel / 2, rel_tol=1e-5)


def test_dilation_factors_must_be_positive():
    with pytest.raises(DomainError):
        DilationLTM(0.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        DilationLTM(1.0, math.inf, 1.0)


def test_time_reflection(circular_orbit):
    traj, period = circular_orbit
    ref = time_reflect(traj)
    assert np.array_equal(time_reflect(ref).positions, traj.positions)
    assert np.array_equal(time_reflect(ref).velocities, traj.velocities)
    assert np.allclose(time_reflect(ref).times, traj.times, rtol=0, atol=1e-15)
    assert residual(ref).magnitude <= 2 * residual(traj).magnitude

    def spin(t, k):
        m = t.system.mass_array
        x, v = t.positions[k], t.velocities[k]
        return np.sum(m * (x[:, 0] * v[:, 1] - x[:, 1] * v[:, 0]))

    assert spin(ref, 0) == -spin(traj, -1)
    assert spin(ref, -1) == -spin(traj, 0)
    sep = np.linalg.norm(ref.positions[:, 1] - ref.positions[:, 0], axis=-1)
    assert np.max(np.abs(sep - 1.0)) < 1e-6
    assert math.isclose(orbital_period(ref), period, rel_tol=1e-8)


def small_mass_orbit():
    system, init, period = circular_two_body(2.3, 2.3, 1e-3)
    return integrate(system, init, 0.0, period, samples=2001)


def test_leibniz_report_keeps_numerals():
    traj = small_mass_orbit()
    rep = transform_report(traj, DilationLTM(3.0, 5.0, 2.0), "leibniz")
    assert rep.mode is Mode.LEIBNIZ
    assert rep.mass_numerals == (2.3, 2.3) and rep.gamma_numeral == GAMMA_SI
    assert np.array_equal(rep.trajectory.positions, traj.positions)
    assert rep.frame.unit_scales == (3.0, 5.0, 2.0)
    assert rep.is_solution_claim is None


def test_active_report_doubles_mass_numeral():
    rep = transform_report(small_mass_orbit(), DilationLTM(mu=2.0), "active")
    assert rep.mass_numerals == (4.6, 4.6)
    assert rep.frame == SI and rep.is_solution_claim is False


def test_passive_report_halves_mass_unit():
    traj = small_mass_orbit()
    rep = transform_report(traj, DilationLTM(mu=2.0), Mode.PASSIVE)
    assert rep.mass_numerals == (4.6, 4.6)
    assert rep.frame.unit_scales == (1.0, 1.0, 0.5)
    back = q_convert(rep.trajectory.system.masses[0], rep.frame, SI)
    assert back.magnitude == 2.3
    assert residual_summary(rep.trajectory).passes


def test_passive_lengths_and_times_change_contravariantly():
    traj = small_mass_orbit()
    rep = transform_report(traj, DilationLTM(2.0, 4.0, 1.0), "passive")
    np.testing.assert_allclose(rep.trajectory.positions, 2.0 * traj.positions, rtol=1e-15)
    np.testing.assert_allclose(rep.trajectory.times, 4.0 * traj.times, rtol=1e-15)
    assert math.isclose(rep.gamma_numeral, GAMMA_SI * 8 / 16, rel_tol=1e-15)
    assert residual_summary(rep.trajectory).passes
