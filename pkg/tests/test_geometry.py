import numpy as np
import pytest
from hypothesis import given, strategies as st

from asibeam.geometry import (
    Direction,
    UlaGeometry,
    UraGeometry,
    angle_grid,
    azimuth_cut,
    elevation_cut,
    phase_y,
    phase_z,
    steering_matrix_ura,
    steering_vector_ula,
    unit_vector,
    vec,
)

angles = st.tuples(st.floats(-np.pi, np.pi), st.floats(0.0, np.pi))


@given(angles)
def test_unit_vector_has_unit_norm(a):
    d = Direction(*a)
    assert abs(np.linalg.norm(unit_vector(d)) - 1.0) <= 1e-12


def test_broadside_points_along_x():
    u = unit_vector(Direction(0.0, np.pi / 2))
    np.testing.assert_allclose(u, [1.0, 0.0, 0.0], atol=1e-15)


@pytest.mark.parametrize("phi, theta", [(3.5, 1.0), (0.0, -0.1), (0.0, 3.2)])
def test_direction_rejects_out_of_range(phi, theta):
    with pytest.raises(ValueError):
        Direction(phi, theta)


def test_direction_rejects_shape_mismatch():
    with pytest.raises(ValueError):
        Direction(np.zeros(3), np.zeros(4))


def test_geometry_validation():
    with pytest.raises(ValueError):
        UlaGeometry(0)
    with pytest.raises(ValueError):
        UlaGeometry(4, spacing_y=0.0)
    with pytest.raises(ValueError):
        UraGeometry(2, 2.5)


def test_ula_steering_is_unit_modulus_and_starts_at_one():
    g = UlaGeometry(8, 0.7)
    d = angle_grid(5.0)
    a = steering_vector_ula(g, d)
    assert a.shape == (len(d), 8)
    np.testing.assert_allclose(np.abs(a), 1.0, atol=1e-14)
    np.testing.assert_allclose(a[:, 0], 1.0)


def test_ula_is_single_row_ura():
    d = angle_grid(10.0)
    a_ula = steering_vector_ula(UlaGeometry(6, 0.5), d)
    a_ura = steering_matrix_ura(UraGeometry(1, 6, 0.5, 0.5), d)
    np.testing.assert_allclose(a_ura[:, 0, :], a_ula, atol=1e-14)


@given(angles, st.integers(1, 5), st.integers(1, 5))
def test_vec_of_steering_matrix_is_kronecker(a, m, n):
    g = UraGeometry(m, n, 0.5, 0.6)
    d = Direction(*a)
    A = steering_matrix_ura(g, d)
    a_y = np.exp(1j * np.arange(n) * phase_y(g, d))
    a_z = np.exp(1j * np.arange(m) * phase_z(g, d))
    np.testing.assert_allclose(vec(A), np.kron(a_y, a_z), atol=1e-12)


def test_vec_is_column_major():
    x = np.arange(6).reshape(2, 3)
    np.testing.assert_array_equal(vec(x), [0, 3, 1, 4, 2, 5])


def test_z_phase_factor_scales_vertical_progression():
    d = Direction.from_degrees(0.0, 60.0)
    full = phase_z(UraGeometry(2, 2, spacing_z=0.5), d)
    half = phase_z(UraGeometry(2, 2, spacing_z=0.5, z_phase_factor=1.0), d)
    assert full == pytest.approx(2 * half)
    assert full == pytest.approx(-np.pi * 0.5)


def test_ula_has_no_vertical_phase():
    assert np.all(phase_z(UlaGeometry(4), angle_grid(30.0)) == 0)


def test_grid_sizes_and_endpoints():
    d = angle_grid(1.0)
    assert len(d) == 181 * 361
    assert np.rad2deg(d.theta).max() == pytest.approx(180.0)
    cut = azimuth_cut(0.1)
    assert len(cut) == 3601
    np.testing.assert_allclose(cut.theta, np.pi / 2)
    el = elevation_cut(0.5, azimuth_deg=30.0)
    assert len(el) == 361
    np.testing.assert_allclose(np.rad2deg(el.phi), 30.0)
    with pytest.raises(ValueError):
        angle_grid(0.0)
