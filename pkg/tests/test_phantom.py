import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from cardiofem import (
    AngularRegion,
    ConfigurationError,
    GeometryError,
    Material,
    RingSpec,
    boundary_conditions_from_displacements,
    boundary_displacements,
    apply_dirichlet,
    assemble,
    lame_displacement,
    lame_strain_polar,
    make_ring,
    pressure_load_cycle,
    sector_average,
    solve,
    solve_ring_traction,
    strain_field,
    triangulate_annulus,
)


def test_ring_spec_validation():
    with pytest.raises(ConfigurationError):
        RingSpec(2.0, 1.0)
    with pytest.raises(ConfigurationError):
        RingSpec(0.0, 1.0)
    with pytest.raises(ConfigurationError):
        RingSpec(1.0, 2.0, pressures=(0.0, np.inf))


def test_pressure_ramp():
    spec = RingSpec(1.0, 2.0).with_pressure_ramp(2.0, 4)
    assert spec.pressures == (0.0, 0.5, 1.0, 1.5, 2.0)


# ---------------------------------------------------------------------------
# analytic oracle


def test_lame_zero_pressure():
    r = np.linspace(1.0, 2.0, 7)
    assert np.all(lame_displacement(1.0, 2.0, 0.0, 1e4, 0.3, r) == 0.0)


def test_lame_linearity_in_pressure():
    r = np.linspace(1.0, 2.0, 7)
    u1 = lame_displacement(1.0, 2.0, 1.0, 1e4, 0.3, r)
    u2 = lame_displacement(1.0, 2.0, 2.0, 1e4, 0.3, r)
    assert_allclose(u2, 2.0 * u1, rtol=1e-14)


def test_lame_positive_outward():
    r = np.linspace(1.0, 2.0, 7)
    assert np.all(lame_displacement(1.0, 2.0, 1.0, 1e4, 0.3, r) > 0.0)


def test_lame_outside_wall():
    with pytest.raises(GeometryError):
        lame_displacement(1.0, 2.0, 1.0, 1e4, 0.3, 0.5)
    with pytest.raises(GeometryError):
        lame_displacement(1.0, 2.0, 1.0, 1e4, 0.3, 2.5)


def test_lame_strain_consistent_with_displacement():
    # eps_theta = u / r and eps_r = du/dr (central difference oracle)
    a, b, p, e_mod, nu = 1.0, 2.0, 1.0, 1e4, 0.3
    r = np.linspace(1.05, 1.95, 11)
    eps_r, eps_t = lame_strain_polar(a, b, p, e_mod, nu, r)
    u = lame_displacement(a, b, p, e_mod, nu, r)
    assert_allclose(eps_t, u / r, rtol=1e-12)
    h = 1e-6
    du = (
        lame_displacement(a, b, p, e_mod, nu, r + h)
        - lame_displacement(a, b, p, e_mod, nu, r - h)
    ) / (2 * h)
    assert_allclose(eps_r, du, rtol=1e-7)


def test_lame_cross_validated_by_traction_fem():
    # the closed form must agree with the independent Neumann solve before
    # it may be used as the oracle elsewhere
    spec = RingSpec(1.0, 2.0, material=Material(1e4, 0.3))
    mesh, _, disp = solve_ring_traction(spec, 1.0, 128, 16)
    radii = np.linalg.norm(mesh.nodes, axis=1)
    for r_test in (1.0, 1.5, 2.0):
        sel = np.abs(radii - r_test) < 1e-9
        assert np.any(sel)
        radial = np.einsum(
            "ij,ij->i", disp.values[sel], mesh.nodes[sel] / radii[sel, None]
        )
        expected = lame_displacement(1.0, 2.0, 1.0, 1e4, 0.3, r_test)
        assert np.max(np.abs(radial - expected)) < 0.01 * expected


# ---------------------------------------------------------------------------
# ring construction


def test_make_ring_homogeneous():
    mesh, mats = make_ring(RingSpec(1.0, 2.0, material=Material(5.0, 0.2)), 64, 8)
    assert np.all(mats.E == 5.0)
    assert np.all(mats.nu == 0.2)
    area = float(mesh.triangle_areas().sum())
    assert abs(area - 3.0 * math.pi) / (3.0 * math.pi) < 0.005


def test_make_ring_stiff_region_partition():
    stiff = AngularRegion(0.0, 90.0, Material(10.0, 0.3))
    spec = RingSpec(1.0, 2.0, material=Material(1.0, 0.3), regions=(stiff,))
    mesh, mats = make_ring(spec, 64, 8)
    centroids = mesh.triangle_centroids()
    angles = np.degrees(np.mod(np.arctan2(centroids[:, 1], centroids[:, 0]), 2 * np.pi))
    expected = np.where((angles >= 0.0) & (angles < 90.0), 10.0, 1.0)
    assert np.array_equal(mats.E, expected)


# ---------------------------------------------------------------------------
# pressure cycle


def test_cycle_zero_pressure_frame_identical():
    spec = RingSpec(1.0, 2.0, pressures=(0.0, 0.5))
    frames = pressure_load_cycle(spec, n_points=32)
    base_inner = np.linalg.norm(frames[0].inner.points, axis=1)
    assert_allclose(base_inner, 1.0, atol=1e-12)


def test_cycle_monotone_inner_radius():
    spec = RingSpec(1.0, 2.0).with_pressure_ramp(1.0, 5)
    frames = pressure_load_cycle(spec, n_points=32)
    radii = [float(np.linalg.norm(f.inner.points, axis=1).mean()) for f in frames]
    assert all(r1 < r2 for r1, r2 in zip(radii, radii[1:]))


def test_cycle_superposition():
    spec = RingSpec(1.0, 2.0).with_pressure_ramp(1.0, 10)
    frames = pressure_load_cycle(spec, n_points=32)
    u_full = frames[10].inner.points - frames[0].inner.points
    for k in range(11):
        u_k = frames[k].inner.points - frames[0].inner.points
        assert_allclose(u_k, (k / 10.0) * u_full, atol=1e-9)


def test_cycle_fem_matches_analytic_for_homogeneous():
    spec = RingSpec(1.0, 2.0, pressures=(0.0, 1.0))
    analytic = pressure_load_cycle(spec, n_points=64, method="analytic")
    fem = pressure_load_cycle(spec, n_points=64, n_radial=8, method="fem")
    diff = np.abs(fem[1].inner.points - analytic[1].inner.points)
    scale = np.max(np.abs(analytic[1].inner.points - analytic[0].inner.points))
    assert np.max(diff) < 0.02 * scale


def test_cycle_analytic_rejects_inhomogeneous():
    stiff = AngularRegion(0.0, 90.0, Material(1e5, 0.3))
    spec = RingSpec(1.0, 2.0, regions=(stiff,), pressures=(0.0, 1.0))
    with pytest.raises(ConfigurationError):
        pressure_load_cycle(spec, method="analytic")
    frames = pressure_load_cycle(spec, n_points=32, n_radial=4, method="fem")
    assert len(frames) == 2


def test_cycle_requires_pressures():
    with pytest.raises(ConfigurationError):
        pressure_load_cycle(RingSpec(1.0, 2.0))


# ---------------------------------------------------------------------------
# end-to-end verification loop


def _pipeline_error(spec, n_angular, n_radial, pressure=1.0):
    """Contour pipeline (cycle frames -> boundary displacements -> Dirichlet
    solve) versus the analytic interior field; area-weighted L2."""
    cycle = RingSpec(
        spec.inner_radius, spec.outer_radius, spec.center, spec.material,
        spec.regions, (0.0, pressure),
    )
    frames = pressure_load_cycle(cycle, n_points=n_angular)
    bd = boundary_displacements(frames[0], frames[1], n_angular)
    mesh = triangulate_annulus(frames[0].inner, frames[0].outer, n_angular, n_radial)
    mats_mesh, mats = make_ring(cycle, n_angular, n_radial)
    bcs = boundary_conditions_from_displacements(mesh, bd)
    disp = solve(apply_dirichlet(assemble(mesh, mats, "plane-strain"), bcs, mesh))

    centroids = mesh.triangle_centroids()
    rn = np.linalg.norm(centroids, axis=1)
    u_num = disp.values[mesh.triangles].mean(axis=1)
    u_exact = (
        lame_displacement(
            spec.inner_radius, spec.outer_radius, pressure, spec.material.E,
            spec.material.nu, np.clip(rn, spec.inner_radius, spec.outer_radius),
        )
        / rn
    )[:, None] * centroids
    areas = mesh.triangle_areas()
    err = np.sqrt(np.sum(areas * np.sum((u_num - u_exact) ** 2, axis=1)))
    ref = np.sqrt(np.sum(areas * np.sum(u_exact**2, axis=1)))
    return err / ref


def test_end_to_end_pipeline_matches_oracle():
    spec = RingSpec(1.0, 2.0, material=Material(1e4, 0.3))
    errors = [_pipeline_error(spec, na, nr) for na, nr in [(32, 4), (64, 8), (128, 16)]]
    assert errors[1] < 0.01
    orders = [math.log2(errors[i] / errors[i + 1]) for i in range(2)]
    assert min(orders) >= 1.7


def test_inhomogeneous_low_mobility_sectors():
    stiff = AngularRegion(225.0, 315.0, Material(1e5, 0.3))
    spec = RingSpec(1.0, 2.0, material=Material(1e4, 0.3), regions=(stiff,))
    mesh, mats, disp = solve_ring_traction(spec, 1.0, 64, 8, anchor_deg=270.0)
    sf = strain_field(mesh, disp, mats.nu, "plane-strain")
    summary = sector_average(mesh, sf, disp, spec.center, 16)
    stiff_idx = np.array([10, 11, 12, 13])
    normal_idx = np.array([i for i in range(16) if i not in stiff_idx])
    md = summary.mean_displacement
    # stiff-wedge mobility strictly below the normal-sector aggregate
    assert md[stiff_idx].mean() < md[normal_idx].mean()
    assert md[stiff_idx].max() < md[normal_idx].min()


def test_anchor_requires_axis_aligned_angle():
    spec = RingSpec(1.0, 2.0)
    with pytest.raises(ConfigurationError):
        solve_ring_traction(spec, 1.0, 64, 8, anchor_deg=45.0)
    with pytest.raises(ConfigurationError):
        solve_ring_traction(spec, 1.0, 30, 8)  # not divisible by 4
