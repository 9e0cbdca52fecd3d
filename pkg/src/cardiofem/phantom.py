"""Pressurized-ring verification experiment and its analytic oracle.

The phantom is a thick-walled ring under uniform internal pressure with a
traction-free outer wall. Two mutually independent reference solutions are
available: the closed-form plane-strain radial displacement of the
homogeneous ring, and a traction-loaded finite-element solve that works for
inhomogeneous (stiff-sector) rings as well. A pressure cycle turns either
into a sequence of displaced wall contours, feeding the contour pipeline
exactly like cardiac data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .contours import Contour, FrameContours, Point2
from .errors import ConfigurationError, GeometryError
from .fem import (
    BoundaryConditionSet,
    apply_dirichlet,
    apply_traction,
    assemble,
    internal_pressure_tractions,
    remove_rigid_motion,
    solve,
)
from .materials import AngularRegion, Material, region_material_field
from .meshing import triangulate_annulus

TWO_PI = 2.0 * math.pi


def circle_contour(radius: float, center, n: int, label: str) -> Contour:
    if radius <= 0.0:
        raise GeometryError(f"circle radius must be positive, got {radius}")
    c = np.asarray(center, dtype=float).reshape(2)
    theta = TWO_PI * np.arange(n) / n
    pts = c + radius * np.column_stack([np.cos(theta), np.sin(theta)])
    return Contour(pts, label)


@dataclass(frozen=True)
class RingSpec:
    """Geometry, material, and load schedule of the verification ring."""

    inner_radius: float
    outer_radius: float
    center: Point2 = Point2(0.0, 0.0)
    material: Material = Material(1e4, 0.3)
    regions: tuple[AngularRegion, ...] = ()
    pressures: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not (0.0 < self.inner_radius < self.outer_radius):
            raise ConfigurationError(
                f"need 0 < inner radius < outer radius, got "
                f"{self.inner_radius}, {self.outer_radius}"
            )
        pressures = tuple(float(p) for p in self.pressures)
        if any(not math.isfinite(p) for p in pressures):
            raise ConfigurationError("pressures must be finite")
        object.__setattr__(self, "pressures", pressures)
        object.__setattr__(self, "regions", tuple(self.regions))
        object.__setattr__(
            self, "center", Point2(float(self.center[0]), float(self.center[1]))
        )

    @property
    def homogeneous(self) -> bool:
        return len(self.regions) == 0

    def with_pressure_ramp(self, p_max: float, n_steps: int) -> "RingSpec":
        """Replace the load schedule with n_steps equal increments from zero."""
        if n_steps < 1:
            raise ConfigurationError("n_steps must be >= 1")
        ramp = tuple(p_max * k / n_steps for k in range(n_steps + 1))
        return RingSpec(
            self.inner_radius, self.outer_radius, self.center, self.material,
            self.regions, ramp,
        )


def make_ring(spec: RingSpec, n_angular: int = 64, n_radial: int = 8):
    """Mesh the ring and assign its (possibly inhomogeneous) materials."""
    inner = circle_contour(spec.inner_radius, spec.center, n_angular, "inner")
    outer = circle_contour(spec.outer_radius, spec.center, n_angular, "outer")
    mesh = triangulate_annulus(inner, outer, n_angular, n_radial)
    materials = region_material_field(mesh, spec.material, spec.regions, spec.center)
    return mesh, materials


def lame_displacement(a: float, b: float, p: float, e_mod: float, nu: float, r):
    """Plane-strain radial displacement of the pressurized homogeneous ring.

    Internal pressure p at radius a, traction-free outer wall at radius b:

        u(r) = (1 + nu) * p * a^2 / (E * (b^2 - a^2)) * ((1 - 2 nu) r + b^2 / r)

    Vectorized over r; r must lie within [a, b].
    """
    if not (0.0 < a < b):
        raise ConfigurationError("need 0 < a < b")
    r_arr = np.asarray(r, dtype=float)
    tol = 1e-12 * b
    if np.any(r_arr < a - tol) or np.any(r_arr > b + tol):
        raise GeometryError("radius outside the ring wall [a, b]")
    factor = (1.0 + nu) * p * a * a / (e_mod * (b * b - a * a))
    out = factor * ((1.0 - 2.0 * nu) * r_arr + b * b / r_arr)
    return out if out.ndim else float(out)


def lame_strain_polar(a: float, b: float, p: float, e_mod: float, nu: float, r):
    """Analytic (radial, hoop) strain of the same solution, plane strain."""
    if not (0.0 < a < b):
        raise ConfigurationError("need 0 < a < b")
    r_arr = np.asarray(r, dtype=float)
    factor = (1.0 + nu) * p * a * a / (e_mod * (b * b - a * a))
    eps_r = factor * ((1.0 - 2.0 * nu) - b * b / (r_arr * r_arr))
    eps_t = factor * ((1.0 - 2.0 * nu) + b * b / (r_arr * r_arr))
    return eps_r, eps_t


def lame_displacement_at(spec: RingSpec, pressure: float, points) -> np.ndarray:
    """Analytic displacement vectors at arbitrary wall points."""
    pts = np.asarray(points, dtype=float)
    c = np.asarray(spec.center, dtype=float)
    rel = pts - c
    r = np.linalg.norm(rel, axis=1)
    u = lame_displacement(
        spec.inner_radius, spec.outer_radius, pressure, spec.material.E,
        spec.material.nu, r,
    )
    return (u / r)[:, None] * rel


def solve_ring_traction(
    spec: RingSpec,
    pressure: float,
    n_angular: int = 64,
    n_radial: int = 8,
    mode: str = "plane-strain",
    detrend_rigid: bool = True,
    anchor_deg: float | None = None,
):
    """Neumann-loaded solve of the ring under internal pressure.

    By default rigid modes are removed by pinning three symmetry dofs on the
    inner boundary (v at angles 0 and pi, u at angle pi/2) and the
    least-squares rigid motion is subtracted afterwards (strains are
    unaffected) unless disabled.

    ``anchor_deg`` instead supports the ring at one wall angle, mimicking a
    stiff (infarct-like) region that holds the wall in place: the inner node
    at that angle is fixed and the tangential dof of the matching outer node
    removes the remaining rotation, leaving radial straining free. The angle
    must be a multiple of 90 degrees so the tangential direction is a
    coordinate axis; no rigid detrending is applied in this mode.

    Requires n_angular divisible by 4. Returns (mesh, materials,
    displacement).
    """
    if n_angular % 4 != 0:
        raise ConfigurationError("n_angular must be divisible by 4 for the pin layout")
    mesh, materials = make_ring(spec, n_angular, n_radial)
    system = assemble(mesh, materials, mode)
    tractions = internal_pressure_tractions(mesh, pressure)
    system = apply_traction(system, BoundaryConditionSet(tractions=tractions), mesh)
    if anchor_deg is None:
        quarter = n_angular // 4
        pins = {
            0: (None, 0.0),
            2 * quarter: (None, 0.0),
            quarter: (0.0, None),
        }
    else:
        if anchor_deg % 90.0 != 0.0:
            raise ConfigurationError("anchor_deg must be a multiple of 90 degrees")
        j = int(round(anchor_deg % 360.0 / 360.0 * n_angular)) % n_angular
        outer_node = n_radial * n_angular + j
        tangential_is_x = anchor_deg % 180.0 != 0.0  # at 90/270 deg tangent is +-x
        outer_pin = (0.0, None) if tangential_is_x else (None, 0.0)
        pins = {j: (0.0, 0.0), outer_node: outer_pin}
    system = apply_dirichlet(system, BoundaryConditionSet(dirichlet=pins), mesh)
    disp = solve(system)
    if detrend_rigid and anchor_deg is None:
        disp = remove_rigid_motion(mesh, disp)
    return mesh, materials, disp


def pressure_load_cycle(
    spec: RingSpec,
    n_points: int = 64,
    n_radial: int = 8,
    method: str = "analytic",
) -> list[FrameContours]:
    """Wall contours of the ring at every pressure step of the schedule.

    ``method="analytic"`` displaces the circles by the closed-form solution
    (homogeneous rings only); ``method="fem"`` uses one traction-loaded unit
    solve, scaled per step by linearity, and supports stiff regions. Frame 0
    corresponds to the first scheduled pressure.
    """
    if not spec.pressures:
        raise ConfigurationError("ring spec has no pressure schedule")
    if method not in ("analytic", "fem"):
        raise ConfigurationError(f"method must be 'analytic' or 'fem', got {method!r}")
    if method == "analytic" and not spec.homogeneous:
        raise ConfigurationError("analytic cycle requires a homogeneous ring; use method='fem'")

    inner0 = circle_contour(spec.inner_radius, spec.center, n_points, "inner")
    outer0 = circle_contour(spec.outer_radius, spec.center, n_points, "outer")

    if method == "analytic":
        unit_inner = lame_displacement_at(spec, 1.0, inner0.points)
        unit_outer = lame_displacement_at(spec, 1.0, outer0.points)
    else:
        mesh, _, disp = solve_ring_traction(spec, 1.0, n_points, n_radial)
        unit_inner = disp.values[mesh.boundary_nodes("inner")]
        unit_outer = disp.values[mesh.boundary_nodes("outer")]
        # layer ordering of the structured mesh matches the contour samples
        if not np.allclose(mesh.nodes[mesh.boundary_nodes("inner")], inner0.points):
            raise GeometryError("mesh boundary does not match the reference contours")

    frames = []
    for k, p in enumerate(spec.pressures):
        inner = Contour(inner0.points + p * unit_inner, "inner")
        outer = Contour(outer0.points + p * unit_outer, "outer")
        frames.append(FrameContours(k, inner, outer))
    return frames
