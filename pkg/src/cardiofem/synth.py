"""Deterministic synthetic studies for testing and demonstration.

Generators build near-circular wall contours with seeded low-order radial
perturbation (angular modes 2..5 only, so the vertex centroid stays at the
generation center) and deform them over the cycle by radial contraction,
optional rigid rotation, and, for the infarct variant, an angular wedge
whose boundary points barely move.
"""

from __future__ import annotations

import math

import numpy as np

from .contours import Contour, FrameContours, rotate_about
from .errors import ConfigurationError
from .phantom import RingSpec, pressure_load_cycle
from .study import Slice, Study

TWO_PI = 2.0 * math.pi

SYNTH_KINDS = ("healthy", "mi-wedge", "phantom-cycle")


def _perturbed_radii(rng: np.random.Generator, base_radius: float, theta, amplitude: float):
    radii = np.full(len(theta), float(base_radius))
    for mode in (2, 3, 4, 5):
        amp = amplitude * base_radius * rng.uniform(0.2, 1.0) / 4.0
        phase = rng.uniform(0.0, TWO_PI)
        radii += amp * np.cos(mode * theta + phase)
    return radii


def _base_walls(rng, n_points, inner_radius, outer_radius, center, perturbation):
    theta = TWO_PI * np.arange(n_points) / n_points
    c = np.asarray(center, dtype=float)
    r_in = _perturbed_radii(rng, inner_radius, theta, perturbation)
    r_out = _perturbed_radii(rng, outer_radius, theta, perturbation)
    unit = np.column_stack([np.cos(theta), np.sin(theta)])
    return theta, c + r_in[:, None] * unit, c + r_out[:, None] * unit


def _smoothstep(t):
    t = np.clip(t, 0.0, 1.0)
    return t * t * (3.0 - 2.0 * t)


def _wedge_motion_factor(theta_deg, start_deg, end_deg, inert, transition_deg, margin_deg):
    """Motion scale: `inert` inside [start, end), ramping to 1 outside.

    The inert plateau extends ``margin_deg`` past the wedge on both sides and
    the smooth transitions sit entirely outside that, so every wedge point
    moves by exactly the inert fraction and the steep strain gradient stays
    clear of the wedge sectors.
    """
    a = np.mod(theta_deg - start_deg, 360.0)
    span = (end_deg - start_deg) % 360.0 or 360.0
    factor = np.ones(len(a))
    factor[a < span + margin_deg] = inert
    rise = (a >= span + margin_deg) & (a < span + margin_deg + transition_deg)
    factor[rise] = inert + (1.0 - inert) * _smoothstep(
        (a[rise] - span - margin_deg) / transition_deg
    )
    factor[a >= 360.0 - margin_deg] = inert
    fall = (a >= 360.0 - margin_deg - transition_deg) & (a < 360.0 - margin_deg)
    factor[fall] = inert + (1.0 - inert) * _smoothstep(
        (360.0 - margin_deg - a[fall]) / transition_deg
    )
    return factor


def healthy_study(
    seed: int = 0,
    n_frames: int = 20,
    n_points: int = 64,
    n_slices: int = 1,
    inner_radius: float = 30.0,
    outer_radius: float = 50.0,
    center=(128.0, 128.0),
    perturbation: float = 0.02,
    contraction_inner: float = 0.3,
    contraction_outer: float = 0.15,
    rotation_deg_total: float = 0.0,
    slice_spacing: float = 8.0,
    subject_id: str = "synthetic-healthy",
) -> Study:
    """Contracting (and optionally rotating) synthetic left-ventricle study.

    Frame k scales wall points radially about the center by
    1 - contraction * k / (n_frames - 1) and rotates them clockwise by
    rotation_deg_total * k / (n_frames - 1).
    """
    return _modulated_study(
        seed=seed, n_frames=n_frames, n_points=n_points, n_slices=n_slices,
        inner_radius=inner_radius, outer_radius=outer_radius, center=center,
        perturbation=perturbation, contraction_inner=contraction_inner,
        contraction_outer=contraction_outer, rotation_deg_total=rotation_deg_total,
        slice_spacing=slice_spacing, subject_id=subject_id, wedge=None,
    )


def mi_wedge_study(
    seed: int = 0,
    n_frames: int = 20,
    n_points: int = 64,
    n_slices: int = 1,
    inner_radius: float = 30.0,
    outer_radius: float = 50.0,
    center=(128.0, 128.0),
    perturbation: float = 0.02,
    contraction_inner: float = 0.3,
    contraction_outer: float = 0.15,
    rotation_deg_total: float = 0.0,
    slice_spacing: float = 8.0,
    subject_id: str = "synthetic-mi",
    wedge_start_deg: float = 90.0,
    wedge_end_deg: float = 180.0,
    inert_factor: float = 0.03,
    transition_deg: float = 12.0,
    margin_deg: float = 5.0,
) -> Study:
    """Same study as :func:`healthy_study` for the same seed, except boundary
    points inside the wedge move by only ``inert_factor`` of their healthy
    displacement."""
    if not (0.0 <= inert_factor < 1.0):
        raise ConfigurationError("inert_factor must be in [0, 1)")
    return _modulated_study(
        seed=seed, n_frames=n_frames, n_points=n_points, n_slices=n_slices,
        inner_radius=inner_radius, outer_radius=outer_radius, center=center,
        perturbation=perturbation, contraction_inner=contraction_inner,
        contraction_outer=contraction_outer, rotation_deg_total=rotation_deg_total,
        slice_spacing=slice_spacing, subject_id=subject_id,
        wedge=(wedge_start_deg, wedge_end_deg, inert_factor, transition_deg, margin_deg),
    )


def _modulated_study(
    *, seed, n_frames, n_points, n_slices, inner_radius, outer_radius, center,
    perturbation, contraction_inner, contraction_outer, rotation_deg_total,
    slice_spacing, subject_id, wedge,
) -> Study:
    if n_frames < 2:
        raise ConfigurationError("need at least 2 frames")
    rng = np.random.default_rng(seed)
    c = np.asarray(center, dtype=float)
    slices = []
    for s in range(n_slices):
        theta, inner0, outer0 = _base_walls(
            rng, n_points, inner_radius, outer_radius, c, perturbation
        )
        theta_deg = np.degrees(theta)
        if wedge is not None:
            start, end, inert, trans, margin = wedge
            factor_in = _wedge_motion_factor(theta_deg, start, end, inert, trans, margin)
            factor_out = factor_in
        else:
            factor_in = factor_out = np.ones(n_points)

        frames = []
        for k in range(n_frames):
            t = k / (n_frames - 1)
            healthy_in = c + (1.0 - contraction_inner * t) * (inner0 - c)
            healthy_out = c + (1.0 - contraction_outer * t) * (outer0 - c)
            if rotation_deg_total != 0.0:
                rot = -math.radians(rotation_deg_total * t)  # clockwise
                healthy_in = rotate_about(healthy_in, c, rot)
                healthy_out = rotate_about(healthy_out, c, rot)
            pts_in = inner0 + factor_in[:, None] * (healthy_in - inner0)
            pts_out = outer0 + factor_out[:, None] * (healthy_out - outer0)
            frames.append(
                FrameContours(k, Contour(pts_in, "inner"), Contour(pts_out, "outer"))
            )
        slices.append(Slice(index=s, spacing=slice_spacing, frames=tuple(frames)))
    return Study(subject_id, tuple(slices))


def phantom_cycle_study(
    spec: RingSpec | None = None,
    n_points: int = 64,
    n_steps: int = 10,
    p_max: float = 1.0,
    slice_spacing: float = 1.0,
    subject_id: str = "phantom-cycle",
    method: str = "analytic",
) -> Study:
    """Ring pressurization cycle packaged as a single-slice study."""
    if spec is None:
        spec = RingSpec(inner_radius=1.0, outer_radius=2.0)
    if not spec.pressures:
        spec = spec.with_pressure_ramp(p_max, n_steps)
    frames = pressure_load_cycle(spec, n_points=n_points, method=method)
    return Study(subject_id, (Slice(index=0, spacing=slice_spacing, frames=tuple(frames)),))
