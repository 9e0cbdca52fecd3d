"""Study-level analysis: volume curves, per-frame deformation solves across
the cycle, and infarct localization from sector strain comparisons.

A study holds one or more slices, each an ordered sequence of frame contours
with frame 0 at begin systole. The deformation mesh is built once on frame-0
geometry and reused for every frame pair (small-strain assumption); frame
pairs are (0 -> k) in the default cumulative mode or (k-1 -> k) in
incremental mode. Rotation compensation per pair follows a linear ramp that
totals the configured systolic rotation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .contours import (
    FrameContours,
    boundary_displacements,
    centroid,
    is_simple_polygon,
    polygon_area,
    resample_uniform_angle,
)
from .errors import ConfigurationError, GeometryError, SolverError
from .fem import (
    DisplacementField,
    apply_dirichlet,
    assemble,
    boundary_conditions_from_displacements,
    solve,
)
from .materials import Material, MaterialField
from .meshing import triangulate_annulus
from .strain import SectorSummary, StrainField, sector_average, strain_field

REFERENCE_MODES = ("cumulative", "incremental")


@dataclass(frozen=True)
class Slice:
    """One short-axis slice: its spacing and the frames of one cycle."""

    index: int
    spacing: float  # slab thickness contribution, mm
    frames: tuple[FrameContours, ...]

    def __post_init__(self):
        if self.spacing <= 0.0:
            raise ConfigurationError(f"slice spacing must be positive, got {self.spacing}")
        frames = tuple(self.frames)
        if not frames:
            raise ConfigurationError("slice has no frames")
        for k, fc in enumerate(frames):
            if fc.frame_index != k:
                raise ConfigurationError(
                    f"slice {self.index}: frame indices must be contiguous from 0, "
                    f"found {fc.frame_index} at position {k}"
                )
        object.__setattr__(self, "frames", frames)

    @property
    def n_frames(self) -> int:
        return len(self.frames)


@dataclass(frozen=True)
class Study:
    subject_id: str
    slices: tuple[Slice, ...]

    def __post_init__(self):
        slices = tuple(self.slices)
        if not slices:
            raise ConfigurationError("study has no slices")
        counts = {s.n_frames for s in slices}
        if len(counts) != 1:
            raise ConfigurationError(f"inconsistent frame counts across slices: {counts}")
        object.__setattr__(self, "slices", slices)

    @property
    def n_frames(self) -> int:
        return self.slices[0].n_frames


@dataclass(frozen=True)
class VolumeCurve:
    """Raw and frame-0-normalized cavity volumes over the cycle."""

    raw: np.ndarray
    normalized: np.ndarray

    def __post_init__(self):
        raw = np.array(self.raw, dtype=float)
        norm = np.array(self.normalized, dtype=float)
        raw.setflags(write=False)
        norm.setflags(write=False)
        object.__setattr__(self, "raw", raw)
        object.__setattr__(self, "normalized", norm)

    @property
    def min_over_max(self) -> float:
        return float(np.min(self.raw) / np.max(self.raw))


@dataclass(frozen=True)
class CycleParams:
    """Configuration of the per-frame deformation analysis."""

    n_points: int = 64
    n_radial: int = 8
    rotation_deg_total: float = 0.0
    material: Material = Material(1e4, 0.3)
    mode: str = "as-printed"
    n_sectors: int = 16
    reference: str = "cumulative"

    def __post_init__(self):
        if self.n_points < 3:
            raise ConfigurationError("n_points must be >= 3")
        if self.n_radial < 1:
            raise ConfigurationError("n_radial must be >= 1")
        if self.n_sectors < 1:
            raise ConfigurationError("n_sectors must be >= 1")
        if self.reference not in REFERENCE_MODES:
            raise ConfigurationError(
                f"reference must be one of {REFERENCE_MODES}, got {self.reference!r}"
            )


@dataclass(frozen=True)
class FrameResult:
    frame_index: int
    displacement: DisplacementField
    strain: StrainField
    sectors: SectorSummary


@dataclass(frozen=True)
class LocalizationResult:
    """Per-sector infarct flags plus the strain matrices behind them."""

    flags: tuple[str, ...]  # "normal" | "suspected-infarct"
    subject_strain: np.ndarray    # (frames, sectors) sector-mean effective strain
    reference_strain: np.ndarray
    tau: float

    def __post_init__(self):
        subj = np.array(self.subject_strain, dtype=float)
        ref = np.array(self.reference_strain, dtype=float)
        subj.setflags(write=False)
        ref.setflags(write=False)
        object.__setattr__(self, "subject_strain", subj)
        object.__setattr__(self, "reference_strain", ref)
        object.__setattr__(self, "flags", tuple(self.flags))

    @property
    def suspected_sectors(self) -> tuple[int, ...]:
        return tuple(i for i, f in enumerate(self.flags) if f == "suspected-infarct")


# ---------------------------------------------------------------------------
# volume analytics


def ventricle_volume(study: Study, frame: int) -> float:
    """Slab-summed cavity volume of one frame: sum of |inner area| * spacing."""
    total = 0.0
    for sl in study.slices:
        if frame < 0 or frame >= sl.n_frames:
            raise ConfigurationError(f"frame {frame} outside study range")
        inner = sl.frames[frame].inner
        if not is_simple_polygon(inner.points):
            raise GeometryError(
                f"slice {sl.index} frame {frame}: inner contour self-intersects"
            )
        total += abs(polygon_area(inner.points)) * sl.spacing
    return total


def normalized_volume_curve(study: Study) -> VolumeCurve:
    """Per-frame volume normalized by the frame-0 (begin systole) volume."""
    if study.n_frames < 2:
        raise ConfigurationError("volume curve needs at least 2 frames")
    raw = np.array([ventricle_volume(study, k) for k in range(study.n_frames)])
    if raw[0] == 0.0:
        raise GeometryError("degenerate study: zero volume at frame 0")
    return VolumeCurve(raw, raw / raw[0])


# ---------------------------------------------------------------------------
# deformation analysis


def cycle_strain_analysis(
    study: Study,
    params: CycleParams = CycleParams(),
    slice_index: int = 0,
) -> list[FrameResult]:
    """Solve the deformation of one slice for every frame pair of the cycle.

    Returns one result per target frame 1..n-1. All solves reuse the mesh
    built on frame-0 geometry; in incremental mode the boundary samples of
    later reference frames are mapped onto it by angular index.
    """
    if slice_index < 0 or slice_index >= len(study.slices):
        raise ConfigurationError(f"slice index {slice_index} outside study")
    sl = study.slices[slice_index]
    frames = sl.frames
    n = len(frames)

    frame0 = frames[0]
    center = centroid(frame0.inner)
    inner0 = resample_uniform_angle(frame0.inner, center, params.n_points)
    outer0 = resample_uniform_angle(frame0.outer, center, params.n_points)
    mesh = triangulate_annulus(inner0, outer0, params.n_points, params.n_radial)
    materials = MaterialField.uniform(mesh, params.material)
    base_system = assemble(mesh, materials, params.mode)

    step_rot = params.rotation_deg_total / (n - 1) if n > 1 else 0.0
    results: list[FrameResult] = []
    for k in range(1, n):
        if params.reference == "cumulative":
            ref, target = frame0, frames[k]
            rotation = step_rot * k
            match = "position"
        else:
            ref, target = frames[k - 1], frames[k]
            rotation = step_rot
            match = "index"
        try:
            bd = boundary_displacements(ref, target, params.n_points, rotation)
            bcs = boundary_conditions_from_displacements(mesh, bd, match=match)
            disp = solve(apply_dirichlet(base_system, bcs, mesh))
        except (GeometryError, ConfigurationError, SolverError) as exc:
            raise type(exc)(f"frame {k}: {exc}") from exc
        sf = strain_field(mesh, disp, materials.nu, params.mode)
        sectors = sector_average(mesh, sf, disp, center, params.n_sectors)
        results.append(FrameResult(k, disp, sf, sectors))
    return results


def _stack_sector_strain(summaries: Sequence[SectorSummary]) -> np.ndarray:
    if not summaries:
        raise ConfigurationError("empty sector summary sequence")
    widths = {s.n_sectors for s in summaries}
    if len(widths) != 1:
        raise ConfigurationError(f"inconsistent sector counts: {widths}")
    return np.vstack([s.mean_effective for s in summaries])


def average_sector_summaries(
    sequences: Sequence[Sequence[SectorSummary]],
) -> list[SectorSummary]:
    """Per-sector, per-frame mean over several subjects' summary sequences."""
    if not sequences:
        raise ConfigurationError("no summary sequences to average")
    lengths = {len(seq) for seq in sequences}
    if len(lengths) != 1:
        raise ConfigurationError(f"inconsistent frame counts: {lengths}")
    out = []
    for per_frame in zip(*sequences):
        widths = {s.n_sectors for s in per_frame}
        if len(widths) != 1:
            raise ConfigurationError(f"inconsistent sector counts: {widths}")
        out.append(
            SectorSummary(
                n_sectors=per_frame[0].n_sectors,
                mean_displacement=np.mean([s.mean_displacement for s in per_frame], axis=0),
                mean_effective=np.mean([s.mean_effective for s in per_frame], axis=0),
                counts=per_frame[0].counts,
            )
        )
    return out


def infarct_localization(
    subject: Sequence[SectorSummary],
    reference: Sequence[SectorSummary],
    tau: float = 0.5,
) -> LocalizationResult:
    """Flag sectors whose time-averaged effective strain falls below
    tau times the reference value for the same sector."""
    subj = _stack_sector_strain(subject)
    ref = _stack_sector_strain(reference)
    if subj.shape != ref.shape:
        raise ConfigurationError(
            f"subject {subj.shape} and reference {ref.shape} summaries do not match"
        )
    subj_avg = subj.mean(axis=0)
    ref_avg = ref.mean(axis=0)
    flags = tuple(
        "suspected-infarct" if s < tau * r else "normal"
        for s, r in zip(subj_avg, ref_avg)
    )
    return LocalizationResult(flags, subj, ref, tau)
