"""File formats: contour CSV/JSON studies, manifests, VTK and CSV exports.

Contour CSV schema (header required, rows may be unordered):

    subject_id,slice,frame,boundary,point_index,x,y

with boundary in {inner, outer}. A study additionally needs a manifest JSON
carrying subject_id, slice_spacing_mm, and frames_per_cycle. The JSON study
format mirrors the same fields in nested form and is self-contained.

Field exports use legacy ASCII VTK (unstructured grid, triangle cells) plus
plain CSV tables, so results can be inspected without extra dependencies.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np
from scipy.io import mmwrite

from .contours import Contour, FrameContours
from .errors import ConfigurationError, GeometryError
from .fem import DisplacementField, LinearSystem
from .materials import AngularRegion, Material
from .meshing import Mesh
from .phantom import RingSpec
from .strain import SectorSummary, StrainField
from .study import LocalizationResult, Slice, Study, VolumeCurve

CONTOUR_CSV_COLUMNS = ("subject_id", "slice", "frame", "boundary", "point_index", "x", "y")


def _fmt(x: float) -> str:
    return repr(float(x))


# ---------------------------------------------------------------------------
# study ingest / emit


def write_study_csv(path, study: Study) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CONTOUR_CSV_COLUMNS)
        for sl in study.slices:
            for fc in sl.frames:
                for boundary, contour in (("inner", fc.inner), ("outer", fc.outer)):
                    for i, (x, y) in enumerate(contour.points):
                        writer.writerow(
                            [study.subject_id, sl.index, fc.frame_index, boundary,
                             i, _fmt(x), _fmt(y)]
                        )


def write_manifest(path, study: Study) -> None:
    payload = {
        "subject_id": study.subject_id,
        "slice_spacing_mm": study.slices[0].spacing,
        "frames_per_cycle": study.n_frames,
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def read_manifest(path) -> dict:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"manifest not found: {path}")
    data = json.loads(path.read_text())
    for key in ("subject_id", "slice_spacing_mm", "frames_per_cycle"):
        if key not in data:
            raise ConfigurationError(f"manifest {path} is missing {key!r}")
    return data


def _rows_to_contour(rows, where: str) -> Contour:
    rows = sorted(rows, key=lambda r: r[0])
    indices = [r[0] for r in rows]
    if indices != list(range(len(rows))):
        raise ConfigurationError(f"{where}: point_index values must be 0..n-1")
    pts = np.array([(r[1], r[2]) for r in rows], dtype=float)
    label = rows[0][3]
    contour = Contour(pts, label)
    if not contour.is_simple():
        raise GeometryError(f"{where}: contour is self-intersecting")
    return contour


def read_study_csv(csv_path, manifest_path) -> Study:
    """Ingest and validate a study from the CSV + manifest pair."""
    csv_path = Path(csv_path)
    if not csv_path.exists():
        raise FileNotFoundError(f"contour file not found: {csv_path}")
    manifest = read_manifest(manifest_path)

    grouped: dict[int, dict[int, dict[str, list]]] = {}
    with csv_path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not set(CONTOUR_CSV_COLUMNS) <= set(reader.fieldnames):
            raise ConfigurationError(
                f"{csv_path}: header must contain columns {CONTOUR_CSV_COLUMNS}"
            )
        for lineno, row in enumerate(reader, start=2):
            try:
                sl = int(row["slice"])
                frame = int(row["frame"])
                boundary = row["boundary"].strip()
                idx = int(row["point_index"])
                x = float(row["x"])
                y = float(row["y"])
            except (TypeError, ValueError) as exc:
                raise ConfigurationError(f"{csv_path}:{lineno}: malformed row ({exc})") from exc
            if boundary not in ("inner", "outer"):
                raise ConfigurationError(
                    f"{csv_path}:{lineno}: boundary must be inner or outer, got {boundary!r}"
                )
            grouped.setdefault(sl, {}).setdefault(frame, {}).setdefault(boundary, []).append(
                (idx, x, y, boundary)
            )
    if not grouped:
        raise ConfigurationError(f"{csv_path}: no contour rows found")

    slices = []
    for sl_idx in sorted(grouped):
        frames = []
        for frame_idx in sorted(grouped[sl_idx]):
            pair = grouped[sl_idx][frame_idx]
            where = f"{csv_path} slice {sl_idx} frame {frame_idx}"
            if set(pair) != {"inner", "outer"}:
                raise ConfigurationError(f"{where}: needs both inner and outer contours")
            frames.append(
                FrameContours(
                    frame_idx,
                    _rows_to_contour(pair["inner"], where + " inner"),
                    _rows_to_contour(pair["outer"], where + " outer"),
                )
            )
        slices.append(
            Slice(index=sl_idx, spacing=float(manifest["slice_spacing_mm"]), frames=tuple(frames))
        )
    study = Study(str(manifest["subject_id"]), tuple(slices))
    if study.n_frames != int(manifest["frames_per_cycle"]):
        raise ConfigurationError(
            f"manifest declares {manifest['frames_per_cycle']} frames per cycle, "
            f"contour file has {study.n_frames}"
        )
    return study


def write_study_json(path, study: Study) -> None:
    payload = {
        "subject_id": study.subject_id,
        "slice_spacing_mm": study.slices[0].spacing,
        "frames_per_cycle": study.n_frames,
        "slices": [
            {
                "slice": sl.index,
                "frames": [
                    {
                        "frame": fc.frame_index,
                        "inner": fc.inner.points.tolist(),
                        "outer": fc.outer.points.tolist(),
                    }
                    for fc in sl.frames
                ],
            }
            for sl in study.slices
        ],
    }
    Path(path).write_text(json.dumps(payload, indent=1) + "\n")


def read_study_json(path) -> Study:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"study file not found: {path}")
    data = json.loads(path.read_text())
    for key in ("subject_id", "slice_spacing_mm", "slices"):
        if key not in data:
            raise ConfigurationError(f"{path}: study JSON is missing {key!r}")
    slices = []
    for sl in data["slices"]:
        frames = []
        for fr in sorted(sl["frames"], key=lambda f: f["frame"]):
            where = f"{path} slice {sl['slice']} frame {fr['frame']}"
            inner = Contour(np.asarray(fr["inner"], dtype=float), "inner")
            outer = Contour(np.asarray(fr["outer"], dtype=float), "outer")
            for name, cont in (("inner", inner), ("outer", outer)):
                if not cont.is_simple():
                    raise GeometryError(f"{where} {name}: contour is self-intersecting")
            frames.append(FrameContours(int(fr["frame"]), inner, outer))
        slices.append(
            Slice(index=int(sl["slice"]), spacing=float(data["slice_spacing_mm"]),
                  frames=tuple(frames))
        )
    return Study(str(data["subject_id"]), tuple(slices))


def read_study(path, manifest_path=None) -> Study:
    """Dispatch on suffix: .json studies are self-contained, .csv needs a manifest."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        return read_study_json(path)
    if manifest_path is None:
        raise FileNotFoundError(f"CSV study {path} requires a manifest file")
    return read_study_csv(path, manifest_path)


# ---------------------------------------------------------------------------
# mesh / field exports


def write_mesh_vtk(
    path,
    mesh: Mesh,
    point_vectors: dict[str, np.ndarray] | None = None,
    cell_scalars: dict[str, np.ndarray] | None = None,
    title: str = "cardiofem output",
) -> None:
    """Legacy ASCII VTK unstructured grid with triangle cells (type 5)."""
    lines = [
        "# vtk DataFile Version 3.0",
        title,
        "ASCII",
        "DATASET UNSTRUCTURED_GRID",
        f"POINTS {mesh.n_nodes} double",
    ]
    lines += [f"{_fmt(x)} {_fmt(y)} 0.0" for x, y in mesh.nodes]
    lines.append(f"CELLS {mesh.n_triangles} {4 * mesh.n_triangles}")
    lines += [f"3 {a} {b} {c}" for a, b, c in mesh.triangles]
    lines.append(f"CELL_TYPES {mesh.n_triangles}")
    lines += ["5"] * mesh.n_triangles
    if point_vectors:
        lines.append(f"POINT_DATA {mesh.n_nodes}")
        for name, vec in point_vectors.items():
            lines.append(f"VECTORS {name} double")
            lines += [f"{_fmt(u)} {_fmt(v)} 0.0" for u, v in np.asarray(vec)]
    if cell_scalars:
        lines.append(f"CELL_DATA {mesh.n_triangles}")
        for name, arr in cell_scalars.items():
            lines.append(f"SCALARS {name} double 1")
            lines.append("LOOKUP_TABLE default")
            lines += [_fmt(v) for v in np.asarray(arr)]
    Path(path).write_text("\n".join(lines) + "\n")


def write_mesh_csv(nodes_path, elements_path, mesh: Mesh) -> None:
    with Path(nodes_path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["node_id", "x", "y"])
        for i, (x, y) in enumerate(mesh.nodes):
            writer.writerow([i, _fmt(x), _fmt(y)])
    with Path(elements_path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["element_id", "n0", "n1", "n2"])
        for i, (a, b, c) in enumerate(mesh.triangles):
            writer.writerow([i, a, b, c])


def write_displacement_csv(path, mesh: Mesh, disp: DisplacementField) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["node_id", "x", "y", "u", "v"])
        for i, ((x, y), (u, v)) in enumerate(zip(mesh.nodes, disp.values)):
            writer.writerow([i, _fmt(x), _fmt(y), _fmt(u), _fmt(v)])


def write_strain_csv(path, strain: StrainField) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["element_id", "eps_x", "eps_y", "gamma_xy", "effective"])
        for i in range(strain.n_elements):
            writer.writerow(
                [i, _fmt(strain.eps_x[i]), _fmt(strain.eps_y[i]),
                 _fmt(strain.gamma_xy[i]), _fmt(strain.effective[i])]
            )


def write_sector_csv(path, summaries: list[SectorSummary], frame_indices=None) -> None:
    """Sector time series: one row per (frame, sector)."""
    if frame_indices is None:
        frame_indices = list(range(1, len(summaries) + 1))
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["frame", "sector", "mean_displacement", "mean_effective", "count"])
        for frame, summary in zip(frame_indices, summaries):
            for s in range(summary.n_sectors):
                writer.writerow(
                    [frame, s, _fmt(summary.mean_displacement[s]),
                     _fmt(summary.mean_effective[s]), int(summary.counts[s])]
                )


def write_volume_csv(path, curve: VolumeCurve) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["frame", "volume", "normalized"])
        for k, (raw, norm) in enumerate(zip(curve.raw, curve.normalized)):
            writer.writerow([k, _fmt(raw), _fmt(norm)])


def write_localization_json(path, result: LocalizationResult) -> None:
    payload = {
        "tau": result.tau,
        "flags": list(result.flags),
        "suspected_sectors": list(result.suspected_sectors),
        "subject_sector_strain": result.subject_strain.tolist(),
        "reference_sector_strain": result.reference_strain.tolist(),
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def dump_system(prefix, system: LinearSystem) -> None:
    """Matrix-market dump of K and F for debugging."""
    prefix = Path(prefix)
    mmwrite(str(prefix) + "_K.mtx", system.stiffness)
    mmwrite(str(prefix) + "_F.mtx", system.load.reshape(-1, 1))


# ---------------------------------------------------------------------------
# phantom / material configuration


def read_phantom_spec(path) -> RingSpec:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"phantom spec not found: {path}")
    data = json.loads(path.read_text())
    base = data.get("material", {})
    material = Material(float(base.get("E", 1e4)), float(base.get("nu", 0.3)))
    regions = tuple(
        AngularRegion(
            float(r["start_deg"]), float(r["end_deg"]),
            Material(float(r.get("E", material.E)), float(r.get("nu", material.nu))),
        )
        for r in data.get("regions", [])
    )
    center = data.get("center", [0.0, 0.0])
    return RingSpec(
        inner_radius=float(data["inner_radius"]),
        outer_radius=float(data["outer_radius"]),
        center=(float(center[0]), float(center[1])),
        material=material,
        regions=regions,
        pressures=tuple(float(p) for p in data.get("pressures", [])),
    )


def write_phantom_spec(path, spec: RingSpec) -> None:
    payload = {
        "inner_radius": spec.inner_radius,
        "outer_radius": spec.outer_radius,
        "center": [spec.center.x, spec.center.y],
        "material": {"E": spec.material.E, "nu": spec.material.nu},
        "regions": [
            {"start_deg": r.start_deg, "end_deg": r.end_deg,
             "E": r.material.E, "nu": r.material.nu}
            for r in spec.regions
        ],
        "pressures": list(spec.pressures),
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")
