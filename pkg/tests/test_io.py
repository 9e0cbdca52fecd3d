import csv
import json

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.io import mmread

import cardiofem.io as cfio
from cardiofem import (
    BoundaryConditionSet,
    ConfigurationError,
    DisplacementField,
    Material,
    RingSpec,
    AngularRegion,
    apply_dirichlet,
    assemble,
    healthy_study,
    make_ring,
    strain_field,
    sector_average,
)


@pytest.fixture
def study():
    return healthy_study(seed=3, n_frames=4, n_points=24)


def test_csv_round_trip(tmp_path, study):
    csv_path = tmp_path / "contours.csv"
    manifest = tmp_path / "manifest.json"
    cfio.write_study_csv(csv_path, study)
    cfio.write_manifest(manifest, study)
    back = cfio.read_study_csv(csv_path, manifest)
    assert back.subject_id == study.subject_id
    assert back.n_frames == study.n_frames
    for sl_a, sl_b in zip(study.slices, back.slices):
        assert sl_a.spacing == sl_b.spacing
        for fa, fb in zip(sl_a.frames, sl_b.frames):
            # repr round trip preserves the exact float values
            assert np.array_equal(fa.inner.points, fb.inner.points)
            assert np.array_equal(fa.outer.points, fb.outer.points)


def test_csv_deterministic_bytes(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    cfio.write_study_csv(a, healthy_study(seed=42, n_frames=3, n_points=16))
    cfio.write_study_csv(b, healthy_study(seed=42, n_frames=3, n_points=16))
    assert a.read_bytes() == b.read_bytes()


def test_csv_accepts_shuffled_rows(tmp_path, study):
    csv_path = tmp_path / "contours.csv"
    manifest = tmp_path / "manifest.json"
    cfio.write_study_csv(csv_path, study)
    cfio.write_manifest(manifest, study)
    with csv_path.open() as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    rng = np.random.default_rng(1)
    body = [body[i] for i in rng.permutation(len(body))]
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(body)
    back = cfio.read_study_csv(csv_path, manifest)
    assert np.array_equal(
        back.slices[0].frames[1].inner.points, study.slices[0].frames[1].inner.points
    )


def test_csv_missing_column(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("subject_id,slice,frame,x,y\n")
    manifest = tmp_path / "manifest.json"
    manifest.write_text(
        json.dumps({"subject_id": "x", "slice_spacing_mm": 8.0, "frames_per_cycle": 1})
    )
    with pytest.raises(ConfigurationError):
        cfio.read_study_csv(path, manifest)


def test_csv_bad_boundary_label(tmp_path, study):
    csv_path = tmp_path / "contours.csv"
    manifest = tmp_path / "manifest.json"
    cfio.write_study_csv(csv_path, study)
    cfio.write_manifest(manifest, study)
    text = csv_path.read_text().replace("inner", "endo")
    csv_path.write_text(text)
    with pytest.raises(ConfigurationError):
        cfio.read_study_csv(csv_path, manifest)


def test_manifest_frame_count_mismatch(tmp_path, study):
    csv_path = tmp_path / "contours.csv"
    manifest = tmp_path / "manifest.json"
    cfio.write_study_csv(csv_path, study)
    payload = {"subject_id": study.subject_id, "slice_spacing_mm": 8.0,
               "frames_per_cycle": 99}
    manifest.write_text(json.dumps(payload))
    with pytest.raises(ConfigurationError):
        cfio.read_study_csv(csv_path, manifest)


def test_missing_files(tmp_path):
    with pytest.raises(FileNotFoundError):
        cfio.read_study_csv(tmp_path / "none.csv", tmp_path / "none.json")
    with pytest.raises(FileNotFoundError):
        cfio.read_manifest(tmp_path / "none.json")
    with pytest.raises(FileNotFoundError):
        cfio.read_study(tmp_path / "x.csv", None)


def test_json_round_trip(tmp_path, study):
    path = tmp_path / "study.json"
    cfio.write_study_json(path, study)
    back = cfio.read_study_json(path)
    assert back.subject_id == study.subject_id
    assert_allclose(
        back.slices[0].frames[2].outer.points, study.slices[0].frames[2].outer.points
    )
    dispatched = cfio.read_study(path)
    assert dispatched.n_frames == study.n_frames


def test_vtk_export_structure(tmp_path):
    mesh, mats = make_ring(RingSpec(1.0, 2.0), 8, 1)
    disp = DisplacementField(np.zeros((mesh.n_nodes, 2)))
    sf = strain_field(mesh, disp, mats.nu)
    path = tmp_path / "out.vtk"
    cfio.write_mesh_vtk(
        path, mesh,
        point_vectors={"displacement": disp.values},
        cell_scalars={"effective": sf.effective},
    )
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# vtk DataFile")
    assert "DATASET UNSTRUCTURED_GRID" in lines
    assert f"POINTS {mesh.n_nodes} double" in lines
    assert f"CELLS {mesh.n_triangles} {4 * mesh.n_triangles}" in lines
    assert f"CELL_TYPES {mesh.n_triangles}" in lines
    assert lines.count("5") >= mesh.n_triangles
    assert f"POINT_DATA {mesh.n_nodes}" in lines
    assert "VECTORS displacement double" in lines
    assert f"CELL_DATA {mesh.n_triangles}" in lines
    assert "SCALARS effective double 1" in lines


def test_mesh_and_field_csv(tmp_path):
    mesh, mats = make_ring(RingSpec(1.0, 2.0), 8, 1)
    cfio.write_mesh_csv(tmp_path / "nodes.csv", tmp_path / "elements.csv", mesh)
    nodes = (tmp_path / "nodes.csv").read_text().splitlines()
    elements = (tmp_path / "elements.csv").read_text().splitlines()
    assert len(nodes) == mesh.n_nodes + 1
    assert len(elements) == mesh.n_triangles + 1

    rng = np.random.default_rng(0)
    disp = DisplacementField(rng.normal(size=(mesh.n_nodes, 2)))
    cfio.write_displacement_csv(tmp_path / "disp.csv", mesh, disp)
    assert len((tmp_path / "disp.csv").read_text().splitlines()) == mesh.n_nodes + 1

    sf = strain_field(mesh, disp, mats.nu)
    cfio.write_strain_csv(tmp_path / "strain.csv", sf)
    assert len((tmp_path / "strain.csv").read_text().splitlines()) == mesh.n_triangles + 1

    summary = sector_average(mesh, sf, disp, (0.0, 0.0), 4)
    cfio.write_sector_csv(tmp_path / "sector.csv", [summary], [1])
    assert len((tmp_path / "sector.csv").read_text().splitlines()) == 5


def test_dump_system_matrix_market(tmp_path):
    mesh, mats = make_ring(RingSpec(1.0, 2.0), 8, 1)
    system = assemble(mesh, mats)
    bcs = BoundaryConditionSet(dirichlet={0: (0.01, 0.0)})
    constrained = apply_dirichlet(system, bcs, mesh)
    cfio.dump_system(tmp_path / "sys", constrained)
    k = mmread(tmp_path / "sys_K.mtx").toarray()
    f = np.asarray(mmread(tmp_path / "sys_F.mtx")).ravel()
    assert_allclose(k, constrained.stiffness.toarray(), rtol=1e-15)
    assert_allclose(f, constrained.load, rtol=1e-15)


def test_phantom_spec_round_trip(tmp_path):
    spec = RingSpec(
        1.0, 2.0, material=Material(2e4, 0.25),
        regions=(AngularRegion(45.0, 135.0, Material(2e5, 0.25)),),
        pressures=(0.0, 0.5, 1.0),
    )
    path = tmp_path / "phantom.json"
    cfio.write_phantom_spec(path, spec)
    back = cfio.read_phantom_spec(path)
    assert back.inner_radius == spec.inner_radius
    assert back.material == spec.material
    assert back.regions == spec.regions
    assert back.pressures == spec.pressures


def test_localization_json(tmp_path):
    from cardiofem import LocalizationResult

    result = LocalizationResult(
        flags=("normal", "suspected-infarct"),
        subject_strain=np.array([[1.0, 0.1]]),
        reference_strain=np.array([[1.0, 1.0]]),
        tau=0.5,
    )
    path = tmp_path / "loc.json"
    cfio.write_localization_json(path, result)
    data = json.loads(path.read_text())
    assert data["flags"] == ["normal", "suspected-infarct"]
    assert data["suspected_sectors"] == [1]
    assert data["tau"] == 0.5
