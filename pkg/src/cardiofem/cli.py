"""Command-line interface.

Subcommands:

    phantom-verify   pressurized-ring verification suite (oracle + sectors)
    analyze          full study analysis: volumes, fields, sectors, flags
    synth            deterministic synthetic study generator
    mesh             mesh one frame and export it
    solve            solve one frame pair and export the displacement field
    strain           solve one frame pair and export strain + sector tables
    volume           volume curve of a study

Exit codes: 0 success, 1 tolerance or validation failure, 2 usage or input
error. A JSON config file (--config) may supply any long flag by name;
explicit flags override config values.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from types import SimpleNamespace

import numpy as np

from . import io as cfio
from .contours import boundary_displacements, centroid, resample_uniform_angle
from .errors import (
    ConfigurationError,
    ConstraintConflictError,
    GeometryError,
    MeshError,
    SolverError,
    StarShapeError,
)
from .fem import (
    BoundaryConditionSet,
    apply_dirichlet,
    assemble,
    boundary_conditions_from_displacements,
    solve,
)
from .materials import AngularRegion, Material, MaterialField
from .meshing import triangulate_annulus, validate
from .phantom import RingSpec, lame_displacement, make_ring, solve_ring_traction
from .strain import sector_average, strain_field
from .study import (
    CycleParams,
    average_sector_summaries,
    cycle_strain_analysis,
    infarct_localization,
    normalized_volume_curve,
)
from .synth import SYNTH_KINDS, healthy_study, mi_wedge_study, phantom_cycle_study

VALIDATION_ERRORS = (
    GeometryError,
    StarShapeError,
    MeshError,
    SolverError,
    ConstraintConflictError,
    ConfigurationError,
)

COMMON_DEFAULTS = {
    "out": "cardiofem-out",
    "mode": "as-printed",
    "sectors": 16,
    "tau": 0.5,
    "n_points": 64,
    "n_radial": 8,
    "rotation_deg": 0.0,
    "seed": 0,
    "young": 1e4,
    "poisson": 0.3,
}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON file supplying any long flag by name")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--mode", choices=("as-printed", "plane-strain"))
    parser.add_argument("--sectors", type=int, help="number of angular sectors")
    parser.add_argument("--tau", type=float, help="localization threshold fraction")
    parser.add_argument("--n-points", dest="n_points", type=int,
                        help="boundary resampling count / mesh angular resolution")
    parser.add_argument("--n-radial", dest="n_radial", type=int,
                        help="mesh radial resolution")
    parser.add_argument("--rotation-deg", dest="rotation_deg", type=float,
                        help="total clockwise rotation over the cycle to compensate")
    parser.add_argument("--seed", type=int, help="seed for synthetic generation")
    parser.add_argument("--young", type=float, help="Young's modulus")
    parser.add_argument("--poisson", type=float, help="Poisson's ratio")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cardiofem",
        description="2D finite-element myocardial deformation and strain analysis",
    )
    parser.set_defaults(command=None)
    sub = parser.add_subparsers(dest="command")
    # argparse.SUPPRESS keeps unset flags out of the namespace so config
    # values and defaults can be layered underneath explicit flags.
    parser.set_defaults(**{})

    p = sub.add_parser("phantom-verify", help="run the ring verification suite",
                       argument_default=argparse.SUPPRESS)
    _add_common(p)
    p.add_argument("--phantom-spec", dest="phantom_spec",
                   help="ring spec JSON (default: unit ring a=1 b=2)")

    p = sub.add_parser("analyze", help="analyze a study end to end",
                       argument_default=argparse.SUPPRESS)
    _add_common(p)
    p.add_argument("--study", help="study contour CSV or JSON")
    p.add_argument("--manifest", help="manifest JSON (for CSV studies)")
    p.add_argument("--reference", action="append", default=argparse.SUPPRESS,
                   help="reference study (repeatable); enables localization")
    p.add_argument("--reference-manifest", dest="reference_manifest", action="append",
                   default=argparse.SUPPRESS,
                   help="manifest for the matching --reference CSV")

    p = sub.add_parser("synth", help="generate a synthetic study",
                       argument_default=argparse.SUPPRESS)
    _add_common(p)
    p.add_argument("--kind", choices=SYNTH_KINDS)
    p.add_argument("--n-frames", dest="n_frames", type=int)
    p.add_argument("--contraction", type=float,
                   help="inner-wall radial contraction fraction over the cycle")

    for name, help_text in (
        ("mesh", "mesh one frame and export it"),
        ("solve", "solve one frame pair and export displacements"),
        ("strain", "solve one frame pair and export strain"),
        ("volume", "volume curve of a study"),
    ):
        p = sub.add_parser(name, help=help_text, argument_default=argparse.SUPPRESS)
        _add_common(p)
        p.add_argument("--study", help="study contour CSV or JSON")
        p.add_argument("--manifest", help="manifest JSON (for CSV studies)")
        p.add_argument("--slice", dest="slice_index", type=int, help="slice index")
        if name != "volume":
            p.add_argument("--frame", type=int, help="target frame (reference is frame 0)")
        if name == "solve":
            p.add_argument("--dump-system", dest="dump_system", action="store_true",
                           default=argparse.SUPPRESS,
                           help="also dump K and F in matrix-market format")
    return parser


def _merged_config(args: argparse.Namespace, extra_defaults: dict) -> SimpleNamespace:
    merged = dict(COMMON_DEFAULTS)
    merged.update(extra_defaults)
    explicit = {k: v for k, v in vars(args).items() if k != "command"}
    config_path = explicit.pop("config", None)
    if config_path:
        path = Path(config_path)
        if not path.exists():
            raise FileNotFoundError(f"config file not found: {path}")
        loaded = json.loads(path.read_text())
        if not isinstance(loaded, dict):
            raise ConfigurationError(f"config {path} must be a JSON object")
        for key, value in loaded.items():
            merged[key.replace("-", "_")] = value
    merged.update(explicit)
    return SimpleNamespace(**merged)


def _outdir(cfg) -> Path:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load_study(cfg):
    if getattr(cfg, "study", None) is None:
        raise FileNotFoundError("--study is required")
    return cfio.read_study(cfg.study, getattr(cfg, "manifest", None))


def _cycle_params(cfg) -> CycleParams:
    return CycleParams(
        n_points=cfg.n_points,
        n_radial=cfg.n_radial,
        rotation_deg_total=cfg.rotation_deg,
        material=Material(cfg.young, cfg.poisson),
        mode=cfg.mode,
        n_sectors=cfg.sectors,
    )


# ---------------------------------------------------------------------------
# phantom-verify


def _sector_summary_of(mesh, mats, disp, spec, n_sectors):
    sf = strain_field(mesh, disp, mats.nu, "plane-strain")
    return sector_average(mesh, sf, disp, spec.center, n_sectors)


def _pipeline_resolve(mesh, mats, disp, n_points):
    """Re-derive boundary conditions from deformed contours and solve again."""
    from .contours import Contour, FrameContours

    inner_nodes = mesh.boundary_nodes("inner")
    outer_nodes = mesh.boundary_nodes("outer")
    frame0 = FrameContours(
        0,
        Contour(mesh.nodes[inner_nodes], "inner"),
        Contour(mesh.nodes[outer_nodes], "outer"),
    )
    frame1 = FrameContours(
        1,
        Contour(mesh.nodes[inner_nodes] + disp.values[inner_nodes], "inner"),
        Contour(mesh.nodes[outer_nodes] + disp.values[outer_nodes], "outer"),
    )
    bd = boundary_displacements(frame0, frame1, n_points)
    bcs = boundary_conditions_from_displacements(mesh, bd, match="index")
    system = assemble(mesh, mats, "plane-strain")
    return solve(apply_dirichlet(system, bcs, mesh))


def _lame_dirichlet_error(spec: RingSpec, n_angular: int, n_radial: int) -> float:
    """Area-weighted relative L2 displacement error sampled at centroids.

    Centroid sampling keeps the metric honest even when a coarse mesh has no
    interior nodes (all nodal values then equal the imposed boundary data).
    """
    mesh, mats = make_ring(spec, n_angular, n_radial)
    system = assemble(mesh, mats, "plane-strain")
    c = np.asarray(spec.center, dtype=float)

    def exact_at(points):
        rel = points - c
        radii = np.linalg.norm(rel, axis=1)
        u = lame_displacement(
            spec.inner_radius, spec.outer_radius, 1.0, spec.material.E,
            spec.material.nu, radii,
        )
        return (u / radii)[:, None] * rel

    exact_nodes = exact_at(mesh.nodes)
    bnodes = np.concatenate([mesh.boundary_nodes("inner"), mesh.boundary_nodes("outer")])
    bcs = BoundaryConditionSet(
        dirichlet={int(n): (float(exact_nodes[n, 0]), float(exact_nodes[n, 1])) for n in bnodes}
    )
    disp = solve(apply_dirichlet(system, bcs, mesh))

    areas = mesh.triangle_areas()
    num_at_centroids = disp.values[mesh.triangles].mean(axis=1)
    # clamp centroid radii into the wall: the polygonal mesh lies slightly
    # inside the true circles
    rel = mesh.triangle_centroids() - c
    radii = np.clip(
        np.linalg.norm(rel, axis=1), spec.inner_radius, spec.outer_radius
    )
    exact_at_centroids = (
        lame_displacement(
            spec.inner_radius, spec.outer_radius, 1.0, spec.material.E,
            spec.material.nu, radii,
        )
        / np.linalg.norm(rel, axis=1)
    )[:, None] * rel
    diff2 = np.einsum("ij,ij->i", num_at_centroids - exact_at_centroids,
                      num_at_centroids - exact_at_centroids)
    ref2 = np.einsum("ij,ij->i", exact_at_centroids, exact_at_centroids)
    return float(np.sqrt(np.sum(areas * diff2) / np.sum(areas * ref2)))


def cmd_phantom_verify(cfg) -> int:
    out = _outdir(cfg)
    if getattr(cfg, "phantom_spec", None):
        spec = cfio.read_phantom_spec(cfg.phantom_spec)
    else:
        spec = RingSpec(1.0, 2.0, material=Material(cfg.young, cfg.poisson))
    base = (cfg.n_points, cfg.n_radial)
    resolutions = [
        (base[0] // 2, max(base[1] // 2, 1)),
        base,
        (base[0] * 2, base[1] * 2),
    ]
    failures = []

    errors = [_lame_dirichlet_error(spec, na, nr) for na, nr in resolutions]
    orders = [
        math.log2(errors[i] / errors[i + 1]) if errors[i + 1] > 0.0 else math.inf
        for i in range(len(errors) - 1)
    ]
    with (out / "convergence.csv").open("w") as fh:
        fh.write("n_angular,n_radial,h,l2_error,observed_order\n")
        for i, ((na, nr), err) in enumerate(zip(resolutions, errors)):
            h = (spec.outer_radius - spec.inner_radius) / nr
            order = "" if i == 0 else repr(orders[i - 1])
            fh.write(f"{na},{nr},{h!r},{err!r},{order}\n")
    mid_err = errors[1]
    print(f"[convergence] L2 errors: {['%.3e' % e for e in errors]}")
    print(f"[convergence] observed orders: {['%.3f' % o for o in orders]}")
    ok = mid_err <= 0.01
    print(f"[{'PASS' if ok else 'FAIL'}] mid-resolution L2 error {mid_err:.3e} <= 1e-2")
    if not ok:
        failures.append("L2 error")
    ok = min(orders) >= 1.7
    print(f"[{'PASS' if ok else 'FAIL'}] min observed order {min(orders):.3f} >= 1.7")
    if not ok:
        failures.append("convergence order")

    # independent traction-loaded cross-check of the oracle
    na, nr = resolutions[-1]
    mesh, mats, disp = solve_ring_traction(spec, 1.0, na, nr)
    c = np.asarray(spec.center, dtype=float)
    rel = mesh.nodes - c
    radii = np.linalg.norm(rel, axis=1)
    exact = (
        lame_displacement(
            spec.inner_radius, spec.outer_radius, 1.0, spec.material.E,
            spec.material.nu, radii,
        )
        / radii
    )[:, None] * rel
    traction_err = float(np.linalg.norm(disp.values - exact) / np.linalg.norm(exact))
    ok = traction_err <= 0.02
    print(f"[{'PASS' if ok else 'FAIL'}] traction cross-check L2 {traction_err:.3e} <= 2e-2")
    if not ok:
        failures.append("traction cross-check")

    # homogeneous route agreement: deformed contours through the full
    # pipeline must reproduce the traction solution's sector averages
    # (the homogeneous field is purely radial, so the angular matching is
    # exact up to interpolation)
    mesh, mats, disp = solve_ring_traction(spec, 1.0, cfg.n_points, cfg.n_radial)
    summary = _sector_summary_of(mesh, mats, disp, spec, cfg.sectors)
    disp2 = _pipeline_resolve(mesh, mats, disp, cfg.n_points)
    summary2 = _sector_summary_of(mesh, mats, disp2, spec, cfg.sectors)
    route_gap = float(
        np.max(np.abs(summary2.mean_displacement - summary.mean_displacement))
        / np.max(summary.mean_displacement)
    )
    ok = route_gap <= 0.05
    print(f"[{'PASS' if ok else 'FAIL'}] pipeline/traction sector agreement {route_gap:.3e} <= 5e-2")
    if not ok:
        failures.append("route agreement")

    # inhomogeneous ring: stiff wedge anchored at its mid angle; both the
    # traction route and the contour pipeline must rank its sectors lowest
    stiff = AngularRegion(225.0, 315.0, Material(spec.material.E * 10.0, spec.material.nu))
    stiff_spec = RingSpec(
        spec.inner_radius, spec.outer_radius, spec.center, spec.material, (stiff,)
    )
    mesh, mats, disp = solve_ring_traction(
        stiff_spec, 1.0, cfg.n_points, cfg.n_radial, anchor_deg=270.0
    )
    summary = _sector_summary_of(mesh, mats, disp, stiff_spec, cfg.sectors)
    disp2 = _pipeline_resolve(mesh, mats, disp, cfg.n_points)
    summary2 = _sector_summary_of(mesh, mats, disp2, stiff_spec, cfg.sectors)

    sector_width = 360.0 / cfg.sectors
    mids = (np.arange(cfg.sectors) + 0.5) * sector_width
    stiff_mask = (mids >= 225.0) & (mids < 315.0)
    with (out / "sector_comparison.csv").open("w") as fh:
        fh.write("sector,mean_disp_traction,mean_disp_pipeline,"
                 "mean_effective_traction,mean_effective_pipeline,stiff\n")
        for s in range(cfg.sectors):
            fh.write(
                f"{s},{summary.mean_displacement[s]!r},{summary2.mean_displacement[s]!r},"
                f"{summary.mean_effective[s]!r},{summary2.mean_effective[s]!r},"
                f"{int(stiff_mask[s])}\n"
            )

    for route, summ in (("traction", summary), ("pipeline", summary2)):
        md, me = summ.mean_displacement, summ.mean_effective
        ok = bool(
            md[stiff_mask].max() < md[~stiff_mask].min()
            and me[stiff_mask].max() < me[~stiff_mask].min()
        )
        print(
            f"[{'PASS' if ok else 'FAIL'}] stiff-sector displacement and strain "
            f"strict minima ({route} route)"
        )
        if not ok:
            failures.append(f"stiff-sector minima ({route})")

    print(f"wrote {out / 'convergence.csv'} and {out / 'sector_comparison.csv'}")
    if failures:
        print(f"FAILED checks: {', '.join(failures)}")
        return 1
    return 0


# ---------------------------------------------------------------------------
# analyze and the small single-step commands


def _analyze_one(study, params):
    """Per-slice cycle analysis for a whole study."""
    return [cycle_strain_analysis(study, params, slice_index=i)
            for i in range(len(study.slices))]


def cmd_analyze(cfg) -> int:
    out = _outdir(cfg)
    study = _load_study(cfg)
    params = _cycle_params(cfg)

    curve = normalized_volume_curve(study)
    cfio.write_volume_csv(out / "volume_curve.csv", curve)

    per_slice = _analyze_one(study, params)
    for sl, results in zip(study.slices, per_slice):
        frame0 = sl.frames[0]
        center = centroid(frame0.inner)
        inner0 = resample_uniform_angle(frame0.inner, center, params.n_points)
        outer0 = resample_uniform_angle(frame0.outer, center, params.n_points)
        mesh = triangulate_annulus(inner0, outer0, params.n_points, params.n_radial)
        for res in results:
            cfio.write_mesh_vtk(
                out / f"fields_slice{sl.index}_frame{res.frame_index}.vtk",
                mesh,
                point_vectors={"displacement": res.displacement.values},
                cell_scalars={
                    "eps_x": res.strain.eps_x,
                    "eps_y": res.strain.eps_y,
                    "gamma_xy": res.strain.gamma_xy,
                    "effective": res.strain.effective,
                },
            )
        cfio.write_sector_csv(
            out / f"sector_timeseries_slice{sl.index}.csv",
            [r.sectors for r in results],
            [r.frame_index for r in results],
        )
        with (out / f"strain_aggregates_slice{sl.index}.csv").open("w") as fh:
            fh.write("frame,mean_effective,max_effective\n")
            for r in results:
                fh.write(
                    f"{r.frame_index},{float(np.mean(r.strain.effective))!r},"
                    f"{float(np.max(r.strain.effective))!r}\n"
                )

    references = getattr(cfg, "reference", None)
    if references:
        ref_manifests = list(getattr(cfg, "reference_manifest", None) or [])
        ref_sequences = []
        for i, ref_path in enumerate(references):
            manifest = ref_manifests[i] if i < len(ref_manifests) else getattr(cfg, "manifest", None)
            ref_sequences.append(cfio.read_study(ref_path, manifest))
        for sl_pos, (sl, results) in enumerate(zip(study.slices, per_slice)):
            ref_runs = []
            for ref_study in ref_sequences:
                ref_results = cycle_strain_analysis(ref_study, params, slice_index=sl_pos)
                ref_runs.append([r.sectors for r in ref_results])
            reference = average_sector_summaries(ref_runs)
            loc = infarct_localization([r.sectors for r in results], reference, cfg.tau)
            cfio.write_localization_json(out / f"localization_slice{sl.index}.json", loc)
            flagged = loc.suspected_sectors
            print(
                f"slice {sl.index}: suspected sectors {list(flagged)}"
                if flagged
                else f"slice {sl.index}: no suspected sectors"
            )
    print(f"artifacts written to {out}")
    return 0


def cmd_synth(cfg) -> int:
    out = _outdir(cfg)
    kind = getattr(cfg, "kind", "healthy")
    n_frames = getattr(cfg, "n_frames", 20)
    contraction = getattr(cfg, "contraction", 0.3)
    if kind == "healthy":
        study = healthy_study(
            seed=cfg.seed, n_frames=n_frames, n_points=cfg.n_points,
            contraction_inner=contraction, contraction_outer=contraction / 2.0,
            rotation_deg_total=cfg.rotation_deg,
        )
    elif kind == "mi-wedge":
        study = mi_wedge_study(
            seed=cfg.seed, n_frames=n_frames, n_points=cfg.n_points,
            contraction_inner=contraction, contraction_outer=contraction / 2.0,
            rotation_deg_total=cfg.rotation_deg,
        )
    elif kind == "phantom-cycle":
        study = phantom_cycle_study(n_points=cfg.n_points, n_steps=n_frames - 1)
    else:
        raise ConfigurationError(f"unknown synth kind {kind!r}")
    cfio.write_study_csv(out / "contours.csv", study)
    cfio.write_manifest(out / "manifest.json", study)
    cfio.write_study_json(out / "study.json", study)
    print(f"wrote {out / 'contours.csv'}, {out / 'manifest.json'}, {out / 'study.json'}")
    return 0


def _frame_pair_solve(cfg, study):
    slice_index = getattr(cfg, "slice_index", 0)
    frame = getattr(cfg, "frame", None)
    if frame is None:
        frame = study.n_frames - 1
    sl = study.slices[slice_index]
    if frame < 1 or frame >= sl.n_frames:
        raise ConfigurationError(f"frame must be in 1..{sl.n_frames - 1}, got {frame}")
    frame0 = sl.frames[0]
    center = centroid(frame0.inner)
    inner0 = resample_uniform_angle(frame0.inner, center, cfg.n_points)
    outer0 = resample_uniform_angle(frame0.outer, center, cfg.n_points)
    mesh = triangulate_annulus(inner0, outer0, cfg.n_points, cfg.n_radial)
    materials = MaterialField.uniform(mesh, Material(cfg.young, cfg.poisson))
    rotation = cfg.rotation_deg * frame / (sl.n_frames - 1) if sl.n_frames > 1 else 0.0
    bd = boundary_displacements(frame0, sl.frames[frame], cfg.n_points, rotation)
    bcs = boundary_conditions_from_displacements(mesh, bd)
    system = assemble(mesh, materials, cfg.mode)
    constrained = apply_dirichlet(system, bcs, mesh)
    disp = solve(constrained)
    return mesh, materials, constrained, disp, center, frame


def cmd_mesh(cfg) -> int:
    out = _outdir(cfg)
    study = _load_study(cfg)
    slice_index = getattr(cfg, "slice_index", 0)
    frame = getattr(cfg, "frame", 0)
    fc = study.slices[slice_index].frames[frame]
    center = centroid(fc.inner)
    inner = resample_uniform_angle(fc.inner, center, cfg.n_points)
    outer = resample_uniform_angle(fc.outer, center, cfg.n_points)
    mesh = triangulate_annulus(inner, outer, cfg.n_points, cfg.n_radial)
    report = validate(mesh)
    print(report)
    cfio.write_mesh_vtk(out / "mesh.vtk", mesh)
    cfio.write_mesh_csv(out / "nodes.csv", out / "elements.csv", mesh)
    print(f"wrote {out / 'mesh.vtk'}, {out / 'nodes.csv'}, {out / 'elements.csv'}")
    return 0 if report.passed else 1


def cmd_solve(cfg) -> int:
    out = _outdir(cfg)
    study = _load_study(cfg)
    mesh, _, constrained, disp, _, frame = _frame_pair_solve(cfg, study)
    cfio.write_mesh_vtk(
        out / f"displacement_frame{frame}.vtk",
        mesh,
        point_vectors={"displacement": disp.values},
    )
    cfio.write_displacement_csv(out / f"displacement_frame{frame}.csv", mesh, disp)
    if getattr(cfg, "dump_system", False):
        cfio.dump_system(out / f"system_frame{frame}", constrained)
    print(f"artifacts written to {out}")
    return 0


def cmd_strain(cfg) -> int:
    out = _outdir(cfg)
    study = _load_study(cfg)
    mesh, materials, _, disp, center, frame = _frame_pair_solve(cfg, study)
    sf = strain_field(mesh, disp, materials.nu, cfg.mode)
    summary = sector_average(mesh, sf, disp, center, cfg.sectors)
    cfio.write_mesh_vtk(
        out / f"strain_frame{frame}.vtk",
        mesh,
        point_vectors={"displacement": disp.values},
        cell_scalars={
            "eps_x": sf.eps_x,
            "eps_y": sf.eps_y,
            "gamma_xy": sf.gamma_xy,
            "effective": sf.effective,
        },
    )
    cfio.write_strain_csv(out / f"strain_frame{frame}.csv", sf)
    cfio.write_sector_csv(out / f"sectors_frame{frame}.csv", [summary], [frame])
    print(f"artifacts written to {out}")
    return 0


def cmd_volume(cfg) -> int:
    out = _outdir(cfg)
    study = _load_study(cfg)
    curve = normalized_volume_curve(study)
    cfio.write_volume_csv(out / "volume_curve.csv", curve)
    print(
        f"volume curve written to {out / 'volume_curve.csv'}; "
        f"min/max ratio {curve.min_over_max:.4f}"
    )
    return 0


COMMANDS = {
    "phantom-verify": cmd_phantom_verify,
    "analyze": cmd_analyze,
    "synth": cmd_synth,
    "mesh": cmd_mesh,
    "solve": cmd_solve,
    "strain": cmd_strain,
    "volume": cmd_volume,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 2
    try:
        cfg = _merged_config(args, {})
        return COMMANDS[args.command](cfg)
    except (FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry_point() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry_point()
