"""Structured triangular meshing of the annular wall region.

The mesh interpolates ``n_radial + 1`` node layers between angularly matched
inner and outer contour samples and splits each quad into two triangles along
the diagonal anchored at the node with the lower (angular, radial) indices.
The construction is deterministic, all triangles are counter-clockwise, and
the inner/outer boundary loops are labeled by layer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .contours import Contour
from .errors import GeometryError, MeshError

#: Default minimum interior angle (degrees) below which validate() warns.
QUALITY_ANGLE_DEG = 15.0


@dataclass(frozen=True)
class Mesh:
    """Immutable triangle mesh of an annulus with labeled boundary edges."""

    nodes: np.ndarray          # (V, 2) float
    triangles: np.ndarray      # (F, 3) int, counter-clockwise
    boundary_edges: np.ndarray  # (B, 2) int node pairs, loop traversal order
    boundary_labels: tuple[str, ...]  # per edge, "inner" or "outer"

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float)
        tris = np.array(self.triangles, dtype=np.int64)
        edges = np.array(self.boundary_edges, dtype=np.int64)
        if nodes.ndim != 2 or nodes.shape[1] != 2 or not np.all(np.isfinite(nodes)):
            raise MeshError("nodes must be a finite (V, 2) array")
        if tris.ndim != 2 or tris.shape[1] != 3:
            raise MeshError("triangles must be (F, 3)")
        if edges.ndim != 2 or edges.shape[1] != 2:
            raise MeshError("boundary_edges must be (B, 2)")
        if len(edges) != len(self.boundary_labels):
            raise MeshError("boundary edge/label length mismatch")
        for lab in self.boundary_labels:
            if lab not in ("inner", "outer"):
                raise MeshError(f"unknown boundary label {lab!r}")
        if len(tris) and (tris.min() < 0 or tris.max() >= len(nodes)):
            raise MeshError("triangle node index out of range")
        if len(edges) and (edges.min() < 0 or edges.max() >= len(nodes)):
            raise MeshError("boundary edge node index out of range")
        for arr, name in ((nodes, "nodes"), (tris, "triangles"), (edges, "boundary_edges")):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "boundary_labels", tuple(self.boundary_labels))

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    def triangle_areas(self) -> np.ndarray:
        """Signed areas; positive for counter-clockwise triangles."""
        p = self.nodes[self.triangles]
        v1 = p[:, 1] - p[:, 0]
        v2 = p[:, 2] - p[:, 0]
        return 0.5 * (v1[:, 0] * v2[:, 1] - v1[:, 1] * v2[:, 0])

    def triangle_centroids(self) -> np.ndarray:
        return self.nodes[self.triangles].mean(axis=1)

    def unique_edges(self) -> np.ndarray:
        """All undirected edges of the triangulation, one row per edge."""
        t = self.triangles
        pairs = np.vstack([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])
        pairs.sort(axis=1)
        return np.unique(pairs, axis=0)

    def boundary_nodes(self, label: str) -> np.ndarray:
        """Sorted unique node indices on the named boundary loop."""
        mask = np.array([lab == label for lab in self.boundary_labels])
        return np.unique(self.boundary_edges[mask])


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]
    warnings: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __str__(self) -> str:
        lines = [
            f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.detail}" for c in self.checks
        ]
        lines += [f"[WARN] {w}" for w in self.warnings]
        return "\n".join(lines)


def triangulate_annulus(
    inner: Contour, outer: Contour, n_angular: int, n_radial: int
) -> Mesh:
    """Mesh the region between two angularly matched contours.

    Both contours must already be resampled to the same ``n_angular`` uniform
    angles about a common center, so that points with equal index correspond.
    Node layers are linear interpolations between matched point pairs.
    """
    if n_angular < 3:
        raise MeshError("n_angular must be >= 3")
    if n_radial < 1:
        raise MeshError("n_radial must be >= 1")
    if len(inner) != n_angular or len(outer) != n_angular:
        raise MeshError(
            f"contours must have exactly n_angular={n_angular} points "
            f"(got {len(inner)} inner, {len(outer)} outer)"
        )
    pi = inner.points
    po = outer.points
    thickness = np.linalg.norm(po - pi, axis=1)
    scale = float(np.max(np.abs(np.vstack([pi, po])))) or 1.0
    if np.any(thickness <= 1e-12 * scale):
        raise MeshError("degenerate zero-thickness sector between contours")

    fractions = np.arange(n_radial + 1)[:, None, None] / n_radial
    layers = pi[None, :, :] * (1.0 - fractions) + po[None, :, :] * fractions
    nodes = layers.reshape(-1, 2)

    def idx(k, j):
        return k * n_angular + j

    tris = []
    for k in range(n_radial):
        for j in range(n_angular):
            jp = (j + 1) % n_angular
            a = idx(k, j)        # lowest (angle, radial) corner; diagonal anchor
            b = idx(k, jp)
            cc = idx(k + 1, jp)
            d = idx(k + 1, j)
            tris.append((a, d, cc))
            tris.append((a, cc, b))
    triangles = np.asarray(tris, dtype=np.int64)

    edges = []
    labels = []
    for j in range(n_angular):
        jp = (j + 1) % n_angular
        edges.append((idx(0, j), idx(0, jp)))
        labels.append("inner")
    for j in range(n_angular):
        jp = (j + 1) % n_angular
        edges.append((idx(n_radial, j), idx(n_radial, jp)))
        labels.append("outer")

    mesh = Mesh(nodes, triangles, np.asarray(edges, dtype=np.int64), tuple(labels))
    if np.any(mesh.triangle_areas() <= 0.0):
        raise GeometryError(
            "non-positive triangle area: contours cross or are inconsistently ordered"
        )
    return mesh


def _boundary_loop_closed(edges: np.ndarray) -> bool:
    """Edges form exactly one closed loop visiting each node twice."""
    if len(edges) == 0:
        return False
    nodes, counts = np.unique(edges, return_counts=True)
    if not np.all(counts == 2):
        return False
    # walk the loop from the first edge
    succ = {}
    for a, b in edges:
        succ.setdefault(int(a), []).append(int(b))
        succ.setdefault(int(b), []).append(int(a))
    start = int(edges[0, 0])
    prev, cur = None, start
    visited = 0
    while True:
        nxt = [n for n in succ[cur] if n != prev]
        if not nxt:
            return False
        prev, cur = cur, nxt[0]
        visited += 1
        if cur == start:
            break
        if visited > len(edges):
            return False
    return visited == len(edges)


def min_interior_angle_deg(mesh: Mesh) -> float:
    p = mesh.nodes[mesh.triangles]
    angles = []
    for i in range(3):
        a = p[:, i]
        b = p[:, (i + 1) % 3]
        c = p[:, (i + 2) % 3]
        u = b - a
        v = c - a
        cosang = np.einsum("ij,ij->i", u, v) / (
            np.linalg.norm(u, axis=1) * np.linalg.norm(v, axis=1)
        )
        angles.append(np.degrees(np.arccos(np.clip(cosang, -1.0, 1.0))))
    return float(np.min(angles))


def validate(mesh: Mesh, quality_angle_deg: float = QUALITY_ANGLE_DEG) -> ValidationReport:
    """Run consistency checks and return a pass/fail report.

    A minimum interior angle below ``quality_angle_deg`` is reported as a
    warning rather than a failure, since thin-walled frames can legitimately
    produce slivers.
    """
    checks = []
    areas = mesh.triangle_areas()
    n_bad = int(np.count_nonzero(areas <= 0.0))
    checks.append(
        CheckResult(
            "positive_areas",
            n_bad == 0,
            f"{n_bad} of {mesh.n_triangles} triangles non-positive",
        )
    )

    labels = np.array(mesh.boundary_labels)
    loops_ok = True
    details = []
    for lab in ("inner", "outer"):
        edges = mesh.boundary_edges[labels == lab]
        closed = _boundary_loop_closed(edges)
        loops_ok &= closed
        details.append(f"{lab}: {'closed' if closed else 'broken'} ({len(edges)} edges)")
    checks.append(CheckResult("boundary_loops", loops_ok, "; ".join(details)))

    n_edges = len(mesh.unique_edges())
    euler = mesh.n_nodes - n_edges + mesh.n_triangles
    checks.append(
        CheckResult(
            "euler_characteristic",
            euler == 0,
            f"V - E + F = {mesh.n_nodes} - {n_edges} + {mesh.n_triangles} = {euler}",
        )
    )

    dup_pairs = cKDTree(mesh.nodes).query_pairs(r=1e-12)
    checks.append(
        CheckResult("distinct_nodes", len(dup_pairs) == 0, f"{len(dup_pairs)} duplicate pairs")
    )

    warnings = []
    min_angle = min_interior_angle_deg(mesh)
    if min_angle < quality_angle_deg:
        warnings.append(
            f"minimum interior angle {min_angle:.2f} deg below quality "
            f"threshold {quality_angle_deg:.2f} deg"
        )
    return ValidationReport(tuple(checks), tuple(warnings))


def locate_element(mesh: Mesh, point) -> int | None:
    """Index of the lowest-index triangle containing the point, else None.

    Containment uses closed barycentric coordinates, so points on shared
    edges resolve to the lower triangle index.
    """
    p = np.asarray(point, dtype=float).reshape(2)
    t = mesh.nodes[mesh.triangles]
    v0 = t[:, 1] - t[:, 0]
    v1 = t[:, 2] - t[:, 0]
    v2 = p[None, :] - t[:, 0]
    den = v0[:, 0] * v1[:, 1] - v0[:, 1] * v1[:, 0]
    l1 = (v2[:, 0] * v1[:, 1] - v2[:, 1] * v1[:, 0]) / den
    l2 = (v0[:, 0] * v2[:, 1] - v0[:, 1] * v2[:, 0]) / den
    l0 = 1.0 - l1 - l2
    tol = 1e-12
    inside = (l0 >= -tol) & (l1 >= -tol) & (l2 >= -tol)
    if not np.any(inside):
        return None
    return int(np.argmax(inside))
