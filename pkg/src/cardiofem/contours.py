"""Wall-contour geometry: validation, angular ordering, resampling, and
frame-to-frame boundary displacement extraction.

A contour is a closed polygon stored as an (n, 2) vertex array without a
repeated end vertex. Point correspondence between two time frames is defined
by resampling both frames onto a shared uniform angular grid about a fixed
reference center (the vertex centroid of the frame-0 inner contour) and
matching samples by angle. An optional rigid-rotation compensation removes a
known clockwise rotation of the later frame before matching.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import GeometryError, StarShapeError

TWO_PI = 2.0 * math.pi

#: Two vertices closer than this in angle (radians) count as one angular sample.
ANGLE_TIE_TOL = 1e-10

#: Relative radius difference above which same-angle vertices are treated as
#: distinct boundary crossings rather than duplicated points.
RADIUS_TIE_RTOL = 1e-9

CONTOUR_LABELS = ("inner", "outer")


class Point2(NamedTuple):
    x: float
    y: float


def _as_point(p) -> np.ndarray:
    arr = np.asarray(p, dtype=float).reshape(2)
    if not np.all(np.isfinite(arr)):
        raise GeometryError("point coordinates must be finite")
    return arr


@dataclass(frozen=True)
class Contour:
    """Closed polygon with an inner/outer wall label.

    The vertex array is copied and frozen at construction; instances are
    immutable and safe to share between threads.
    """

    points: np.ndarray
    label: str

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise GeometryError(f"contour points must be (n, 2), got {pts.shape}")
        if len(pts) < 3:
            raise GeometryError("contour needs at least 3 points")
        if not np.all(np.isfinite(pts)):
            raise GeometryError("contour contains non-finite coordinates")
        if np.array_equal(pts[0], pts[-1]):
            raise GeometryError("closed contours must not repeat the first vertex")
        if self.label not in CONTOUR_LABELS:
            raise GeometryError(f"contour label must be one of {CONTOUR_LABELS}")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def is_simple(self) -> bool:
        """True if no two non-adjacent edges intersect or touch."""
        return is_simple_polygon(self.points)


@dataclass(frozen=True)
class FrameContours:
    """Inner and outer wall contours of one time frame."""

    frame_index: int
    inner: Contour
    outer: Contour

    def __post_init__(self):
        if self.frame_index < 0:
            raise GeometryError("frame_index must be >= 0")
        if self.inner.label != "inner" or self.outer.label != "outer":
            raise GeometryError("frame contours must carry matching inner/outer labels")
        if not np.all(points_in_polygon(self.inner.points, self.outer.points)):
            raise GeometryError("inner contour must lie strictly inside the outer contour")


@dataclass(frozen=True)
class BoundaryDisplacements:
    """Displacement vectors at matched angular samples of both walls.

    Positions are the frame-0 resampled boundary points; vectors are the
    per-sample displacement to the (de-rotated) later frame.
    """

    inner_positions: np.ndarray
    inner_vectors: np.ndarray
    outer_positions: np.ndarray
    outer_vectors: np.ndarray
    reference_center: Point2

    def __post_init__(self):
        for name in ("inner_positions", "inner_vectors", "outer_positions", "outer_vectors"):
            arr = np.array(getattr(self, name), dtype=float)
            if arr.ndim != 2 or arr.shape[1] != 2 or not np.all(np.isfinite(arr)):
                raise GeometryError(f"{name} must be a finite (n, 2) array")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if len(self.inner_positions) != len(self.inner_vectors):
            raise GeometryError("inner positions/vectors length mismatch")
        if len(self.outer_positions) != len(self.outer_vectors):
            raise GeometryError("outer positions/vectors length mismatch")


# ---------------------------------------------------------------------------
# polygon primitives


def polygon_area(points) -> float:
    """Signed shoelace area (positive for counter-clockwise traversal)."""
    pts = np.asarray(points, dtype=float)
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def points_in_polygon(query, polygon) -> np.ndarray:
    """Even-odd (ray casting) interior test, vectorized over query points."""
    q = np.atleast_2d(np.asarray(query, dtype=float))
    poly = np.asarray(polygon, dtype=float)
    x1, y1 = poly[:, 0], poly[:, 1]
    x2, y2 = np.roll(x1, -1), np.roll(y1, -1)
    qx = q[:, 0][:, None]
    qy = q[:, 1][:, None]
    straddles = (y1 > qy) != (y2 > qy)
    with np.errstate(divide="ignore", invalid="ignore"):
        x_cross = x1 + (qy - y1) * (x2 - x1) / (y2 - y1)
    hits = straddles & (qx < x_cross)
    return np.count_nonzero(hits, axis=1) % 2 == 1


def _cross(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def _within_bbox(p, a, b):
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    return np.all((p >= lo) & (p <= hi), axis=-1)


def _segments_intersect(p1, p2, q1, q2) -> np.ndarray:
    d1 = _cross(q2 - q1, p1 - q1)
    d2 = _cross(q2 - q1, p2 - q1)
    d3 = _cross(p2 - p1, q1 - p1)
    d4 = _cross(p2 - p1, q2 - p1)
    proper = ((d1 > 0) != (d2 > 0)) & ((d3 > 0) != (d4 > 0))
    touch = (
        ((d1 == 0) & _within_bbox(p1, q1, q2))
        | ((d2 == 0) & _within_bbox(p2, q1, q2))
        | ((d3 == 0) & _within_bbox(q1, p1, p2))
        | ((d4 == 0) & _within_bbox(q2, p1, p2))
    )
    return proper | touch


def is_simple_polygon(points) -> bool:
    pts = np.asarray(points, dtype=float)
    n = len(pts)
    if n < 3:
        return False
    a = pts
    b = np.roll(pts, -1, axis=0)
    i_idx, j_idx = np.triu_indices(n, k=2)
    keep = ~((i_idx == 0) & (j_idx == n - 1))  # wrap-around pair is adjacent
    i_idx, j_idx = i_idx[keep], j_idx[keep]
    if len(i_idx) == 0:
        return True
    return not bool(np.any(_segments_intersect(a[i_idx], b[i_idx], a[j_idx], b[j_idx])))


def _min_distance_to_edges(point, polygon) -> float:
    p = _as_point(point)
    poly = np.asarray(polygon, dtype=float)
    a = poly
    b = np.roll(poly, -1, axis=0)
    ab = b - a
    ap = p[None, :] - a
    denom = np.einsum("ij,ij->i", ab, ab)
    t = np.clip(np.divide(np.einsum("ij,ij->i", ap, ab), denom, where=denom > 0), 0.0, 1.0)
    closest = a + t[:, None] * ab
    return float(np.min(np.linalg.norm(p[None, :] - closest, axis=1)))


def _angles_about(points, center) -> np.ndarray:
    d = np.asarray(points, dtype=float) - np.asarray(center, dtype=float)
    return np.mod(np.arctan2(d[:, 1], d[:, 0]), TWO_PI)


def rotate_about(points, center, angle_rad: float) -> np.ndarray:
    """Rotate points about a center, counter-clockwise for positive angles."""
    c = _as_point(center)
    pts = np.asarray(points, dtype=float)
    ca, sa = math.cos(angle_rad), math.sin(angle_rad)
    rel = pts - c
    out = np.empty_like(rel)
    out[:, 0] = ca * rel[:, 0] - sa * rel[:, 1]
    out[:, 1] = sa * rel[:, 0] + ca * rel[:, 1]
    return out + c


# ---------------------------------------------------------------------------
# operations


def centroid(contour: Contour) -> Point2:
    """Vertex centroid (arithmetic mean of the contour points)."""
    m = contour.points.mean(axis=0)
    return Point2(float(m[0]), float(m[1]))


def _check_center_inside(points_sorted: np.ndarray, center: np.ndarray) -> None:
    scale = float(np.max(np.abs(points_sorted - center))) or 1.0
    if _min_distance_to_edges(center, points_sorted) <= 1e-12 * scale:
        raise GeometryError("center lies on the contour boundary")
    if not points_in_polygon(center, points_sorted)[0]:
        raise GeometryError("center lies outside the contour")


def angular_permutation(contour: Contour, center) -> np.ndarray:
    """Indices that sort the contour vertices by angle about the center.

    The sort is stable, so vertices sharing an angle keep their input order.
    Vertices at the same angle (within ``ANGLE_TIE_TOL``) but at different
    radii mean a ray from the center crosses the boundary more than once,
    which violates the star-shape requirement.
    """
    c = _as_point(center)
    angles = _angles_about(contour.points, c)
    perm = np.argsort(angles, kind="stable")
    sorted_pts = contour.points[perm]
    _check_center_inside(sorted_pts, c)

    th = angles[perm]
    radii = np.linalg.norm(sorted_pts - c, axis=1)
    gaps = np.diff(th)
    wrap_gap = (th[0] + TWO_PI) - th[-1]
    tied = np.concatenate([gaps <= ANGLE_TIE_TOL, [wrap_gap <= ANGLE_TIE_TOL]])
    if np.any(tied):
        r_next = np.roll(radii, -1)
        r_scale = max(float(np.max(radii)), 1e-300)
        mismatched = tied & (np.abs(r_next - radii) > RADIUS_TIE_RTOL * r_scale)
        if np.any(mismatched):
            raise StarShapeError(
                "multiple boundary points share an angle at different radii; "
                "contour is not star-shaped about the center"
            )
    return perm


def order_by_angle(contour: Contour, center) -> Contour:
    """Return the contour with vertices sorted by angle about the center.

    The result starts at the smallest angle in [0, 2*pi). Use
    :func:`angular_permutation` to recover the applied permutation.
    """
    perm = angular_permutation(contour, center)
    return Contour(contour.points[perm], contour.label)


def is_star_shaped(contour: Contour, center) -> bool:
    """True if traversing the polygon winds monotonically once about center.

    Treats the vertex order as the polygon traversal order; a star-shaped
    contour visits angles monotonically (up to tied duplicates) with total
    winding of one full turn in either direction.
    """
    c = _as_point(center)
    pts = contour.points
    scale = float(np.max(np.abs(pts - c))) or 1.0
    if _min_distance_to_edges(c, pts) <= 1e-12 * scale:
        return False
    th = _angles_about(pts, c)
    diffs = np.diff(np.concatenate([th, th[:1]]))
    diffs = np.mod(diffs + math.pi, TWO_PI) - math.pi
    total = float(np.sum(diffs))
    if not math.isclose(abs(total), TWO_PI, rel_tol=0, abs_tol=1e-9):
        return False
    forward = np.all(diffs >= -ANGLE_TIE_TOL)
    backward = np.all(diffs <= ANGLE_TIE_TOL)
    return bool(forward or backward)


def require_star_shaped(contour: Contour, center, context: str = "") -> None:
    if not is_star_shaped(contour, center):
        where = f" ({context})" if context else ""
        raise StarShapeError(f"contour is not star-shaped about the reference center{where}")


def resample_uniform_angle(contour: Contour, center, n: int) -> Contour:
    """Resample onto n uniform angles about the center.

    Radii are linearly interpolated against angle between the (angle-ordered)
    input vertices, with periodic wrap-around. Output point k sits exactly at
    angle 2*pi*k/n.
    """
    if n < 3:
        raise GeometryError("resampling needs n >= 3")
    c = _as_point(center)
    perm = angular_permutation(contour, center)
    pts = contour.points[perm]
    th = _angles_about(pts, c)
    radii = np.linalg.norm(pts - c, axis=1)

    # Duplicate angular samples: keep the first in input order (stable sort
    # puts it first within a tie run; resolve a wrap-around tie explicitly).
    keep = np.concatenate([[True], np.diff(th) > ANGLE_TIE_TOL])
    if len(th) > 1 and (th[0] + TWO_PI) - th[-1] <= ANGLE_TIE_TOL and keep[-1]:
        if perm[-1] > perm[0]:
            keep[-1] = False
    th, radii = th[keep], radii[keep]
    if len(th) < 3:
        raise GeometryError("contour collapses to fewer than 3 angular samples")

    grid = TWO_PI * np.arange(n) / n
    r = np.interp(grid, th, radii, period=TWO_PI)
    out = c + r[:, None] * np.column_stack([np.cos(grid), np.sin(grid)])
    return Contour(out, contour.label)


def boundary_displacements(
    frame0: FrameContours,
    frame1: FrameContours,
    n: int,
    rotation_deg: float = 0.0,
) -> BoundaryDisplacements:
    """Displacement vectors between matched boundary points of two frames.

    The reference center is the vertex centroid of the frame-0 inner contour
    and is held fixed for both frames. ``rotation_deg`` is the known clockwise
    rigid rotation of frame-1 relative to frame-0; it is removed (frame-1 is
    rotated counter-clockwise by that amount about the reference center)
    before the uniform-angle matching, so that a purely rotated frame yields
    zero displacement.
    """
    center = centroid(frame0.inner)
    c = np.array(center, dtype=float)

    for cont, what in (
        (frame0.inner, "frame 0 inner"),
        (frame0.outer, "frame 0 outer"),
        (frame1.inner, "frame 1 inner"),
        (frame1.outer, "frame 1 outer"),
    ):
        require_star_shaped(cont, c, what)

    derot = math.radians(rotation_deg)
    inner1 = Contour(rotate_about(frame1.inner.points, c, derot), "inner")
    outer1 = Contour(rotate_about(frame1.outer.points, c, derot), "outer")

    i0 = resample_uniform_angle(frame0.inner, c, n)
    o0 = resample_uniform_angle(frame0.outer, c, n)
    i1 = resample_uniform_angle(inner1, c, n)
    o1 = resample_uniform_angle(outer1, c, n)

    return BoundaryDisplacements(
        inner_positions=i0.points,
        inner_vectors=i1.points - i0.points,
        outer_positions=o0.points,
        outer_vectors=o1.points - o0.points,
        reference_center=center,
    )
