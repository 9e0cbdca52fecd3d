import math

import numpy as np
import pytest

from cardiofem import Contour, FrameContours

TWO_PI = 2.0 * math.pi


def star_contour(n=32, radius=10.0, center=(0.0, 0.0), seed=None, amplitude=0.05,
                 label="inner"):
    """Star-shaped test contour; modes 2..5 keep the vertex centroid at center."""
    theta = TWO_PI * np.arange(n) / n
    r = np.full(n, radius)
    if seed is not None:
        rng = np.random.default_rng(seed)
        for mode in (2, 3, 4, 5):
            r += amplitude * radius * rng.uniform(0.1, 0.5) * np.cos(
                mode * theta + rng.uniform(0, TWO_PI)
            )
    pts = np.asarray(center, dtype=float) + r[:, None] * np.column_stack(
        [np.cos(theta), np.sin(theta)]
    )
    return Contour(pts, label)


def circle_frame(frame_index=0, inner_r=1.0, outer_r=2.0, n=32, center=(0.0, 0.0)):
    return FrameContours(
        frame_index,
        star_contour(n, inner_r, center, label="inner"),
        star_contour(n, outer_r, center, label="outer"),
    )


@pytest.fixture
def ring_mesh():
    from cardiofem import RingSpec, make_ring

    return make_ring(RingSpec(1.0, 2.0), 16, 2)
